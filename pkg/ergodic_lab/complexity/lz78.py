"""LZ78 incremental parsing and its exact code length.

Each phrase is the shortest prefix of the remaining input not already a
phrase, and is encoded as (index of its longest proper prefix phrase, last
bit): phrase j costs ceil(log2 j) + 1 bits. A trailing phrase that
duplicates an earlier one is charged as the next phrase.
"""

from __future__ import annotations

from collections.abc import Iterable

from ergodic_lab.measures.cylinders import as_word
from ergodic_lab.schemas.reports import CodeLength
from ergodic_lab.schemas.word import BinaryWord

CODER_ID = "lz78"


def phrase_cost(j: int) -> int:
    """ceil(log2 j) + 1 for the j-th phrase (j ≥ 1)."""
    return (j - 1).bit_length() + 1


class LZ78Parser:
    """Incremental LZ78 parse state over a bit stream."""

    def __init__(self) -> None:
        # (node, bit) -> child node; node 0 is the empty phrase
        self._trie: dict[tuple[int, int], int] = {}
        self._node = 0
        self._completed = 0
        self._completed_cost = 0
        self.consumed = 0

    def feed(self, bits: Iterable[int]) -> LZ78Parser:
        trie = self._trie
        node = self._node
        for raw in bits:
            bit = int(raw)
            child = trie.get((node, bit))
            if child is None:
                self._completed += 1
                self._completed_cost += phrase_cost(self._completed)
                trie[(node, bit)] = self._completed
                node = 0
            else:
                node = child
            self.consumed += 1
        self._node = node
        return self

    @property
    def in_progress(self) -> bool:
        return self._node != 0

    @property
    def phrase_count(self) -> int:
        return self._completed + (1 if self.in_progress else 0)

    @property
    def codelen(self) -> int:
        if self.in_progress:
            return self._completed_cost + phrase_cost(self._completed + 1)
        return self._completed_cost


def lz78_codelen(w: BinaryWord | str) -> int:
    return LZ78Parser().feed(as_word(w).bits.tolist()).codelen


def lz78_code_length(w: BinaryWord | str) -> CodeLength:
    return CodeLength(bits=float(lz78_codelen(w)), coder_id=CODER_ID)


def lz78_phrases(w: BinaryWord | str) -> list[str]:
    """The phrases of the parse, in order, for inspection."""
    seen: set[str] = set()
    phrases: list[str] = []
    current = ""
    for ch in str(as_word(w)):
        current += ch
        if current not in seen:
            seen.add(current)
            phrases.append(current)
            current = ""
    if current:
        phrases.append(current)
    return phrases
