"""BinaryWord: an immutable finite word over {0, 1}.

Backed by a read-only ``uint8`` numpy array so that long sampled prefixes
(10^5 bits and more) can be sliced and scanned without copies.
"""

from __future__ import annotations

from collections.abc import Iterable
from typing import overload

import numpy as np
import numpy.typing as npt

BitArray = npt.NDArray[np.uint8]


class BinaryWord:
    """A finite binary word. The empty word is valid."""

    __slots__ = ("_bits",)

    def __init__(self, bits: BinaryWord | str | Iterable[int] | BitArray = ()) -> None:
        if isinstance(bits, BinaryWord):
            arr = bits._bits
        elif isinstance(bits, str):
            arr = _parse_text(bits)
        elif isinstance(bits, np.ndarray):
            arr = np.ascontiguousarray(bits, dtype=np.uint8)
        else:
            arr = np.fromiter((int(b) for b in bits), dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("BinaryWord needs a one-dimensional bit array")
        if arr.size and int(arr.max()) > 1:
            raise ValueError("BinaryWord bits must be 0 or 1")
        if arr.flags.writeable:
            arr = arr.copy()
            arr.setflags(write=False)
        self._bits: BitArray = arr

    @property
    def bits(self) -> BitArray:
        """Read-only view of the bits."""
        return self._bits

    @property
    def length(self) -> int:
        return int(self._bits.size)

    def __len__(self) -> int:
        return int(self._bits.size)

    def __str__(self) -> str:
        return (self._bits + ord("0")).tobytes().decode("ascii")

    def __repr__(self) -> str:
        text = str(self)
        if len(text) > 40:
            text = f"{text[:37]}..."
        return f"BinaryWord('{text}', length={self.length})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, str):
            other = BinaryWord(other)
        if not isinstance(other, BinaryWord):
            return NotImplemented
        return bool(np.array_equal(self._bits, other._bits))

    def __hash__(self) -> int:
        return hash((self.length, self._bits.tobytes()))

    @overload
    def __getitem__(self, index: int) -> int: ...

    @overload
    def __getitem__(self, index: slice) -> BinaryWord: ...

    def __getitem__(self, index: int | slice) -> int | BinaryWord:
        if isinstance(index, slice):
            return BinaryWord(self._bits[index])
        return int(self._bits[index])

    def __add__(self, other: BinaryWord | str) -> BinaryWord:
        return self.concat(other)

    def concat(self, other: BinaryWord | str) -> BinaryWord:
        other_word = other if isinstance(other, BinaryWord) else BinaryWord(other)
        return BinaryWord(np.concatenate([self._bits, other_word._bits]))

    def append(self, bit: int) -> BinaryWord:
        return BinaryWord(np.append(self._bits, np.uint8(bit)))

    def prefix(self, n: int) -> BinaryWord:
        """x↾n, the first n bits."""
        if not 0 <= n <= self.length:
            raise ValueError(f"prefix length {n} outside [0, {self.length}]")
        return BinaryWord(self._bits[:n])

    def shift(self, k: int = 1) -> BinaryWord:
        """T^k applied to the word: drops the first k bits."""
        if not 0 <= k <= self.length:
            raise ValueError(f"shift {k} outside [0, {self.length}]")
        return BinaryWord(self._bits[k:])

    def count_ones(self) -> int:
        return int(self._bits.sum(dtype=np.int64))

    def count_zeros(self) -> int:
        return self.length - self.count_ones()

    def startswith(self, other: BinaryWord | str) -> bool:
        other_word = other if isinstance(other, BinaryWord) else BinaryWord(other)
        if other_word.length > self.length:
            return False
        return bool(np.array_equal(self._bits[: other_word.length], other_word._bits))


def _parse_text(text: str) -> BitArray:
    stripped = text.strip()
    raw = np.frombuffer(stripped.encode("ascii"), dtype=np.uint8)
    if raw.size and (raw.min() < ord("0") or raw.max() > ord("1")):
        raise ValueError(f"not a binary word: {stripped[:40]!r}")
    return raw - np.uint8(ord("0"))


EMPTY_WORD = BinaryWord()
