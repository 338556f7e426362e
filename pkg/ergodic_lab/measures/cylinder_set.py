"""Finite unions of cylinders: effectively closed sets with finitely checkable membership."""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np
import numpy.typing as npt
from numpy.lib.stride_tricks import sliding_window_view

from ergodic_lab.measures.cylinders import as_word, log_cylinder
from ergodic_lab.schemas.measure import MeasureModel
from ergodic_lab.schemas.word import BinaryWord


class CylinderSet:
    """C = [u_1] ∪ … ∪ [u_r] for non-empty words u_i."""

    def __init__(self, words: Iterable[BinaryWord | str]) -> None:
        unique = sorted({as_word(w) for w in words}, key=lambda w: (w.length, str(w)))
        if not unique:
            raise ValueError("a cylinder set needs at least one word")
        if any(w.length == 0 for w in unique):
            raise ValueError("cylinder words must be non-empty")
        self._words = unique

    @classmethod
    def of(cls, u: BinaryWord | str | CylinderSet) -> CylinderSet:
        return u if isinstance(u, CylinderSet) else cls([u])

    @property
    def words(self) -> list[BinaryWord]:
        return list(self._words)

    @property
    def max_length(self) -> int:
        return max(w.length for w in self._words)

    def antichain(self) -> list[BinaryWord]:
        """Drop every word that extends another word of the set (their cylinders are nested)."""
        kept: list[BinaryWord] = []
        for w in self._words:
            if not any(w.startswith(shorter) for shorter in kept):
                kept.append(w)
        return kept

    def measure(self, model: MeasureModel) -> float:
        """μ(C); antichain cylinders are disjoint, so their masses add."""
        logs = np.array([log_cylinder(model, w) for w in self.antichain()])
        return float(np.exp2(np.logaddexp2.reduce(logs)))

    def hits(self, x: BinaryWord, n: int) -> npt.NDArray[np.bool_]:
        """Boolean vector over k < n: T^k x ∈ C. Needs n + max_length − 1 ≤ |x|."""
        needed = n + self.max_length - 1
        if needed > x.length:
            raise ValueError(f"need {needed} bits of x, have {x.length}")
        out = np.zeros(n, dtype=bool)
        for w in self._words:
            windows = sliding_window_view(x.bits[: n + w.length - 1], w.length)
            out |= np.all(windows == w.bits, axis=1)
        return out

    def __repr__(self) -> str:
        return f"CylinderSet({[str(w) for w in self._words]})"
