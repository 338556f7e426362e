"""Exhaustive lexicographic sweep over all words of a given length.

Level ℓ holds log2 μ[w] for the 2^ℓ words w of length ℓ in lexicographic
order (first bit most significant). Level ℓ+1 is built by extending every
word by one bit, so a full sweep to depth n costs O(2^n) extensions. In this
order the words 0w are the first half of a level and the words 1w the second.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Iterator

import numpy as np
import numpy.typing as npt

from ergodic_lab.measures.cylinders import bernoulli_bit_logs, safe_log2
from ergodic_lab.schemas.measure import (
    BernoulliModel,
    HiddenMarkovModel,
    MarkovModel,
    MeasureModel,
    MixtureModel,
)

FloatArray = npt.NDArray[np.float64]


def _interleave(child0: np.ndarray, child1: np.ndarray) -> np.ndarray:
    """[a0, a1, …], [b0, b1, …] → [a0, b0, a1, b1, …] along the first axis."""
    return np.stack([child0, child1], axis=1).reshape((-1, *child0.shape[1:]))


class LevelSweep(ABC):
    """Abstract level-by-level cylinder enumerator."""

    def __init__(self) -> None:
        self.level = 0
        self.log_probs: FloatArray = np.zeros(1)

    def extend(self) -> FloatArray:
        """Advance one level and return its log-probabilities."""
        self.log_probs = self._extend()
        self.level += 1
        return self.log_probs

    @abstractmethod
    def _extend(self) -> FloatArray: ...


class BernoulliSweep(LevelSweep):
    def __init__(self, model: BernoulliModel) -> None:
        super().__init__()
        self._lp0, self._lp1 = (float(v) for v in bernoulli_bit_logs(model))

    def _extend(self) -> FloatArray:
        return _interleave(self.log_probs + self._lp0, self.log_probs + self._lp1)


class MarkovSweep(LevelSweep):
    def __init__(self, model: MarkovModel) -> None:
        super().__init__()
        self._log_p = safe_log2(model.P_array)
        self._log_pi = safe_log2(model.pi_array)
        self._last = np.zeros(1, dtype=np.intp)

    def _extend(self) -> FloatArray:
        if self.level == 0:
            out = self._log_pi.copy()
        else:
            out = _interleave(
                self.log_probs + self._log_p[self._last, 0],
                self.log_probs + self._log_p[self._last, 1],
            )
        self._last = np.tile(np.array([0, 1], dtype=np.intp), out.size // 2)
        return out


class HiddenMarkovSweep(LevelSweep):
    def __init__(self, model: HiddenMarkovModel) -> None:
        super().__init__()
        self._Q = model.Q_array
        self._masks = model.emission_masks
        self._alpha = model.pi_array[None, :]

    def _extend(self) -> FloatArray:
        predictive = self._alpha if self.level == 0 else self._alpha @ self._Q
        children_alpha = []
        children_logs = []
        for b in (0, 1):
            weights = predictive * self._masks[b]
            totals = weights.sum(axis=1)
            children_logs.append(self.log_probs + safe_log2(totals))
            children_alpha.append(
                np.divide(
                    weights,
                    totals[:, None],
                    out=np.zeros_like(weights),
                    where=totals[:, None] > 0.0,
                )
            )
        self._alpha = _interleave(children_alpha[0], children_alpha[1])
        return _interleave(children_logs[0], children_logs[1])


class MixtureSweep(LevelSweep):
    def __init__(self, model: MixtureModel) -> None:
        super().__init__()
        self._log_weights = model.log_weights
        self._components = [sweep_for(c) for c in model.components]

    def _extend(self) -> FloatArray:
        stacked = np.stack([c.extend() for c in self._components])
        return np.logaddexp2.reduce(stacked + self._log_weights[:, None], axis=0)


def sweep_for(model: MeasureModel) -> LevelSweep:
    if isinstance(model, BernoulliModel):
        return BernoulliSweep(model)
    if isinstance(model, MarkovModel):
        return MarkovSweep(model)
    if isinstance(model, HiddenMarkovModel):
        return HiddenMarkovSweep(model)
    return MixtureSweep(model)


def iter_levels(model: MeasureModel, max_len: int) -> Iterator[tuple[int, FloatArray]]:
    """Yield (ℓ, log2 μ over all words of length ℓ) for ℓ = 0..max_len."""
    sweep = sweep_for(model)
    yield 0, sweep.log_probs
    for _ in range(max_len):
        probs = sweep.extend()
        yield sweep.level, probs


def word_at(index: int, length: int) -> str:
    """The lexicographic index → word text mapping used by every level."""
    return format(index, f"0{length}b") if length else ""
