"""Incremental cylinder trackers: log2 μ[w] maintained as w grows bit by bit.

Each tracker gives the next-bit conditional log-probability in its family's
direct form (Bernoulli: log2 p; Markov: a transition entry; hidden Markov:
the normalized forward predictor; mixture: posterior-weighted components).
The sampler draws every bit from these values.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Iterable

import numpy as np

from ergodic_lab.core.errors import ConditioningOnNull
from ergodic_lab.measures.cylinders import (
    NEG_INF,
    bernoulli_bit_logs,
    log2_scalar,
    safe_log2,
)
from ergodic_lab.schemas.measure import (
    BernoulliModel,
    HiddenMarkovModel,
    MarkovModel,
    MeasureModel,
    MixtureModel,
)


class CylinderTracker(ABC):
    """Abstract base for all incremental trackers."""

    def __init__(self) -> None:
        self.log_mass = 0.0
        self.length = 0

    def next_logprob(self, bit: int) -> float:
        """log2 μ[w·bit] − log2 μ[w] for the word w consumed so far."""
        if self.log_mass == NEG_INF:
            raise ConditioningOnNull(
                "cannot condition on a null cylinder", prefix_length=self.length
            )
        return self._next_logprob(bit)

    def push(self, bit: int) -> None:
        step = self._next_logprob(bit) if self.log_mass != NEG_INF else NEG_INF
        self.log_mass += step
        self._advance(bit)
        self.length += 1

    def feed(self, bits: Iterable[int]) -> CylinderTracker:
        for b in bits:
            self.push(int(b))
        return self

    @abstractmethod
    def _next_logprob(self, bit: int) -> float: ...

    @abstractmethod
    def _advance(self, bit: int) -> None: ...


class BernoulliTracker(CylinderTracker):
    def __init__(self, model: BernoulliModel) -> None:
        super().__init__()
        self._logs = [float(v) for v in bernoulli_bit_logs(model)]

    def _next_logprob(self, bit: int) -> float:
        return self._logs[bit]

    def _advance(self, bit: int) -> None:
        return None


class MarkovTracker(CylinderTracker):
    def __init__(self, model: MarkovModel) -> None:
        super().__init__()
        self._log_pi = safe_log2(model.pi_array).tolist()
        self._log_p = safe_log2(model.P_array).tolist()
        self._last = -1

    def _next_logprob(self, bit: int) -> float:
        if self._last < 0:
            return float(self._log_pi[bit])
        return float(self._log_p[self._last][bit])

    def _advance(self, bit: int) -> None:
        self._last = bit


class HiddenMarkovTracker(CylinderTracker):
    def __init__(self, model: HiddenMarkovModel) -> None:
        super().__init__()
        self._Q = model.Q_array
        self._masks = model.emission_masks
        self._predictive = model.pi_array

    def _next_logprob(self, bit: int) -> float:
        return log2_scalar(float(self._predictive @ self._masks[bit]))

    def _advance(self, bit: int) -> None:
        weights = self._predictive * self._masks[bit]
        total = float(weights.sum())
        if total <= 0.0:
            self._predictive = np.zeros_like(weights)
            return
        self._predictive = (weights / total) @ self._Q


class MixtureTracker(CylinderTracker):
    def __init__(self, model: MixtureModel) -> None:
        super().__init__()
        self._log_weights = model.log_weights
        self._components = [tracker_for(c) for c in model.components]

    def _posterior(self) -> np.ndarray:
        return self._log_weights + np.array([c.log_mass for c in self._components])

    def _next_logprob(self, bit: int) -> float:
        posterior = self._posterior()
        steps = np.array(
            [c._next_logprob(bit) if c.log_mass != NEG_INF else NEG_INF for c in self._components]
        )
        joint = np.logaddexp2.reduce(posterior + steps)
        return float(joint - np.logaddexp2.reduce(posterior))

    def _advance(self, bit: int) -> None:
        for component in self._components:
            component.push(bit)

    def component_log_masses(self) -> list[float]:
        return [c.log_mass for c in self._components]


def tracker_for(model: MeasureModel) -> CylinderTracker:
    """Build the tracker matching the model family."""
    if isinstance(model, BernoulliModel):
        return BernoulliTracker(model)
    if isinstance(model, MarkovModel):
        return MarkovTracker(model)
    if isinstance(model, HiddenMarkovModel):
        return HiddenMarkovTracker(model)
    return MixtureTracker(model)
