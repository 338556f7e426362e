"""Schemas package."""

from ergodic_lab.schemas.measure import (
    MEASURE_ADAPTER,
    BernoulliModel,
    HiddenMarkovModel,
    MarkovModel,
    MeasureModel,
    MixtureModel,
)
from ergodic_lab.schemas.word import EMPTY_WORD, BinaryWord

__all__ = [
    "EMPTY_WORD",
    "MEASURE_ADAPTER",
    "BernoulliModel",
    "BinaryWord",
    "HiddenMarkovModel",
    "MarkovModel",
    "MeasureModel",
    "MixtureModel",
]
