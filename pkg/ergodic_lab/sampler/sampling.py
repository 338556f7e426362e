"""Reproducible prefix sampling and deterministic adversarial sequences.

Every bit consumes exactly one uniform from the replica's SplitMix64 stream
and becomes 1 when the uniform falls below exp2 of the conditional next-bit
log-probability. Mixtures spend one extra uniform (the first) to pick a
component, then sample from it for the whole word.
"""

from __future__ import annotations

import math
from enum import StrEnum

import numpy as np
import numpy.typing as npt
import structlog

from ergodic_lab.measures.cylinders import bernoulli_bit_logs, safe_log2
from ergodic_lab.measures.tracking import tracker_for
from ergodic_lab.sampler.splitmix import replica_seed, uniform_stream
from ergodic_lab.schemas.experiment import SampleRun
from ergodic_lab.schemas.measure import (
    BernoulliModel,
    HiddenMarkovModel,
    MarkovModel,
    MeasureModel,
    MixtureModel,
)
from ergodic_lab.schemas.word import EMPTY_WORD, BinaryWord

logger = structlog.get_logger(__name__)

BitArray = npt.NDArray[np.uint8]


def _bits_from_uniforms(model: MeasureModel, uniforms: npt.NDArray[np.float64]) -> BitArray:
    n = uniforms.size
    if isinstance(model, BernoulliModel):
        threshold = float(np.exp2(bernoulli_bit_logs(model)[1]))
        return (uniforms < threshold).astype(np.uint8)

    if isinstance(model, MarkovModel):
        start = float(np.exp2(safe_log2(model.pi_array)[1]))
        to_one = np.exp2(safe_log2(model.P_array)[:, 1]).tolist()
        out = np.empty(n, dtype=np.uint8)
        prev = -1
        for i, u in enumerate(uniforms.tolist()):
            bit = int(u < (start if prev < 0 else to_one[prev]))
            out[i] = bit
            prev = bit
        return out

    if isinstance(model, HiddenMarkovModel):
        tracker = tracker_for(model)
        out = np.empty(n, dtype=np.uint8)
        for i, u in enumerate(uniforms.tolist()):
            bit = int(u < 2.0 ** tracker.next_logprob(1))
            out[i] = bit
            tracker.push(bit)
        return out

    return _mixture_bits(model, uniforms)


def _mixture_bits(model: MixtureModel, uniforms: npt.NDArray[np.float64]) -> BitArray:
    cumulative = np.cumsum(model.weights)
    index = int(np.searchsorted(cumulative, uniforms[0], side="right"))
    index = min(index, len(model.components) - 1)
    return _bits_from_uniforms(model.components[index], uniforms[1:])


def sample_word(model: MeasureModel, length: int, seed: int, replica: int = 0) -> BinaryWord:
    """The word of the given length for (model, seed, replica)."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    if length == 0:
        return EMPTY_WORD
    extra = 1 if isinstance(model, MixtureModel) else 0
    uniforms = uniform_stream(replica_seed(seed, replica), length + extra)
    bits = _bits_from_uniforms(model, uniforms)
    logger.debug(
        "prefix_sampled",
        model_id=model.model_id,
        length=length,
        seed=seed,
        replica=replica,
        ones=int(bits.sum()),
    )
    return BinaryWord(bits)


def sample_prefix(run: SampleRun) -> BinaryWord:
    """Sample the prefix described by a SampleRun.

    Raises:
        ConditioningOnNull: when a hidden-Markov conditioning cylinder is null.
    """
    return sample_word(run.model, run.length, run.seed, run.replica)


def sample_replicas(
    model: MeasureModel, length: int, seed: int, replicas: int
) -> list[BinaryWord]:
    """Words for replicas 0..replicas-1 under one seed, in replica order."""
    return [sample_word(model, length, seed, r) for r in range(replicas)]


class AdversarialKind(StrEnum):
    ALL_ZEROS = "all_zeros"
    PERIODIC = "periodic"
    FIXED_SEED_COINFLIPS = "fixed_seed_coinflips"


def adversarial_sequence(
    kind: AdversarialKind | str, n: int, pattern: str = "01"
) -> BinaryWord:
    """Deterministic negative controls for the deficiency and dimension checks."""
    kind = AdversarialKind(kind)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return EMPTY_WORD
    if kind is AdversarialKind.ALL_ZEROS:
        return BinaryWord(np.zeros(n, dtype=np.uint8))
    if kind is AdversarialKind.PERIODIC:
        unit = BinaryWord(pattern)
        if unit.length == 0:
            raise ValueError("periodic pattern must be non-empty")
        reps = math.ceil(n / unit.length)
        return BinaryWord(np.tile(unit.bits, reps)[:n])
    return sample_word(BernoulliModel(p=0.5), n, seed=0, replica=0)
