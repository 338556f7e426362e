"""SplitMix64: the single pseudo-random generator behind every sampled word.

Streams are fully determined by a 64-bit seed. Uniforms use the top 53 bits
of each output, so they lie in [0, 1) with double-precision granularity.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV_2_53 = 2.0**-53


def mix64(z: int) -> int:
    """The SplitMix64 output finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def replica_seed(seed: int, replica: int) -> int:
    """Seed of replica r: seed XOR the first output of a stream started at r."""
    return (seed ^ mix64(replica + GAMMA)) & MASK64


class SplitMix64:
    """Scalar generator; ``uniform_stream`` is the vectorised equivalent."""

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def next_uniform(self) -> float:
        return (self.next_u64() >> 11) * _INV_2_53


def uniform_stream(seed: int, count: int) -> npt.NDArray[np.float64]:
    """The first ``count`` uniforms of SplitMix64(seed), as one array."""
    if count <= 0:
        return np.zeros(0)
    with np.errstate(over="ignore"):
        steps = np.arange(1, count + 1, dtype=np.uint64)
        z = np.uint64(seed & MASK64) + steps * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * _INV_2_53
