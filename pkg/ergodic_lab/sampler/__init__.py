"""Sampler package: SplitMix64 streams, prefix sampling and word files."""

from ergodic_lab.sampler.sampling import (
    AdversarialKind,
    adversarial_sequence,
    sample_prefix,
    sample_replicas,
    sample_word,
)
from ergodic_lab.sampler.splitmix import SplitMix64, replica_seed, uniform_stream
from ergodic_lab.sampler.wordfile import read_words, write_words

__all__ = [
    "AdversarialKind",
    "SplitMix64",
    "adversarial_sequence",
    "read_words",
    "replica_seed",
    "sample_prefix",
    "sample_replicas",
    "sample_word",
    "uniform_stream",
    "write_words",
]
