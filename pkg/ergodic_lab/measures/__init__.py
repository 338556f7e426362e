"""Measures package: cylinder probabilities, structural checks and model files."""

from ergodic_lab.measures.checks import check_shift_invariance, correlation_cesaro
from ergodic_lab.measures.cylinder_set import CylinderSet
from ergodic_lab.measures.cylinders import (
    conditional_next_logprob,
    log_cylinder,
    prefix_log_cylinders,
    suffix_log_cylinders,
    to_hidden,
    window_log_cylinders,
)
from ergodic_lab.measures.loader import load_model_file, noisy_regime_chain, parse_model
from ergodic_lab.measures.stationary import chain_period, stationary_distribution

__all__ = [
    "CylinderSet",
    "chain_period",
    "check_shift_invariance",
    "conditional_next_logprob",
    "correlation_cesaro",
    "load_model_file",
    "log_cylinder",
    "noisy_regime_chain",
    "parse_model",
    "prefix_log_cylinders",
    "stationary_distribution",
    "suffix_log_cylinders",
    "to_hidden",
    "window_log_cylinders",
]
