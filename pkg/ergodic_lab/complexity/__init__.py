"""Compression-based complexity proxies."""

from ergodic_lab.complexity.deficiency import deficiency_trace, dim_estimates, ideal_codelen
from ergodic_lab.complexity.lz78 import LZ78Parser, lz78_code_length, lz78_codelen, lz78_phrases

__all__ = [
    "LZ78Parser",
    "deficiency_trace",
    "dim_estimates",
    "ideal_codelen",
    "lz78_code_length",
    "lz78_codelen",
    "lz78_phrases",
]
