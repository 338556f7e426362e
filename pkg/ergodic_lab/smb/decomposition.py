"""The telescoping identity −log2 μ[x↾n] = Σ_{k<n} f_{n−1−k}(T^k x) and its split."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
import structlog

from ergodic_lab.core.errors import ConditioningOnNull
from ergodic_lab.entropy.closed_form import entropy_target
from ergodic_lab.measures.cylinders import (
    NEG_INF,
    as_word,
    log_cylinder,
    prefix_log_cylinders,
    suffix_log_cylinders,
)
from ergodic_lab.schemas.measure import MeasureModel
from ergodic_lab.schemas.reports import SplitReport, SplitRow
from ergodic_lab.schemas.word import BinaryWord
from ergodic_lab.smb.averages import normalize_grid
from ergodic_lab.smb.information import shifted_fk

logger = structlog.get_logger(__name__)


def telescoping_terms(model: MeasureModel, x: BinaryWord | str, n: int) -> np.ndarray:
    """f_{n−1−k}(T^k x) for k = 0..n−1.

    Term k only sees the window x_k … x_{n−1}: it is log2 μ[x_{k+1}…x_{n−1}]
    − log2 μ[x_k…x_{n−1}], read off one backward pass of suffix masses.
    """
    word = as_word(x)
    if not 1 <= n <= word.length:
        raise ValueError(f"n must lie in [1, {word.length}]")
    suffix = suffix_log_cylinders(model, word.prefix(n))
    null = np.flatnonzero(suffix == NEG_INF)
    if null.size:
        raise ConditioningOnNull("suffix cylinder has measure zero", position=int(null[-1]))
    return suffix[1:] - suffix[:-1]


def decomposition_residual(model: MeasureModel, x: BinaryWord | str, n: int) -> float:
    """|−log2 μ[x↾n] − Σ_k f_{n−1−k}(T^k x)|, pure floating-point accumulation."""
    terms = telescoping_terms(model, x, n)
    forward = log_cylinder(model, as_word(x).prefix(n))
    return float(abs(-forward - np.sum(terms)))


def smb_split(
    model: MeasureModel, x: BinaryWord | str, K: int, n_grid: Sequence[int]
) -> SplitReport:
    """Split −(1/n) log2 μ[x↾n] into a Birkhoff average of f_K and an error term.

    birkhoff_term = (1/n) Σ_{k<n} f_K(T^k x); error_term is the remainder
    (1/n) Σ_{k<n} (f_{n−1−k} − f_K)(T^k x), which vanishes for typical x.
    """
    word = as_word(x)
    grid = normalize_grid(n_grid, word.length - K)
    logs = prefix_log_cylinders(model, word.prefix(grid[-1]))
    running = np.cumsum(shifted_fk(model, word, K, grid[-1]))

    rows = []
    for n in grid:
        if logs[n] == NEG_INF:
            raise ConditioningOnNull("prefix has measure zero", n=n)
        total = float(-logs[n] / n)
        birkhoff = float(running[n - 1] / n)
        rows.append(SplitRow(n=n, total=total, birkhoff_term=birkhoff, error_term=total - birkhoff))
    report = SplitReport(
        K=K,
        rows=rows,
        metadata={"model_id": model.model_id, "target": entropy_target(model)},
    )
    logger.debug(
        "smb_split_computed",
        model_id=model.model_id,
        K=K,
        final_error_term=rows[-1].error_term,
    )
    return report
