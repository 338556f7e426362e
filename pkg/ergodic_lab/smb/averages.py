"""Per-sequence convergence reports: log-probability rates and Birkhoff averages."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Literal

import numpy as np
import structlog

from ergodic_lab.core.errors import ConditioningOnNull
from ergodic_lab.entropy.closed_form import entropy_target
from ergodic_lab.measures.cylinder_set import CylinderSet
from ergodic_lab.measures.cylinders import NEG_INF, as_word, prefix_log_cylinders
from ergodic_lab.schemas.measure import MeasureModel
from ergodic_lab.schemas.reports import ConvergenceReport, ConvergenceRow
from ergodic_lab.schemas.word import BinaryWord
from ergodic_lab.smb.information import shifted_fk

logger = structlog.get_logger(__name__)

Target = float | None | Literal["auto"]


def normalize_grid(n_grid: Sequence[int], limit: int) -> list[int]:
    """Sorted distinct grid points, each in [1, limit]."""
    grid = sorted({int(n) for n in n_grid})
    if not grid:
        raise ValueError("n_grid must not be empty")
    if grid[0] < 1 or grid[-1] > limit:
        raise ValueError(f"grid points must lie in [1, {limit}], got {grid[0]}..{grid[-1]}")
    return grid


def log_grid(n: int) -> list[int]:
    """1, 2, 4, … up to n, with n itself always last."""
    points = [1 << i for i in range(max(n, 1).bit_length()) if (1 << i) < n]
    return [*points, n]


def _resolve_target(model: MeasureModel, target: Target) -> float | None:
    return entropy_target(model) if target == "auto" else target


def log_prob_rate(
    model: MeasureModel,
    x: BinaryWord | str,
    n_grid: Sequence[int],
    *,
    target: Target = "auto",
) -> ConvergenceReport:
    """Rows (n, −(1/n) log2 μ[x↾n], h) over the grid.

    Raises:
        ConditioningOnNull: if x↾n is null for some grid point.
    """
    word = as_word(x)
    grid = normalize_grid(n_grid, word.length)
    logs = prefix_log_cylinders(model, word.prefix(grid[-1]))
    h = _resolve_target(model, target)

    rows = []
    for n in grid:
        if logs[n] == NEG_INF:
            raise ConditioningOnNull("prefix has measure zero", n=n)
        rows.append(ConvergenceRow(n=n, estimate=float(-logs[n] / n), target=h))
    logger.debug("log_prob_rate_computed", model_id=model.model_id, n_max=grid[-1], target=h)
    return ConvergenceReport(rows=rows, metadata={"model_id": model.model_id})


def birkhoff_average(
    model: MeasureModel,
    x: BinaryWord | str,
    u: BinaryWord | str | CylinderSet,
    n: int,
    *,
    grid: Sequence[int] | None = None,
) -> ConvergenceReport:
    """Visit frequency of the cylinder set C along the first m shifts of x, m on a log grid.

    Converges to μ(C) for typical x.
    """
    word = as_word(x)
    target_set = CylinderSet.of(u)
    hits = target_set.hits(word, n).astype(np.float64)
    points = normalize_grid(grid, n) if grid is not None else log_grid(n)
    running = np.cumsum(hits)
    mu = target_set.measure(model)
    rows = [ConvergenceRow(n=m, estimate=float(running[m - 1] / m), target=mu) for m in points]
    return ConvergenceReport(
        rows=rows,
        metadata={"model_id": model.model_id, "cylinders": [str(w) for w in target_set.words]},
    )


def first_return(
    x: BinaryWord | str, u: BinaryWord | str | CylinderSet, budget: int
) -> int | None:
    """Least k ≤ budget with T^k x in the cylinder set, or None."""
    hits = CylinderSet.of(u).hits(as_word(x), budget + 1)
    found = np.flatnonzero(hits)
    return int(found[0]) if found.size else None


def birkhoff_fk_average(
    model: MeasureModel,
    x: BinaryWord | str,
    K: int,
    n_grid: Sequence[int],
    *,
    target: Target = "auto",
) -> ConvergenceReport:
    """A_n of the truncated conditional information f_K, against ∫f dμ = h(μ)."""
    word = as_word(x)
    grid = normalize_grid(n_grid, word.length - K)
    running = np.cumsum(shifted_fk(model, word, K, grid[-1]))
    h = _resolve_target(model, target)
    rows = [ConvergenceRow(n=n, estimate=float(running[n - 1] / n), target=h) for n in grid]
    return ConvergenceReport(rows=rows, metadata={"model_id": model.model_id, "K": K})
