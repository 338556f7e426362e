"""Block entropies H_n and the entropy-rate table.

H_n = −Σ_{|w|=n} μ[w] log2 μ[w] over the full lexicographic sweep. Words
with log2 μ[w] below the configured floor contribute nothing.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt
import structlog

from ergodic_lab.config import get_settings
from ergodic_lab.core.errors import BudgetExceeded
from ergodic_lab.measures.enumeration import iter_levels
from ergodic_lab.schemas.measure import MeasureModel
from ergodic_lab.schemas.reports import EntropyRow, EntropyTable

logger = structlog.get_logger(__name__)

MONOTONE_TOL = 1e-9


def _level_entropy(logs: npt.NDArray[np.float64], floor: float) -> float:
    kept = logs[logs >= floor]
    return float(-np.sum(np.exp2(kept) * kept))


def _check_budget(n: int) -> None:
    budget = get_settings().max_block_entropy_n
    if n > budget:
        raise BudgetExceeded(
            f"block length {n} exceeds the enumeration budget {budget}", n=n, budget=budget
        )


def _entropies(model: MeasureModel, n_max: int) -> list[float]:
    """[H_0, H_1, …, H_{n_max}] from a single sweep."""
    floor = get_settings().entropy_log_floor
    return [_level_entropy(logs, floor) for _, logs in iter_levels(model, n_max)]


def block_entropy(model: MeasureModel, n: int) -> float:
    """H_n in bits.

    Raises:
        BudgetExceeded: if n is above the exhaustive-enumeration budget.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    _check_budget(n)
    return _entropies(model, n)[-1]


def entropy_rate_table(model: MeasureModel, n_max: int) -> EntropyTable:
    """Rows n = 1..n_max of H_n, H_n/n and the increment H_{n+1} − H_n.

    Monotonicity of H_n, H_n/n and the increments is checked at tolerance
    1e-9; violations are listed on the table rather than raised.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    _check_budget(n_max + 1)
    H = _entropies(model, n_max + 1)

    rows = [
        EntropyRow(n=n, H_n=H[n], H_n_over_n=H[n] / n, increment=H[n + 1] - H[n])
        for n in range(1, n_max + 1)
    ]
    violations: list[str] = []
    if rows[0].H_n < -MONOTONE_TOL:
        violations.append("H_1 < 0")
    for prev, cur in zip(rows, rows[1:], strict=False):
        if cur.H_n < prev.H_n - MONOTONE_TOL:
            violations.append(f"H_n decreases at n={cur.n}")
        if cur.increment > prev.increment + MONOTONE_TOL:
            violations.append(f"increment increases at n={cur.n}")
        if cur.H_n_over_n > prev.H_n_over_n + MONOTONE_TOL:
            violations.append(f"H_n/n increases at n={cur.n}")
    violations.extend(f"negative increment at n={r.n}" for r in rows if r.increment < -MONOTONE_TOL)

    table = EntropyTable(
        model_id=model.model_id,
        rows=rows,
        monotone=not violations,
        violations=violations,
    )
    logger.info(
        "entropy_table_built",
        model_id=model.model_id,
        n_max=n_max,
        rate_estimate=table.rate_estimate,
        monotone=table.monotone,
    )
    return table


def entropy_bracket(model: MeasureModel, depth: int | None = None) -> float:
    """The increment H_{d+1} − H_d, an upper bracket on the entropy rate."""
    depth = get_settings().bracket_depth if depth is None else depth
    _check_budget(depth + 1)
    H = _entropies(model, depth + 1)
    return H[depth + 1] - H[depth]
