"""Ideal code lengths, randomness-deficiency traces and dimension proxies.

The ideal coder charges −log2 μ[w] bits. Deficiency is ideal minus LZ78:
a bounded running sup is consistent with randomness, while linear growth
certifies that x is atypical for the model. Only the lower bounds are
hard claims, since LZ78 over-estimates prefix complexity.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import Literal

import numpy as np
import structlog

from ergodic_lab.complexity.lz78 import CODER_ID, LZ78Parser
from ergodic_lab.core.errors import NullCylinder
from ergodic_lab.entropy.closed_form import entropy_target
from ergodic_lab.measures.cylinders import NEG_INF, as_word, log_cylinder, prefix_log_cylinders
from ergodic_lab.schemas.measure import MeasureModel
from ergodic_lab.schemas.reports import (
    CodeLength,
    ConvergenceReport,
    ConvergenceRow,
    DeficiencyRow,
    DeficiencyTrace,
    DimensionEstimate,
)
from ergodic_lab.schemas.word import BinaryWord

logger = structlog.get_logger(__name__)

CoderName = Literal["lz78", "ideal"]


def _ideal_id(model: MeasureModel) -> str:
    return f"ideal({model.model_id})"


def ideal_codelen(model: MeasureModel, w: BinaryWord | str) -> CodeLength:
    """−log2 μ[w] bits.

    Raises:
        NullCylinder: if μ[w] = 0.
    """
    word = as_word(w)
    log_mass = log_cylinder(model, word)
    if log_mass == NEG_INF:
        raise NullCylinder("word has measure zero under the model", n=word.length)
    return CodeLength(bits=0.0 - log_mass, coder_id=_ideal_id(model))


def _ideal_bits(model: MeasureModel, word: BinaryWord, grid: list[int]) -> list[float]:
    logs = prefix_log_cylinders(model, word.prefix(grid[-1]))
    out = []
    for n in grid:
        if logs[n] == NEG_INF:
            raise NullCylinder(f"x↾{n} has measure zero under the model", n=n)
        out.append(0.0 - float(logs[n]))
    return out


def _lz78_bits(word: BinaryWord, grid: list[int]) -> list[int]:
    """LZ78 code lengths of x↾n for each n, from one incremental parse."""
    parser = LZ78Parser()
    bits = word.bits
    out = []
    for n in grid:
        parser.feed(bits[parser.consumed : n].tolist())
        out.append(parser.codelen)
    return out


def _checked_grid(n_grid: Sequence[int], limit: int) -> list[int]:
    grid = [int(n) for n in n_grid]
    if not grid:
        raise ValueError("n_grid must not be empty")
    if any(b <= a for a, b in zip(grid, grid[1:], strict=False)):
        raise ValueError("n_grid must be strictly increasing")
    if grid[0] < 1 or grid[-1] > limit:
        raise ValueError(f"grid points must lie in [1, {limit}]")
    return grid


def deficiency_trace(
    model: MeasureModel, x: BinaryWord | str, n_grid: Sequence[int]
) -> DeficiencyTrace:
    """ideal(x↾n) − lz78(x↾n) with its running supremum along the grid.

    Raises:
        NullCylinder: at the first grid point whose prefix is null.
    """
    word = as_word(x)
    grid = _checked_grid(n_grid, word.length)
    ideal = _ideal_bits(model, word, grid)
    coder = _lz78_bits(word, grid)

    rows = []
    running = -math.inf
    for n, ideal_n, coder_n in zip(grid, ideal, coder, strict=True):
        deficiency = ideal_n - coder_n
        running = max(running, deficiency)
        rows.append(
            DeficiencyRow(
                n=n,
                ideal_bits=ideal_n,
                coder_bits=float(coder_n),
                deficiency=deficiency,
                running_sup=running,
            )
        )
    trace = DeficiencyTrace(model_id=model.model_id, coder_id=CODER_ID, rows=rows)
    logger.info(
        "deficiency_traced",
        model_id=model.model_id,
        n_max=grid[-1],
        sup=trace.sup,
    )
    return trace


def dim_estimates(
    x: BinaryWord | str,
    coder: CoderName,
    n_grid: Sequence[int],
    tail_fraction: float,
    model: MeasureModel | None = None,
) -> DimensionEstimate:
    """Rates codelen(x↾n)/n, with tail min and max as dim and Dim proxies.

    The tail is the largest ⌈tail_fraction·|grid|⌉ grid points. The ideal
    coder needs the model; its rates equal ``log_prob_rate`` exactly.
    """
    if not 0.0 < tail_fraction <= 1.0:
        raise ValueError("tail_fraction must lie in (0, 1]")
    word = as_word(x)
    grid = _checked_grid(n_grid, word.length)
    if coder == "ideal":
        if model is None:
            raise ValueError("the ideal coder needs a model")
        lengths = np.array(_ideal_bits(model, word, grid))
        target = entropy_target(model)
        coder_id = _ideal_id(model)
    else:
        lengths = np.array(_lz78_bits(word, grid), dtype=np.float64)
        target = entropy_target(model) if model is not None else None
        coder_id = CODER_ID

    rates = lengths / np.array(grid, dtype=np.float64)
    tail = rates[-math.ceil(tail_fraction * len(grid)) :]
    report = ConvergenceReport(
        rows=[
            ConvergenceRow(n=n, estimate=float(r), target=target)
            for n, r in zip(grid, rates, strict=True)
        ],
        metadata={"coder": coder_id, "tail_fraction": tail_fraction},
    )
    estimate = DimensionEstimate(
        dim_proxy=float(tail.min()),
        strong_dim_proxy=float(tail.max()),
        report=report,
    )
    logger.info(
        "dimension_estimated",
        coder=coder_id,
        n_max=grid[-1],
        dim_proxy=estimate.dim_proxy,
        strong_dim_proxy=estimate.strong_dim_proxy,
    )
    return estimate
