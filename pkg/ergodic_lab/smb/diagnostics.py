"""Monte Carlo diagnostics over sampled sequences: g̃_N, ∫f* dμ and ∫f_1 dμ.

All suprema over k are truncated at K; the truncation is carried in every
report's metadata.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt
import structlog

from ergodic_lab.entropy.closed_form import entropy_target
from ergodic_lab.measures.cylinders import log_cylinder
from ergodic_lab.measures.enumeration import word_at
from ergodic_lab.sampler.sampling import sample_word
from ergodic_lab.schemas.measure import MeasureModel
from ergodic_lab.schemas.reports import ConvergenceReport, ConvergenceRow, MonteCarloEstimate
from ergodic_lab.schemas.word import BinaryWord
from ergodic_lab.smb.information import fk_values

logger = structlog.get_logger(__name__)

FloatArray = npt.NDArray[np.float64]


def _estimate(samples: FloatArray) -> MonteCarloEstimate:
    n = samples.size
    stderr = float(samples.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return MonteCarloEstimate(mean=float(samples.mean()), stderr=stderr, n_samples=n)


def gtilde_paths(
    model: MeasureModel, x: BinaryWord | str, K: int, N_grid: Sequence[int]
) -> FloatArray:
    """g̃_N(x) = max_{N ≤ k,j ≤ K} |f_k(x) − f_j(x)| for each N in the grid."""
    if not N_grid or max(N_grid) > K:
        raise ValueError("N_grid must be non-empty with every N ≤ K")
    values = fk_values(model, x, K)
    return np.array([float(np.ptp(values[N:])) for N in N_grid])


def gtilde_diagnostic(
    model: MeasureModel,
    N_grid: Sequence[int],
    K: int,
    n_samples: int,
    n_prefix: int,
    seed: int,
) -> ConvergenceReport:
    """Rows (N, mean g̃_N, target 0) averaged over replicas 0..n_samples−1."""
    if n_prefix < K + 1:
        raise ValueError(f"n_prefix must be at least K + 1 = {K + 1}")
    grid = sorted(set(N_grid))
    paths = np.stack(
        [
            gtilde_paths(model, sample_word(model, n_prefix, seed, r), K, grid)
            for r in range(n_samples)
        ]
    )
    estimates = [_estimate(paths[:, i]) for i in range(len(grid))]
    rows = [
        ConvergenceRow(n=N, estimate=e.mean, target=0.0)
        for N, e in zip(grid, estimates, strict=True)
    ]
    logger.info(
        "gtilde_diagnostic_computed",
        model_id=model.model_id,
        K=K,
        n_samples=n_samples,
        first=rows[0].estimate,
        last=rows[-1].estimate,
    )
    return ConvergenceReport(
        rows=rows,
        metadata={
            "model_id": model.model_id,
            "seed": seed,
            "n_samples": n_samples,
            "truncated_at_K": K,
            "stderr": [e.stderr for e in estimates],
        },
    )


def fstar_integral_estimate(
    model: MeasureModel, K: int, n_samples: int, seed: int
) -> MonteCarloEstimate:
    """Monte Carlo mean of f*^{(K)} = max_{k ≤ K} f_k over sampled prefixes of length K + 1."""
    samples = np.array(
        [
            float(np.max(fk_values(model, sample_word(model, K + 1, seed, r), K)))
            for r in range(n_samples)
        ]
    )
    estimate = _estimate(samples)
    logger.info(
        "fstar_integral_estimated",
        model_id=model.model_id,
        K=K,
        mean=estimate.mean,
        stderr=estimate.stderr,
    )
    return estimate


def f1_mean(model: MeasureModel, n_samples: int, seed: int) -> MonteCarloEstimate:
    """Monte Carlo mean of f_1, the empirical counterpart of ∫f dμ = h(μ).

    f_1 depends on x_0 x_1 only, so it is tabulated once over the four
    two-bit words and looked up per sample.
    """
    table = np.array(
        [
            log_cylinder(model, word_at(i, 2)[1]) - log_cylinder(model, word_at(i, 2))
            for i in range(4)
        ]
    )
    index = np.array(
        [int(sample_word(model, 2, seed, r).bits @ np.array([2, 1])) for r in range(n_samples)]
    )
    estimate = _estimate(table[index])
    logger.info(
        "f1_mean_estimated",
        model_id=model.model_id,
        mean=estimate.mean,
        stderr=estimate.stderr,
        target=entropy_target(model),
    )
    return estimate
