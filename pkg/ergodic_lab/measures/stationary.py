"""Stationary distributions of row-stochastic matrices.

Dense linear solve for small chains, power iteration on the lazy chain
(I + P)/2 above that; it shares π with P and is aperiodic. A chain without
a unique stationary vector (reducible) surfaces as NonConvergence.
"""

from __future__ import annotations

import math

import numpy as np
import numpy.typing as npt
import structlog

from ergodic_lab.config import get_settings
from ergodic_lab.core.errors import ModelValidationError, NonConvergence

logger = structlog.get_logger(__name__)

FloatArray = npt.NDArray[np.float64]


def _as_stochastic(P: npt.ArrayLike, tol: float) -> FloatArray:
    matrix = np.asarray(P, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
        raise ModelValidationError("transition matrix must be square", field="P")
    if np.any(matrix < 0.0):
        raise ModelValidationError("transition matrix has negative entries", field="P")
    sums = matrix.sum(axis=1)
    for i, s in enumerate(sums):
        if abs(s - 1.0) > tol:
            raise ModelValidationError(
                f"row {i} sums to {float(s)!r}, expected 1",
                field=f"P.{i}",
                detail=repr(float(s)),
            )
    return matrix


def stationary_distribution(
    P: npt.ArrayLike,
    *,
    residual_tol: float | None = None,
    max_iter: int | None = None,
) -> FloatArray:
    """Return π with π·P = π and Σπ = 1.

    Raises:
        NonConvergence: no unique stationary vector within the residual
            tolerance (signals a reducible chain).
    """
    settings = get_settings()
    residual_tol = residual_tol if residual_tol is not None else settings.stationary_residual_tol
    max_iter = max_iter if max_iter is not None else settings.power_iteration_max_iter
    matrix = _as_stochastic(P, settings.prob_sum_tol)
    m = matrix.shape[0]

    if m <= settings.dense_solve_max_states:
        system = matrix.T - np.eye(m)
        system[-1, :] = 1.0
        rhs = np.zeros(m)
        rhs[-1] = 1.0
        try:
            pi = np.linalg.solve(system, rhs)
        except np.linalg.LinAlgError as exc:
            raise NonConvergence(
                "stationary system is singular (reducible chain)", states=m
            ) from exc
        method = "dense_solve"
        iterations = 0
    else:
        lazy = 0.5 * (np.eye(m) + matrix)
        pi = np.full(m, 1.0 / m)
        for iterations in range(1, max_iter + 1):
            nxt = pi @ lazy
            if np.max(np.abs(nxt - pi)) < settings.power_iteration_tol:
                pi = nxt
                break
            pi = nxt
        else:
            raise NonConvergence(
                "power iteration did not converge (reducible chain)",
                states=m,
                iterations=max_iter,
            )
        method = "power_iteration"

    pi = np.clip(pi, 0.0, None)
    pi = pi / pi.sum()
    residual = float(np.max(np.abs(pi @ matrix - pi)))
    if not math.isfinite(residual) or residual >= residual_tol:
        raise NonConvergence(
            f"stationary residual {residual:.3e} above tolerance {residual_tol:.1e}",
            states=m,
            residual=residual,
        )

    logger.debug(
        "stationary_distribution_solved",
        states=m,
        method=method,
        iterations=iterations,
        residual=residual,
    )
    return pi


def chain_period(P: npt.ArrayLike) -> int:
    """Period of the chain restricted to the states reachable from state 0.

    Uses BFS levels on the transition graph: the period is the gcd of
    level[u] + 1 − level[v] over all edges u → v between reached states.
    """
    matrix = np.asarray(P, dtype=np.float64)
    m = matrix.shape[0]
    level = [-1] * m
    level[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in np.flatnonzero(matrix[u] > 0.0):
                if level[v] < 0:
                    level[v] = level[u] + 1
                    nxt.append(int(v))
        frontier = nxt
    period = 0
    for u in range(m):
        if level[u] < 0:
            continue
        for v in np.flatnonzero(matrix[u] > 0.0):
            if level[v] >= 0:
                period = math.gcd(period, level[u] + 1 - level[v])
    return abs(period) if period else 1


def is_periodic(P: npt.ArrayLike) -> bool:
    return chain_period(P) > 1
