"""Structural checkers: shift-invariance and the Cesàro correlation condition.

Neither checker decides anything about the infinite object. Shift-invariance
is verified exhaustively up to a finite depth; ergodicity is only labelled
"consistent with" / "inconsistent with" from finitely many (u, v) pairs.
"""

from __future__ import annotations

import math
from typing import Literal

import numpy as np
import numpy.typing as npt
import structlog
from numpy.lib.stride_tricks import sliding_window_view

from ergodic_lab.config import get_settings
from ergodic_lab.core.errors import BudgetExceeded
from ergodic_lab.measures.cylinders import as_word, log_cylinder, to_hidden
from ergodic_lab.measures.enumeration import iter_levels, word_at
from ergodic_lab.measures.stationary import chain_period
from ergodic_lab.schemas.measure import (
    BernoulliModel,
    HiddenMarkovModel,
    MarkovModel,
    MeasureModel,
    MixtureModel,
)
from ergodic_lab.schemas.reports import (
    CheckReport,
    ConvergenceReport,
    ConvergenceRow,
    ViolationRow,
)
from ergodic_lab.schemas.word import BinaryWord

logger = structlog.get_logger(__name__)

FloatArray = npt.NDArray[np.float64]

_WORST_ROWS_KEPT = 10


def _periodic_warnings(model: MeasureModel) -> list[str]:
    if isinstance(model, MarkovModel) and chain_period(model.P_array) > 1:
        return ["periodic"]
    if isinstance(model, HiddenMarkovModel) and chain_period(model.Q_array) > 1:
        return ["periodic"]
    if isinstance(model, MixtureModel):
        flags = {w for c in model.components for w in _periodic_warnings(c)}
        return sorted(flags)
    return []


def check_shift_invariance(model: MeasureModel, depth: int, tol: float) -> CheckReport:
    """Check |μ[0w] + μ[1w] − μ[w]| < tol for every |w| ≤ depth.

    The sum is formed in log space and compared in linear space.
    """
    settings = get_settings()
    if depth > settings.max_invariance_depth:
        raise BudgetExceeded(
            f"depth {depth} exceeds the enumeration budget {settings.max_invariance_depth}",
            depth=depth,
            budget=settings.max_invariance_depth,
        )

    worst = 0.0
    offending: str | None = None
    checked = 0
    kept: list[ViolationRow] = []
    previous: FloatArray | None = None

    for level, logs in iter_levels(model, depth + 1):
        if previous is not None:
            half = previous.size
            lhs = np.exp2(np.logaddexp2(logs[:half], logs[half:]))
            rhs = np.exp2(previous)
            violation = np.abs(lhs - rhs)
            checked += half
            idx = int(np.argmax(violation))
            if violation[idx] > worst:
                worst = float(violation[idx])
                offending = word_at(idx, level - 1)
            top = np.argsort(violation, kind="stable")[::-1][:_WORST_ROWS_KEPT]
            kept.extend(
                ViolationRow(
                    word=word_at(int(i), level - 1),
                    lhs=float(lhs[i]),
                    rhs=float(rhs[i]),
                    abs_violation=float(violation[i]),
                )
                for i in top
            )
            kept = sorted(kept, key=lambda r: -r.abs_violation)[:_WORST_ROWS_KEPT]
        previous = logs

    passed = worst < tol
    verdict = (
        f"shift-invariant up to depth {depth}"
        if passed
        else f"not shift-invariant: worst violation {worst:.3e} at w='{offending}'"
    )
    report = CheckReport(
        check="shift_invariance",
        model_id=model.model_id,
        passed=passed,
        verdict=verdict,
        checked=checked,
        tolerance=tol,
        worst_violation=worst,
        offending_word=None if passed else offending,
        worst_rows=kept,
        warnings=_periodic_warnings(model),
    )
    logger.info(
        "shift_invariance_checked",
        model_id=model.model_id,
        depth=depth,
        passed=passed,
        worst_violation=worst,
    )
    return report


# ── Cesàro correlations ────────────────────────────


def _merge_overlap(u: BinaryWord, v: BinaryWord, k: int) -> BinaryWord | None:
    """The word describing [u] ∩ T^{-k}[v] for k < |u|, or None if u and v disagree."""
    overlap = min(u.length - k, v.length)
    if not np.array_equal(u.bits[k : k + overlap], v.bits[:overlap]):
        return None
    if k + v.length <= u.length:
        return u
    return u + v.shift(overlap)


def _filtered_state(model: HiddenMarkovModel, u: BinaryWord) -> tuple[FloatArray, float]:
    """Hidden-state distribution at the last position of u given u, and log2 μ[u]."""
    Q = model.Q_array
    masks = model.emission_masks
    alpha = model.pi_array
    log_mass = 0.0
    for i, b in enumerate(u.bits.tolist()):
        weights = (alpha if i == 0 else alpha @ Q) * masks[b]
        total = float(weights.sum())
        if total <= 0.0:
            return np.zeros_like(weights), float("-inf")
        log_mass += math.log2(total)
        alpha = weights / total
    return alpha, log_mass


def _emission_likelihood(model: HiddenMarkovModel, v: BinaryWord) -> FloatArray:
    """b(s) = P(v is emitted from position 0 | hidden state s at position 0)."""
    Q = model.Q_array
    masks = model.emission_masks
    beta = np.ones(model.n_states)
    for b in reversed(v.bits.tolist()):
        beta = masks[b] * (Q @ beta)
    return beta


def _joint_exact(
    model: BernoulliModel | MarkovModel | HiddenMarkovModel,
    u: BinaryWord,
    v: BinaryWord,
    n: int,
) -> FloatArray:
    """μ([u] ∩ T^{-k}[v]) for k = 0..n−1."""
    joint = np.zeros(n)
    for k in range(min(n, u.length)):
        merged = _merge_overlap(u, v, k)
        if merged is not None:
            joint[k] = 2.0 ** log_cylinder(model, merged)
    if n <= u.length:
        return joint
    hidden = to_hidden(model)
    alpha, log_mu_u = _filtered_state(hidden, u)
    if log_mu_u == float("-inf"):
        return joint
    mu_u = 2.0**log_mu_u
    b_v = _emission_likelihood(hidden, v)
    state = alpha @ hidden.Q_array
    for k in range(u.length, n):
        joint[k] = mu_u * float(state @ b_v)
        state = state @ hidden.Q_array
    return joint


def _joint_monte_carlo(
    model: MeasureModel,
    u: BinaryWord,
    v: BinaryWord,
    n: int,
    n_samples: int,
    seed: int,
) -> tuple[FloatArray, float]:
    from ergodic_lab.sampler.sampling import sample_word

    length = max(n - 1 + v.length, u.length)
    totals = np.zeros(n)
    per_sample = np.empty(n_samples)
    for replica in range(n_samples):
        bits = sample_word(model, length, seed, replica).bits
        if not np.array_equal(bits[: u.length], u.bits):
            per_sample[replica] = 0.0
            continue
        windows = sliding_window_view(bits[: n - 1 + v.length], v.length)
        hits = np.all(windows == v.bits, axis=1).astype(np.float64)
        totals += hits
        per_sample[replica] = float(hits.mean())
    stderr = float(per_sample.std(ddof=1) / math.sqrt(n_samples)) if n_samples > 1 else 0.0
    return totals / n_samples, stderr


def correlation_cesaro(
    model: MeasureModel,
    u: BinaryWord | str,
    v: BinaryWord | str,
    n: int,
    *,
    method: Literal["auto", "exact", "monte_carlo"] = "auto",
    n_samples: int = 10_000,
    seed: int = 0,
    tol: float = 0.01,
) -> ConvergenceReport:
    """c_m = (1/m) Σ_{k<m} μ([u] ∩ T^{-k}[v]) for m = 1..n, against μ[u]·μ[v].

    The exact path covers every family: Bernoulli, Markov and hidden-Markov
    through matrix powers of the hidden chain, mixtures by linearity. The
    Monte Carlo path estimates the joint frequencies from sampled sequences
    and is kept as a cross-check.
    """
    u_word, v_word = as_word(u), as_word(v)
    if u_word.length == 0 or v_word.length == 0:
        raise ValueError("u and v must be non-empty words")
    if n < 1:
        raise ValueError("n must be positive")

    target = 2.0 ** (log_cylinder(model, u_word) + log_cylinder(model, v_word))
    metadata: dict[str, object] = {
        "model_id": model.model_id,
        "u": str(u_word),
        "v": str(v_word),
    }

    if method == "monte_carlo":
        joint, stderr = _joint_monte_carlo(model, u_word, v_word, n, n_samples, seed)
        metadata.update(method="monte_carlo", n_samples=n_samples, seed=seed, stderr=stderr)
    else:
        if isinstance(model, MixtureModel):
            joint = sum(
                (
                    w * _joint_exact(c, u_word, v_word, n)
                    for w, c in zip(model.weights, model.components, strict=True)
                ),
                start=np.zeros(n),
            )
        else:
            joint = _joint_exact(model, u_word, v_word, n)
        metadata.update(method="exact")

    cesaro = np.cumsum(joint) / np.arange(1, n + 1)
    rows = [
        ConvergenceRow(n=m, estimate=float(cesaro[m - 1]), target=target)
        for m in range(1, n + 1)
    ]
    final_error = abs(float(cesaro[-1]) - target)
    consistent = final_error <= tol
    metadata["verdict"] = (
        "consistent with ergodicity" if consistent else "inconsistent with ergodicity"
    )
    metadata["tolerance"] = tol

    logger.info(
        "correlation_cesaro_computed",
        model_id=model.model_id,
        method=metadata["method"],
        n=n,
        estimate=float(cesaro[-1]),
        target=target,
        consistent=consistent,
    )
    return ConvergenceReport(rows=rows, metadata=metadata)
