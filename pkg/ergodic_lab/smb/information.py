"""Conditional informations f_k and the betting martingale d.

f_k(x) = −log2 μ[x_0 | x_1 … x_k] = log2 μ[x_1…x_k] − log2 μ[x_0…x_k],
with f_0(x) = −log2 μ[x_0]. The martingale d has d(ε) = 2 and
d(x_0…x_k) = μ[x_1…x_k] / μ[x_0…x_k], so log2 d(x_0…x_k) = f_k(x).
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt
import structlog

from ergodic_lab.config import get_settings
from ergodic_lab.core.errors import ConditioningOnNull, NullCylinder
from ergodic_lab.measures.cylinders import (
    NEG_INF,
    as_word,
    prefix_log_cylinders,
    window_log_cylinders,
)
from ergodic_lab.measures.tracking import tracker_for
from ergodic_lab.schemas.measure import MeasureModel
from ergodic_lab.schemas.reports import FkProfile
from ergodic_lab.schemas.word import BinaryWord

logger = structlog.get_logger(__name__)

FloatArray = npt.NDArray[np.float64]


def _require_length(x: BinaryWord, needed: int) -> None:
    if x.length < needed:
        raise ValueError(f"need at least {needed} bits of x, have {x.length}")


def _conditional_information(numerator: FloatArray, joint: FloatArray) -> FloatArray:
    """numerator − joint, refusing null conditioning cylinders and null joints."""
    null_conditioning = np.flatnonzero(numerator == NEG_INF)
    if null_conditioning.size:
        raise ConditioningOnNull(
            "conditioning cylinder has measure zero", position=int(null_conditioning[0])
        )
    null_joint = np.flatnonzero(joint == NEG_INF)
    if null_joint.size:
        raise NullCylinder("prefix has measure zero", n=int(null_joint[0]) + 1)
    return numerator - joint


def fk_values(model: MeasureModel, x: BinaryWord | str, K: int) -> FloatArray:
    """[f_0(x), …, f_K(x)] from two forward passes over x↾(K+1)."""
    word = as_word(x)
    _require_length(word, K + 1)
    joint = prefix_log_cylinders(model, word.prefix(K + 1))[1:]
    conditioning = prefix_log_cylinders(model, word[1 : K + 1])
    return _conditional_information(conditioning, joint)


def fk_profile(
    model: MeasureModel,
    x: BinaryWord | str,
    K: int,
    *,
    window: int | None = None,
    tol: float | None = None,
) -> FkProfile:
    """The profile f_0(x), …, f_K(x), its running max and a stability flag.

    ``stable`` is set when the last ``window`` + 1 values all lie within
    ``tol`` of f_K(x); a profile shorter than the window is never stable.

    Raises:
        ConditioningOnNull: if some [x_1…x_k] is null.
    """
    settings = get_settings()
    window = settings.stability_window if window is None else window
    tol = settings.stability_tol if tol is None else tol
    word = as_word(x)
    values = fk_values(model, word, K)

    f_limit = float(values[K])
    stable = K >= window and bool(np.max(np.abs(values[K - window :] - f_limit)) < tol)
    return FkProfile(
        x_prefix=str(word.prefix(K + 1)),
        values=values.tolist(),
        f_star=float(np.max(values)),
        f_limit_estimate=f_limit,
        stability_window=window,
        stable=stable,
    )


def martingale_values(model: MeasureModel, x: BinaryWord | str, K: int) -> FloatArray:
    """[log2 d(ε), log2 d(x_0), …, log2 d(x_0…x_K)], with log2 d(ε) = 1.

    Tracked incrementally along x and along T x, independently of
    ``fk_values``.
    """
    word = as_word(x)
    _require_length(word, K + 1)
    bits = word.bits[: K + 1].tolist()
    joint = tracker_for(model)
    shifted = tracker_for(model)

    out = np.empty(K + 2)
    out[0] = 1.0
    joint.push(bits[0])
    for k in range(K + 1):
        if k > 0:
            joint.push(bits[k])
            shifted.push(bits[k])
        if shifted.log_mass == NEG_INF:
            raise ConditioningOnNull("conditioning cylinder has measure zero", position=k)
        if joint.log_mass == NEG_INF:
            raise NullCylinder("prefix has measure zero", n=k + 1)
        out[k + 1] = shifted.log_mass - joint.log_mass
    return out


def shifted_fk(model: MeasureModel, x: BinaryWord | str, K: int, n: int) -> FloatArray:
    """f_K(T^k x) for k = 0..n−1, vectorised over windows. Needs n + K ≤ |x|."""
    word = as_word(x)
    _require_length(word, n + K)
    head = word.prefix(n + K)
    joint = window_log_cylinders(model, head, K + 1)
    if K == 0:
        conditioning = np.zeros(n)
    else:
        conditioning = window_log_cylinders(model, head.shift(1), K)
    return _conditional_information(conditioning, joint)
