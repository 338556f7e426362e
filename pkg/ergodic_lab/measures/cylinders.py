"""Exact cylinder log-probabilities (base 2) for every measure family.

All probability arithmetic stays in log space. A null cylinder is -inf and
absorbs through sums; nothing here raises on probability zero.

Hidden-Markov recursions renormalize their state vector at every step and
accumulate the log of the normalizers, so prefixes of 10^7 bits do not
underflow.
"""

from __future__ import annotations

import math

import numpy as np
import numpy.typing as npt
from numpy.lib.stride_tricks import sliding_window_view

from ergodic_lab.schemas.measure import (
    BernoulliModel,
    HiddenMarkovModel,
    MarkovModel,
    MeasureModel,
    MixtureModel,
)
from ergodic_lab.schemas.word import BinaryWord

FloatArray = npt.NDArray[np.float64]

NEG_INF = float("-inf")


def as_word(w: BinaryWord | str) -> BinaryWord:
    return w if isinstance(w, BinaryWord) else BinaryWord(w)


def safe_log2(values: npt.ArrayLike) -> FloatArray:
    """Elementwise log2 mapping 0 to -inf without warnings."""
    with np.errstate(divide="ignore"):
        return np.log2(np.asarray(values, dtype=np.float64))


def log2_scalar(value: float) -> float:
    return math.log2(value) if value > 0.0 else NEG_INF


def bernoulli_bit_logs(model: BernoulliModel) -> FloatArray:
    """[log2 μ[0], log2 μ[1]]."""
    return safe_log2([1.0 - model.p, model.p])


def _count_term(count: int, log_p: float) -> float:
    # 0 · log 0 = 0
    return 0.0 if count == 0 else count * log_p


# ── log μ[w] ───────────────────────────────────────


def log_cylinder(model: MeasureModel, w: BinaryWord | str) -> float:
    """log2 μ[w]; μ[ε] = 1 so the empty word gives 0."""
    word = as_word(w)
    if word.length == 0:
        return 0.0
    if isinstance(model, BernoulliModel):
        lp0, lp1 = bernoulli_bit_logs(model)
        return _count_term(word.count_ones(), float(lp1)) + _count_term(
            word.count_zeros(), float(lp0)
        )
    return float(prefix_log_cylinders(model, word)[-1])


def prefix_log_cylinders(model: MeasureModel, w: BinaryWord | str) -> FloatArray:
    """L[j] = log2 μ[w↾j] for j = 0..|w|, L[0] = 0, in one forward pass."""
    bits = as_word(w).bits
    if isinstance(model, BernoulliModel):
        steps = bernoulli_bit_logs(model)[bits]
        return np.concatenate(([0.0], np.cumsum(steps)))
    if isinstance(model, MarkovModel):
        return _markov_prefix(model, bits)
    if isinstance(model, HiddenMarkovModel):
        return _hidden_prefix(model, bits)
    return _mixture_combine(model, [prefix_log_cylinders(c, w) for c in model.components])


def suffix_log_cylinders(model: MeasureModel, w: BinaryWord | str) -> FloatArray:
    """S[k] = log2 μ[w_k … w_{|w|−1}] for k = 0..|w|, S[|w|] = 0, in one backward pass."""
    bits = as_word(w).bits
    n = bits.size
    if isinstance(model, BernoulliModel):
        steps = bernoulli_bit_logs(model)[bits]
        return np.concatenate((np.cumsum(steps[::-1])[::-1], [0.0]))
    if isinstance(model, MarkovModel):
        out = np.zeros(n + 1)
        if n == 0:
            return out
        log_p = safe_log2(model.P_array)
        log_pi = safe_log2(model.pi_array)
        steps = log_p[bits[:-1], bits[1:]]
        tails = np.concatenate((np.cumsum(steps[::-1])[::-1], [0.0]))
        out[:n] = log_pi[bits] + tails
        return out
    if isinstance(model, HiddenMarkovModel):
        return _hidden_suffix(model, bits)
    return _mixture_combine(model, [suffix_log_cylinders(c, w) for c in model.components])


def window_log_cylinders(model: MeasureModel, w: BinaryWord | str, length: int) -> FloatArray:
    """log2 μ[w_k … w_{k+length−1}] for every k = 0..|w|−length (vectorised over k)."""
    bits = as_word(w).bits
    n = bits.size
    if length < 1 or length > n:
        raise ValueError(f"window length {length} outside [1, {n}]")
    count = n - length + 1
    if isinstance(model, BernoulliModel):
        steps = bernoulli_bit_logs(model)[bits]
        return sliding_window_view(steps, length).sum(axis=1)
    if isinstance(model, MarkovModel):
        log_pi = safe_log2(model.pi_array)
        out = log_pi[bits[:count]].copy()
        if length > 1:
            steps = safe_log2(model.P_array)[bits[:-1], bits[1:]]
            out += sliding_window_view(steps, length - 1).sum(axis=1)
        return out
    if isinstance(model, HiddenMarkovModel):
        return _hidden_windows(model, bits, length)
    return _mixture_combine(
        model, [window_log_cylinders(c, w, length) for c in model.components]
    )


def conditional_next_logprob(model: MeasureModel, w: BinaryWord | str, b: int) -> float:
    """log2 μ[w·b] − log2 μ[w].

    Raises:
        ConditioningOnNull: if μ[w] = 0.
    """
    from ergodic_lab.measures.tracking import tracker_for

    tracker = tracker_for(model)
    tracker.feed(as_word(w).bits)
    return tracker.next_logprob(int(b))


# ── family internals ───────────────────────────────


def _markov_prefix(model: MarkovModel, bits: npt.NDArray[np.uint8]) -> FloatArray:
    n = bits.size
    out = np.zeros(n + 1)
    if n == 0:
        return out
    log_p = safe_log2(model.P_array)
    log_pi = safe_log2(model.pi_array)
    steps = log_p[bits[:-1], bits[1:]]
    out[1:] = log_pi[bits[0]] + np.concatenate(([0.0], np.cumsum(steps)))
    return out


def _hidden_prefix(model: HiddenMarkovModel, bits: npt.NDArray[np.uint8]) -> FloatArray:
    n = bits.size
    out = np.full(n + 1, NEG_INF)
    out[0] = 0.0
    Q = model.Q_array
    masks = model.emission_masks
    alpha = model.pi_array
    acc = 0.0
    for i, b in enumerate(bits.tolist()):
        weights = (alpha if i == 0 else alpha @ Q) * masks[b]
        total = float(weights.sum())
        if total <= 0.0:
            break
        acc += math.log2(total)
        alpha = weights / total
        out[i + 1] = acc
    return out


def _hidden_suffix(model: HiddenMarkovModel, bits: npt.NDArray[np.uint8]) -> FloatArray:
    n = bits.size
    out = np.full(n + 1, NEG_INF)
    out[n] = 0.0
    Q = model.Q_array
    masks = model.emission_masks
    pi = model.pi_array
    beta = np.ones(model.n_states)
    acc = 0.0
    seq = bits.tolist()
    for k in range(n - 1, -1, -1):
        weights = masks[seq[k]] * (Q @ beta)
        scale = float(weights.max())
        if scale <= 0.0:
            break
        acc += math.log2(scale)
        beta = weights / scale
        mass = float(pi @ beta)
        if mass <= 0.0:
            break
        out[k] = acc + math.log2(mass)
    return out


def _hidden_windows(
    model: HiddenMarkovModel, bits: npt.NDArray[np.uint8], length: int
) -> FloatArray:
    count = bits.size - length + 1
    Q = model.Q_array
    masks = model.emission_masks
    alpha = model.pi_array[None, :] * masks[bits[:count]]
    acc = np.zeros(count)
    for j in range(length):
        if j > 0:
            alpha = (alpha @ Q) * masks[bits[j : j + count]]
        totals = alpha.sum(axis=1)
        acc += safe_log2(totals)
        alpha = np.divide(
            alpha, totals[:, None], out=np.zeros_like(alpha), where=totals[:, None] > 0.0
        )
    return acc


def _mixture_combine(model: MixtureModel, per_component: list[FloatArray]) -> FloatArray:
    stacked = np.stack(per_component) + model.log_weights[:, None]
    return np.logaddexp2.reduce(stacked, axis=0)


def to_hidden(model: BernoulliModel | MarkovModel | HiddenMarkovModel) -> HiddenMarkovModel:
    """Hidden-Markov representation of an ergodic-family model (bits as hidden states)."""
    if isinstance(model, HiddenMarkovModel):
        return model
    if isinstance(model, BernoulliModel):
        row = (1.0 - model.p, model.p)
        return HiddenMarkovModel(Q=(row, row), emit=(0, 1), pi_h=row, name=model.model_id)
    return HiddenMarkovModel(
        Q=model.P,
        emit=(0, 1),
        pi_h=model.pi,
        allow_nonstationary=model.allow_nonstationary,
        name=model.model_id,
    )
