"""Closed-form entropy rates and the reference target used by convergence reports."""

from __future__ import annotations

import numpy as np

from ergodic_lab.core.errors import NoClosedForm
from ergodic_lab.entropy.block import entropy_bracket
from ergodic_lab.measures.cylinders import safe_log2
from ergodic_lab.schemas.measure import (
    BernoulliModel,
    HiddenMarkovModel,
    MarkovModel,
    MeasureModel,
    MixtureModel,
)

_TARGET_AGREEMENT = 1e-9


def binary_entropy(p: float) -> float:
    """−p log2 p − (1−p) log2(1−p), with 0·log 0 = 0."""
    probs = np.array([p, 1.0 - p])
    with np.errstate(invalid="ignore"):
        terms = np.where(probs > 0.0, probs * safe_log2(probs), 0.0)
    return float(-np.sum(terms))


def closed_form_entropy(model: MeasureModel) -> float:
    """Entropy rate in bits for Bernoulli and Markov models.

    Raises:
        NoClosedForm: for hidden-Markov and mixture models.
    """
    if isinstance(model, BernoulliModel):
        return binary_entropy(model.p)
    if isinstance(model, MarkovModel):
        P = model.P_array
        with np.errstate(invalid="ignore"):
            terms = np.where(P > 0.0, P * safe_log2(P), 0.0)
        return float(-model.pi_array @ terms.sum(axis=1))
    raise NoClosedForm(
        f"no closed-form entropy for {model.type} models", model_type=model.type
    )


def entropy_target(model: MeasureModel) -> float | None:
    """The value per-sequence rates should approach, or None when there is none.

    Closed form where it exists; for hidden-Markov models the block-entropy
    bracket; for a mixture, the entropy its components share (a sequence
    converges to its own component's rate, so differing components leave
    no single target).
    """
    if isinstance(model, BernoulliModel | MarkovModel):
        return closed_form_entropy(model)
    if isinstance(model, HiddenMarkovModel):
        return entropy_bracket(model)
    assert isinstance(model, MixtureModel)
    targets = [entropy_target(c) for c in model.components]
    known = [t for t in targets if t is not None]
    if len(known) != len(targets):
        return None
    if max(known) - min(known) > _TARGET_AGREEMENT:
        return None
    return known[0]
