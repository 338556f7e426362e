"""Test configuration and shared fixtures."""

from __future__ import annotations

import json
import logging
from pathlib import Path

import pytest

from ergodic_lab.measures.loader import golden_markov, noisy_regime_chain, symmetric_mixture
from ergodic_lab.schemas.measure import (
    BernoulliModel,
    HiddenMarkovModel,
    MarkovModel,
    MixtureModel,
)


@pytest.fixture
def fair_coin() -> BernoulliModel:
    """Provide Bernoulli(0.5)."""
    return BernoulliModel(p=0.5, name="fair")


@pytest.fixture
def quarter_coin() -> BernoulliModel:
    return BernoulliModel(p=0.25, name="quarter")


@pytest.fixture
def biased_coin() -> BernoulliModel:
    """Provide Bernoulli(0.3)."""
    return BernoulliModel(p=0.3, name="biased")


@pytest.fixture
def markov() -> MarkovModel:
    """Provide the chain P = [[0.9, 0.1], [0.5, 0.5]] with π = (5/6, 1/6)."""
    return golden_markov()


@pytest.fixture
def hidden() -> HiddenMarkovModel:
    """Provide the 4-state noisy regime chain."""
    return noisy_regime_chain(switch=0.01, flip=0.05)


@pytest.fixture
def mixture() -> MixtureModel:
    """Provide ½ B(0.1) + ½ B(0.9)."""
    return symmetric_mixture(0.1)


@pytest.fixture
def all_models(fair_coin, markov, hidden, mixture) -> list:
    return [fair_coin, markov, hidden, mixture]


@pytest.fixture
def write_model(tmp_path: Path):
    """Write a model document to a JSON file and return its path."""

    def _write(doc: dict, name: str = "model.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    return _write


@pytest.fixture(autouse=True)
def _detach_log_handlers():
    """Drop handlers bound to a per-test capture stream once the test ends."""
    yield
    logging.getLogger().handlers.clear()
