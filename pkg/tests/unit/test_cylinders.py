"""Tests for exact cylinder log-probabilities."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from ergodic_lab.core.errors import ConditioningOnNull
from ergodic_lab.measures.cylinders import (
    NEG_INF,
    conditional_next_logprob,
    log_cylinder,
    prefix_log_cylinders,
    suffix_log_cylinders,
    to_hidden,
    window_log_cylinders,
)
from ergodic_lab.measures.enumeration import word_at
from ergodic_lab.schemas.measure import BernoulliModel, HiddenMarkovModel


def brute_force_hidden(model: HiddenMarkovModel, word: str) -> float:
    """Sum over every hidden path; exponential, for cross-checking only."""
    Q, pi, emit = model.Q_array, model.pi_array, model.emit
    total = 0.0
    for path in itertools.product(range(model.n_states), repeat=len(word)):
        if any(emit[s] != int(b) for s, b in zip(path, word, strict=True)):
            continue
        mass = pi[path[0]]
        for a, b in itertools.pairwise(path):
            mass *= Q[a, b]
        total += mass
    return math.log2(total) if total > 0 else NEG_INF


class TestLogCylinder:
    def test_empty_word_has_mass_one(self, all_models: list) -> None:
        for model in all_models:
            assert log_cylinder(model, "") == 0.0

    def test_bernoulli_counts(self, quarter_coin) -> None:
        expected = 2 * math.log2(0.25) + 2 * math.log2(0.75)
        assert log_cylinder(quarter_coin, "0110") == pytest.approx(expected, abs=1e-12)

    def test_markov_pair(self, markov) -> None:
        assert log_cylinder(markov, "01") == pytest.approx(math.log2(1 / 12), abs=1e-12)
        assert log_cylinder(markov, "01") == pytest.approx(-3.5849625, abs=1e-7)

    def test_null_cylinder_is_neg_inf(self) -> None:
        assert log_cylinder(BernoulliModel(p=1.0), "10") == NEG_INF

    def test_degenerate_bernoulli_all_ones(self) -> None:
        assert log_cylinder(BernoulliModel(p=1.0), "111") == 0.0

    def test_mixture_is_weighted_sum(self, mixture) -> None:
        expected = 0.5 * 0.1 * 0.9 + 0.5 * 0.9 * 0.1
        assert 2 ** log_cylinder(mixture, "10") == pytest.approx(expected, abs=1e-14)

    def test_hidden_matches_path_sum(self, hidden) -> None:
        for i in range(2**5):
            word = word_at(i, 5)
            assert log_cylinder(hidden, word) == pytest.approx(
                brute_force_hidden(hidden, word), abs=1e-10
            )

    def test_kolmogorov_consistency(self, all_models: list) -> None:
        for model in all_models:
            for i in range(2**4):
                w = word_at(i, 4)
                children = np.logaddexp2(log_cylinder(model, w + "0"), log_cylinder(model, w + "1"))
                assert children == pytest.approx(log_cylinder(model, w), abs=1e-10)


class TestPassArrays:
    WORD = "0110100111010001"

    def test_prefix_matches_pointwise(self, all_models: list) -> None:
        for model in all_models:
            prefixes = prefix_log_cylinders(model, self.WORD)
            assert prefixes[0] == 0.0
            for j in range(len(self.WORD) + 1):
                assert prefixes[j] == pytest.approx(log_cylinder(model, self.WORD[:j]), abs=1e-10)

    def test_suffix_matches_pointwise(self, all_models: list) -> None:
        for model in all_models:
            suffixes = suffix_log_cylinders(model, self.WORD)
            assert suffixes[-1] == 0.0
            for k in range(len(self.WORD) + 1):
                assert suffixes[k] == pytest.approx(log_cylinder(model, self.WORD[k:]), abs=1e-10)

    def test_windows_match_pointwise(self, all_models: list) -> None:
        for model in all_models:
            windows = window_log_cylinders(model, self.WORD, 5)
            assert windows.size == len(self.WORD) - 4
            for k, value in enumerate(windows):
                assert value == pytest.approx(
                    log_cylinder(model, self.WORD[k : k + 5]), abs=1e-10
                )

    def test_window_length_checked(self, fair_coin) -> None:
        with pytest.raises(ValueError):
            window_log_cylinders(fair_coin, "0101", 5)

    def test_null_prefix_stays_null(self) -> None:
        prefixes = prefix_log_cylinders(BernoulliModel(p=1.0), "1101")
        assert prefixes[2] == 0.0
        assert prefixes[3] == NEG_INF
        assert prefixes[4] == NEG_INF

    def test_long_hidden_prefix_does_not_underflow(self, hidden) -> None:
        prefixes = prefix_log_cylinders(hidden, "01" * 5000)
        assert np.isfinite(prefixes[-1])
        assert prefixes[-1] < -1000


class TestConditionalNext:
    def test_markov_transition(self, markov) -> None:
        assert conditional_next_logprob(markov, "0", 1) == pytest.approx(math.log2(0.1))

    def test_conditionals_sum_to_one(self, all_models: list) -> None:
        for model in all_models:
            zero = conditional_next_logprob(model, "0110", 0)
            one = conditional_next_logprob(model, "0110", 1)
            assert 2**zero + 2**one == pytest.approx(1.0, abs=1e-12)

    def test_null_conditioning_raises(self) -> None:
        with pytest.raises(ConditioningOnNull):
            conditional_next_logprob(BernoulliModel(p=1.0), "0", 1)


class TestToHidden:
    def test_bernoulli_equivalent(self, quarter_coin) -> None:
        hidden = to_hidden(quarter_coin)
        for i in range(2**4):
            w = word_at(i, 4)
            assert log_cylinder(hidden, w) == pytest.approx(
                log_cylinder(quarter_coin, w), abs=1e-12
            )

    def test_markov_equivalent(self, markov) -> None:
        hidden = to_hidden(markov)
        assert hidden.n_states == 2
        assert log_cylinder(hidden, "0110") == pytest.approx(
            log_cylinder(markov, "0110"), abs=1e-12
        )

    def test_hidden_is_identity(self, hidden) -> None:
        assert to_hidden(hidden) is hidden
