"""Tests for the telescoping identity and the Birkhoff / error split."""

from __future__ import annotations

import pytest

from ergodic_lab.sampler import sample_word
from ergodic_lab.smb.averages import log_prob_rate
from ergodic_lab.smb.decomposition import decomposition_residual, smb_split, telescoping_terms
from ergodic_lab.smb.information import fk_values


class TestTelescoping:
    def test_terms_are_conditional_informations(self, hidden) -> None:
        x = sample_word(hidden, 12, 3)
        terms = telescoping_terms(hidden, x, 12)
        for k in (0, 4, 11):
            K = 11 - k
            assert terms[k] == pytest.approx(fk_values(hidden, x.shift(k), K)[K], abs=1e-9)

    def test_single_symbol(self, all_models: list) -> None:
        for model in all_models:
            assert decomposition_residual(model, "1", 1) < 1e-12

    def test_residual_small(self, biased_coin, markov, hidden, mixture) -> None:
        cases = [(biased_coin, 10_000), (markov, 10_000), (hidden, 1000), (mixture, 2000)]
        for model, n in cases:
            x = sample_word(model, n, 21)
            assert decomposition_residual(model, x, n) < 1e-8 * max(1.0, n * 0.01)

    def test_n_bounds(self, fair_coin) -> None:
        with pytest.raises(ValueError):
            telescoping_terms(fair_coin, "01", 3)
        with pytest.raises(ValueError):
            telescoping_terms(fair_coin, "01", 0)


class TestSmbSplit:
    def test_components_add_up(self, markov) -> None:
        x = sample_word(markov, 5000, 1)
        report = smb_split(markov, x, 8, [100, 1000, 4000])
        assert [r.n for r in report.rows] == [100, 1000, 4000]
        for row in report.rows:
            assert row.total - row.birkhoff_term == pytest.approx(row.error_term, abs=1e-12)

    def test_total_matches_rate(self, hidden) -> None:
        x = sample_word(hidden, 3000, 2)
        split = smb_split(hidden, x, 16, [2000])
        rate = log_prob_rate(hidden, x, [2000])
        assert split.rows[0].total == pytest.approx(rate.final.estimate, abs=1e-12)

    def test_markov_error_vanishes(self, markov) -> None:
        x = sample_word(markov, 20_100, 9)
        report = smb_split(markov, x, 4, [20_000])
        # for a Markov chain the split telescopes to O(1/n) boundary terms
        assert abs(report.rows[0].error_term) < 1e-3
        assert report.metadata["target"] == pytest.approx(0.5574963279910677, abs=1e-10)
        assert report.K == 4
