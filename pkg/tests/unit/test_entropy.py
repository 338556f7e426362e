"""Tests for block entropies and closed-form rates."""

from __future__ import annotations

import itertools
import math
from collections import defaultdict

import pytest

from ergodic_lab.core.errors import BudgetExceeded, NoClosedForm
from ergodic_lab.entropy.block import block_entropy, entropy_bracket, entropy_rate_table
from ergodic_lab.entropy.closed_form import binary_entropy, closed_form_entropy, entropy_target
from ergodic_lab.schemas.measure import BernoulliModel, HiddenMarkovModel
from tests.reference import H_POINT1, H_POINT3, H_QUARTER, MARKOV_RATE


def path_block_entropy(model: HiddenMarkovModel, n: int) -> float:
    """H_n from a sum over every hidden path of length n."""
    Q, pi, emit = model.Q_array, model.pi_array, model.emit
    masses: dict[tuple[int, ...], float] = defaultdict(float)
    for path in itertools.product(range(model.n_states), repeat=n):
        mass = float(pi[path[0]])
        for a, b in itertools.pairwise(path):
            mass *= float(Q[a, b])
        masses[tuple(int(emit[s]) for s in path)] += mass
    return -sum(p * math.log2(p) for p in masses.values() if p > 0.0)


class TestBinaryEntropy:
    def test_known_values(self) -> None:
        assert binary_entropy(0.5) == 1.0
        assert binary_entropy(0.25) == pytest.approx(H_QUARTER, abs=1e-10)
        assert binary_entropy(0.3) == pytest.approx(0.881291, abs=1e-6)

    @pytest.mark.parametrize("p", [0.0, 1.0])
    def test_degenerate(self, p: float) -> None:
        assert binary_entropy(p) == 0.0


class TestClosedForm:
    def test_bernoulli(self, quarter_coin) -> None:
        assert closed_form_entropy(quarter_coin) == pytest.approx(0.811278, abs=1e-6)

    def test_markov(self, markov) -> None:
        assert closed_form_entropy(markov) == pytest.approx(0.557497, abs=1e-6)

    def test_hidden_has_none(self, hidden) -> None:
        with pytest.raises(NoClosedForm):
            closed_form_entropy(hidden)

    def test_mixture_has_none(self, mixture) -> None:
        with pytest.raises(NoClosedForm):
            closed_form_entropy(mixture)


class TestEntropyTarget:
    def test_closed_form_families(self, biased_coin, markov) -> None:
        assert entropy_target(biased_coin) == pytest.approx(H_POINT3, abs=1e-10)
        assert entropy_target(markov) == pytest.approx(MARKOV_RATE, abs=1e-10)

    def test_symmetric_mixture_shares_component_rate(self, mixture) -> None:
        assert entropy_target(mixture) == pytest.approx(H_POINT1, abs=1e-9)

    def test_mixture_of_different_rates(self) -> None:
        from ergodic_lab.schemas.measure import MixtureModel

        model = MixtureModel(
            weights=(0.5, 0.5),
            components=(BernoulliModel(p=0.1), BernoulliModel(p=0.5)),
        )
        assert entropy_target(model) is None

    def test_hidden_uses_bracket(self, hidden) -> None:
        assert entropy_target(hidden) == pytest.approx(entropy_bracket(hidden), abs=1e-15)


class TestBlockEntropy:
    def test_fair_coin_exact(self, fair_coin) -> None:
        assert block_entropy(fair_coin, 7) == pytest.approx(7.0, abs=1e-12)

    def test_quarter_coin_single_symbol(self, quarter_coin) -> None:
        assert block_entropy(quarter_coin, 1) == pytest.approx(0.811278, abs=1e-6)

    @pytest.mark.parametrize("p", [0.1, 0.3, 0.5])
    def test_bernoulli_additive(self, p: float) -> None:
        model = BernoulliModel(p=p)
        h = binary_entropy(p)
        for n in (1, 4, 10, 16):
            assert abs(block_entropy(model, n) - n * h) < 1e-9

    def test_empty_block(self, markov) -> None:
        assert block_entropy(markov, 0) == 0.0

    def test_budget(self, fair_coin) -> None:
        with pytest.raises(BudgetExceeded):
            block_entropy(fair_coin, 27)

    def test_budget_from_environment(self, fair_coin, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("MAX_BLOCK_ENTROPY_N", "8")
        with pytest.raises(BudgetExceeded):
            block_entropy(fair_coin, 9)

    def test_degenerate_model(self) -> None:
        assert block_entropy(BernoulliModel(p=1.0), 10) == 0.0

    @pytest.mark.parametrize("n", [1, 2, 5, 8])
    def test_hidden_matches_path_enumeration(self, hidden, n: int) -> None:
        assert abs(block_entropy(hidden, n) - path_block_entropy(hidden, n)) < 1e-10


class TestEntropyRateTable:
    def test_bernoulli_increments(self, biased_coin) -> None:
        table = entropy_rate_table(biased_coin, 10)
        assert [r.n for r in table.rows] == list(range(1, 11))
        for inc in table.increments:
            assert inc == pytest.approx(H_POINT3, abs=1e-9)
        assert table.monotone

    def test_markov_increments_exact_from_two(self, markov) -> None:
        table = entropy_rate_table(markov, 10)
        for inc in table.increments:
            assert inc == pytest.approx(MARKOV_RATE, abs=1e-9)
        assert table.rows[0].H_n == pytest.approx(binary_entropy(1 / 6), abs=1e-12)
        assert table.rate_estimate == pytest.approx(0.557497, abs=1e-6)

    def test_hidden_increments_decrease(self, hidden) -> None:
        table = entropy_rate_table(hidden, 12)
        assert table.monotone
        assert table.violations == []
        assert table.increments[-1] < table.increments[0]

    def test_mixture_rate_bounded_by_components(self, mixture) -> None:
        table = entropy_rate_table(mixture, 12)
        assert table.monotone
        for inc in table.increments:
            assert inc >= H_POINT1 - 1e-9

    def test_per_symbol_column(self, fair_coin) -> None:
        table = entropy_rate_table(fair_coin, 5)
        assert [r.H_n_over_n for r in table.rows] == pytest.approx([1.0] * 5, abs=1e-12)

    def test_needs_positive_n(self, fair_coin) -> None:
        with pytest.raises(ValueError):
            entropy_rate_table(fair_coin, 0)

    def test_table_budget(self, fair_coin) -> None:
        with pytest.raises(BudgetExceeded):
            entropy_rate_table(fair_coin, 26)
