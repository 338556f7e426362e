"""Tests for finite unions of cylinders."""

from __future__ import annotations

import pytest

from ergodic_lab.measures.cylinder_set import CylinderSet
from ergodic_lab.schemas.word import BinaryWord


class TestCylinderSet:
    def test_words_deduplicated_and_sorted(self) -> None:
        cs = CylinderSet(["10", "1", "10"])
        assert [str(w) for w in cs.words] == ["1", "10"]
        assert cs.max_length == 2

    def test_rejects_empty(self) -> None:
        with pytest.raises(ValueError):
            CylinderSet([])
        with pytest.raises(ValueError):
            CylinderSet([""])

    def test_antichain_drops_extensions(self) -> None:
        cs = CylinderSet(["1", "10", "011", "01"])
        assert [str(w) for w in cs.antichain()] == ["1", "01"]

    def test_measure_of_nested_set(self, fair_coin) -> None:
        assert CylinderSet(["1", "10"]).measure(fair_coin) == pytest.approx(0.5)

    def test_measure_of_partition(self, markov) -> None:
        assert CylinderSet(["0", "1"]).measure(markov) == pytest.approx(1.0)

    def test_measure_of_disjoint_words(self, fair_coin) -> None:
        assert CylinderSet(["00", "11"]).measure(fair_coin) == pytest.approx(0.5)

    def test_hits(self) -> None:
        x = BinaryWord("0110100")
        hits = CylinderSet(["11", "00"]).hits(x, 6)
        assert hits.tolist() == [False, True, False, False, False, True]

    def test_hits_needs_enough_bits(self) -> None:
        with pytest.raises(ValueError):
            CylinderSet(["11"]).hits(BinaryWord("0110"), 4)

    def test_of_passes_sets_through(self) -> None:
        cs = CylinderSet(["1"])
        assert CylinderSet.of(cs) is cs
        assert [str(w) for w in CylinderSet.of("01").words] == ["01"]
