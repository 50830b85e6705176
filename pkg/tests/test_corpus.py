from fractions import Fraction

import pytest

from rayleigh_forge.corpus import (
    ITEM_ORDER,
    corpus_matroid,
    corpus_matroids,
    corpus_polys,
    run_corpus,
    weight_fuzz,
)
from rayleigh_forge.polynomials import GroundSet, SubsetPoly
from rayleigh_forge.prng import DEFAULT_SEED

F = Fraction


class TestInventory:
    def test_matroid_registry(self):
        names = [name for name, _ in corpus_matroids()]
        assert len(names) == len(set(names))
        assert "graphic-k4" in names
        k4 = corpus_matroid("graphic-k4")
        assert k4.ground.m == 6 and k4.r == 3

    def test_unknown_matroid(self):
        with pytest.raises(KeyError):
            corpus_matroid("no-such-matroid")

    def test_poly_registry(self):
        names = [name for name, _ in corpus_polys()]
        assert len(names) == len(set(names))


class TestRunner:
    def test_single_item_passes(self):
        results = run_corpus(only="golden-invariant-counts")
        assert len(results) == 1
        item = results[0]
        assert item.name == "golden-invariant-counts"
        assert item.passed
        assert item.seconds >= 0
        assert item.detail

    def test_filter_selects_substring(self):
        results = run_corpus(only="twosum")
        assert [r.name for r in results] == [
            "twosum-model-agreement",
            "twosum-crosspair-factorization",
        ]

    def test_no_match_returns_empty(self):
        assert run_corpus(only="zzz-nothing") == []

    def test_registry_names_unique(self):
        names = [name for name, _ in ITEM_ORDER]
        assert len(names) == len(set(names)) == 14

    def test_extra_polys_threaded_into_support_item(self):
        g = GroundSet(("a", "b"))
        # positively correlated weights are not coefficientwise-verified, so the
        # conditional support suite skips them rather than failing
        extra = SubsetPoly(g, {0: F(1), 3: F(1)})
        results = run_corpus(only="support-necessary", extra_polys=(("crafted", extra),))
        assert len(results) == 1 and results[0].passed

    def test_exception_becomes_failure(self):
        g = GroundSet(("a",))
        broken = SubsetPoly(g, {0: F(-1)})  # support extraction raises
        results = run_corpus(only="support-necessary", extra_polys=(("broken", broken),))
        assert not results[0].passed
        assert "exception" in results[0].detail


class TestWeightFuzz:
    def test_small_run_clean(self):
        ok, detail = weight_fuzz(40, DEFAULT_SEED)
        assert ok
        assert "40 instances" in detail

    def test_detail_counts_add_up(self):
        ok, detail = weight_fuzz(25, 99)
        assert ok
        head = detail.split(" instances")[0]
        assert int(head) == 25
