from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from strategies import group_reps
from torsionfree.bases import basis_record
from torsionfree.corpus import generate
from torsionfree.decomp import _generated_bases
from torsionfree.groups import GroupError, group_rep
from torsionfree.indec import (
    SIVerdict,
    property_si_check,
    strong_decomposability_witness_search,
    typeset_obstruction_certificate,
)
from torsionfree.quasi import SplitKind


def G1():
    return group_rep(2, [((1, 0), ()), ((0, 1), "ALL")])


def G2():
    return group_rep(2, [((1, 0), (2,)), ((0, 1), (3,)), ((1, 1), (5,))])


def G3():
    return group_rep(2, [((1, 0), (3,)), ((0, 1), (5,)), ((F(1, 2), F(1, 2)), ())])


def Z2():
    return group_rep(2, [((1, 0), ()), ((0, 1), ())])


class TestCertificate:
    def test_g2_is_certified(self):
        cert = typeset_obstruction_certificate(G2())
        assert cert is not None
        inverted = {s.primes for s in (t.inverted for t in cert.types)}
        assert inverted == {(2,), (3,), (5,)}

    def test_g3_is_not(self):
        assert typeset_obstruction_certificate(G3()) is None

    def test_free_group_is_not(self):
        assert typeset_obstruction_certificate(Z2()) is None

    def test_only_rank_two(self):
        g = group_rep(3, [((1, 0, 0), (2,)), ((0, 1, 0), (3,)), ((0, 0, 1), (5,))])
        assert typeset_obstruction_certificate(g) is None

    def test_deterministic(self):
        a = typeset_obstruction_certificate(G2())
        b = typeset_obstruction_certificate(G2())
        assert a == b


class TestPropertySI:
    def test_holds_for_g2_axes(self):
        g = G2()
        report = property_si_check(g, basis_record(g, [(1, 0), (0, 1)]))
        assert report.verdict is SIVerdict.HOLDS
        assert report.witness is None
        assert not report.quotient.is_finite

    def test_holds_for_every_low_basis_of_g2(self):
        g = G2()
        for basis in _generated_bases(g, 1):
            assert property_si_check(g, basis).verdict is SIVerdict.HOLDS

    def test_fails_for_g3_with_finite_defect(self):
        g = G3()
        report = property_si_check(g, basis_record(g, [(1, 0), (0, 1)]))
        assert report.verdict is SIVerdict.FAILS
        # nothing splits on the nose, but the finite hull quotient is the
        # witness that a quasi-decomposition exists
        assert report.witness is report.quotient
        assert report.quotient.quotient.order == 2

    def test_fails_for_free_group_with_splitting_partition(self):
        g = Z2()
        report = property_si_check(g, basis_record(g, [(1, 0), (0, 1)]))
        assert report.verdict is SIVerdict.FAILS
        assert report.split_attempts[0][1]

    def test_rejects_non_basis(self):
        h = group_rep(2, [((F(1, 2), 0), ()), ((0, 1), ())])
        record = basis_record(h, [(F(1, 2), 0), (0, 1)])
        with pytest.raises(ValueError):
            property_si_check(Z2(), record)


class TestWitnessSearch:
    def test_g2_yields_nothing_at_height_two(self):
        result = strong_decomposability_witness_search(G2(), 2)
        assert not result.found
        assert result.bases_searched > 0

    def test_g3_quasi_splits(self):
        result = strong_decomposability_witness_search(G3(), 2)
        assert result.found
        assert result.kind is SplitKind.QUASI
        assert result.report.quotient.quotient.order == 2

    def test_g1_splits_exactly(self):
        result = strong_decomposability_witness_search(G1(), 1)
        assert result.found
        assert result.kind is SplitKind.EXACT

    def test_free_group_splits(self):
        result = strong_decomposability_witness_search(Z2(), 1)
        assert result.found
        assert result.kind is SplitKind.EXACT


class TestMutualExclusion:
    def test_certificate_and_witness_never_coexist(self):
        for seed in range(8):
            g = generate("cd", seed, max_rank=2).group
            cert = typeset_obstruction_certificate(g)
            witness = strong_decomposability_witness_search(g, 1)
            assert not (cert is not None and witness.found)


@settings(max_examples=25, deadline=None)
@given(group_reps(max_gens=3))
def test_certified_groups_yield_no_witness(g):
    if g.rank != 2:
        return
    if typeset_obstruction_certificate(g) is not None:
        assert not strong_decomposability_witness_search(g, 1).found
