from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from strategies import nonzero_group_reps
from torsionfree.bases import basis_record
from torsionfree.decomp import (
    IsoVerdict,
    SummandFlag,
    apply_span_matrix,
    automorphism_check,
    automorphism_from_summand_isos,
    candidate_vectors,
    check_splitting_partition,
    complete_decomposition_search,
    decomposition_record,
    decompositions_isomorphic,
    enumerate_splitting_partitions,
    partition_record,
)
from torsionfree.groups import (
    Compare,
    GroupError,
    compare,
    group_rep,
    member,
    purify,
    sum_groups,
)
from torsionfree.linalg import Subspace, identity_matrix, vec


def G1():
    return group_rep(2, [((1, 0), ()), ((0, 1), "ALL")])


def G2():
    return group_rep(2, [((1, 0), (2,)), ((0, 1), (3,)), ((1, 1), (5,))])


def G3():
    return group_rep(2, [((1, 0), (3,)), ((0, 1), (5,)), ((F(1, 2), F(1, 2)), ())])


def Z2():
    return group_rep(2, [((1, 0), ()), ((0, 1), ())])


def Z(n):
    return group_rep(n, [(tuple(int(i == j) for j in range(n)), ()) for i in range(n)])


def axes_partition(g, blocks):
    basis = basis_record(g, g.lattice_hull.rows)
    return partition_record(basis, blocks)


class TestPartitionRecord:
    def test_blocks_are_sorted(self):
        basis = basis_record(Z2(), [(1, 0), (0, 1)])
        p = partition_record(basis, [(1, 0)])
        assert p.blocks == ((0, 1),)

    def test_rejects_gaps(self):
        basis = basis_record(Z2(), [(1, 0), (0, 1)])
        with pytest.raises(ValueError):
            partition_record(basis, [(0,)])

    def test_rejects_repeats(self):
        basis = basis_record(Z2(), [(1, 0), (0, 1)])
        with pytest.raises(ValueError):
            partition_record(basis, [(0,), (0, 1)])

    def test_rejects_empty_block(self):
        basis = basis_record(Z2(), [(1, 0), (0, 1)])
        with pytest.raises(ValueError):
            partition_record(basis, [(), (0, 1)])


class TestSplittingPartition:
    def test_g1_splitting_basis(self):
        g = G1()
        basis = basis_record(g, [(1, 0), (0, 1)])
        ok, record = check_splitting_partition(g, partition_record(basis, [(0,), (1,)]))
        assert ok
        assert compare(sum_groups(*record.summands), g) is Compare.EQUAL

    def test_g1_non_splitting_basis(self):
        g = G1()
        basis = basis_record(g, [(1, 0), (1, 1)])
        ok, record = check_splitting_partition(g, partition_record(basis, [(0,), (1,)]))
        assert not ok
        assert record is None

    def test_enumerate_on_non_splitting_basis_is_empty(self):
        g = G1()
        basis = basis_record(g, [(1, 0), (1, 1)])
        assert enumerate_splitting_partitions(g, basis, max_blocks=2) == []

    def test_enumerate_all_proper_partitions_of_z3(self):
        g = Z(3)
        basis = basis_record(g, g.lattice_hull.rows)
        found = enumerate_splitting_partitions(g, basis, max_blocks=3)
        assert len(found) == 4  # three 2-block partitions and one 3-block

    def test_max_blocks_cuts_the_enumeration(self):
        g = Z(3)
        basis = basis_record(g, g.lattice_hull.rows)
        found = enumerate_splitting_partitions(g, basis, max_blocks=2)
        assert len(found) == 3


class TestCompleteDecompositionSearch:
    def test_g1_decomposes(self):
        found = complete_decomposition_search(G1())
        assert found
        for record in found:
            assert sorted(s.rank for s in record.summands) == [1, 1]
            assert all(f is SummandFlag.RANK1 for f in record.flags)
            assert compare(sum_groups(*record.summands), G1()) is Compare.EQUAL

    def test_g2_yields_nothing_at_height_one(self):
        assert complete_decomposition_search(G2()) == ()

    def test_g3_yields_nothing_exactly(self):
        # G3 only quasi-splits; no basis partition splits it on the nose
        assert complete_decomposition_search(G3(), height_bound=2) == ()

    def test_results_are_deduplicated(self):
        found = complete_decomposition_search(Z2(), height_bound=1)
        keys = [tuple(sorted(s.key() for s in r.summands)) for r in found]
        assert len(keys) == len(set(keys))


class TestCandidateVectors:
    def test_members_and_canonical_sign(self):
        g = G3()
        pool = candidate_vectors(g, 1)
        assert pool
        for v in pool:
            assert member(g, v)
            first = next(e for e in v if e)
            assert first > 0

    def test_deterministic(self):
        assert candidate_vectors(G2(), 2) == candidate_vectors(G2(), 2)


class TestIsomorphy:
    def test_same_types_different_blocks(self):
        g = Z2()
        d1 = decomposition_record(
            g, (purify(g, Subspace.span([vec((1, 0))], 2)), purify(g, Subspace.span([vec((0, 1))], 2)))
        )
        d2 = decomposition_record(
            g, (purify(g, Subspace.span([vec((1, 1))], 2)), purify(g, Subspace.span([vec((1, 0))], 2)))
        )
        answer = decompositions_isomorphic(d1, d2)
        assert answer.verdict is IsoVerdict.YES
        m = automorphism_from_summand_isos(d1, d2, answer)
        assert automorphism_check(g, m)

    def test_rank_multisets_differ(self):
        g = Z(4)
        halves = (
            purify(g, Subspace.span([vec((1, 0, 0, 0)), vec((0, 1, 0, 0))], 4)),
            purify(g, Subspace.span([vec((0, 0, 1, 0)), vec((0, 0, 0, 1))], 4)),
        )
        lines = tuple(
            purify(g, Subspace.span([vec(tuple(int(i == j) for j in range(4)))], 4))
            for i in range(4)
        )
        answer = decompositions_isomorphic(
            decomposition_record(g, halves), decomposition_record(g, lines)
        )
        assert answer.verdict is IsoVerdict.NO
        assert "rank" in answer.reason

    def test_unequal_rank2_summands_stay_unknown(self):
        g = Z(4)
        d1 = decomposition_record(
            g,
            (
                purify(g, Subspace.span([vec((1, 0, 0, 0)), vec((0, 1, 0, 0))], 4)),
                purify(g, Subspace.span([vec((0, 0, 1, 0)), vec((0, 0, 0, 1))], 4)),
            ),
        )
        d2 = decomposition_record(
            g,
            (
                purify(g, Subspace.span([vec((1, 0, 0, 0)), vec((0, 0, 1, 0))], 4)),
                purify(g, Subspace.span([vec((0, 1, 0, 0)), vec((0, 0, 0, 1))], 4)),
            ),
        )
        answer = decompositions_isomorphic(d1, d2)
        assert answer.verdict is IsoVerdict.UNKNOWN

    def test_only_yes_assembles(self):
        g = Z(4)
        halves = (
            purify(g, Subspace.span([vec((1, 0, 0, 0)), vec((0, 1, 0, 0))], 4)),
            purify(g, Subspace.span([vec((0, 0, 1, 0)), vec((0, 0, 0, 1))], 4)),
        )
        lines = tuple(
            purify(g, Subspace.span([vec(tuple(int(i == j) for j in range(4)))], 4))
            for i in range(4)
        )
        d1 = decomposition_record(g, halves)
        d2 = decomposition_record(g, lines)
        answer = decompositions_isomorphic(d1, d2)
        with pytest.raises(GroupError):
            automorphism_from_summand_isos(d1, d2, answer)

    def test_different_groups_rejected(self):
        d1 = decomposition_record(G1(), (G1(),), (SummandFlag.UNKNOWN,))
        d2 = decomposition_record(Z2(), (Z2(),), (SummandFlag.UNKNOWN,))
        with pytest.raises(GroupError):
            decompositions_isomorphic(d1, d2)


class TestAutomorphisms:
    def test_swap_fixes_z2(self):
        assert automorphism_check(Z2(), ((0, 1), (1, 0)))

    def test_swap_moves_g1(self):
        # e1 and e2 have different types in Z + Q, so the swap is not an
        # automorphism even though it is unimodular
        assert not automorphism_check(G1(), ((0, 1), (1, 0)))

    def test_divisible_direction_absorbs_scaling(self):
        assert automorphism_check(G1(), ((1, 0), (0, 2)))

    def test_transport_by_identity(self):
        g = G3()
        assert compare(apply_span_matrix(g, identity_matrix(2)), g) is Compare.EQUAL

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            apply_span_matrix(G3(), ((1,),))


@settings(max_examples=50, deadline=None)
@given(nonzero_group_reps())
def test_identity_is_always_an_automorphism(g):
    assert automorphism_check(g, identity_matrix(g.rank))


@settings(max_examples=50, deadline=None)
@given(nonzero_group_reps())
def test_negation_is_always_an_automorphism(g):
    m = tuple(tuple(-e for e in row) for row in identity_matrix(g.rank))
    assert automorphism_check(g, m)


@settings(max_examples=30, deadline=None)
@given(nonzero_group_reps(max_gens=2))
def test_found_decompositions_reassemble(g):
    for record in complete_decomposition_search(g):
        assert compare(sum_groups(*record.summands), g) is Compare.EQUAL
