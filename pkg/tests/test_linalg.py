from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import integer_matrices, vectors
from torsionfree.linalg import (
    RationalLattice,
    Subspace,
    det,
    hermite_normal_form,
    identity_matrix,
    integer_kernel,
    mat,
    mat_inverse,
    mat_mul,
    rational_kernel,
    rref,
    smith_normal_form,
    solve_in_rows,
    vec,
)


def imat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def idet(a):
    return det(mat(a))


class TestRref:
    def test_known_reduction(self):
        r, t, pivots = rref(mat([[2, 4], [1, 3]]))
        assert r == mat([[1, 0], [0, 1]])
        assert pivots == (0, 1)

    def test_transform_reassembles(self):
        rows = mat([[2, 4, 6], [1, 2, 3], [0, 1, 1]])
        r, t, _ = rref(rows)
        assert mat_mul(t, rows) == r

    @given(integer_matrices(3, 3))
    def test_rref_idempotent(self, entries):
        rows = mat(entries)
        r, _, p = rref(rows)
        r2, _, p2 = rref(r)
        assert r == r2 and p == p2


class TestSolve:
    def test_dependent_rows(self):
        rows = mat([[1, 1], [2, 2], [0, 1]])
        c = solve_in_rows(rows, vec([3, 4]))
        assert c is not None
        combo = tuple(
            sum(ci * row[j] for ci, row in zip(c, rows)) for j in range(2)
        )
        assert combo == vec([3, 4])

    def test_unsolvable(self):
        assert solve_in_rows(mat([[1, 0]]), vec([0, 1])) is None

    @given(integer_matrices(2, 3), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
    def test_solution_verifies(self, entries, coeffs):
        rows = mat(entries)
        target = vec(
            [sum(c * row[j] for c, row in zip(coeffs, rows)) for j in range(3)]
        )
        c = solve_in_rows(rows, target)
        assert c is not None
        assert (
            vec([sum(ci * row[j] for ci, row in zip(c, rows)) for j in range(3)])
            == target
        )


class TestKernel:
    @given(integer_matrices(3, 2))
    def test_kernel_annihilates(self, entries):
        rows = mat(entries)
        for k in rational_kernel(rows):
            assert all(
                sum(ki * row[j] for ki, row in zip(k, rows)) == 0 for j in range(2)
            )

    @given(integer_matrices(3, 2))
    def test_rank_nullity(self, entries):
        rows = mat(entries)
        _, _, pivots = rref(rows)
        assert len(rational_kernel(rows)) + len(pivots) == 3


class TestHermite:
    def test_known_form(self):
        h, u = hermite_normal_form([[2, 0], [0, 2], [1, 1]])
        nonzero = [r for r in h if any(r)]
        assert nonzero == [(1, 1), (0, 2)]

    @given(integer_matrices(3, 3))
    def test_reassembly_and_unimodularity(self, entries):
        h, u = hermite_normal_form(entries)
        assert imat_mul(u, tuple(tuple(r) for r in entries)) == tuple(
            tuple(r) for r in h
        )
        assert abs(idet(u)) == 1

    @given(integer_matrices(4, 3))
    def test_echelon_shape(self, entries):
        h, _ = hermite_normal_form(entries)
        nonzero = [r for r in h if any(r)]
        last = -1
        for r in nonzero:
            lead = next(j for j, e in enumerate(r) if e)
            assert lead > last
            assert r[lead] > 0
            last = lead
        # entries above a pivot are reduced
        for i, r in enumerate(nonzero):
            lead = next(j for j, e in enumerate(r) if e)
            for k in range(i):
                assert 0 <= nonzero[k][lead] < r[lead]


class TestSmith:
    def test_known_form(self):
        d, _, _ = smith_normal_form([[2, 0], [0, 3]])
        assert d == (1, 6)

    @given(integer_matrices(3, 3))
    @settings(max_examples=60)
    def test_diagonalization(self, entries):
        d, u, v = smith_normal_form(entries)
        prod = imat_mul(imat_mul(u, tuple(tuple(r) for r in entries)), v)
        for i, row in enumerate(prod):
            for j, e in enumerate(row):
                if i == j and i < len(d):
                    assert e == d[i]
                else:
                    assert e == 0
        for a, b in zip(d, d[1:]):
            assert b % a == 0
        assert abs(idet(u)) == 1 and abs(idet(v)) == 1


class TestIntegerKernel:
    def test_saturated(self):
        # kernel vectors of [[2,4]] over Z: the relation is primitive
        k = integer_kernel([[2, 4], [1, 2]])
        assert len(k) == 1
        assert abs(k[0][0]) == 1 or abs(k[0][1]) == 1

    @given(integer_matrices(3, 2))
    def test_annihilates(self, entries):
        for k in integer_kernel(entries):
            assert all(
                sum(ki * row[j] for ki, row in zip(k, entries)) == 0
                for j in range(2)
            )


class TestSubspace:
    def test_dimension_formula(self):
        a = Subspace.span([vec([1, 0, 0]), vec([0, 1, 0])], 3)
        b = Subspace.span([vec([0, 1, 0]), vec([0, 0, 1])], 3)
        assert a.sum(b).dim == 3
        assert a.intersect(b).dim == 1
        assert a.intersect(b).contains_vector(vec([0, 1, 0]))

    @given(
        st.lists(vectors(3), min_size=1, max_size=2),
        st.lists(vectors(3), min_size=1, max_size=2),
    )
    @settings(max_examples=60)
    def test_dimension_formula_random(self, va, vb):
        a = Subspace.span([vec(v) for v in va], 3)
        b = Subspace.span([vec(v) for v in vb], 3)
        assert a.dim + b.dim == a.sum(b).dim + a.intersect(b).dim

    def test_reduce_is_canonical_coset_map(self):
        s = Subspace.span([vec([1, 2])], 2)
        x = vec([3, 1])
        r = s.reduce(x)
        # residue differs from x by a subspace element, and is fixed by reduce
        assert s.contains_vector(tuple(a - b for a, b in zip(x, r)))
        assert s.reduce(r) == r

    def test_contains_subspace(self):
        big = Subspace.full(2)
        small = Subspace.span([vec([1, 1])], 2)
        assert big.contains_subspace(small)
        assert not small.contains_subspace(big)


class TestRationalLattice:
    def test_canonical_rows_independent_of_presentation(self):
        l1 = RationalLattice.from_generators([vec([1, 0]), vec([0, 1])], 2)
        l2 = RationalLattice.from_generators(
            [vec([1, 1]), vec([0, 1]), vec([1, 0])], 2
        )
        assert l1.rows == l2.rows

    def test_fractional_lattice(self):
        lat = RationalLattice.from_generators([vec([Fraction(1, 2), 0])], 2)
        assert lat.contains(vec([Fraction(3, 2), 0]))
        assert not lat.contains(vec([Fraction(1, 4), 0]))
        assert lat.coordinates(vec([1, 0])) == (2,)

    def test_intersect_subspace(self):
        lat = RationalLattice.from_generators([vec([1, 0]), vec([0, 1])], 2)
        line = Subspace.span([vec([2, 3])], 2)
        inner = lat.intersect_subspace(line)
        assert inner.rank == 1
        # the intersection with the line through (2,3) is generated primitively
        assert inner.rows[0] in (vec([2, 3]), vec([-2, -3]))

    @given(st.lists(vectors(2, max_num=2, max_den=4), min_size=1, max_size=3))
    @settings(max_examples=60)
    def test_generators_are_members(self, vs):
        lat = RationalLattice.from_generators([vec(v) for v in vs], 2)
        for v in vs:
            assert lat.contains(vec(v))


class TestMatrixBasics:
    def test_inverse(self):
        m = mat([[1, 2], [3, 5]])
        assert mat_mul(m, mat_inverse(m)) == identity_matrix(2)

    def test_singular_raises(self):
        with pytest.raises(ValueError):
            mat_inverse(mat([[1, 2], [2, 4]]))

    def test_det(self):
        assert det(mat([[2, 1], [1, 1]])) == 1
        assert det(mat([[1, 2], [2, 4]])) == 0
