"""Exact rational and integer linear algebra.

Vectors are tuples of Fractions acting as rows; a matrix is a tuple of row
vectors.  Maps compose on the right: ``apply_matrix(x, M)`` is the row-vector
product x*M, so the rows of M are the images of the coordinate vectors.
Everything is exact -- no floats, no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


def vec(entries) -> Vec:
    return tuple(Fraction(e) for e in entries)


def mat(rows) -> Mat:
    out = tuple(vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def identity_matrix(n: int) -> Mat:
    return tuple(unit_vec(n, i) for i in range(n))


def is_zero_vec(x: Vec) -> bool:
    return all(e == 0 for e in x)


def vadd(x: Vec, y: Vec) -> Vec:
    return tuple(a + b for a, b in zip(x, y, strict=True))


def vsub(x: Vec, y: Vec) -> Vec:
    return tuple(a - b for a, b in zip(x, y, strict=True))


def vscale(c, x: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in x)


def apply_matrix(x: Vec, m: Mat) -> Vec:
    """Row-vector times matrix: the image of x under the map with rows m."""
    if len(x) != len(m):
        raise ValueError("dimension mismatch")
    out = zero_vec(len(m[0])) if m else ()
    for coeff, row in zip(x, m):
        if coeff:
            out = vadd(out, vscale(coeff, row))
    return out


def mat_mul(a: Mat, b: Mat) -> Mat:
    return tuple(apply_matrix(row, b) for row in a)


def transpose(a: Mat) -> Mat:
    if not a:
        return ()
    return tuple(tuple(row[j] for row in a) for j in range(len(a[0])))


def mat_inverse(a: Mat) -> Mat:
    """Inverse of a square rational matrix (raises on singular input)."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    aug = [list(a[i]) + list(unit_vec(n, i)) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [e * inv for e in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [e - f * g for e, g in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def det(a: Mat) -> Fraction:
    n = len(a)
    rows = [list(r) for r in a]
    sign = 1
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        d *= rows[col][col]
        inv = Fraction(1) / rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col]:
                f = rows[r][col] * inv
                rows[r] = [e - f * g for e, g in zip(rows[r], rows[col])]
    return d * sign


# ---------------------------------------------------------------------------
# Reduced row echelon form and linear solving
# ---------------------------------------------------------------------------


def rref(rows: Mat) -> tuple[Mat, Mat, tuple[int, ...]]:
    """Reduced row echelon form with transform.

    Returns (R, T, pivots) where R consists of the nonzero echelon rows
    (leading coefficient 1, pivot columns cleared elsewhere), T are the
    corresponding combination rows with R[i] == T[i] * rows, and pivots are
    the pivot column indices of R.
    """
    if not rows:
        return (), (), ()
    ncols = len(rows[0])
    work = [list(r) for r in rows]
    tr = [list(unit_vec(len(rows), i)) for i in range(len(rows))]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        tr[rank], tr[piv] = tr[piv], tr[rank]
        inv = Fraction(1) / work[rank][col]
        work[rank] = [e * inv for e in work[rank]]
        tr[rank] = [e * inv for e in tr[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [e - f * g for e, g in zip(work[r], work[rank])]
                tr[r] = [e - f * g for e, g in zip(tr[r], tr[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    r_rows = tuple(tuple(row) for row in work[:rank])
    t_rows = tuple(tuple(row) for row in tr[:rank])
    return r_rows, t_rows, tuple(pivots)


def echelon_coordinates(rows: Mat, pivots: tuple[int, ...], x: Vec) -> Vec | None:
    """Coordinates of x in echelon rows (distinct pivots), or None if outside."""
    coeffs = [Fraction(0)] * len(rows)
    residual = list(x)
    for i, (row, piv) in enumerate(zip(rows, pivots)):
        c = residual[piv] / row[piv]
        if c:
            coeffs[i] = c
            for j in range(piv, len(residual)):
                residual[j] -= c * row[j]
    if any(residual):
        return None
    return tuple(coeffs)


def solve_in_rows(rows: Mat, target: Vec) -> Vec | None:
    """Express target as a rational combination of the given rows.

    Returns a coefficient vector c with c * rows == target, or None when the
    target lies outside the row span.  Uses one rref with transform.
    """
    if not rows:
        return () if is_zero_vec(target) else None
    r, t, pivots = rref(rows)
    u = echelon_coordinates(r, pivots, target)
    if u is None:
        return None
    coeffs = zero_vec(len(rows))
    for ui, trow in zip(u, t):
        if ui:
            coeffs = vadd(coeffs, vscale(ui, trow))
    return coeffs


def rational_kernel(rows: Mat) -> Mat:
    """Basis of the left kernel {x : x * rows == 0} over Q."""
    if not rows:
        return ()
    n = len(rows)
    work = [list(rows[i]) + list(unit_vec(n, i)) for i in range(n)]
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((r2 for r2 in range(rank, n) if work[r2][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = Fraction(1) / work[rank][col]
        work[rank] = [e * inv for e in work[rank]]
        for r2 in range(n):
            if r2 != rank and work[r2][col]:
                f = work[r2][col]
                work[r2] = [e - f * g for e, g in zip(work[r2], work[rank])]
        rank += 1
    return tuple(tuple(row[ncols:]) for row in work[rank:])


# ---------------------------------------------------------------------------
# Integer normal forms
# ---------------------------------------------------------------------------

IMat = tuple[tuple[int, ...], ...]


def hermite_normal_form(rows) -> tuple[IMat, IMat]:
    """Row-style Hermite normal form of an integer matrix.

    Returns (H, U) with U unimodular over Z and U * rows == H.  H is in row
    echelon form: pivots positive, entries above each pivot reduced into
    [0, pivot), zero rows at the bottom.  The number of rows is preserved.
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    rank = 0
    for col in range(n):
        # gcd-eliminate column entries below the current rank row
        piv = None
        for r in range(rank, m):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        u[rank], u[piv] = u[piv], u[rank]
        for r in range(rank + 1, m):
            while a[r][col] != 0:
                if abs(a[r][col]) < abs(a[rank][col]):
                    a[rank], a[r] = a[r], a[rank]
                    u[rank], u[r] = u[r], u[rank]
                q = a[r][col] // a[rank][col]
                if q:
                    a[r] = [x - q * y for x, y in zip(a[r], a[rank])]
                    u[r] = [x - q * y for x, y in zip(u[r], u[rank])]
                else:
                    break
        if a[rank][col] < 0:
            a[rank] = [-x for x in a[rank]]
            u[rank] = [-x for x in u[rank]]
        for r in range(rank):
            q = a[r][col] // a[rank][col]
            if q:
                a[r] = [x - q * y for x, y in zip(a[r], a[rank])]
                u[r] = [x - q * y for x, y in zip(u[r], u[rank])]
        rank += 1
        if rank == m:
            break
    return tuple(map(tuple, a)), tuple(map(tuple, u))


def smith_normal_form(rows) -> tuple[tuple[int, ...], IMat, IMat]:
    """Smith normal form with transforms.

    Returns (d, U, V) where d is the tuple of nonzero invariant factors
    (positive, each dividing the next) and U * rows * V is the diagonal
    matrix carrying d.  U and V are unimodular over Z.
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    limit = min(m, n)
    while t < limit:
        # find a nonzero pivot in the remaining block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0:
                    if piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    addmul_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            # clear row t
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    addmul_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        # enforce divisibility of the remaining block by the pivot
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            addmul_row(t, offender, 1)
            continue
        t += 1
    d = tuple(a[i][i] for i in range(limit) if i < limit and a[i][i] != 0)
    return d, tuple(map(tuple, u)), tuple(map(tuple, v))


def integer_kernel(rows) -> IMat:
    """Z-basis of the integer left kernel {x in Z^m : x * rows == 0}.

    The returned lattice is saturated (it is the full integer kernel).
    """
    a = [list(map(int, r)) for r in rows]
    if not a:
        return ()
    h, u = hermite_normal_form(a)
    out = [u[i] for i in range(len(h)) if all(e == 0 for e in h[i])]
    return tuple(map(tuple, out))


# ---------------------------------------------------------------------------
# Subspaces of Q^n (canonical RREF basis)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n held by its canonical reduced-echelon basis."""

    ambient_dim: int
    rows: Mat
    pivots: tuple[int, ...]

    @staticmethod
    def span(vectors, ambient_dim: int) -> "Subspace":
        rows = mat(vectors)
        for r in rows:
            if len(r) != ambient_dim:
                raise ValueError("vector length %d does not match ambient %d" % (len(r), ambient_dim))
        r, _t, p = rref(rows)
        return Subspace(ambient_dim, r, p)

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, (), ())

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, identity_matrix(ambient_dim), tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def contains_vector(self, x: Vec) -> bool:
        return is_zero_vec(self.reduce(x))

    def reduce(self, x: Vec) -> Vec:
        """Canonical coset representative of x modulo this subspace."""
        if len(x) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        residual = list(x)
        for row, piv in zip(self.rows, self.pivots):
            c = residual[piv]
            if c:
                for j in range(piv, len(residual)):
                    residual[j] -= c * row[j]
        return tuple(residual)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains_vector(r) for r in other.rows)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.rows + other.rows, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        _s, inter = span_and_intersect(self.rows, other.rows, self.ambient_dim)
        return inter


def span_and_intersect(rows_a, rows_b, ambient_dim: int) -> tuple[Subspace, Subspace]:
    """Sum and intersection of two spans, via one Zassenhaus elimination."""
    a = mat(rows_a)
    b = mat(rows_b)
    block = [tuple(r) + tuple(r) for r in a] + [tuple(r) + zero_vec(ambient_dim) for r in b]
    r, _t, _p = rref(tuple(block))
    sum_rows = []
    inter_rows = []
    for row in r:
        left, right = row[:ambient_dim], row[ambient_dim:]
        if any(left):
            sum_rows.append(left)
        elif any(right):
            inter_rows.append(right)
    return (
        Subspace.span(sum_rows, ambient_dim),
        Subspace.span(inter_rows, ambient_dim),
    )


# ---------------------------------------------------------------------------
# Finitely generated subgroups of Q^n (fractional lattices)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalLattice:
    """A finitely generated (free) subgroup of Q^n in canonical HNF basis.

    Canonical form: with s the lcm of all basis-entry denominators, s * rows
    is the Hermite basis of the integer lattice s * L.  Equal lattices compare
    equal structurally.
    """

    ambient_dim: int
    rows: Mat

    @staticmethod
    def from_generators(vectors, ambient_dim: int) -> "RationalLattice":
        gens = [vec(v) for v in vectors]
        for g in gens:
            if len(g) != ambient_dim:
                raise ValueError("vector length mismatch")
        gens = [g for g in gens if not is_zero_vec(g)]
        if not gens:
            return RationalLattice(ambient_dim, ())
        scale = lcm(*[e.denominator for g in gens for e in g])
        int_rows = [[int(e * scale) for e in g] for g in gens]
        h, _u = hermite_normal_form(int_rows)
        rows = tuple(
            tuple(Fraction(e, scale) for e in r) for r in h if any(r)
        )
        return RationalLattice(ambient_dim, rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def coordinates(self, x: Vec) -> Vec | None:
        """Rational coordinates of x in the basis rows, or None if off-span."""
        if not self.rows:
            return () if is_zero_vec(x) else None
        return solve_in_rows(self.rows, x)

    def contains(self, x: Vec) -> bool:
        c = self.coordinates(x)
        return c is not None and all(e.denominator == 1 for e in c)

    def span(self) -> Subspace:
        return Subspace.span(self.rows, self.ambient_dim)

    def sum(self, other: "RationalLattice") -> "RationalLattice":
        return RationalLattice.from_generators(self.rows + other.rows, self.ambient_dim)

    def intersect_subspace(self, space: Subspace) -> "RationalLattice":
        """The sublattice of vectors lying in the given subspace."""
        if not self.rows or space.is_zero():
            return RationalLattice(self.ambient_dim, ())
        # Solve for integer coefficient rows c with c * rows inside the space:
        # constraints are the coordinates of each basis row reduced mod space.
        constraints = tuple(space.reduce(r) for r in self.rows)
        scale = lcm(*[e.denominator for r in constraints for e in r] or [1])
        int_constraints = [[int(e * scale) for e in r] for r in constraints]
        kernel = integer_kernel(int_constraints)
        gens = [apply_matrix(vec(k), self.rows) for k in kernel]
        return RationalLattice.from_generators(gens, self.ambient_dim)
