"""Finite-rank torsion-free abelian groups as finite sums of rank-1 modules.

A group is G = sum_i Z[S_i^-1] * v_i inside Q^n, given by pairs (v_i, S_i)
of a rational vector and a set of inverted primes (finite or ALL).  The class
of such groups is closed under the constructions implemented here:
purification, finite-index subgroups and extensions, direct sums, scaling,
and images under rational maps.

Membership is decided p-locally.  For every prime p the localization of G at
p is W_p + Z_(p)*L, where W_p is the span of the generators whose prime set
contains p and L is the lattice hull (the Z-span of all generators).  A
vector lies in G iff it lies in the span and in every localization; only
finitely many primes need checking.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .linalg import (
    Mat,
    RationalLattice,
    Subspace,
    Vec,
    apply_matrix,
    det,
    hermite_normal_form,
    is_zero_vec,
    mat,
    mat_inverse,
    smith_normal_form,
    solve_in_rows,
    vadd,
    vec,
    vscale,
    zero_vec,
)
from .numutil import mod_p, next_prime, primes_dividing, valuation, xgcd
from .rank1 import ALL, NO_PRIMES, DivisibilityType, PrimeSet, div_type, prime_set

Generator = tuple[Vec, PrimeSet]


class GroupError(ValueError):
    """Base class for contract violations on group operations."""


class SpanMismatch(GroupError):
    pass


class NotASubgroup(GroupError):
    pass


class Compare(enum.Enum):
    EQUAL = "Equal"
    LEFT_IN_RIGHT = "LeftInRight"
    RIGHT_IN_LEFT = "RightInLeft"
    INCOMPARABLE = "Incomparable"


@dataclass(frozen=True)
class GroupRep:
    """Immutable group representation; caches are built on construction."""

    ambient_dim: int
    generators: tuple[Generator, ...]

    def __post_init__(self):
        vectors = [v for v, _s in self.generators]
        span = Subspace.span(vectors, self.ambient_dim)
        hull = RationalLattice.from_generators(vectors, self.ambient_dim)
        w_all = Subspace.span(
            [v for v, s in self.generators if s.is_all], self.ambient_dim
        )
        tagged: set[int] = set()
        for _v, s in self.generators:
            if not s.is_all:
                tagged.update(s.primes)
        hull_primes: set[int] = set()
        for row in hull.rows:
            for e in row:
                if e:
                    hull_primes.update(primes_dividing(e.numerator))
                    hull_primes.update(primes_dividing(e.denominator))
        object.__setattr__(self, "_span", span)
        object.__setattr__(self, "_hull", hull)
        object.__setattr__(self, "_w_all", w_all)
        object.__setattr__(self, "_tagged_primes", tuple(sorted(tagged)))
        object.__setattr__(self, "_active_primes", tuple(sorted(tagged | hull_primes)))
        object.__setattr__(self, "_w_cache", {})
        object.__setattr__(self, "_plocal_cache", {})

    # -- structural data -----------------------------------------------------

    @property
    def rank(self) -> int:
        return self._span.dim

    @property
    def span(self) -> Subspace:
        return self._span

    @property
    def lattice_hull(self) -> RationalLattice:
        return self._hull

    @property
    def active_primes(self) -> tuple[int, ...]:
        return self._active_primes

    @property
    def tagged_primes(self) -> tuple[int, ...]:
        return self._tagged_primes

    @property
    def divisible_all_directions(self) -> Subspace:
        """Span of the generators inverted at every prime."""
        return self._w_all

    def divisible_directions(self, p: int) -> Subspace:
        """Span of the generators whose prime set contains p (W_p)."""
        cached = self._w_cache.get(p)
        if cached is None:
            cached = Subspace.span(
                [v for v, s in self.generators if p in s], self.ambient_dim
            )
            self._w_cache[p] = cached
        return cached

    def key(self):
        """Canonical hashable key of the presentation (for memo tables)."""
        return (
            self.ambient_dim,
            tuple(sorted((v, repr(s)) for v, s in self.generators)),
        )

    # -- p-local membership machinery -----------------------------------------

    def _plocal_data(self, p: int):
        data = self._plocal_cache.get(p)
        if data is None:
            w = self.divisible_directions(p)
            rest = [w.reduce(v) for v, s in self.generators if p not in s]
            rest = [r for r in rest if not is_zero_vec(r)]
            lattice = RationalLattice.from_generators(rest, self.ambient_dim)
            data = (w, lattice)
            self._plocal_cache[p] = data
        return data

    def _member_at(self, p: int, x: Vec) -> bool:
        w, lattice = self._plocal_data(p)
        residue = w.reduce(x)
        if is_zero_vec(residue):
            return True
        coords = lattice.coordinates(residue)
        if coords is None:
            return False
        return all(c.denominator % p != 0 for c in coords)


def group_rep(ambient_dim: int, generators) -> GroupRep:
    """Build a GroupRep from (vector, prime-set) pairs, dropping zero vectors."""
    gens: list[Generator] = []
    seen = set()
    for v, s in generators:
        v = vec(v)
        if len(v) != ambient_dim:
            raise ValueError(
                "generator has length %d, ambient is %d" % (len(v), ambient_dim)
            )
        if is_zero_vec(v):
            continue
        if not isinstance(s, PrimeSet):
            s = prime_set(s)
        if (v, s) in seen:
            continue
        seen.add((v, s))
        gens.append((v, s))
    return GroupRep(ambient_dim, tuple(gens))


def zero_group(ambient_dim: int) -> GroupRep:
    return GroupRep(ambient_dim, ())


def scale_group(g: GroupRep, r) -> GroupRep:
    r = Fraction(r)
    if r == 0:
        raise ValueError("cannot scale a group by zero")
    return group_rep(g.ambient_dim, [(vscale(r, v), s) for v, s in g.generators])


def map_group(g: GroupRep, m: Mat) -> GroupRep:
    """Image of g under the linear map with matrix m (vectors act on rows)."""
    target_dim = len(m[0]) if m else g.ambient_dim
    return group_rep(target_dim, [(apply_matrix(v, m), s) for v, s in g.generators])


def sum_groups(*groups: GroupRep) -> GroupRep:
    if not groups:
        raise ValueError("sum of no groups")
    ambient = groups[0].ambient_dim
    gens = []
    for g in groups:
        if g.ambient_dim != ambient:
            raise ValueError("ambient dimension mismatch in sum")
        gens.extend(g.generators)
    return group_rep(ambient, gens)


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------


def member(g: GroupRep, x) -> bool:
    """Exact membership x in G, decided p-locally over a finite prime set."""
    x = vec(x)
    if len(x) != g.ambient_dim:
        raise ValueError("vector length mismatch")
    if is_zero_vec(x):
        return True
    coords = g.lattice_hull.coordinates(x)
    if coords is None:
        return False
    check = set(g.active_primes)
    for c in coords:
        check.update(primes_dividing(c.denominator))
    return all(g._member_at(p, x) for p in sorted(check))


# ---------------------------------------------------------------------------
# Comparison
# ---------------------------------------------------------------------------


def _piece_contained(g: GroupRep, v: Vec, s: PrimeSet) -> bool:
    """Whether the rank-1 module Z[S^-1]*v is contained in G."""
    if not member(g, v):
        return False
    if s.is_all:
        return g.divisible_all_directions.contains_vector(v)
    return all(g.divisible_directions(p).contains_vector(v) for p in s)


def subgroup_leq(h: GroupRep, g: GroupRep) -> bool:
    """Whether H <= G."""
    if h.ambient_dim != g.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return all(_piece_contained(g, v, s) for v, s in h.generators)


def compare(g: GroupRep, h: GroupRep) -> Compare:
    le = subgroup_leq(g, h)
    ge = subgroup_leq(h, g)
    if le and ge:
        return Compare.EQUAL
    if le:
        return Compare.LEFT_IN_RIGHT
    if ge:
        return Compare.RIGHT_IN_LEFT
    return Compare.INCOMPARABLE


# ---------------------------------------------------------------------------
# Purification: the pure subgroup U ∩ G of a subspace U
# ---------------------------------------------------------------------------


def _basis_with_transform(rows, ambient: int):
    """Lattice basis of the Z-span of rows, plus integer T with basis = T*rows."""
    rows = [vec(r) for r in rows]
    if not rows:
        return [], []
    scale = lcm(*[e.denominator for r in rows for e in r])
    int_rows = [[int(e * scale) for e in r] for r in rows]
    h, u = hermite_normal_form(int_rows)
    basis = []
    transform = []
    for hr, ur in zip(h, u):
        if any(hr):
            basis.append(tuple(Fraction(e, scale) for e in hr))
            transform.append(tuple(ur))
    return basis, transform


def _fp_left_kernel(rows: list[list[int]], p: int, nrows: int) -> list[list[int]]:
    """Basis of {c in F_p^nrows : c * rows = 0}, by Gaussian elimination mod p."""
    ncols = max((len(r) for r in rows), default=0)
    work = [[(r[j] if j < len(r) else 0) % p for j in range(ncols)] for r in rows]
    ident = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if work[r][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        ident[rank], ident[piv] = ident[piv], ident[rank]
        inv = pow(work[rank][col], -1, p)
        work[rank] = [e * inv % p for e in work[rank]]
        ident[rank] = [e * inv % p for e in ident[rank]]
        for r in range(nrows):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [(e - f * w) % p for e, w in zip(work[r], work[rank])]
                ident[r] = [(e - f * w) % p for e, w in zip(ident[r], ident[rank])]
        rank += 1
    return [ident[r] for r in range(rank, nrows)]


def _saturation_candidates(g: GroupRep, current: GroupRep, p: int) -> list[Vec]:
    """Vectors z = (sum c_i g_i)/p lying in G, found from an F_p kernel.

    The coefficient vectors c run over the kernel of the mod-p reduction of
    the map sending coefficients of current's generators to G/pG; every
    kernel vector yields an element of G, and conversely every element of G
    of the form (combination)/p reduces, modulo current, to a kernel one.
    """
    idx = [i for i, (_v, s) in enumerate(current.generators) if p not in s]
    if not idx:
        return []
    w, lattice = g._plocal_data(p)
    rows_modp: list[list[int]] = []
    for i in idx:
        h = w.reduce(current.generators[i][0])
        if lattice.rank == 0:
            if not is_zero_vec(h):
                raise RuntimeError("generator escapes the divisible directions")
            rows_modp.append([])
            continue
        c = lattice.coordinates(h)
        if c is None:
            raise RuntimeError("generator escapes the p-local module")
        rows_modp.append([mod_p(e, p) for e in c])
    out = []
    for coeffs in _fp_left_kernel(rows_modp, p, len(idx)):
        z = zero_vec(g.ambient_dim)
        for c, i in zip(coeffs, idx):
            if c:
                z = vadd(z, vscale(c, current.generators[i][0]))
        z = vscale(Fraction(1, p), z)
        if not is_zero_vec(z):
            out.append(z)
    return out


def _tidy(gens: list[Generator], ambient: int) -> list[Generator]:
    """Merge the untagged generators into one canonical lattice basis."""
    plain = [v for v, s in gens if s == NO_PRIMES]
    tagged = [(v, s) for v, s in gens if s != NO_PRIMES]
    merged = RationalLattice.from_generators(plain, ambient)
    return [(row, NO_PRIMES) for row in merged.rows] + tagged


def _lattice_index(outer: RationalLattice, inner: RationalLattice) -> Fraction:
    """|det| of the coordinate matrix of inner's basis in outer's basis."""
    rows = []
    for r in inner.rows:
        c = outer.coordinates(r)
        if c is None:
            raise ValueError("inner lattice is not inside the outer span")
        rows.append(c)
    d = det(tuple(rows))
    if d == 0:
        raise ValueError("inner lattice has smaller rank")
    return abs(d)


def _all_pattern_gap_primes(g: GroupRep, u: Subspace, seed: RationalLattice):
    """Saturation primes that can be missed by the active set.

    At a prime q with no divisibility in G the localization is
    W_ALL + Z_(q)*L, so the pure subgroup exceeds the seed at q only when q
    divides the index [span(U) ∩ L : U ∩ L] taken modulo the fully divisible
    directions.  Without fully divisible directions the two lattices agree
    and no extra primes arise.
    """
    w = g.divisible_all_directions
    if w.dim == 0:
        return ()
    l_bar = RationalLattice.from_generators(
        [w.reduce(r) for r in g.lattice_hull.rows], g.ambient_dim
    )
    pi_u = Subspace.span([w.reduce(r) for r in u.rows], g.ambient_dim)
    lam = l_bar.intersect_subspace(pi_u)
    if lam.rank == 0:
        return ()
    pi_m = RationalLattice.from_generators(
        [w.reduce(r) for r in seed.rows], g.ambient_dim
    )
    if pi_m.rank != lam.rank:
        raise RuntimeError("seed lattice lost rank under the ALL reduction")
    index = _lattice_index(lam, pi_m)
    return tuple(
        sorted(
            set(primes_dividing(index.numerator))
            | set(primes_dividing(index.denominator))
        )
    )


def purify(g: GroupRep, subspace: Subspace) -> GroupRep:
    """The pure subgroup U ∩ G determined by a subspace U.

    Seeds with the hull sublattice of U' = U ∩ span(G) plus the divisible
    directions inside U', then saturates at a finite set of primes; each
    adjunction strictly decreases a finite index, so the loop terminates
    with the full pure subgroup.
    """
    if subspace.ambient_dim != g.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    u = subspace.intersect(g.span)
    if u.dim == 0:
        return zero_group(g.ambient_dim)

    gens: list[Generator] = []
    seed = g.lattice_hull.intersect_subspace(u)
    gens.extend((row, NO_PRIMES) for row in seed.rows)
    for p in g.tagged_primes:
        vp = u.intersect(g.divisible_directions(p))
        if vp.dim:
            inner = g.lattice_hull.intersect_subspace(vp)
            gens.extend((row, prime_set([p])) for row in inner.rows)
    v_all = u.intersect(g.divisible_all_directions)
    if v_all.dim:
        inner = g.lattice_hull.intersect_subspace(v_all)
        gens.extend((row, ALL) for row in inner.rows)

    primes = sorted(set(g.active_primes) | set(_all_pattern_gap_primes(g, u, seed)))

    current = group_rep(g.ambient_dim, _tidy(gens, g.ambient_dim))
    for _round in range(256):
        changed = False
        for p in primes:
            for z in _saturation_candidates(g, current, p):
                if not member(current, z):
                    gens = list(current.generators) + [(z, NO_PRIMES)]
                    current = group_rep(g.ambient_dim, _tidy(gens, g.ambient_dim))
                    changed = True
        if not changed:
            return simplify_presentation(current)
    raise RuntimeError("purification failed to stabilize (internal error)")


def simplify_presentation(g: GroupRep) -> GroupRep:
    """Drop generators whose whole rank-1 piece lies in the sum of the rest."""
    gens = list(g.generators)
    changed = True
    while changed and len(gens) > 1:
        changed = False
        for i in range(len(gens)):
            rest = GroupRep(g.ambient_dim, tuple(gens[:i] + gens[i + 1 :]))
            if _piece_contained(rest, *gens[i]):
                gens = list(rest.generators)
                changed = True
                break
    return GroupRep(g.ambient_dim, tuple(gens))


# ---------------------------------------------------------------------------
# Divisible part and element types
# ---------------------------------------------------------------------------


def divisible_part(g: GroupRep, p) -> GroupRep:
    """Largest p-divisible subgroup (pass "ALL" for the divisible subgroup).

    Equals the pure subgroup of the corresponding divisible directions.
    """
    if p == "ALL":
        result = purify(g, g.divisible_all_directions)
        for v, _s in result.generators:
            if not g.divisible_all_directions.contains_vector(v):
                raise RuntimeError("divisible part escapes its directions")
        return result
    p = int(p)
    result = purify(g, g.divisible_directions(p))
    if compare(result, scale_group(result, p)) != Compare.EQUAL:
        raise RuntimeError("divisible part is not p-divisible (internal error)")
    return result


def element_type(g: GroupRep, a) -> DivisibilityType:
    """The type of a in G: describes {r in Q : r*a in G} as (1/m) Z[S]."""
    a = vec(a)
    if not member(g, a):
        raise GroupError("element does not lie in the group")
    if is_zero_vec(a):
        return div_type(1, ALL)
    w = g.divisible_all_directions
    if w.contains_vector(a):
        return div_type(1, ALL)
    inverted = [
        p for p in g.tagged_primes if g.divisible_directions(p).contains_vector(a)
    ]
    # Finite-height primes beyond the active set can only divide the gcd of
    # the coordinates of a taken modulo the fully divisible directions.
    reduced_hull = RationalLattice.from_generators(
        [w.reduce(r) for r in g.lattice_hull.rows], g.ambient_dim
    )
    coords = reduced_hull.coordinates(w.reduce(a))
    common = 0
    for c in coords or ():
        common = gcd(common, c.numerator)
    candidates = set(g.active_primes)
    if common:
        candidates.update(primes_dividing(common))
    m = 1
    for p in sorted(candidates):
        if p in inverted:
            continue
        height = 0
        probe = vscale(Fraction(1, p), a)
        while member(g, probe):
            height += 1
            if height > 512:
                raise RuntimeError("unbounded height at a finite prime")
            probe = vscale(Fraction(1, p), probe)
        m *= p**height
    return div_type(m, prime_set(inverted))


# ---------------------------------------------------------------------------
# Finite quotients G/A
# ---------------------------------------------------------------------------


class FiniteQuotient:
    """A finite quotient G/A with invariant factors and a computable image map.

    Attributes:
        invariant_factors: ascending (d_1 | d_2 | ... | d_k), each >= 2.
        exponent: d_k, or 1 for the trivial quotient.
        order: product of the invariant factors.
        generator_images: images of G's generators modulo the factors.
    """

    def __init__(self, g: GroupRep, a: GroupRep, parts):
        self.group = g
        self.subgroup = a
        # parts: list of (p, [(exp, basis_index)...], W_p, basis_rows, sections)
        # with exponents sorted descending within each prime.
        self._parts = parts
        depth = max((len(exps) for _p, exps, _w, _b, _s in parts), default=0)
        descending = []
        for j in range(depth):
            d = 1
            for p, exps, _w, _b, _s in parts:
                if j < len(exps):
                    d *= p ** exps[j][0]
            descending.append(d)
        self.invariant_factors = tuple(reversed(descending))
        self.exponent = self.invariant_factors[-1] if self.invariant_factors else 1
        order = 1
        for d in self.invariant_factors:
            order *= d
        self.order = order
        self.generator_images = tuple(self.image(v) for v, _s in g.generators)

    def image(self, x) -> tuple[int, ...]:
        """Image of x (an element of G) as a tuple modulo the invariant factors."""
        x = vec(x)
        k = len(self.invariant_factors)
        per_prime: dict[int, list[int]] = {}
        for p, exps, w, basis_rows, _sections in self._parts:
            residue = w.reduce(x)
            coords = solve_in_rows(tuple(basis_rows), residue)
            if coords is None:
                raise GroupError("vector outside the group span")
            vals = []
            for exp, idx in exps:
                q = coords[idx]
                if q.denominator % p == 0:
                    raise GroupError("vector is not in the group (p-local escape)")
                pe = p**exp
                vals.append(q.numerator * pow(q.denominator, -1, pe) % pe)
            per_prime[p] = vals
        out = []
        for j in range(k):
            desc = k - 1 - j
            residue, modulus = 0, 1
            for p, exps, _w, _b, _s in self._parts:
                if desc < len(exps):
                    pe = p ** exps[desc][0]
                    r = per_prime[p][desc]
                    _g, s, _t = xgcd(modulus, pe)
                    residue = (residue + modulus * s * (r - residue)) % (modulus * pe)
                    modulus *= pe
            out.append(residue % self.invariant_factors[j])
        return tuple(out)

    def section_vectors(self) -> tuple[Vec, ...]:
        """Elements of G whose images generate the quotient."""
        out = []
        for _p, exps, _w, _b, sections in self._parts:
            for _exp, idx in exps:
                out.append(sections[idx])
        return tuple(out)


@dataclass(frozen=True)
class QuotientDescription:
    """Outcome of index_and_quotient: finite with data, or infinite torsion."""

    kind: str  # "finite" | "infinite"
    quotient: FiniteQuotient | None = None
    prime: int | None = None
    direction: Vec | None = None

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"


def index_and_quotient(g: GroupRep, a: GroupRep) -> QuotientDescription:
    """Describe G/A for a subgroup A <= G with the same rational span.

    Returns a finite description with invariant factors, generator images
    and exponent, or an infinite-torsion witness: a prime p and a direction
    divisible at p in G but of bounded p-height in A, whose classes have
    unbounded order.
    """
    if not subgroup_leq(a, g):
        raise NotASubgroup("A is not a subgroup of G")
    if a.span != g.span:
        raise SpanMismatch("A does not span all of G; the quotient is not torsion")

    for p in sorted(set(g.tagged_primes) | set(a.tagged_primes)):
        wg, wa = g.divisible_directions(p), a.divisible_directions(p)
        if wg != wa:
            return QuotientDescription(
                "infinite", prime=p, direction=_direction_witness(g, wg, wa)
            )
    if g.divisible_all_directions != a.divisible_all_directions:
        used = set(g.active_primes) | set(a.active_primes)
        p = 2
        while p in used:
            p = next_prime(p)
        witness = _direction_witness(
            g, g.divisible_all_directions, a.divisible_all_directions
        )
        return QuotientDescription("infinite", prime=p, direction=witness)

    return QuotientDescription(
        "finite", quotient=FiniteQuotient(g, a, _finite_quotient_parts(g, a))
    )


def _direction_witness(g: GroupRep, wg: Subspace, wa: Subspace) -> Vec:
    inner = g.lattice_hull.intersect_subspace(wg)
    for row in inner.rows:
        if not wa.contains_vector(row):
            return row
    raise RuntimeError("no witness direction found (internal error)")


def _finite_quotient_parts(g: GroupRep, a: GroupRep):
    relevant = set(g.active_primes) | set(a.active_primes)
    w_all = g.divisible_all_directions
    l_g = RationalLattice.from_generators(
        [w_all.reduce(r) for r in g.lattice_hull.rows], g.ambient_dim
    )
    l_a = RationalLattice.from_generators(
        [w_all.reduce(r) for r in a.lattice_hull.rows], g.ambient_dim
    )
    if l_g.rank != l_a.rank:
        raise RuntimeError("rank mismatch after divisible reduction")
    if l_g.rank:
        index = _lattice_index(l_g, l_a)
        relevant.update(primes_dividing(index.numerator))
        relevant.update(primes_dividing(index.denominator))
    parts = []
    for p in sorted(relevant):
        part = _quotient_part_at(g, a, p)
        if part is not None:
            parts.append(part)
    return parts


def _quotient_part_at(g: GroupRep, a: GroupRep, p: int):
    """The p-primary part of G/A: exponents, a solving basis, and sections.

    Works modulo W_p: the transition matrix between the reduced lattice hulls
    is p-integral, and its Smith form diagonalizes the quotient's p-part.
    The returned basis rows carry sections (elements of G's lattice hull
    realizing them), so preimages of the cyclic summands are available.
    """
    w = g.divisible_directions(p)
    reduced_g = [w.reduce(r) for r in g.lattice_hull.rows]
    basis_g, transform = _basis_with_transform(reduced_g, g.ambient_dim)
    if not basis_g:
        return None
    sections = []
    for trow in transform:
        s = zero_vec(g.ambient_dim)
        for c, hull_row in zip(trow, g.lattice_hull.rows):
            if c:
                s = vadd(s, vscale(c, hull_row))
        sections.append(s)
    coord_rows = []
    for r in a.lattice_hull.rows:
        c = solve_in_rows(tuple(basis_g), w.reduce(r))
        if c is None:
            raise RuntimeError("subgroup hull escapes the group hull span")
        coord_rows.append(c)
    denom = lcm(*[e.denominator for r in coord_rows for e in r])
    if denom % p == 0:
        raise RuntimeError("p-local transition has p in a denominator")
    int_rows = [[int(e * denom) for e in r] for r in coord_rows]
    d, _u, v = smith_normal_form(int_rows)
    if len(d) != len(basis_g):
        raise RuntimeError("p-local transition is singular")
    v_inv = mat_inverse(mat(v))
    new_basis = []
    new_sections = []
    for i in range(len(basis_g)):
        row = zero_vec(g.ambient_dim)
        sec = zero_vec(g.ambient_dim)
        for c, b_row, s_row in zip(v_inv[i], basis_g, sections):
            if c:
                row = vadd(row, vscale(c, b_row))
                sec = vadd(sec, vscale(c, s_row))
        new_basis.append(row)
        new_sections.append(sec)
    exps = []
    for i, di in enumerate(d):
        e = valuation(di, p) if di % p == 0 else 0
        if e > 0:
            exps.append((e, i))
    if not exps:
        return None
    exps.sort(key=lambda t: -t[0])
    return (p, exps, w, new_basis, new_sections)
