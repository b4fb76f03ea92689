"""Quasi-equality and quasi-splitting.

Two groups with the same rational span are commensurable when each scales
into the other by a positive integer; they are strictly quasi-equal when a
single rational r makes r*H literally equal to G.  Both witnesses here are
found by complete searches, so a None answer is a definite "no", not a
scope limit.

The strict witness is pinned down prime by prime: if r*H = G then, locally
at p, the coordinate matrix of G's reduced lattice in H's must have all its
elementary divisors at the same p-valuation, and that common valuation is
v_p(r).  Scanning the tagged primes (plus one untagged stand-in for all the
rest) either forces a unique candidate or proves none exists.  The candidate
is then re-verified with compare, so the answer never rests on the
derivation alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .bases import BasisRecord, is_basis
from .decomp import DecompositionRecord, PartitionRecord, _pure_hull, apply_span_matrix, automorphism_check, decomposition_record
from .groups import (
    Compare,
    GroupRep,
    QuotientDescription,
    compare,
    index_and_quotient,
    scale_group,
    subgroup_leq,
    sum_groups,
    zero_group,
)
from .linalg import Mat, Subspace, mat, mat_inverse, solve_in_rows
from .numutil import divisors, next_prime, valuation
from .linalg import smith_normal_form


@dataclass(frozen=True)
class QuasiWitness:
    """Witness of quasi-equality.

    For the strict form, ``ratio`` is the positive rational with
    ratio * H = G.  For plain commensurability, ``pair`` holds the minimal
    positive integers (a, b) with a*H <= G and b*G <= H.
    """

    ratio: Fraction | None = None
    pair: tuple[int, int] | None = None


def _coordinate_factors(hrows, grows):
    """Invariant factors of the coordinate matrix of grows over hrows.

    Returns (sigma, factors) where sigma clears denominators, or None when
    the two row families do not span the same space.
    """
    if len(hrows) != len(grows):
        return None
    if not hrows:
        return 1, ()
    coords = []
    for row in grows:
        c = solve_in_rows(hrows, row)
        if c is None:
            return None
        coords.append(c)
    sigma = 1
    for c in coords:
        for e in c:
            sigma = lcm(sigma, e.denominator)
    entries = [[int(e * sigma) for e in c] for c in coords]
    d, _, _ = smith_normal_form(entries)
    if len(d) != len(hrows):
        return None
    return sigma, d


def _without_primes(q: Fraction, primes) -> Fraction:
    num, den = q.numerator, q.denominator
    for p in primes:
        while num % p == 0:
            num //= p
        while den % p == 0:
            den //= p
    return Fraction(num, den)


def quasi_equal_strict(h: GroupRep, g: GroupRep) -> QuasiWitness | None:
    """The unique positive rational r with r*H = G, if one exists."""
    if h.ambient_dim != g.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if h.span != g.span:
        return None
    if h.divisible_all_directions != g.divisible_all_directions:
        return None
    tagged = sorted(set(h.tagged_primes) | set(g.tagged_primes))
    for p in tagged:
        if h.divisible_directions(p) != g.divisible_directions(p):
            return None
    if h.rank == 0:
        return QuasiWitness(ratio=Fraction(1))

    r = Fraction(1)
    fresh = 2
    while fresh in tagged:
        fresh = next_prime(fresh)
    for p in (*tagged, fresh):
        _, hlat = h._plocal_data(p)
        _, glat = g._plocal_data(p)
        got = _coordinate_factors(hlat.rows, glat.rows)
        if got is None:
            return None
        sigma, factors = got
        if not factors:
            continue
        ratios = [Fraction(d, sigma) for d in factors]
        if p == fresh:
            # one untagged prime sees the shared generic lattice; the
            # constraint there covers every prime outside the tagged set
            parts = {_without_primes(q, tagged) for q in ratios}
            if len(parts) != 1:
                return None
            r *= parts.pop()
        else:
            vals = {valuation(q, p) for q in ratios}
            if len(vals) != 1:
                return None
            r *= Fraction(p) ** vals.pop()

    if r > 0 and compare(scale_group(h, r), g) is Compare.EQUAL:
        return QuasiWitness(ratio=r)
    return None


def _least_scaling_into(h: GroupRep, g: GroupRep, bound: int) -> int:
    for d in divisors(bound):
        if subgroup_leq(scale_group(h, d), g):
            return d
    raise AssertionError("quotient exponent failed to scale the group in")


def commensurable(h: GroupRep, g: GroupRep) -> QuasiWitness | None:
    """Minimal (a, b) with a*H <= G and b*G <= H, or None.

    Present exactly when the two groups share a span and each has finite
    index in their sum.
    """
    if h.ambient_dim != g.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if h.span != g.span:
        return None
    total = sum_groups(h, g)
    into_g = index_and_quotient(total, g)
    if not into_g.is_finite:
        return None
    into_h = index_and_quotient(total, h)
    if not into_h.is_finite:
        return None
    a = _least_scaling_into(h, g, into_g.quotient.exponent)
    b = _least_scaling_into(g, h, into_h.quotient.exponent)
    return QuasiWitness(pair=(a, b))


def quasi_automorphism_check(g: GroupRep, m: Mat) -> tuple[Fraction, Mat] | None:
    """Decide whether m is r times an automorphism of g.

    Returns (r, alpha) with m = r * alpha and alpha a verified automorphism,
    or None.  Raises on a singular matrix.
    """
    m = mat(m)
    mat_inverse(m)
    image = apply_span_matrix(g, m)
    witness = quasi_equal_strict(image, g)
    if witness is None:
        return None
    r = 1 / witness.ratio
    alpha = mat([[e / r for e in row] for row in m])
    if not automorphism_check(g, alpha):
        return None
    return r, alpha


class SplitKind(enum.Enum):
    EXACT = "ExactSplit"
    QUASI = "QuasiSplit"
    NONE = "NoSplit"


@dataclass(frozen=True)
class SplitReport:
    """Outcome of testing a basis partition for (quasi-)splitting."""

    kind: SplitKind
    summands: tuple[GroupRep, ...]
    decomposition: DecompositionRecord | None
    quotient: QuotientDescription


def quasi_split_check(g: GroupRep, basis: BasisRecord, partition: PartitionRecord) -> SplitReport:
    """Classify the partitioned basis: exact split, finite defect, or neither.

    The candidate summands are the pure hulls of the block spans.  Their sum
    either is g (exact), has finite index in g (quasi), or misses a whole
    divisibility direction (no split, with the infinite-torsion witness on
    the report's quotient).
    """
    if partition.basis != basis:
        raise ValueError("partition was built over a different basis")
    if not is_basis(g, basis.elements):
        raise ValueError("not a basis of the group")
    summands = tuple(
        _pure_hull(g, Subspace.span([basis.elements[i] for i in block], g.ambient_dim))
        for block in partition.blocks
    )
    total = sum_groups(*summands) if summands else zero_group(g.ambient_dim)
    quotient = index_and_quotient(g, total)
    if not quotient.is_finite:
        return SplitReport(SplitKind.NONE, summands, None, quotient)
    record = decomposition_record(total, summands)
    if quotient.quotient.order == 1:
        return SplitReport(SplitKind.EXACT, summands, record, quotient)
    return SplitReport(SplitKind.QUASI, summands, record, quotient)
