"""Strong indecomposability: Property SI checks and certificates.

Strong indecomposability is semi-decided here, and every result says which
side of the fence it is on.  A witness (a basis partition whose purified
blocks reach the group, exactly or up to finite index) proves the group IS
quasi-decomposable.  The rank-2 typeset obstruction proves it is NOT: a
quasi-decomposition into two rank-1 groups confines the possible inverted
prime sets of elements to {S_A, S_B, S_A intersect S_B}, and no three
pairwise-incomparable sets fit in such a family.  Certificates and witnesses
can therefore never coexist.  A search that ends empty-handed proves
nothing beyond its own scope.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .bases import BasisRecord, is_basis, pure_hull_sum
from .decomp import (
    DecompositionRecord,
    PartitionRecord,
    _RANK_LIMIT,
    _generated_bases,
    candidate_vectors,
    check_splitting_partition,
    partition_record,
)
from .groups import GroupError, GroupRep, QuotientDescription, element_type, index_and_quotient
from .linalg import Vec
from .quasi import SplitKind, SplitReport, quasi_split_check
from .rank1 import DivisibilityType, PrimeSet


class SIVerdict(enum.Enum):
    HOLDS = "SI-holds-for-this-basis"
    FAILS = "SI-fails"


@dataclass(frozen=True)
class SIReport:
    """Outcome of a Property SI check for one basis."""

    basis: BasisRecord
    hull: DecompositionRecord
    quotient: QuotientDescription
    split_attempts: tuple[tuple[PartitionRecord, bool], ...]
    verdict: SIVerdict
    witness: PartitionRecord | QuotientDescription | None


def _two_block_partitions(basis: BasisRecord):
    k = len(basis.elements)
    rest = tuple(range(1, k))
    for mask in range(1, 2 ** (k - 1)):
        first = [0]
        second = []
        for bit, idx in enumerate(rest):
            (first if mask >> bit & 1 == 0 else second).append(idx)
        yield partition_record(basis, (tuple(first), tuple(second)))


def property_si_check(g: GroupRep, basis: BasisRecord) -> SIReport:
    """Property SI for (hull of basis, g): infinite quotient, no lifting split.

    The verdict is about this basis only; SI can hold for one basis of g and
    fail for another.
    """
    if not is_basis(g, basis.elements):
        raise ValueError("not a basis of the group")
    if g.rank > _RANK_LIMIT:
        raise GroupError("rank exceeds the partition search limit")
    hull = pure_hull_sum(g, basis)
    quotient = index_and_quotient(g, hull.group)
    attempts = []
    witness: PartitionRecord | QuotientDescription | None = None
    for partition in _two_block_partitions(basis):
        ok, _record = check_splitting_partition(g, partition)
        attempts.append((partition, ok))
        if ok and witness is None:
            witness = partition
    if witness is None and quotient.is_finite:
        witness = quotient
    verdict = SIVerdict.HOLDS if witness is None else SIVerdict.FAILS
    return SIReport(basis, hull, quotient, tuple(attempts), verdict, witness)


@dataclass(frozen=True)
class WitnessSearchResult:
    """A quasi-decomposition witness, or the scope that was searched."""

    found: bool
    kind: SplitKind | None
    basis: BasisRecord | None
    partition: PartitionRecord | None
    report: SplitReport | None
    height_bound: int
    bases_searched: int


def strong_decomposability_witness_search(g: GroupRep, height_bound: int) -> WitnessSearchResult:
    """Look for a basis partition proving g quasi-decomposable.

    A found witness is definitive.  An empty result only says no witness
    exists among bases of coefficient height <= height_bound.
    """
    if g.rank > _RANK_LIMIT:
        raise GroupError("rank exceeds the partition search limit")
    searched = 0
    seen_blockings = set()
    for basis in _generated_bases(g, height_bound):
        searched += 1
        for partition in _two_block_partitions(basis):
            blocks_key = frozenset(
                frozenset(basis.elements[i] for i in block) for block in partition.blocks
            )
            if blocks_key in seen_blockings:
                continue
            seen_blockings.add(blocks_key)
            report = quasi_split_check(g, basis, partition)
            if report.kind is not SplitKind.NONE:
                return WitnessSearchResult(
                    True, report.kind, basis, partition, report, height_bound, searched
                )
    return WitnessSearchResult(False, None, None, None, None, height_bound, searched)


@dataclass(frozen=True)
class SICertificate:
    """Three elements whose inverted prime sets rule out quasi-decomposition."""

    group: GroupRep
    vectors: tuple[Vec, Vec, Vec]
    types: tuple[DivisibilityType, DivisibilityType, DivisibilityType]


def _ps_leq(a: PrimeSet, b: PrimeSet) -> bool:
    if b.is_all:
        return True
    if a.is_all:
        return False
    return set(a.primes) <= set(b.primes)


def _ps_meet(a: PrimeSet, b: PrimeSet) -> PrimeSet:
    if a.is_all:
        return b
    if b.is_all:
        return a
    return PrimeSet(tuple(sorted(set(a.primes) & set(b.primes))))


def typeset_obstruction_certificate(g: GroupRep) -> SICertificate | None:
    """Sound rank-2 strong-indecomposability certificate, or None.

    Were g quasi-equal to a sum of rank-1 groups of types S_A and S_B, every
    element's inverted prime set would be S_A, S_B, or their intersection
    (multipliers shift under finite index, the inverted sets do not).  Any
    antichain of three inverted sets among sampled elements contradicts
    that, since in the forced family the meet is comparable to both tops.
    """
    if g.rank != 2:
        return None
    found: dict[PrimeSet, tuple[Vec, DivisibilityType]] = {}
    for v in candidate_vectors(g, 2):
        t = element_type(g, v)
        if t.inverted not in found:
            found[t.inverted] = (v, t)
    sets = list(found)
    n = len(sets)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                trio = (sets[i], sets[j], sets[k])
                if any(
                    _ps_leq(a, b) or _ps_leq(b, a)
                    for a, b in ((trio[0], trio[1]), (trio[0], trio[2]), (trio[1], trio[2]))
                ):
                    continue
                meets_clear = all(
                    not trio[x] == _ps_meet(trio[y], trio[z])
                    for x, y, z in ((0, 1, 2), (1, 0, 2), (2, 0, 1))
                )
                if meets_clear:
                    vecs = tuple(found[s][0] for s in trio)
                    types = tuple(found[s][1] for s in trio)
                    return SICertificate(g, vecs, types)
    return None
