"""Splitting partitions, complete decompositions, and decomposition isomorphy.

A partition of a basis splits the group when the purified block spans sum
back to the whole group; a complete decomposition is a maximal such
refinement.  Searches are bounded and deterministic: set partitions are
walked in restricted-growth-string order and candidate bases in
lexicographic coefficient order.  An empty search result is never a proof
of indecomposability.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bases import BasisRecord, is_basis
from .groups import (
    Compare,
    GroupError,
    GroupRep,
    compare,
    element_type,
    group_rep,
    purify,
    subgroup_leq,
    sum_groups,
    zero_group,
)
from .linalg import (
    Mat,
    Subspace,
    Vec,
    apply_matrix,
    mat,
    mat_inverse,
    mat_mul,
    solve_in_rows,
    vadd,
    vec,
    vscale,
)

_RANK_LIMIT = 10


class SummandFlag(enum.Enum):
    RANK1 = "Rank1"
    CERTIFIED = "Indecomposable-Certified"
    UNKNOWN = "Indecomposable-Unknown"


class IsoVerdict(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class PartitionRecord:
    basis: BasisRecord
    blocks: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class DecompositionRecord:
    group: GroupRep
    summands: tuple[GroupRep, ...]
    flags: tuple[SummandFlag, ...]


@dataclass(frozen=True)
class IsomorphismAnswer:
    """Outcome of comparing two decompositions of the same group.

    pairing maps summand i of the first record to summand pairing[i] of the
    second; pair_maps holds, per summand, (x, image) vector pairs spanning
    the summand, enough to assemble the block automorphism.
    """

    verdict: IsoVerdict
    pairing: tuple[int, ...] | None = None
    pair_maps: tuple[tuple[tuple[Vec, Vec], ...], ...] | None = None
    reason: str | None = None


def partition_record(basis: BasisRecord, blocks) -> PartitionRecord:
    """Validate disjoint nonempty index blocks covering the basis."""
    norm = tuple(tuple(sorted(int(i) for i in block)) for block in blocks)
    seen: set[int] = set()
    for block in norm:
        if not block:
            raise ValueError("empty partition block")
        for i in block:
            if i < 0 or i >= len(basis.elements) or i in seen:
                raise ValueError("partition indices must cover the basis exactly once")
            seen.add(i)
    if len(seen) != len(basis.elements):
        raise ValueError("partition does not cover the basis")
    return PartitionRecord(basis, norm)


def decomposition_record(
    group: GroupRep, summands, flags=None
) -> DecompositionRecord:
    summands = tuple(summands)
    total = 0
    for s in summands:
        total += s.rank
    if total != group.rank:
        raise ValueError("summand ranks do not add up to the group rank")
    joined = Subspace.span(
        [row for s in summands for row in s.span.rows], group.ambient_dim
    )
    if joined.dim != total:
        raise ValueError("summand spans are not independent")
    if flags is None:
        flags = tuple(
            SummandFlag.RANK1 if s.rank == 1 else SummandFlag.UNKNOWN
            for s in summands
        )
    else:
        flags = tuple(flags)
        if len(flags) != len(summands):
            raise ValueError("one flag per summand")
    return DecompositionRecord(group, summands, flags)


@lru_cache(maxsize=None)
def _pure_hull(g: GroupRep, space: Subspace) -> GroupRep:
    return purify(g, space)


def check_splitting_partition(g: GroupRep, partition: PartitionRecord):
    """Whether the purified block spans reconstitute g; the decomposition if so.

    Ranks always add up, so the sum of the block hulls equals g exactly when
    g embeds in it; otherwise the quotient of g by the sum is nonzero
    torsion and the partition does not split.
    """
    elems = partition.basis.elements
    if not is_basis(g, elems):
        raise ValueError("the partition's basis is not a basis of the group")
    summands = tuple(
        _pure_hull(g, Subspace.span([elems[i] for i in block], g.ambient_dim))
        for block in partition.blocks
    )
    total = sum_groups(*summands) if summands else zero_group(g.ambient_dim)
    if subgroup_leq(g, total):
        return True, decomposition_record(g, summands)
    return False, None


def _restricted_growth_strings(t: int):
    if t == 0:
        yield ()
        return
    a = [0] * t
    while True:
        yield tuple(a)
        i = t - 1
        while i > 0 and a[i] > max(a[:i]):
            i -= 1
        if i == 0:
            return
        a[i] += 1
        for j in range(i + 1, t):
            a[j] = 0


def _blocks_of(rgs: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    blocks: dict[int, list[int]] = {}
    for i, label in enumerate(rgs):
        blocks.setdefault(label, []).append(i)
    return tuple(tuple(blocks[label]) for label in sorted(blocks))


def enumerate_splitting_partitions(
    g: GroupRep, basis: BasisRecord, max_blocks: int
):
    """All proper partitions of the basis into <= max_blocks blocks that split."""
    t = len(basis.elements)
    if t > _RANK_LIMIT:
        raise GroupError("rank %d exceeds the partition-enumeration limit" % t)
    out = []
    for rgs in _restricted_growth_strings(t):
        nblocks = max(rgs) + 1 if rgs else 0
        if nblocks < 2 or nblocks > max_blocks:
            continue
        partition = PartitionRecord(basis, _blocks_of(rgs))
        ok, record = check_splitting_partition(g, partition)
        if ok:
            out.append((partition, record))
    return out


def _canonical_sign(v: Vec) -> Vec:
    for e in v:
        if e:
            return v if e > 0 else vscale(-1, v)
    return v


def candidate_vectors(g: GroupRep, height_bound: int) -> tuple[Vec, ...]:
    """Nonzero integer combinations of the generators, coefficients bounded
    by height_bound, deduplicated up to sign, in lexicographic order."""
    gens = [v for v, _s in g.generators]
    out: list[Vec] = []
    seen = set()
    for coeffs in itertools.product(
        range(-height_bound, height_bound + 1), repeat=len(gens)
    ):
        v = vec([0] * g.ambient_dim)
        for c, w in zip(coeffs, gens):
            if c:
                v = vadd(v, vscale(c, w))
        if not any(v):
            continue
        v = _canonical_sign(v)
        if v not in seen:
            seen.add(v)
            out.append(v)
    return tuple(out)


def _generated_bases(g: GroupRep, height_bound: int):
    pool = candidate_vectors(g, height_bound)
    for combo in itertools.combinations(pool, g.rank):
        if Subspace.span(list(combo), g.ambient_dim).dim == g.rank:
            # combinations of generators lie in the group by construction
            yield BasisRecord(g, combo)


def _refines(fine, coarse) -> bool:
    return all(
        any(set(b).issubset(set(c)) for c in coarse) for b in fine
    )


def complete_decomposition_search(
    g: GroupRep, given_bases=(), height_bound: int = 1, max_blocks: int | None = None
) -> tuple[DecompositionRecord, ...]:
    """Maximal splitting refinements over the searched bases, deduplicated.

    The scope is the supplied bases plus every basis assembled from integer
    combinations of the generators with coefficients up to height_bound.  An
    empty result means nothing was found within that scope, not that g is
    indecomposable.
    """
    if max_blocks is None:
        max_blocks = max(g.rank, 2)
    results: list[DecompositionRecord] = []
    seen = set()
    for basis in itertools.chain(given_bases, _generated_bases(g, height_bound)):
        found = enumerate_splitting_partitions(g, basis, max_blocks=max_blocks)
        maximal = [
            record
            for partition, record in found
            if not any(
                other.blocks != partition.blocks
                and _refines(other.blocks, partition.blocks)
                for other, _r in found
            )
        ]
        for record in maximal:
            key = tuple(sorted(s.key() for s in record.summands))
            if key not in seen:
                seen.add(key)
                results.append(_certify_summands(record))
    return tuple(results)


def _certify_summands(record: DecompositionRecord) -> DecompositionRecord:
    if not any(f is SummandFlag.UNKNOWN and s.rank == 2 for s, f in zip(record.summands, record.flags)):
        return record
    from .indec import typeset_obstruction_certificate

    flags = []
    for s, flag in zip(record.summands, record.flags):
        if flag is SummandFlag.UNKNOWN and s.rank == 2:
            if typeset_obstruction_certificate(s) is not None:
                flag = SummandFlag.CERTIFIED
        flags.append(flag)
    return DecompositionRecord(record.group, record.summands, tuple(flags))


# -- isomorphy of decompositions and block automorphisms ----------------------


def _rank1_type_key(s: GroupRep):
    for v, _ps in s.generators:
        return element_type(s, v).inverted
    raise GroupError("rank-1 summand without generators")


def decompositions_isomorphic(
    d1: DecompositionRecord, d2: DecompositionRecord
) -> IsomorphismAnswer:
    """Pair the summands up to isomorphism, or distinguish, or give up.

    Rank-1 summands are isomorphic exactly when their types have the same
    inverted prime set; higher-rank summands are paired only when equal as
    subgroups, anything else is Unknown rather than a guess.
    """
    if compare(d1.group, d2.group) is not Compare.EQUAL:
        raise GroupError("decompositions of different groups")
    ranks1 = sorted(s.rank for s in d1.summands)
    ranks2 = sorted(s.rank for s in d2.summands)
    if ranks1 != ranks2:
        return IsomorphismAnswer(IsoVerdict.NO, reason="rank multisets differ")
    key1 = sorted(
        str(_rank1_type_key(s)) for s in d1.summands if s.rank == 1
    )
    key2 = sorted(
        str(_rank1_type_key(s)) for s in d2.summands if s.rank == 1
    )
    if key1 != key2:
        return IsomorphismAnswer(IsoVerdict.NO, reason="rank-1 typeset multisets differ")

    pairing: list[int | None] = [None] * len(d1.summands)
    used: set[int] = set()
    maps: list[tuple[tuple[Vec, Vec], ...]] = []
    for i, s in enumerate(d1.summands):
        match = None
        for j, t in enumerate(d2.summands):
            if j in used or t.rank != s.rank:
                continue
            witness = _summand_iso(s, t)
            if witness is not None:
                match = (j, witness)
                break
        if match is None:
            return IsomorphismAnswer(
                IsoVerdict.UNKNOWN,
                reason="no certified isomorphism for summand %d" % i,
            )
        pairing[i] = match[0]
        used.add(match[0])
        maps.append(match[1])
    return IsomorphismAnswer(
        IsoVerdict.YES, tuple(pairing), tuple(maps)
    )


def _summand_iso(s: GroupRep, t: GroupRep):
    """(x, image) pairs witnessing s ~ t, or None when not certified."""
    if s.rank == 1:
        b = next(v for v, _ps in s.generators)
        c = next(v for v, _ps in t.generators)
        tb = element_type(s, b)
        tc = element_type(t, c)
        if tb.inverted != tc.inverted:
            return None
        # q*b in s iff q in (1/mb) Z[inv]; map b -> (mb/mc) c matches them
        rho = Fraction(tb.multiplier, tc.multiplier)
        return ((b, vscale(rho, c)),)
    if compare(s, t) is Compare.EQUAL:
        return tuple((row, row) for row in s.span.rows)
    return None


def apply_span_matrix(g: GroupRep, m: Mat) -> GroupRep:
    """Transport g by the rank x rank matrix acting on lattice-hull coordinates."""
    hull = g.lattice_hull.rows
    m = mat(m)
    if len(m) != len(hull) or any(len(row) != len(hull) for row in m):
        raise ValueError("matrix size must equal the group rank")
    gens = []
    for v, s in g.generators:
        c = solve_in_rows(hull, v)
        image = apply_matrix(apply_matrix(c, m), hull) if hull else v
        gens.append((image, s))
    return group_rep(g.ambient_dim, gens)


def automorphism_check(g: GroupRep, m: Mat) -> bool:
    """Whether the span matrix maps g onto g (checked in both directions)."""
    m = mat(m)
    minv = mat_inverse(m)
    if not subgroup_leq(apply_span_matrix(g, m), g):
        return False
    return subgroup_leq(apply_span_matrix(g, minv), g)


def automorphism_from_summand_isos(
    d1: DecompositionRecord,
    d2: DecompositionRecord,
    answer: IsomorphismAnswer,
) -> Mat:
    """Assemble the block map sending each summand onto its partner.

    Returns the rank x rank matrix in lattice-hull coordinates of the group,
    verified by automorphism_check.
    """
    if answer.verdict is not IsoVerdict.YES or answer.pair_maps is None:
        raise GroupError("only a Yes answer assembles to an automorphism")
    g = d1.group
    hull = g.lattice_hull.rows
    xs: list[Vec] = []
    ys: list[Vec] = []
    for pairs in answer.pair_maps:
        for x, y in pairs:
            xs.append(solve_in_rows(hull, x))
            ys.append(solve_in_rows(hull, y))
    m = mat_mul(mat_inverse(mat(xs)), mat(ys))
    if not automorphism_check(g, m):
        raise GroupError("assembled block map failed the automorphism check")
    return m
