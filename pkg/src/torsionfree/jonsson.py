"""Jonsson bases: strong decompositions of finite index with pure summands.

A Jonsson basis of G is a direct sum A = A_1 + ... + A_t of pure summands
with finite index in G.  The quotient G/A is the associated finite invariant
("the Jonsson quotient"), and much of the structure theory happens there:
decompositions of the quotient sometimes lift to genuine decompositions of
G, block by block, and the ones that do are found by regrouping summands.

Candidate summands are always replaced by the purification of their span,
so every basis built here satisfies the purity requirement by construction.
Searches over candidate families carry explicit bounds and say whether they
were exhaustive for that scope.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .bases import BasisRecord
from .decomp import _pure_hull, apply_span_matrix, automorphism_check, candidate_vectors
from .groups import (
    FiniteQuotient,
    GroupError,
    GroupRep,
    compare,
    Compare,
    element_type,
    group_rep,
    index_and_quotient,
    subgroup_leq,
    sum_groups,
)
from .linalg import Mat, Subspace, Vec, apply_matrix, mat, solve_in_rows
from .indec import typeset_obstruction_certificate


class JonssonFlag(enum.Enum):
    RANK1 = "Rank1"
    SI_CERTIFIED = "SI-Certified"
    ASSERTED = "Asserted"


class InfiniteIndexError(GroupError):
    """The candidate sum has infinite index; carries the witness direction."""

    def __init__(self, prime: int, direction: Vec):
        super().__init__(f"infinite {prime}-torsion along {direction}")
        self.prime = prime
        self.direction = direction


@dataclass(frozen=True)
class JonssonBasis:
    group: GroupRep
    summands: tuple[tuple[GroupRep, JonssonFlag], ...]
    quotient: FiniteQuotient

    @property
    def summand_groups(self) -> tuple[GroupRep, ...]:
        return tuple(s for s, _f in self.summands)

    @property
    def index(self) -> int:
        return self.quotient.order


def _certification(summand: GroupRep) -> JonssonFlag:
    if summand.rank == 1:
        return JonssonFlag.RANK1
    if summand.rank == 2 and typeset_obstruction_certificate(summand) is not None:
        return JonssonFlag.SI_CERTIFIED
    return JonssonFlag.ASSERTED


def jonsson_basis_from_summands(g: GroupRep, candidates) -> JonssonBasis:
    """Build a Jonsson basis from candidate summands (purifying their spans).

    Raises on overlapping or deficient spans, and InfiniteIndexError (with
    the witness prime and direction) when the purified sum has infinite
    index in g.
    """
    candidates = tuple(candidates)
    if not candidates:
        raise ValueError("no candidate summands")
    total_dim = 0
    joined: list[Vec] = []
    for c in candidates:
        if c.ambient_dim != g.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        total_dim += c.rank
        joined.extend(c.span.rows)
    span = Subspace.span(joined, g.ambient_dim)
    if span.dim != total_dim:
        raise GroupError("candidate spans overlap")
    if span.dim != g.rank:
        raise GroupError("candidate spans do not cover the group")
    summands = tuple(_pure_hull(g, c.span) for c in candidates)
    total = sum_groups(*summands)
    description = index_and_quotient(g, total)
    if not description.is_finite:
        raise InfiniteIndexError(description.prime, description.direction)
    flagged = tuple((s, _certification(s)) for s in summands)
    return JonssonBasis(g, flagged, description.quotient)


def _block_hull(a: JonssonBasis, block) -> GroupRep:
    rows: list[Vec] = []
    for i in block:
        rows.extend(a.summand_groups[i].span.rows)
    return _pure_hull(a.group, Subspace.span(rows, a.group.ambient_dim))


def _proper_groupings(t: int, max_blocks: int):
    # restricted-growth enumeration, smallest block count first
    for nblocks in range(2, min(t, max_blocks) + 1):
        for assignment in itertools.product(range(nblocks), repeat=t - 1):
            labels = (0, *assignment)
            if max(labels) != nblocks - 1:
                continue
            seen = set()
            canonical = True
            for lab in labels:
                if lab not in seen:
                    if lab != len(seen):
                        canonical = False
                        break
                    seen.add(lab)
            if not canonical:
                continue
            yield tuple(
                tuple(i for i, lab in enumerate(labels) if lab == b) for b in range(nblocks)
            )


def splitting_decompositions_of(a: JonssonBasis, max_blocks: int):
    """Proper summand groupings whose purified block sums rebuild G exactly."""
    g = a.group
    out = []
    for blocks in _proper_groupings(len(a.summands), max_blocks):
        hulls = tuple(_block_hull(a, block) for block in blocks)
        if subgroup_leq(g, sum_groups(*hulls)):
            out.append((blocks, hulls))
    return out


def _quotient_subgroup(q: FiniteQuotient, generators) -> frozenset:
    """Closure of the given image tuples inside the quotient group."""
    factors = q.invariant_factors
    zero = (0,) * len(factors)
    frontier = [zero]
    seen = {zero}
    while frontier:
        x = frontier.pop()
        for gen in generators:
            y = tuple((a + b) % d for a, b, d in zip(x, gen, factors))
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def _image_subgroup(a: JonssonBasis, hull: GroupRep) -> frozenset:
    images = [a.quotient.image(v) for v, _s in hull.generators]
    return _quotient_subgroup(a.quotient, images)


@dataclass(frozen=True)
class LiftReport:
    """A quotient decomposition together with its lift to G, if one exists."""

    found: bool
    blocks: tuple[tuple[int, ...], ...] | None
    lifted: tuple[GroupRep, ...] | None
    images: tuple[tuple[tuple[int, ...], ...], ...] | None
    groupings_searched: int = 0


def lift_quotient_decomposition(g: GroupRep, a: JonssonBasis, u_generators, w_generators) -> LiftReport:
    """Try to lift the quotient decomposition U + W to a decomposition of G.

    U and W are given by generator images in invariant-factor coordinates.
    A lift is a regrouping of a's summands into B | C with B* + C* = G,
    image(B*) = U and image(C*) = W.  Refusal after the full grouping scan
    proves the decomposition does not lift.
    """
    if a.group != g and compare(a.group, g) is not Compare.EQUAL:
        raise ValueError("basis belongs to a different group")
    q = a.quotient
    k = len(q.invariant_factors)
    u_gens = [tuple(int(x) % d for x, d in zip(t, q.invariant_factors)) for t in u_generators]
    w_gens = [tuple(int(x) % d for x, d in zip(t, q.invariant_factors)) for t in w_generators]
    if any(len(t) != k for t in itertools.chain(u_gens, w_gens)):
        raise ValueError("image tuples must match the invariant factors")
    u = _quotient_subgroup(q, u_gens)
    w = _quotient_subgroup(q, w_gens)
    if len(u & w) != 1 or len(_quotient_subgroup(q, list(u) + list(w))) != q.order:
        raise ValueError("the given images are not a direct decomposition of the quotient")

    searched = 0
    for blocks in _proper_groupings(len(a.summands), 2):
        searched += 1
        b_hull = _block_hull(a, blocks[0])
        c_hull = _block_hull(a, blocks[1])
        if not subgroup_leq(g, sum_groups(b_hull, c_hull)):
            continue
        if _image_subgroup(a, b_hull) == u and _image_subgroup(a, c_hull) == w:
            images = tuple(
                tuple(q.image(v) for v, _s in hull.generators) for hull in (b_hull, c_hull)
            )
            return LiftReport(True, blocks, (b_hull, c_hull), images, searched)
    return LiftReport(False, None, None, None, searched)


def regulating_search(g: GroupRep, height_bound: int = 2):
    """Minimal-index Jonsson basis over all rank-1 summand families.

    The candidate summands are the pure hulls of every line spanned by an
    integer combination of generators with coefficients up to height_bound;
    the family is exhaustive for that scope by construction.  Returns
    (best basis, index, exhaustive flag).
    """
    if g.rank == 0:
        raise GroupError("the zero group has no rank-1 summand family")
    lines: list[GroupRep] = []
    seen_spans = set()
    for v in candidate_vectors(g, height_bound):
        space = Subspace.span([v], g.ambient_dim)
        if space in seen_spans:
            continue
        seen_spans.add(space)
        lines.append(_pure_hull(g, space))
    best: JonssonBasis | None = None
    for combo in itertools.combinations(range(len(lines)), g.rank):
        rows = [row for i in combo for row in lines[i].span.rows]
        if Subspace.span(rows, g.ambient_dim).dim != g.rank:
            continue
        total = sum_groups(*(lines[i] for i in combo))
        description = index_and_quotient(g, total)
        if not description.is_finite:
            continue
        if best is None or description.quotient.order < best.index:
            flagged = tuple((lines[i], JonssonFlag.RANK1) for i in combo)
            best = JonssonBasis(g, flagged, description.quotient)
            if best.index == 1:
                break
    if best is None:
        raise GroupError("no Jonsson basis found within the height bound")
    return best, best.index, True


@dataclass(frozen=True)
class QuotientMap:
    """The induced isomorphism G/A -> G/(A alpha) on section generators.

    ``source_images[i]`` and ``target_images[i]`` are the coordinates of the
    i-th section generator and of its transport, each in its own quotient's
    invariant-factor presentation.  ``identity`` is decided in the source
    coordinates and only when the two subgroups literally coincide.
    """

    source: FiniteQuotient
    target: FiniteQuotient
    source_images: tuple[tuple[int, ...], ...]
    target_images: tuple[tuple[int, ...], ...]
    identity: bool

    @property
    def is_identity(self) -> bool:
        return self.identity


def _transport_vec(g: GroupRep, alpha: Mat, v: Vec) -> Vec:
    hull = g.lattice_hull.rows
    coords = solve_in_rows(hull, v)
    if coords is None:
        raise GroupError("vector outside the group's span")
    return apply_matrix(apply_matrix(coords, alpha), hull)


def _transport_group(g: GroupRep, alpha: Mat, group: GroupRep) -> GroupRep:
    gens = [(_transport_vec(g, alpha, v), s) for v, s in group.generators]
    return group_rep(g.ambient_dim, gens)


def induced_quotient_map(g: GroupRep, a: JonssonBasis, alpha: Mat):
    """Transport a by a verified automorphism; the induced map on quotients.

    Returns (a transported, QuotientMap).  The map sends each invariant-
    factor generator of G/A to its coset image in G/(A alpha).
    """
    alpha = mat(alpha)
    if not automorphism_check(g, alpha):
        raise GroupError("not an automorphism of the group")
    transported = jonsson_basis_from_summands(
        g, [_transport_group(g, alpha, s) for s in a.summand_groups]
    )
    source = a.quotient
    target = transported.quotient
    sections = source.section_vectors()
    moved = tuple(_transport_vec(g, alpha, s) for s in sections)
    source_images = tuple(source.image(s) for s in sections)
    target_images = tuple(target.image(v) for v in moved)
    identity = compare(source.subgroup, target.subgroup) is Compare.EQUAL and all(
        source.image(v) == img for v, img in zip(moved, source_images)
    )
    return transported, QuotientMap(source, target, source_images, target_images, identity)


def kernel_check(g: GroupRep, a: JonssonBasis, alpha: Mat) -> bool:
    """Whether (alpha - identity)/exp(G/A) carries g into itself.

    True exactly when the induced automorphism of G/A is the identity.
    """
    alpha = mat(alpha)
    n = a.quotient.exponent
    rank = g.rank
    beta = tuple(
        tuple((alpha[i][j] - (1 if i == j else 0)) / n for j in range(rank))
        for i in range(rank)
    )
    return subgroup_leq(apply_span_matrix(g, beta), g)


def unrefinable_quotient_decompositions(g: GroupRep, a: JonssonBasis):
    """Terminal states of recursive exact block refinement.

    Starting from the one-block grouping, a block may be replaced by two
    sub-blocks whenever its hull splits exactly as the sum of theirs; the
    returned reports are the groupings no such step refines further, i.e.
    the unrefinable liftable decompositions of the quotient.
    """
    if a.quotient.order == 1:
        raise ValueError("the quotient is trivial")
    t = len(a.summands)
    terminal: dict[tuple[tuple[int, ...], ...], None] = {}
    start = (tuple(range(t)),)
    stack = [start]
    visited = {start}
    while stack:
        state = stack.pop()
        refined = False
        for which, block in enumerate(state):
            if len(block) < 2:
                continue
            hull = _block_hull(a, block)
            for size in range(1, len(block) // 2 + 1):
                for left in itertools.combinations(block, size):
                    right = tuple(i for i in block if i not in left)
                    if len(left) == len(right) and left > right:
                        continue
                    left_hull = _block_hull(a, left)
                    right_hull = _block_hull(a, right)
                    if not subgroup_leq(hull, sum_groups(left_hull, right_hull)):
                        continue
                    refined = True
                    nxt = tuple(
                        sorted(
                            (*(b for i, b in enumerate(state) if i != which), left, right)
                        )
                    )
                    if nxt not in visited:
                        visited.add(nxt)
                        stack.append(nxt)
        if not refined:
            terminal[tuple(sorted(state))] = None
    out = []
    for blocks in sorted(terminal):
        hulls = tuple(_block_hull(a, block) for block in blocks)
        images = tuple(
            tuple(a.quotient.image(v) for v, _s in hull.generators) for hull in hulls
        )
        out.append(LiftReport(True, blocks, hulls, images))
    return out


def summand_invariants(a: JonssonBasis):
    """Multiset of (rank, sampled inverted prime sets) across summands."""
    out = []
    for s in a.summand_groups:
        inverted = sorted({str(element_type(s, v).inverted) for v, _ in s.generators})
        out.append((s.rank, tuple(inverted)))
    return tuple(sorted(out))
