"""Brute-force reference implementations for cross-checking the main paths.

Membership is decided here by explicit coefficient enumeration at a fixed
denominator level instead of the p-local route: at exponent bound B a finite
prime set S contributes coefficient denominators dividing prod_{p in S} p^B,
so the group is replaced by the finitely generated approximation
sum_i Z * (v_i / D_i), plus the full rational span of the ALL generators.
The approximations increase with B and exhaust the group, so a positive
answer is always correct and a negative answer is correct whenever B bounds
the heights a representation can need.

The integer-span decision goes through coordinates relative to an
independent subset of the scaled generators and is then settled one prime
at a time: the coordinate rows are triangulated over Z/p^k with
minimal-valuation pivoting, and the candidate reduces greedily against the
pivots.  A power of p past the coordinate denominators bounds the index of
the coordinate lattice, so solvability at that finite level is membership.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .groups import GroupRep
from .linalg import Subspace, Vec, is_zero_vec, solve_in_rows, vec, vscale
from .numutil import divisors, factorize, primes_dividing, valuation


def sufficient_exponent(g: GroupRep, x, extra: int = 2) -> int:
    """A denominator-exponent bound at which brute_force_member is complete.

    Coefficients solving x = sum q_i v_i come from Cramer solves against the
    generator matrix, so their p-valuations are bounded below by the query's
    own valuations plus the valuation content the generators can contribute
    (at most twice the rank many entries deep through determinants).
    """
    x = vec(x)
    primes = set(g.active_primes)
    for e in x:
        if e:
            primes.update(primes_dividing(e.denominator))
    bound = 1
    for p in sorted(primes):
        need = max((-valuation(e, p) for e in x if e), default=0)
        content = 0
        for v, _s in g.generators:
            for e in v:
                if e:
                    content = max(content, abs(valuation(e, p)))
        bound = max(bound, need + 2 * max(1, g.rank) * content)
    return bound + extra


def _pval(x: int, p: int, cap: int) -> int:
    if x == 0:
        return cap
    v = 0
    while x % p == 0 and v < cap:
        x //= p
        v += 1
    return v


def _solvable_mod_prime_power(
    rows: list[list[int]], target: list[int], p: int, k: int
) -> bool:
    """Decide whether target is an integer combination of rows modulo p^k.

    Triangulation over Z/p^k with minimal-valuation pivots.  When a pivot
    has valuation v > 0, the scaled row p^(k-v) * pivot is kept as an extra
    generator, so the row set stays closed under the scalars that kill a
    pivot and greedy reduction of the target is a complete decision.
    """
    mod = p**k
    active = [[x % mod for x in row] for row in rows]
    active = [row for row in active if any(row)]
    pivots = []
    for col in range(len(target)):
        best_v, best_i = k, None
        for i, row in enumerate(active):
            v = _pval(row[col], p, k)
            if v < best_v:
                best_v, best_i = v, i
        if best_i is None:
            continue
        piv = active.pop(best_i)
        inv = pow(piv[col] // p**best_v, -1, mod)
        piv = [x * inv % mod for x in piv]
        remaining = []
        for row in active:
            f = row[col] // p**best_v
            new = [(x - f * y) % mod for x, y in zip(row, piv)]
            if any(new):
                remaining.append(new)
        active = remaining
        if best_v:
            aux = [x * p ** (k - best_v) % mod for x in piv]
            if any(aux):
                active.append(aux)
        pivots.append((col, best_v, piv))
    b = [x % mod for x in target]
    for col, v, piv in pivots:
        if _pval(b[col], p, k) < v:
            return False
        f = b[col] // p**v
        b = [(x - f * y) % mod for x, y in zip(b, piv)]
    return not any(b)


def _integer_span_contains(rows: list[Vec], target: Vec) -> bool:
    """Whether target lies in the Z-span of rows (all rational vectors)."""
    rows = [r for r in rows if not is_zero_vec(r)]
    if is_zero_vec(target):
        return True
    if not rows:
        return False
    basis: list[Vec] = []
    for r in rows:
        if not basis or solve_in_rows(tuple(basis), r) is None:
            basis.append(r)
    c = solve_in_rows(tuple(basis), target)
    if c is None:
        return False
    coord_rows = [solve_in_rows(tuple(basis), r) for r in rows]
    den = 1
    for row in coord_rows:
        for e in row:
            den = lcm(den, e.denominator)
    for e in c:
        den = lcm(den, e.denominator)
    if den == 1:
        # every coordinate integral, and the basis rows themselves supply Z^rank
        return True
    scaled = [[int(e * den) for e in row] for row in coord_rows]
    y = [int(e * den) for e in c]
    rank = len(basis)
    for p, mult in factorize(den).items():
        if not _solvable_mod_prime_power(scaled, y, p, rank * mult + 1):
            return False
    return True


def _level_rows(g: GroupRep, exponent_bound: int):
    """Scaled finite-set generators and the span of the ALL generators."""
    wspace = Subspace.span(
        [v for v, s in g.generators if s.is_all], g.ambient_dim
    )
    rows = []
    for v, s in g.generators:
        if s.is_all:
            continue
        d = 1
        for p in s:
            d *= p**exponent_bound
        rows.append(wspace.reduce(vscale(Fraction(1, d), v)))
    return rows, wspace


def brute_force_member(g: GroupRep, x, exponent_bound: int = 4) -> bool:
    """Membership of x in the level-bound approximation of G by enumeration."""
    x = vec(x)
    if len(x) != g.ambient_dim:
        raise ValueError("vector length mismatch")
    if is_zero_vec(x):
        return True
    rows, wspace = _level_rows(g, exponent_bound)
    return _integer_span_contains(rows, wspace.reduce(x))


def _primitive_direction(u) -> Vec:
    if isinstance(u, Subspace):
        if u.dim != 1:
            raise ValueError("brute-force purification needs a one-dimensional space")
        d = u.rows[0]
    else:
        d = vec(u)
    if is_zero_vec(d):
        raise ValueError("zero direction")
    den = lcm(*(e.denominator for e in d))
    ints = [int(e * den) for e in d]
    g = gcd(*ints)
    return tuple(Fraction(e, g) for e in ints)


def brute_force_purify(g: GroupRep, u, exponent_bound: int = 4) -> tuple[Vec, ...]:
    """Generators of {x in Q*u : x in G}, exhaustively at the given level.

    The level approximation is finitely generated, so the sought module is
    cyclic: first the least positive integer multiple of the primitive
    direction that lies at the level, then greedy division by every prime
    that could divide the generator's denominator.
    """
    d0 = _primitive_direction(u)
    rows, wspace = _level_rows(g, exponent_bound)
    reduced = wspace.reduce(d0)

    if is_zero_vec(reduced):
        # the line sits inside the fully divisible directions
        if not brute_force_member(g, d0, exponent_bound):
            raise RuntimeError("divisible direction escaped the group (oracle)")
        return (d0,)

    basis: list[Vec] = []
    for r in rows:
        if not is_zero_vec(r) and (
            not basis or solve_in_rows(tuple(basis), r) is None
        ):
            basis.append(r)
    c = solve_in_rows(tuple(basis), reduced) if basis else None
    if c is None:
        return ()

    denominators = 1
    for row in rows:
        coords = solve_in_rows(tuple(basis), row)
        for e in coords:
            denominators = lcm(denominators, e.denominator)
    for e in c:
        denominators = lcm(denominators, e.denominator)

    m0 = None
    for m in divisors(denominators):
        if brute_force_member(g, vscale(m, d0), exponent_bound):
            m0 = m
            break
    if m0 is None:
        return ()

    gen = vscale(m0, d0)
    numerator_gcd = gcd(*(e.numerator for e in c))
    probe = set(g.active_primes) | set(primes_dividing(denominators))
    if m0 > 1:
        probe.update(primes_dividing(m0))
    if numerator_gcd > 1:
        probe.update(primes_dividing(numerator_gcd))
    probe_primes = sorted(probe)
    changing = True
    while changing:
        changing = False
        for p in probe_primes:
            candidate = vscale(Fraction(1, p), gen)
            if brute_force_member(g, candidate, exponent_bound):
                gen = candidate
                changing = True
    return (gen,)
