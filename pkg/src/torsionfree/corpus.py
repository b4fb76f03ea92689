"""Seeded random groups for property testing.

Four profiles: completely decomposable sums of rank-1 groups (cd), finite
extensions of those by bounded cosets (acd), Butler-style sums with more
rank-1 pieces than rank, and direct sums of the above (mixed).  Generation
is pure in (profile, seed), so a failing case is always reproducible from
its parameters.

Each sample carries its construction as a certificate: the underlying
completely decomposable base and any adjoined cosets with their intended
orders.  For acd samples the coset denominator is a prime never inverted by
the summands it touches, which keeps the extension honest (the coset really
has that order over the base) and pins the regulating index to a divisor of
it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .groups import GroupRep, group_rep
from .linalg import Vec, vadd, vec, vscale

PROFILES = ("cd", "acd", "butler", "mixed")
DEFAULT_PRIMES = (2, 3, 5, 7)


@dataclass(frozen=True)
class CorpusSample:
    profile: str
    seed: int
    group: GroupRep
    base: GroupRep
    cosets: tuple[tuple[Vec, int], ...]

    @property
    def coset_orders(self) -> tuple[int, ...]:
        return tuple(order for _v, order in self.cosets)


def _random_prime_set(rng: random.Random, primes, allow_all: bool):
    if allow_all and rng.random() < 0.1:
        return "ALL"
    k = rng.randint(0, len(primes))
    return tuple(sorted(rng.sample(primes, k)))


def _independent_vectors(rng: random.Random, rank: int, ambient: int):
    order = list(range(ambient))
    rng.shuffle(order)
    rows = []
    for i in range(rank):
        entries = [Fraction(0)] * ambient
        entries[order[i]] = Fraction(1)
        for j in range(i):
            entries[order[j]] = Fraction(rng.randint(-2, 2))
        rows.append(tuple(entries))
    return rows


def _cd_parts(rng, max_rank, primes, allow_all=True, forbid=(), min_rank=1):
    rank = rng.randint(min_rank, max_rank)
    ambient = rank + rng.randint(0, 1)
    vectors = _independent_vectors(rng, rank, ambient)
    gens = []
    for v in vectors:
        s = _random_prime_set(rng, [p for p in primes if p not in forbid], allow_all)
        if rng.random() < 0.2:
            v = vscale(Fraction(1, rng.choice((2, 3))), v)
        gens.append((v, s))
    return ambient, gens


def _generate_part(profile: str, rng: random.Random, max_rank: int, primes) -> tuple[int, list, list, tuple]:
    """Returns (ambient, group gens, base gens, cosets)."""
    if profile == "cd":
        ambient, gens = _cd_parts(rng, max_rank, primes)
        return ambient, gens, gens, ()
    if profile == "acd":
        if max_rank < 2:
            raise ValueError("the acd profile needs max_rank >= 2")
        q = rng.choice(primes)
        ambient, gens = _cd_parts(
            rng, max_rank, primes, allow_all=False, forbid=(q,), min_rank=2
        )
        count = rng.randint(2, len(gens))
        touched = rng.sample(range(len(gens)), count)
        total = vec((0,) * ambient)
        for i in touched:
            total = vadd(total, gens[i][0])
        coset = vscale(Fraction(1, q), total)
        return ambient, gens + [(coset, ())], gens, ((coset, q),)
    if profile == "butler":
        ambient, gens = _cd_parts(rng, max_rank, primes, allow_all=False)
        extras = rng.randint(1, 2)
        for _ in range(extras):
            i, j = rng.randrange(len(gens)), rng.randrange(len(gens))
            v = vadd(gens[i][0], vscale(rng.choice((-1, 1)), gens[j][0]))
            if all(e == 0 for e in v):
                v = gens[i][0]
            s = _random_prime_set(rng, primes, allow_all=False)
            gens = gens + [(v, s)]
        return ambient, gens, gens, ()
    raise ValueError(f"unknown profile: {profile}")


def _shift(v: Vec, offset: int, ambient: int) -> Vec:
    out = [Fraction(0)] * ambient
    for i, e in enumerate(v):
        out[offset + i] = e
    return tuple(out)


def generate(profile: str, seed: int, *, max_rank: int = 3, primes=DEFAULT_PRIMES) -> CorpusSample:
    """Deterministic sample for the given profile and seed."""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile: {profile}")
    rng = random.Random(f"{profile}:{seed}:{max_rank}:{primes}")
    if profile == "mixed":
        if max_rank < 2:
            raise ValueError("the mixed profile needs max_rank >= 2")
        # split the rank budget so the bound holds for the direct sum
        left_budget = rng.randint(1, max_rank - 1)
        right_budget = rng.randint(1, max_rank - left_budget)
        left = rng.choice(("cd", "acd", "butler"))
        right = rng.choice(("cd", "acd", "butler"))
        if left_budget < 2 and left == "acd":
            left = "cd"
        if right_budget < 2 and right == "acd":
            right = "cd"
        amb_l, gens_l, base_l, cosets_l = _generate_part(left, rng, left_budget, primes)
        amb_r, gens_r, base_r, cosets_r = _generate_part(right, rng, right_budget, primes)
        ambient = amb_l + amb_r
        gens = [(_shift(v, 0, ambient), s) for v, s in gens_l]
        gens += [(_shift(v, amb_l, ambient), s) for v, s in gens_r]
        base = [(_shift(v, 0, ambient), s) for v, s in base_l]
        base += [(_shift(v, amb_l, ambient), s) for v, s in base_r]
        cosets = tuple((_shift(v, 0, ambient), d) for v, d in cosets_l)
        cosets += tuple((_shift(v, amb_l, ambient), d) for v, d in cosets_r)
    else:
        ambient, gens, base, cosets = _generate_part(profile, rng, max_rank, primes)
    return CorpusSample(
        profile, seed, group_rep(ambient, gens), group_rep(ambient, base), cosets
    )
