"""Shared hypothesis strategies for small groups and vectors."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from torsionfree.groups import GroupRep, group_rep
from torsionfree.rank1 import ALL, NO_PRIMES, PrimeSet, prime_set

SMALL_PRIMES = (2, 3, 5)


def small_fractions(max_num: int = 3, max_den: int = 6):
    return st.builds(
        Fraction,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def vectors(dim: int, max_num: int = 3, max_den: int = 6):
    return st.tuples(*([small_fractions(max_num, max_den)] * dim))


def prime_sets(allow_all: bool = True):
    finite = st.sets(st.sampled_from(SMALL_PRIMES), max_size=2).map(
        lambda s: prime_set(sorted(s))
    )
    if not allow_all:
        return finite
    return st.one_of(finite, st.just(ALL))


@st.composite
def group_reps(draw, ambient: int = 2, max_gens: int = 3, allow_all: bool = True):
    count = draw(st.integers(min_value=1, max_value=max_gens))
    gens = []
    for _ in range(count):
        v = draw(vectors(ambient))
        s = draw(prime_sets(allow_all))
        gens.append((v, s))
    g = group_rep(ambient, gens)
    return g


@st.composite
def nonzero_group_reps(draw, ambient: int = 2, max_gens: int = 3, allow_all: bool = True):
    g = draw(group_reps(ambient, max_gens, allow_all))
    if g.rank == 0:
        g = group_rep(ambient, [((1,) + (0,) * (ambient - 1), NO_PRIMES)])
    return g


def integer_matrices(rows: int, cols: int, bound: int = 5):
    return st.lists(
        st.lists(st.integers(min_value=-bound, max_value=bound), min_size=cols, max_size=cols),
        min_size=rows,
        max_size=rows,
    )
