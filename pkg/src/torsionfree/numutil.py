"""Small integer/rational helpers shared across the package."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


def factorize(n: int) -> dict[int, int]:
    """Factor a positive integer by trial division; returns {prime: exponent}."""
    if n <= 0:
        raise ValueError("factorize expects a positive integer, got %r" % (n,))
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def primes_dividing(n: int) -> tuple[int, ...]:
    """Sorted primes dividing |n| (empty for n in {-1, 0, 1})."""
    n = abs(n)
    if n <= 1:
        return ()
    return tuple(sorted(factorize(n)))


def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n, sorted ascending."""
    out = [1]
    for p, mult in factorize(n).items():
        out = [d * p**i for d in out for i in range(mult + 1)]
    return tuple(sorted(out))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    k = n + 1
    while not is_prime(k):
        k += 1
    return k


def valuation(q: Fraction | int, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of zero is undefined")
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def mod_p(q: Fraction | int, p: int) -> int:
    """Reduce a p-integral rational modulo p."""
    q = Fraction(q)
    if q.denominator % p == 0:
        raise ValueError("%s is not p-integral at p=%d" % (q, p))
    return q.numerator * pow(q.denominator, -1, p) % p


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, s, t) with s*a + t*b == g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t
