"""Integer and exact-rational primitives shared by every other module.

All arithmetic is arbitrary precision; nothing here ever rounds.  Rational
values are stdlib ``fractions.Fraction`` instances, re-exported as
``Rational`` so callers do not need to care which engine backs them.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple

Rational = Fraction

__all__ = [
    "Rational",
    "BezoutPair",
    "gcd",
    "egcd",
    "mod_inverse",
    "is_prime",
    "primes_avoiding",
    "next_prime_avoiding",
    "in_ideal",
    "rational",
]


class BezoutPair(NamedTuple):
    """Witness (x, y) for y*m - x*n == 1, kept with the (m, n) it certifies."""

    x: int
    y: int


def rational(num: int, den: int = 1) -> Fraction:
    """Build a reduced Fraction, rejecting a zero denominator loudly."""
    if den == 0:
        raise ValueError("denominator must be nonzero")
    return Fraction(num, den)


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) and s*a + t*b = g.

    Inputs must be nonnegative and not both zero.  The coefficients are the
    ones produced by the classic iterative remainder chain, so results are
    reproducible: egcd(3, 7) == (1, -2, 1).
    """
    if a < 0 or b < 0:
        raise ValueError("egcd requires nonnegative inputs")
    if a == 0 and b == 0:
        raise ValueError("egcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def mod_inverse(a: int, n: int) -> int:
    """Inverse of a modulo n in [1, n-1]; error when gcd(a, n) != 1."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    try:
        return pow(a, -1, n)
    except ValueError:
        raise ValueError(f"{a} is not invertible modulo {n}") from None


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Deterministic Miller-Rabin witness ladders (threshold, witnesses).  The
# 13-prime set is exact for everything below 3.3e24, well past 2**64; the
# final fallback set keeps the procedure deterministic for larger inputs.
_MR_LADDER = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (3_215_031_751, (2, 3, 5, 7)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318_665_857_834_031_151_167_461, _SMALL_PRIMES),
    (3_317_044_064_679_887_385_961_981, _SMALL_PRIMES + (41,)),
)
_MR_FALLBACK = _SMALL_PRIMES + (
    41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
)


def _strong_probable_prime(n: int, a: int, d: int, r: int) -> bool:
    a %= n
    if a == 0:
        return True
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Exact primality verdict; deterministic for every input size."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 41 * 41:
        return True
    d = n - 1
    r = ((d & -d).bit_length()) - 1
    d >>= r
    witnesses: Iterable[int] = _MR_FALLBACK
    for bound, ws in _MR_LADDER:
        if n < bound:
            witnesses = ws
            break
    return all(_strong_probable_prime(n, a, d, r) for a in witnesses)


def primes_avoiding(lower_bound: int, forbidden: Iterable[int], count: int) -> list[int]:
    """The `count` smallest primes p >= lower_bound dividing no forbidden value."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    forb = tuple(forbidden)
    if any(f < 1 for f in forb):
        raise ValueError("forbidden values must be positive")
    found: list[int] = []
    p = max(2, lower_bound)
    while len(found) < count:
        if is_prime(p) and all(f % p != 0 for f in forb):
            found.append(p)
        p += 1
    return found


def next_prime_avoiding(lower_bound: int, forbidden: Iterable[int]) -> int:
    """First prime p >= lower_bound dividing no forbidden value."""
    return primes_avoiding(lower_bound, forbidden, 1)[0]


def in_ideal(v: Fraction | int, n: int) -> bool:
    """True iff n*v is an integer, i.e. v is a multiple of 1/n."""
    if n < 1:
        raise ValueError("n must be positive")
    return n % Fraction(v).denominator == 0
