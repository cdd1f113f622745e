"""Tests for the integer and exact-rational primitives."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from faithfrac import (
    egcd,
    in_ideal,
    is_prime,
    mod_inverse,
    next_prime_avoiding,
    primes_avoiding,
    rational,
)

HYP_SETTINGS = {"deadline": None, "max_examples": 200}


@pytest.mark.parametrize(
    "a,b,g",
    [
        (12, 18, 6),
        (7, 0, 7),
        (35, 64, 1),
        (0, 0, 0),
    ],
)
def test_gcd_small_cases(a, b, g):
    assert math.gcd(a, b) == g


@pytest.mark.parametrize(
    "a,b,expected",
    [
        (3, 7, (1, -2, 1)),
        (1, 11, (1, 1, 0)),
        (29, 30, (1, -1, 1)),
        (12, 18, (6, -1, 1)),
    ],
)
def test_egcd_known_values(a, b, expected):
    assert egcd(a, b) == expected


def test_egcd_rejects_double_zero():
    with pytest.raises(ValueError):
        egcd(0, 0)


@given(st.integers(min_value=0, max_value=10**9), st.integers(min_value=0, max_value=10**9))
@settings(**HYP_SETTINGS)
def test_egcd_bezout_identity(a, b):
    if a == 0 and b == 0:
        return
    g, s, t = egcd(a, b)
    assert g == math.gcd(a, b)
    assert s * a + t * b == g


@pytest.mark.parametrize(
    "a,n,inv",
    [
        (4, 5, 4),
        (3, 7, 5),
        (71, 105, 71),
    ],
)
def test_mod_inverse_known_values(a, n, inv):
    assert mod_inverse(a, n) == inv


def test_mod_inverse_requires_coprimality():
    with pytest.raises(ValueError):
        mod_inverse(6, 9)


@given(st.integers(min_value=2, max_value=10**6), st.integers(min_value=1, max_value=10**6))
@settings(**HYP_SETTINGS)
def test_mod_inverse_inverts(n, a):
    if math.gcd(a, n) != 1:
        return
    y = mod_inverse(a, n)
    assert 1 <= y <= n - 1
    assert (a * y) % n == 1


@pytest.mark.parametrize(
    "n,expected",
    [
        (1, False),
        (2, True),
        (3, True),
        (4, False),
        (105, False),
        (997, True),
        (7919, True),
        (7917, False),
    ],
)
def test_is_prime(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_trial_division_below_2000():
    def slow(n):
        return n >= 2 and all(n % d for d in range(2, int(math.isqrt(n)) + 1))

    for n in range(1, 2000):
        assert is_prime(n) == slow(n)


@pytest.mark.parametrize(
    "lower,forbidden,count,expected",
    [
        (4, {3}, 2, [5, 7]),
        (2, set(), 3, [2, 3, 5]),
        (2, {30}, 3, [7, 11, 13]),
    ],
)
def test_primes_avoiding(lower, forbidden, count, expected):
    assert primes_avoiding(lower, forbidden, count) == expected


def test_next_prime_avoiding_agrees_with_list():
    assert next_prime_avoiding(4, {3}) == 5
    assert next_prime_avoiding(2, {30}) == 7
    assert next_prime_avoiding(14, set()) == 17


@given(
    st.integers(min_value=2, max_value=5000),
    st.sets(st.integers(min_value=2, max_value=300), max_size=4),
)
@settings(**HYP_SETTINGS)
def test_primes_avoiding_properties(lower, forbidden):
    got = primes_avoiding(lower, forbidden, 3)
    assert len(got) == 3
    assert got == sorted(got)
    for p in got:
        assert is_prime(p)
        assert p >= lower
        # p divides no forbidden element
        assert all(f % p for f in forbidden)


@pytest.mark.parametrize(
    "v,n,expected",
    [
        (Fraction(1, 3), 9, True),
        (Fraction(1, 2), 3, False),
        (Fraction(0), 17, True),
        (0, 17, True),
        (Fraction(4, 9), 9, True),
    ],
)
def test_in_ideal(v, n, expected):
    assert in_ideal(v, n) is expected


@given(st.integers(min_value=-1000, max_value=1000), st.integers(min_value=1, max_value=500))
@settings(**HYP_SETTINGS)
def test_multiples_always_in_ideal(k, n):
    assert in_ideal(Fraction(k, n), n)


def test_rational_reduces_and_rejects_zero_denominator():
    assert rational(6, 9) == Fraction(2, 3)
    assert rational(5) == 5
    with pytest.raises(ValueError):
        rational(1, 0)
