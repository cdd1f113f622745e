"""Faithfulness checking by exhaustive enumeration and by congruence elimination.

A decomposition m/n = sum a_i/b_i is faithful when no coefficient vector
0 <= x_i <= a_i makes sum x_i/b_i land in (1/n)Z except the all-zero vector
(value 0) and any vector whose value equals m/n itself.

Everything here reduces the membership test to integer arithmetic: with
L = lcm(b_i) and W = L / gcd(L, n), a lattice sum lies in (1/n)Z exactly
when sum x_i * (L / b_i) == 0 (mod W).  The fast path removes the term with
the largest numerator and solves that congruence for its coefficient instead
of enumerating it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import gcd, lcm, prod
from typing import Iterator

from .model import Decomposition, validate
from .numeric import mod_inverse

__all__ = [
    "DEFAULT_CAP",
    "MITM_THRESHOLD",
    "CapExceeded",
    "Violation",
    "FaithfulnessReport",
    "verify_naive",
    "verify",
    "partial_sums_in_ideal",
]

DEFAULT_CAP = 10_000_000
MITM_THRESHOLD = 20


class CapExceeded(RuntimeError):
    """Raised when a check would need more combination evaluations than allowed."""


@dataclass(frozen=True)
class Violation:
    """A coefficient vector whose value falsifies faithfulness."""

    coefficients: tuple[int, ...]
    value: Fraction


@dataclass(frozen=True)
class FaithfulnessReport:
    faithful: bool
    violation: Violation | None
    combos_examined: int
    method: str


def _checked(d: Decomposition) -> None:
    problems = validate(d)
    if problems:
        raise ValueError(f"invalid decomposition: {', '.join(problems)}")


def _vector_key(vec: tuple[int, ...]) -> tuple[int, ...]:
    # Enumeration order: the first coefficient varies fastest, so the
    # "smallest" violation is the colex-minimal vector.
    return vec[::-1]


def verify_naive(d: Decomposition, cap: int = DEFAULT_CAP) -> FaithfulnessReport:
    """Oracle check: enumerate every coefficient vector and test membership.

    Stops at the first violating vector in enumeration order (first
    coefficient fastest).  Refuses instances whose full lattice exceeds cap.
    """
    _checked(d)
    n = d.target.denominator
    u = d.target
    bounds = [t.num for t in d.terms]
    total = prod(a + 1 for a in bounds)
    if total > cap:
        raise CapExceeded(f"naive lattice has {total} points, cap is {cap}; use verify")
    # Coefficient x_i contributes x_i copies of 1/b_i, not multiples of a_i/b_i.
    values = [Fraction(1, t.den) for t in d.terms]
    combos = 0
    # itertools.product varies its last factor fastest; feeding it the bounds
    # reversed makes the first coefficient the fastest-moving one.
    for rev in iproduct(*[range(a + 1) for a in reversed(bounds)]):
        vec = rev[::-1]
        combos += 1
        v = sum((x * val for x, val in zip(vec, values)), Fraction(0))
        if n % v.denominator == 0 and v != 0 and v != u:
            return FaithfulnessReport(False, Violation(vec, v), combos, "naive")
    return FaithfulnessReport(True, None, combos, "naive")


def _iter_assignments(bounds: list[int], weights: list[int], W: int) -> Iterator[tuple[list[int], int]]:
    """Yield (digits, residue) over the mixed-radix lattice.

    The digits list is reused in place; callers must copy it on a hit.  The
    residue is sum(digits[i] * weights[i]) mod W, maintained incrementally.
    """
    d = len(bounds)
    if d == 0:
        yield [], 0
        return
    digits = [0] * d
    prefix = [0] * (d + 1)
    while True:
        yield digits, prefix[d]
        i = d - 1
        while i >= 0 and digits[i] == bounds[i]:
            digits[i] = 0
            i -= 1
        if i < 0:
            return
        digits[i] += 1
        p = prefix[i + 1] + weights[i]
        if p >= W:
            p -= W
        prefix[i + 1] = p
        for j in range(i + 1, d):
            prefix[j + 1] = prefix[j]


class _Eliminator:
    """Solves w_k * x == -s (mod W) for the eliminated coefficient."""

    def __init__(self, w_k: int, W: int, bound: int):
        self.W = W
        self.bound = bound
        self.g = gcd(w_k, W) if W > 1 else 1
        self.step = W // self.g if W > 1 else 1
        if self.step > 1:
            self.inv = mod_inverse((w_k // self.g) % self.step, self.step)
        else:
            self.inv = 0

    def candidates(self, s: int) -> range:
        """All x in [0, bound] solving the congruence, as a range object."""
        if self.W == 1:
            return range(0, self.bound + 1)
        if s % self.g:
            return range(0)
        rhs = (self.W - s) % self.W
        x0 = (rhs // self.g * self.inv) % self.step if self.step > 1 else 0
        if x0 > self.bound:
            return range(0)
        return range(x0, self.bound + 1, self.step)


def _setup(d: Decomposition) -> tuple[int, list[int], list[int], int, int]:
    """Common fast-path precomputation: (n, bounds, weights, W, k)."""
    n = d.target.denominator
    bounds = [t.num for t in d.terms]
    dens = [t.den for t in d.terms]
    L = lcm(*dens)
    W = L // gcd(L, n)
    weights = [(L // b) % W if W > 1 else 0 for b in dens]
    k = max(range(len(bounds)), key=lambda i: (bounds[i], -i))
    return n, bounds, weights, W, k


def _exact_value(d: Decomposition, vec: tuple[int, ...]) -> Fraction:
    return sum((Fraction(x, t.den) for x, t in zip(vec, d.terms)), Fraction(0))


def verify(
    d: Decomposition,
    cap: int = DEFAULT_CAP,
    mitm_threshold: int = MITM_THRESHOLD,
) -> FaithfulnessReport:
    """Same verdict and violation as verify_naive, without enumerating the
    largest coefficient range.

    The term with the largest numerator is eliminated: for every assignment
    of the remaining coefficients the eliminated one is recovered from a
    linear congruence, whose solutions form an arithmetic progression.  When
    the remaining terms outnumber mitm_threshold, or their joint lattice
    alone would break the cap, they are split in half and matched through a
    residue table instead of enumerated jointly.
    """
    _checked(d)
    if not d.terms:
        return FaithfulnessReport(True, None, 0, "congruence")
    n, bounds, weights, W, k = _setup(d)
    u = d.target
    rest = [i for i in range(len(bounds)) if i != k]
    rest_bounds = [bounds[i] for i in rest]
    remaining = prod(a + 1 for a in rest_bounds)
    elim = _Eliminator(weights[k], W, bounds[k])

    best: Violation | None = None
    combos = 0

    def consider(vec: tuple[int, ...]) -> None:
        nonlocal best
        v = _exact_value(d, vec)
        if n % v.denominator != 0:
            raise RuntimeError("congruence produced a value outside (1/n)Z")
        if v == 0 or v == u:
            return
        if best is None or _vector_key(vec) < _vector_key(best.coefficients):
            best = Violation(vec, v)

    if len(rest) <= mitm_threshold and remaining <= cap:
        method = "congruence"
        rest_weights = [weights[i] for i in rest]

        def assemble(rest_digits: list[int], x_k: int) -> tuple[int, ...]:
            vec = [0] * len(bounds)
            for pos, x in zip(rest, rest_digits):
                vec[pos] = x
            vec[k] = x_k
            return tuple(vec)

        for digits, s in _iter_assignments(rest_bounds, rest_weights, W):
            combos += 1
            cands = elim.candidates(s)
            if cands:
                snapshot = list(digits)
                for x_k in cands:
                    combos += 1
                    consider(assemble(snapshot, x_k))
            if combos > cap:
                raise CapExceeded(f"combination evaluations exceeded cap {cap}")
    else:
        method = "meet_in_middle"
        combos = _mitm_scan(bounds, weights, W, rest, k, elim, cap, consider)

    if best is None:
        return FaithfulnessReport(True, None, combos, method)
    return FaithfulnessReport(False, best, combos, method)


def _mitm_scan(bounds, weights, W, rest, k, elim, cap, consider) -> int:
    """Split the remaining terms in half and match residues through a table.

    Solvable pairs need s1 + s2 == 0 (mod g), so the stored half is bucketed
    by residue mod g and only matching buckets are expanded.  The smaller
    half is the stored one; both halves must be enumerable within the cap.
    """
    rest_bounds = [bounds[i] for i in rest]
    total = prod(a + 1 for a in rest_bounds)
    # Balance by product so each half stays near sqrt(total).
    half_target = max(1, int(total**0.5))
    acc = 1
    cut = 0
    while cut < len(rest) - 1 and acc < half_target:
        acc *= rest_bounds[cut] + 1
        cut += 1
    scan, stored = rest[:cut], rest[cut:]
    if prod(bounds[i] + 1 for i in scan) < prod(bounds[i] + 1 for i in stored):
        scan, stored = stored, scan
    scan_size = prod(bounds[i] + 1 for i in scan)
    stored_size = prod(bounds[i] + 1 for i in stored)
    if scan_size + stored_size > cap:
        raise CapExceeded(
            f"meet-in-the-middle halves {scan_size} + {stored_size} exceed cap {cap}"
        )

    def joined_vec(
        scan_digits: tuple[int, ...], stored_digits: tuple[int, ...], x_k: int
    ) -> tuple[int, ...]:
        vec = [0] * len(bounds)
        for pos, x in zip(scan, scan_digits):
            vec[pos] = x
        for pos, x in zip(stored, stored_digits):
            vec[pos] = x
        vec[k] = x_k
        return tuple(vec)

    combos = 0
    table: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
    g = elim.g if W > 1 else 1
    for digits, s in _iter_assignments(
        [bounds[i] for i in stored], [weights[i] for i in stored], W
    ):
        combos += 1
        table.setdefault(s % g, []).append((s, tuple(digits)))
    for digits, s1 in _iter_assignments(
        [bounds[i] for i in scan], [weights[i] for i in scan], W
    ):
        combos += 1
        bucket = table.get((g - s1 % g) % g)
        if not bucket:
            if combos > cap:
                raise CapExceeded(f"combination evaluations exceeded cap {cap}")
            continue
        scan_snapshot = tuple(digits)
        for s2, stored_digits in bucket:
            combos += 1
            s = s1 + s2
            if s >= W:
                s -= W
            cands = elim.candidates(s)
            for x_k in cands:
                combos += 1
                consider(joined_vec(scan_snapshot, stored_digits, x_k))
            if combos > cap:
                raise CapExceeded(f"combination evaluations exceeded cap {cap}")
    return combos


def partial_sums_in_ideal(
    d: Decomposition,
    cap: int = DEFAULT_CAP,
    mitm_threshold: int = MITM_THRESHOLD,
) -> frozenset[Fraction]:
    """Every lattice value sum x_i/b_i that lies in (1/n)Z, 0 and m/n included.

    Uses the same elimination (and the same split strategy on oversized
    lattices) as verify, so only the in-ideal points are ever materialized.
    """
    _checked(d)
    if not d.terms:
        return frozenset({Fraction(0)})
    n, bounds, weights, W, k = _setup(d)
    rest = [i for i in range(len(bounds)) if i != k]
    rest_bounds = [bounds[i] for i in rest]
    remaining = prod(a + 1 for a in rest_bounds)
    elim = _Eliminator(weights[k], W, bounds[k])
    values: set[Fraction] = set()
    term_values = [Fraction(1, t.den) for t in d.terms]

    if len(rest) <= mitm_threshold and remaining <= cap:
        combos = 0
        rest_weights = [weights[i] for i in rest]
        for digits, s in _iter_assignments(rest_bounds, rest_weights, W):
            combos += 1
            cands = elim.candidates(s)
            if cands:
                base = sum(
                    (x * term_values[pos] for pos, x in zip(rest, digits)), Fraction(0)
                )
                for x_k in cands:
                    combos += 1
                    v = base + x_k * term_values[k]
                    if n % v.denominator != 0:
                        raise RuntimeError("congruence produced a value outside (1/n)Z")
                    values.add(v)
            if combos > cap:
                raise CapExceeded(f"combination evaluations exceeded cap {cap}")
    else:

        def collect(vec: tuple[int, ...]) -> None:
            v = _exact_value(d, vec)
            if n % v.denominator != 0:
                raise RuntimeError("congruence produced a value outside (1/n)Z")
            values.add(v)

        _mitm_scan(bounds, weights, W, rest, k, elim, cap, collect)
    return frozenset(values)
