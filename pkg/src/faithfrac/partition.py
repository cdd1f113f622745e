"""Blockwise decompositions: one faithful block per partition part of m.

Splitting m as m_1 + ... + m_e and decomposing each m_i/n over mutually
coprime denominator pools makes the combined sum collapse cleanly: the only
lattice partial sums landing in (1/n)Z are exactly the subset sums of the
m_i/n themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .construct import general_coprime
from .model import Decomposition, validate
from .verifier import DEFAULT_CAP, partial_sums_in_ideal

__all__ = [
    "PartitionSpec",
    "BlockDecomposition",
    "PartitionCheck",
    "decompose_partition",
    "s_set",
    "t_set",
    "check_partition_theorem",
]


@dataclass(frozen=True)
class PartitionSpec:
    """A partition m = sum(parts) with every part positive."""

    m: int
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts or any((not isinstance(p, int)) or p < 1 for p in self.parts):
            raise ValueError("parts must be positive integers")
        if sum(self.parts) != self.m:
            raise ValueError(f"parts sum to {sum(self.parts)}, not {self.m}")


@dataclass(frozen=True)
class BlockDecomposition:
    """Per-part blocks plus their concatenation as one decomposition of m/n."""

    target: Fraction
    parts: tuple[int, ...]
    blocks: tuple[Decomposition, ...]
    combined: Decomposition


def decompose_partition(spec: PartitionSpec, n: int) -> BlockDecomposition:
    """Build one faithful block per part, all denominator pools coprime.

    Parts are processed in non-decreasing order; each block forbids n and
    every denominator already used.  Blocks whose reduced target reaches 2
    switch to the max numerator policy, whose near-one terms keep the block
    short; smaller targets use unit fractions.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    if gcd(spec.m, n) != 1:
        raise ValueError(f"{spec.m} and {n} must be coprime")
    omega: set[int] = {n}
    blocks: list[Decomposition] = []
    for part in sorted(spec.parts):
        reduced = Fraction(part, n)
        policy = "max" if reduced >= 2 else "unit"
        built = general_coprime(
            reduced.numerator, reduced.denominator, policy, omega
        )
        blocks.append(built.decomposition)
        omega.update(built.decomposition.denominators)
    combined = Decomposition(
        Fraction(spec.m, n), tuple(t for b in blocks for t in b.terms)
    )
    problems = validate(combined)
    if problems:
        raise RuntimeError(f"combined blocks are invalid: {problems}")
    return BlockDecomposition(
        target=Fraction(spec.m, n),
        parts=tuple(sorted(spec.parts)),
        blocks=tuple(blocks),
        combined=combined,
    )


def s_set(bd: BlockDecomposition, cap: int = DEFAULT_CAP) -> frozenset[Fraction]:
    """Lattice partial sums of the combined decomposition lying in (1/n)Z."""
    return partial_sums_in_ideal(bd.combined, cap)


def t_set(parts: tuple[int, ...], n: int) -> frozenset[Fraction]:
    """Subset sums of the block targets m_i/n, empty subset included."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    sums = {Fraction(0)}
    for size in range(1, len(parts) + 1):
        for combo in combinations(range(len(parts)), size):
            sums.add(Fraction(sum(parts[i] for i in combo), n))
    return frozenset(sums)


@dataclass(frozen=True)
class PartitionCheck:
    block_decomposition: BlockDecomposition
    s: frozenset[Fraction]
    t: frozenset[Fraction]

    @property
    def equal(self) -> bool:
        return self.s == self.t

    @property
    def s_covers_t(self) -> bool:
        return self.s >= self.t


def check_partition_theorem(
    spec: PartitionSpec, n: int, cap: int = DEFAULT_CAP
) -> PartitionCheck:
    """Compare the in-ideal lattice sums against the subset sums of the parts."""
    bd = decompose_partition(spec, n)
    return PartitionCheck(bd, s_set(bd, cap), t_set(bd.parts, n))
