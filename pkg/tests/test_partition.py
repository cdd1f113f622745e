"""Per-part block construction and the subset-sum identity S = T."""

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from faithfrac import (
    PartitionSpec,
    check_partition_theorem,
    decompose_partition,
    s_set,
    t_set,
    validate,
    verify,
)

HYP_SETTINGS = {"deadline": None, "max_examples": 40}


def test_spec_must_sum_and_stay_positive():
    with pytest.raises(ValueError):
        PartitionSpec(5, (2, 2))
    with pytest.raises(ValueError):
        PartitionSpec(3, (3, 0))
    with pytest.raises(ValueError):
        PartitionSpec(2, ())


def test_two_plus_three_over_seven():
    bd = decompose_partition(PartitionSpec(5, (2, 3)), 7)
    assert [b.target for b in bd.blocks] == [Fraction(2, 7), Fraction(3, 7)]
    assert [(t.num, t.den) for t in bd.blocks[0].terms] == [(1, 4), (1, 28)]
    assert [(t.num, t.den) for t in bd.blocks[1].terms] == [(2, 5), (1, 35)]
    assert len(set(bd.combined.denominators)) == 4
    assert validate(bd.combined) == []


def test_single_part_reduces_to_plain_construction():
    bd = decompose_partition(PartitionSpec(2, (2,)), 3)
    assert len(bd.blocks) == 1
    assert bd.combined.target == Fraction(2, 3)
    assert verify(bd.combined).faithful


def test_unit_part_gets_its_own_block():
    bd = decompose_partition(PartitionSpec(4, (1, 3)), 5)
    assert bd.blocks[0].target == Fraction(1, 5)
    assert bd.blocks[1].target == Fraction(3, 5)
    # later blocks must not reuse or collide with earlier denominators
    first = set(bd.blocks[0].denominators)
    second = set(bd.blocks[1].denominators)
    assert not first & second


def test_three_blocks_stay_disjoint():
    bd = decompose_partition(PartitionSpec(6, (1, 2, 3)), 7)
    dens = bd.combined.denominators
    assert len(set(dens)) == len(dens)
    assert validate(bd.combined) == []
    assert sum(b.target for b in bd.blocks) == Fraction(6, 7)


def test_requires_coprime_m_and_n():
    with pytest.raises(ValueError):
        decompose_partition(PartitionSpec(4, (2, 2)), 6)


def test_s_set_of_known_example():
    bd = decompose_partition(PartitionSpec(5, (2, 3)), 7)
    want = {Fraction(0), Fraction(2, 7), Fraction(3, 7), Fraction(5, 7)}
    assert s_set(bd) == want


def test_s_set_single_block():
    bd = decompose_partition(PartitionSpec(2, (2,)), 3)
    assert s_set(bd) == {Fraction(0), Fraction(2, 3)}


@pytest.mark.parametrize(
    "parts,n,expected",
    [
        ((2, 3), 7, {Fraction(0), Fraction(2, 7), Fraction(3, 7), Fraction(5, 7)}),
        ((2, 2), 5, {Fraction(0), Fraction(2, 5), Fraction(4, 5)}),
        ((4,), 9, {Fraction(0), Fraction(4, 9)}),
    ],
)
def test_t_set_subset_sums(parts, n, expected):
    assert t_set(parts, n) == expected


def test_check_known_partitions():
    for parts, n in (((2, 3), 7), ((1, 2), 4), ((1, 2, 3), 7)):
        chk = check_partition_theorem(PartitionSpec(sum(parts), parts), n)
        assert chk.equal
        assert chk.s_covers_t


def test_parts_are_stored_sorted():
    bd = decompose_partition(PartitionSpec(5, (3, 2)), 7)
    assert bd.parts == (2, 3)
    assert [b.target.numerator for b in bd.blocks] == [2, 3]


@st.composite
def partition_cases(draw):
    m = draw(st.integers(min_value=1, max_value=5))
    parts = []
    left = m
    while left:
        p = draw(st.integers(min_value=1, max_value=left))
        parts.append(p)
        left -= p
    n = draw(st.integers(min_value=2, max_value=15))
    assume(gcd(m, n) == 1)
    return PartitionSpec(m, tuple(parts)), n


@given(partition_cases())
@settings(**HYP_SETTINGS)
def test_subset_sum_identity_random(case):
    spec, n = case
    chk = check_partition_theorem(spec, n)
    assert chk.s_covers_t
    assert chk.equal
