from math import factorial

import pytest
from hypothesis import given, strategies as st

from jackmaps.partitions import (
    add_part,
    cycle_class_size,
    dominance_leq,
    from_json,
    is_partition,
    m1,
    pad_ones,
    partition,
    partitions_of,
    partitions_upto,
    remove_part,
    split_multiplicity,
    strip_ones,
    sub_partitions,
    to_json,
    z_factor,
)

parts = st.lists(st.integers(1, 5), max_size=6).map(partition)

# number of partitions of n, n = 0..10
P = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_counts():
    assert [len(partitions_of(n)) for n in range(11)] == P
    assert len(partitions_upto(6)) == sum(P[:7])


def test_order_and_validity():
    assert partitions_of(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert partitions_of(0) == ((),)
    assert all(is_partition(lam) for lam in partitions_upto(7))


def test_partition_normalizes_and_rejects():
    assert partition([1, 3, 2]) == (3, 2, 1)
    with pytest.raises(ValueError):
        partition([2, 0])
    assert not is_partition((1, 2))
    assert not is_partition([2, 1])


def test_z_sums_to_one():
    # sum over cycle types of 1/z = 1
    from fractions import Fraction
    for n in range(8):
        assert sum(Fraction(1, z_factor(lam)) for lam in partitions_of(n)) == 1
        assert sum(cycle_class_size(lam) for lam in partitions_of(n)) == factorial(n)


def test_z_values():
    assert z_factor(()) == 1
    assert z_factor((2, 1, 1)) == 2 * 2
    assert z_factor((3, 3)) == 2 * 9


def test_dominance():
    assert dominance_leq((2, 1, 1), (3, 1))
    assert not dominance_leq((3, 1), (2, 1, 1))
    # [3,1,1,1] and [2,2,2] are incomparable
    assert not dominance_leq((3, 1, 1, 1), (2, 2, 2))
    assert not dominance_leq((2, 2, 2), (3, 1, 1, 1))
    assert not dominance_leq((1,), (2,))


@given(parts)
def test_dominance_extremes(lam):
    n = sum(lam)
    assert dominance_leq((1,) * n, lam)
    if n:
        assert dominance_leq(lam, (n,))


@given(parts)
def test_sub_partitions_multiplicity(lam):
    seen = 0
    for xi, rest, mult in sub_partitions(lam):
        assert add_all(xi, rest) == lam
        assert mult == split_multiplicity(lam, xi)
        seen += mult
    assert seen == 2 ** len(lam)


def add_all(a, b):
    out = a
    for p in b:
        out = add_part(out, p)
    return out


@given(parts, st.integers(0, 3))
def test_ones_helpers(lam, k):
    padded = pad_ones(lam, k)
    assert m1(padded) == m1(lam) + k
    assert strip_ones(padded) == strip_ones(lam)
    if k:
        assert remove_part(padded, 1) == pad_ones(lam, k - 1)


@given(parts)
def test_json_roundtrip(lam):
    assert from_json(to_json(lam)) == lam


def test_split_multiplicity_absent():
    assert split_multiplicity((2, 1), (3,)) == 0
    assert split_multiplicity((1, 1, 1), (1, 1)) == 3
