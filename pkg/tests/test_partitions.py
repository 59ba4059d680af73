from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from katalan.partitions import (PartitionError, check_kbounded, enumerate_kbounded, epsilon, epsilon_root,
                                format_partition, in_hat_class, is_kbounded, is_partition, is_strict,
                                parse_partition, partitions_of, shift, strip_zeros)
from katalan.rootideal import delta_k


def test_partition_predicates():
    assert is_partition((3, 3, 1, 0))
    assert not is_partition((1, 2))
    assert not is_partition((2, -1))
    assert is_partition(())
    assert is_kbounded((5, 4, 3, 3, 2, 2), 5)
    assert not is_kbounded((6, 1), 5)
    with pytest.raises(PartitionError):
        check_kbounded((6, 1), 5)


def test_vectors():
    assert epsilon(2, 4) == (0, 1, 0, 0)
    assert epsilon_root(1, 3, 3) == (1, 0, -1)
    assert shift((3, 2), 2, -1) == (3, 1)
    with pytest.raises(IndexError):
        epsilon(0, 3)
    with pytest.raises(IndexError):
        epsilon_root(2, 2, 3)


def test_parse_and_format_round_trip():
    assert parse_partition("5,4,3,3,2,2") == (5, 4, 3, 3, 2, 2)
    assert parse_partition("") == ()
    assert format_partition((7, 6, 0)) == "7,6,0"
    with pytest.raises(PartitionError):
        parse_partition("5,a")


def _brute(k, l, max_size):
    # every weakly decreasing tuple of l entries in [1, k]
    out = [p for p in itertools.product(range(k, 0, -1), repeat=l)
           if is_partition(p) and sum(p) <= max_size]
    return sorted(out, key=lambda p: (sum(p), tuple(-x for x in p)))


@pytest.mark.parametrize("k,l,m", [(1, 1, 1), (3, 2, 6), (4, 3, 7), (4, 4, 16), (5, 3, 12)])
def test_enumerate_matches_brute_force(k, l, m):
    assert enumerate_kbounded(k, l, m) == _brute(k, l, m)


def test_enumerate_k4_l4_count():
    # C(k + l - 1, l) multisets of size l from [1, k]
    assert len(enumerate_kbounded(4, 4, 16)) == 35


def test_partitions_of_counts():
    # partition numbers and a bounded count
    assert [len(partitions_of(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert len(partitions_of(6, 2)) == 4
    assert list(partitions_of(3)) == sorted(partitions_of(3))


def test_hat_class_examples():
    assert in_hat_class((5, 4, 3, 3, 2, 2), 5, 6)
    assert not in_hat_class((3, 3, 3), 3, 3)
    assert in_hat_class((3, 2, 1), 3, 3)


@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_hat_class_is_strict_through_bottom(k, l, data):
    lam = tuple(sorted(data.draw(st.lists(st.integers(1, k), min_size=l, max_size=l)), reverse=True))
    b = delta_k(lam, k).bottom()
    assert in_hat_class(lam, k, l) == is_strict(lam[:b])


@given(st.lists(st.integers(0, 9), max_size=6))
def test_strip_zeros(v):
    v = sorted(v, reverse=True)
    s = strip_zeros(v)
    assert 0 not in s and list(s) == [x for x in v if x]
