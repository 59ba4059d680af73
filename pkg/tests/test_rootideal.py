from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from katalan.partitions import enumerate_kbounded
from katalan.rootideal import (RootIdeal, RootIdealError, bottom_of, delta_k, downs, multiset_difference,
                               second_components, weighted_marks)

CATALAN = [1, 1, 2, 5, 14, 42, 132]


def all_small_kbounded(kmax=6, lmax=6):
    for k in range(1, kmax + 1):
        for l in range(1, lmax + 1):
            for lam in enumerate_kbounded(k, l, k * l):
                yield lam, k


def test_catalan_many_ideals():
    for l in range(0, 7):
        assert sum(1 for _ in RootIdeal.all_ideals(l)) == CATALAN[l]


def test_ideals_are_upper_sets():
    # (i, j) in psi implies (i', j') in psi whenever i' <= i and j' >= j
    for l in range(1, 6):
        for psi in RootIdeal.all_ideals(l):
            roots = set(psi.roots())
            for (i, j) in roots:
                for a in range(1, i + 1):
                    for b in range(j, l + 1):
                        assert (a, b) in roots
            assert RootIdeal.from_roots(l, roots) == psi


def test_invalid_ideals():
    with pytest.raises(RootIdealError):
        RootIdeal(3, (3, 2, 4))
    with pytest.raises(RootIdealError):
        RootIdeal(3, (1, 4, 4))
    with pytest.raises(RootIdealError):
        RootIdeal.from_roots(3, [(1, 2)])


def test_removable_addable_against_definition():
    for l in range(1, 6):
        for psi in RootIdeal.all_ideals(l):
            roots = set(psi.roots())
            valid = {r.row_starts for r in RootIdeal.all_ideals(l)}
            for root in itertools.product(range(1, l + 1), repeat=2):
                if root[0] >= root[1]:
                    continue
                try:
                    rem = RootIdeal.from_roots(l, roots - {root}).row_starts in valid
                except RootIdealError:
                    rem = False
                try:
                    add = RootIdeal.from_roots(l, roots | {root}).row_starts in valid
                except RootIdealError:
                    add = False
                assert psi.is_removable(root) == (root in roots and rem)
                assert psi.is_addable(root) == (root not in roots and add)


def test_worked_example_k7():
    lam = (7, 6, 6, 6, 4, 3)
    d7, d8 = delta_k(lam, 7), delta_k(lam, 8)
    assert d7.roots() == [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6),
                          (3, 5), (3, 6), (4, 6)]
    assert d8.roots() == [(1, 3), (1, 4), (1, 5), (1, 6), (2, 5), (2, 6), (3, 6)]
    assert second_components(d7.roots()) == (2, 3, 4, 4, 5, 5, 5, 6, 6, 6, 6)
    assert second_components(d8.roots()) == (3, 4, 5, 5, 6, 6, 6)
    assert d7.bottom() == 4
    assert downs(lam, 7) == {1: 2, 2: 4, 3: 5, 4: 6}
    assert weighted_marks(lam, 7, 2) == (2, 3, 4, 5, 5, 6, 6, 6)


def test_bottom_long_example():
    assert bottom_of((7, 6, 5, 5, 4, 4, 4, 3, 3, 3, 2, 2, 1), 7) == 8


def test_empty_ideal():
    psi = RootIdeal.empty(4)
    assert psi.bottom() == 0
    assert all(psi.has_wall(r) for r in range(1, 4))


def test_bounce_paths():
    psi = delta_k((7, 6, 5, 5, 4, 4, 4, 3, 3, 3, 2, 2, 1), 7)
    assert [psi.down_iter(2, a) for a in range(4)] == [2, 4, 7, 11]
    assert psi.bounce_path(2, 11) == [2, 4, 7, 11]
    assert psi.bounce_path(5, 4) == []
    assert psi.up(4) == 2 and psi.bot(2) == 11 and psi.top(11) == 1
    with pytest.raises(RootIdealError):
        psi.bounce_path(2, 5)


def test_json_round_trip():
    psi = delta_k((7, 6, 6, 6, 4, 3), 7)
    assert RootIdeal.from_json(psi.to_json()) == psi
    assert psi.to_json() == {"l": 6, "rowStarts": [2, 4, 5, 6, 7, 7]}


def test_root_facts_exhaustive():
    for lam, k in all_small_kbounded():
        l = len(lam)
        psi = delta_k(lam, k)
        b = psi.bottom()
        for x in range(1, l + 1):
            # x is at most the bottom row exactly when row x meets the ideal
            assert (x <= b) == (k - lam[x - 1] + x < l)
            if x <= b:
                d = psi.down(x)
                assert d is not None and psi.is_removable((x, d))
            assert b + 1 <= psi.bot(x) <= l
        for x in range(1, b):
            if k > lam[x - 1] == lam[x]:
                assert psi.has_mirror(x)
            if lam[x - 1] > lam[x]:
                assert psi.has_ceiling(psi.down(x))
        dropped = [psi.down(x) for x in range(1, b + 1)]
        larger = delta_k(lam, k + 1)
        assert second_components(larger.roots()) == multiset_difference(second_components(psi.roots()), dropped)


def test_weighted_marks_range():
    with pytest.raises(RootIdealError):
        weighted_marks((7, 6, 6, 6, 4, 3), 7, 6)


@given(st.integers(1, 6), st.data())
def test_diagram_has_one_line_per_row(l, data):
    ideals = list(RootIdeal.all_ideals(l))
    psi = data.draw(st.sampled_from(ideals))
    marks = second_components(psi.roots())
    text = psi.diagram(marks, tuple(range(l)))
    assert len(text.splitlines()) == l
