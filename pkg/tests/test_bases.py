from __future__ import annotations

import json
import logging

import pytest
from hypothesis import given, settings, strategies as st

from katalan import bases
from katalan.bases import (BasisCache, Expansion, NonIntegral, NonUnique, OutsideSpan, alternating_check,
                           closed_kschur, closed_spec, dual_grothendieck, expand_family, expand_in_kkschur,
                           kkschur, kkschur_spec, weighted_kkschur, weighted_spec)
from katalan.partitions import enumerate_kbounded, partitions_of
from katalan.rootideal import RootIdealError
from katalan.symfunc import SymFunc, g_of_vector, h

h1, h2, h3 = h(1), h(2), h(3)

CLOSED_554332 = {
    (5, 4, 3, 3, 2, 2): 1, (5, 3, 3, 3, 2, 2): -1, (5, 4, 3, 2, 2, 2): -2, (5, 3, 3, 2, 2, 2): 1,
    (5, 4, 3, 3, 2, 1): -1, (5, 3, 3, 3, 2, 1): 1, (5, 3, 3, 3, 1, 1): -1, (5, 4, 3, 2, 2, 1): 2,
    (5, 3, 3, 2, 2, 1): -1, (5, 3, 3, 2, 1, 1): 1,
}


def test_dual_grothendieck_examples():
    assert dual_grothendieck((1,)) == h1
    assert dual_grothendieck((1, 1)) == h1 * h1 + h1 - h2
    assert dual_grothendieck((2, 0)) == h2


def test_small_family_values():
    assert kkschur((1,), 1) == h1
    assert kkschur((1, 1), 1) == h1 * h1 + h1
    assert closed_kschur((1,), 1) == h1
    assert closed_kschur((1, 1), 1) == h1 * h1


def test_family_specs_for_worked_example():
    lam = (7, 6, 6, 6, 4, 3)
    g = kkschur_spec(lam, 7)
    assert len(g.psi.roots()) == 11
    assert g.marks == (3, 4, 5, 5, 6, 6, 6)
    assert closed_spec(lam, 7).marks == (2, 3, 4, 4, 5, 5, 5, 6, 6, 6, 6)
    assert weighted_spec(lam, 7, 2).marks == (2, 3, 4, 5, 5, 6, 6, 6)
    with pytest.raises(RootIdealError):
        weighted_kkschur(lam, 7, 0)


@pytest.mark.parametrize("lam,k", [((2, 1), 2), ((3, 2, 1), 3), ((2, 2, 1), 2), ((3, 1, 1), 3)])
def test_weight_endpoints(lam, k):
    from katalan.rootideal import bottom_of
    assert weighted_kkschur(lam, k, 1) == kkschur(lam, k)
    assert weighted_kkschur(lam, k, bottom_of(lam, k) + 1) == closed_kschur(lam, k)


def test_intermediate_weight_support_is_logged(caplog):
    with caplog.at_level(logging.DEBUG, logger="katalan.bases"):
        f = weighted_kkschur((5, 4, 3, 3, 2, 2), 5, 2)
    assert bases.in_lambda_k(f, 5)
    assert any("z=2" in r.getMessage() for r in caplog.records)


def test_trailing_zero_does_not_change_the_function():
    for k in range(1, 4):
        for l in range(1, 4):
            for mu in enumerate_kbounded(k, l, k * l):
                assert kkschur(mu + (0,), k) == kkschur(mu, k)


def test_expand_basis_element():
    assert expand_in_kkschur(kkschur((2, 1), 2), 2) == {(2, 1): 1}


def test_expand_small_closed():
    assert expand_in_kkschur(closed_kschur((1, 1), 1), 1) == {(1, 1): 1, (1,): -1}


def test_expand_worked_example_both_solvers():
    f = closed_kschur((5, 4, 3, 3, 2, 2), 5)
    assert expand_in_kkschur(f, 5) == CLOSED_554332


@pytest.mark.parametrize("lam,k", [((2, 1), 2), ((3, 2, 1), 3), ((2, 2), 2), ((4, 3, 1), 4), ((3, 3, 2), 3)])
def test_peel_and_dense_agree(lam, k):
    f = closed_kschur(lam, k)
    assert expand_in_kkschur(f, k, method="peel") == expand_in_kkschur(f, k, method="dense")


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.data())
def test_round_trip_random_combinations(k, data):
    pool = [mu for n in range(0, 5) for mu in partitions_of(n, k)]
    chosen = data.draw(st.dictionaries(st.sampled_from(pool), st.integers(-4, 4).filter(bool), max_size=5))
    f = SymFunc.zero()
    for mu, c in chosen.items():
        f = f + kkschur(mu, k) * c
    assert expand_in_kkschur(f, k) == chosen


def test_outside_span():
    with pytest.raises(OutsideSpan):
        expand_in_kkschur(h3, 2)
    with pytest.raises(OutsideSpan):
        expand_in_kkschur(h3, 2, method="dense")


def test_solver_errors_are_distinct():
    with pytest.raises(NonUnique):
        bases._solve_exact([[1, 1], [1, 1]], [1, 1])
    with pytest.raises(OutsideSpan):
        bases._solve_exact([[1], [1]], [1, 2])


def test_non_integral_reported(monkeypatch):
    # a fake basis with h_1 -> 2 h_1 forces a half-integer coefficient
    monkeypatch.setattr(bases, "kkschur", lambda mu, k, cache=None: h1 * 2 if mu == (1,) else SymFunc.one())
    with pytest.raises(NonIntegral):
        bases._dense(h1, 1, None)


def test_alternating_check_examples():
    assert alternating_check((5, 4, 3, 3, 2, 2), CLOSED_554332) == (True, None)
    assert alternating_check((1, 1), {(1, 1): 1, (1,): -1}) == (True, None)
    assert alternating_check((1, 1), {(1,): 1}) == (False, ((1,), 1))


def test_expansion_json():
    exp = expand_family("closed", (1, 1), 1)
    data = exp.to_json()
    assert data["schema"] == "1" and data["alternating"] is True
    assert data["terms"] == [{"mu": [1, 1], "coeff": "1"}, {"mu": [1], "coeff": "-1"}]
    again = Expansion.from_json(json.loads(json.dumps(data)))
    assert again.terms == exp.terms and again.reconstruct() == closed_kschur((1, 1), 1)


def test_support_in_subring():
    for k in range(1, 4):
        for l in range(1, 4):
            for lam in enumerate_kbounded(k, l, k * l):
                assert bases.in_lambda_k(kkschur(lam, k), k)
                assert bases.in_lambda_k(closed_kschur(lam, k), k)


# -- cache ------------------------------------------------------------------------

def test_cache_round_trip(tmp_path):
    cache = BasisCache(tmp_path)
    f = kkschur((2, 1), 2, cache)
    assert cache.flush() is not None
    fresh = BasisCache(tmp_path)
    assert len(fresh) == 1 and fresh.get(2, (2, 1)) == f
    assert not list(tmp_path.glob("*.tmp"))


def test_cache_ignores_corrupted_lines(tmp_path):
    cache = BasisCache(tmp_path)
    kkschur((1, 1), 1, cache)
    kkschur((2,), 2, cache)
    shard = cache.flush()
    lines = shard.read_text().splitlines()
    rec = json.loads(lines[0])
    rec["terms"][0]["c"] = "999"
    shard.write_text("\n".join([json.dumps(rec), lines[1], "{not json"]) + "\n")
    fresh = BasisCache(tmp_path)
    assert fresh.rejected == 2 and len(fresh) == 1
    # the bad entry is recomputed, not trusted
    assert kkschur((1, 1), 1, fresh) == h1 * h1 + h1


def test_cache_concurrent_writers_use_separate_shards(tmp_path):
    a, b = BasisCache(tmp_path), BasisCache(tmp_path)
    kkschur((1,), 1, a)
    kkschur((2, 2), 2, b)
    a.flush(), b.flush()
    merged = BasisCache(tmp_path)
    assert len(merged.shards()) == 2 and len(merged) == 2
    assert merged.clear() == 2 and BasisCache(tmp_path).shards() == []


def test_warm_and_cold_cache_agree(tmp_path):
    f = closed_kschur((3, 2, 1), 3)
    cold = expand_in_kkschur(f, 3)
    warm_cache = BasisCache(tmp_path)
    expand_in_kkschur(f, 3, warm_cache)
    warm_cache.flush()
    assert expand_in_kkschur(f, 3, BasisCache(tmp_path)) == cold


def test_cache_without_directory_is_memory_only():
    cache = BasisCache(None)
    kkschur((1,), 1, cache)
    assert cache.flush() is None and len(cache) == 1
