"""Acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line. Run the file
directly (``python3 tests/test_acceptance.py``) to get just those lines.
"""
from __future__ import annotations

import json
import sys
import time

import pytest

from katalan.bases import closed_kschur, in_lambda_k, kkschur
from katalan.cli import RunConfig, run, run_verify
from katalan.recursion import weight_step
from katalan.rootideal import delta_k, downs, second_components, weighted_marks
from katalan.suites import suite_lk, suite_mirror, suite_prune, suite_relk, suite_threeg, threeg_corpus

FIXTURE_1 = [
    ((5, 4, 3, 3, 2, 2), 1), ((5, 3, 3, 3, 2, 2), -1), ((5, 4, 3, 2, 2, 2), -2), ((5, 3, 3, 2, 2, 2), 1),
    ((5, 4, 3, 3, 2, 1), -1), ((5, 3, 3, 3, 2, 1), 1), ((5, 3, 3, 3, 1, 1), -1), ((5, 4, 3, 2, 2, 1), 2),
    ((5, 3, 3, 2, 2, 1), -1), ((5, 3, 3, 2, 1, 1), 1),
]

LAM13 = (7, 6, 5, 5, 4, 4, 4, 3, 3, 3, 2, 2, 1)
FIXTURE_2 = [
    (LAM13, 1),
    ((7, 6, 5, 4, 4, 4, 4, 3, 3, 3, 2, 2, 1), -1),
    ((7, 6, 5, 5, 4, 4, 3, 3, 3, 3, 2, 2, 1), -1),
    ((7, 6, 5, 4, 4, 4, 4, 3, 3, 3, 2, 2, 0), 1),
    ((7, 6, 5, 5, 4, 4, 3, 3, 3, 3, 2, 1, 1), 1),
]


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str, seconds: float, budget: float) -> None:
        line = f"criterion {n}: {'PASS' if ok and seconds <= budget else 'FAIL'} ({detail}; {seconds:.1f}s of {budget:.0f}s)"
        with capsys.disabled():
            print("\n" + line, flush=True)
        assert ok, line
        assert seconds <= budget, line
    return emit


def test_criterion_1_closed_expansion_fixture(report):
    t = time.perf_counter()
    code, out = run(["expand", "--k", "5", "--lambda", "5,4,3,3,2,2", "--family", "closed",
                     "--basis", "kkschur", "--route", "both", "--format", "json"])
    data = json.loads(out)
    got = {tuple(term["mu"]): int(term["coeff"]) for term in data["terms"]}
    ok = code == 0 and got == dict(FIXTURE_1) and len(got) == 10
    ok = ok and data["routesAgree"] is True and data["alternating"] is True
    report(1, ok, f"{len(got)} terms, routesAgree={data.get('routesAgree')}", time.perf_counter() - t, 60)


def test_criterion_2_weight_step_fixture(report):
    t = time.perf_counter()
    terms = [(w.mu, w.coeff) for w in weight_step(LAM13, 7, 2)]
    ok = sorted(terms) == sorted(FIXTURE_2) and all(w.z == 2 for w in weight_step(LAM13, 7, 2))
    report(2, ok, f"{len(terms)} terms", time.perf_counter() - t, 10)


def test_criterion_3_structure_fixture(report):
    t = time.perf_counter()
    lam = (7, 6, 6, 6, 4, 3)
    d7, d8 = delta_k(lam, 7), delta_k(lam, 8)
    checks = [
        d7.roots() == [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (3, 5), (3, 6), (4, 6)],
        d8.roots() == [(1, 3), (1, 4), (1, 5), (1, 6), (2, 5), (2, 6), (3, 6)],
        second_components(d7.roots()) == (2, 3, 4, 4, 5, 5, 5, 6, 6, 6, 6),
        second_components(d8.roots()) == (3, 4, 5, 5, 6, 6, 6),
        tuple(downs(lam, 7).values()) == (2, 4, 5, 6),
        d7.bottom() == 4,
        weighted_marks(lam, 7, 2) == (2, 3, 4, 5, 5, 6, 6, 6),
    ]
    report(3, all(checks), f"{sum(checks)}/{len(checks)} structural checks", time.perf_counter() - t, 1)


def test_criterion_4_identity_suites(report):
    t = time.perf_counter()
    results = [suite_lk(seed=0, cases=200, lmax=5), suite_relk(seed=0, cases=200, lmax=5),
               suite_mirror(lmax=5, gmax=3)]
    ok = all(r.ok and r.checked for r in results)
    detail = "; ".join(r.summary() for r in results)
    report(4, ok, detail, time.perf_counter() - t, 300)


def test_criterion_5_weight_endpoints(report):
    t = time.perf_counter()
    res = suite_threeg(kmax=4, lmax=4)
    report(5, res.ok and res.checked > 0, res.summary(), time.perf_counter() - t, 300)


def test_criterion_6_hat_class_sweep(report):
    t = time.perf_counter()
    reports = list(run_verify(RunConfig(k_min=1, k_max=4, l_min=1, l_max=4, cls="hatP")))
    bad = [r for r in reports if not (r.ok and r.routes_agree and r.alternating)]
    report(6, not bad and bool(reports), f"{len(reports)} partitions, {len(bad)} failures",
           time.perf_counter() - t, 900)


def test_criterion_7_support_invariant(report):
    t = time.perf_counter()
    bad, n = [], 0
    for lam, k in threeg_corpus(4, 4):
        for f in (kkschur(lam, k), closed_kschur(lam, k)):
            n += 1
            if not in_lambda_k(f, k):
                bad.append((lam, k))
    report(7, not bad, f"{n} functions, {len(bad)} with a part above k", time.perf_counter() - t, 300)


def test_criterion_8_prune_soundness(report):
    t = time.perf_counter()
    res = suite_prune(lmax=4, gmax=4)
    report(8, res.ok and res.checked > 0, res.summary(), time.perf_counter() - t, 600)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
