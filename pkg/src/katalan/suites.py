"""Seeded property suites shared by ``katalan selftest`` and the test suite.

Each suite returns a :class:`SuiteResult`; a failure carries the smallest
failing spec seen (fewest rows, then smallest ``|gamma|``).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .bases import closed_kschur, in_lambda_k, kkschur, weighted_kkschur
from .functions import (KatalanSpec, MirrorOutcome, apply_lowering, capped_combo, evaluate, evaluate_combo, evaluate_schur,
                        gamma_combo, live_part, mirror_apply, relk_split)
from .partitions import enumerate_kbounded, shift
from .rootideal import RootIdeal, delta_k

SUITES = ("lk", "relk", "mirror", "prune", "threeg")


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: int = 0
    minimal: object = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def fail(self, witness, weight: tuple) -> None:
        self.failures += 1
        if self.minimal is None or weight < self.minimal[0]:
            self.minimal = (weight, witness)

    def summary(self) -> str:
        status = "pass" if self.ok else "FAIL"
        text = f"{self.name}: {status} ({self.checked} checked, {self.failures} failed)"
        if self.minimal is not None:
            text += f"; minimal failure {self.minimal[1]}"
        return text


def _weight(spec: KatalanSpec) -> tuple:
    return (spec.l, sum(spec.gamma), len(spec.marks))


def random_spec(rng: random.Random, lmax: int = 5, gmax: int = 6, max_marks: int | None = None) -> KatalanSpec:
    l = rng.randint(1, lmax)
    ideals = _ideals(l)
    psi = ideals[rng.randrange(len(ideals))]
    n_marks = rng.randint(0, max_marks if max_marks is not None else l + 1)
    marks = tuple(sorted(rng.randint(1, l) for _ in range(n_marks)))
    gamma = tuple(rng.randint(0, gmax) for _ in range(l))
    return KatalanSpec(psi, marks, gamma)


_IDEALS: dict[int, list[RootIdeal]] = {}


def _ideals(l: int) -> list[RootIdeal]:
    if l not in _IDEALS:
        _IDEALS[l] = list(RootIdeal.all_ideals(l))
    return _IDEALS[l]


def suite_lk(seed: int = 0, cases: int = 200, lmax: int = 5) -> SuiteResult:
    """Lowering on the spec agrees with lowering the formal combination."""
    rng = random.Random(seed)
    res = SuiteResult("lk")
    for _ in range(cases):
        spec = random_spec(rng, lmax)
        z = rng.randint(1, spec.l)
        lowered = apply_lowering(spec, z)
        combo = live_part({shift(v, z, -1): c for v, c in gamma_combo(spec).items()})
        res.checked += 1
        # equal live combinations settle it; otherwise compare values
        if live_part(gamma_combo(lowered)) != combo and evaluate(lowered) != evaluate_combo(combo):
            res.fail((spec.to_json(), z), _weight(spec))
    return res


def relk_moves(spec: KatalanSpec) -> Iterator[tuple[str, object]]:
    for root in sorted(spec.psi.removable_roots()):
        yield "remove_root", root
    for root in sorted(spec.psi.addable_roots()):
        yield "add_root", root
    for m in sorted(set(spec.marks)):
        yield "remove_mark", m
    for m in range(1, spec.l + 1):
        yield "add_mark", m


def suite_relk(seed: int = 0, cases: int = 200, lmax: int = 5) -> SuiteResult:
    """Each splitting rule, at every applicable position, on random specs."""
    rng = random.Random(seed)
    res = SuiteResult("relk")
    for _ in range(cases):
        spec = random_spec(rng, lmax)
        target = evaluate(spec)
        for which, arg in relk_moves(spec):
            total = sum((evaluate(s) * sign for sign, s in relk_split(spec, which, arg)), evaluate(spec) * 0)
            res.checked += 1
            if total != target:
                res.fail((spec.to_json(), which, arg), _weight(spec))
    return res


def mirror_candidates(lmax: int = 5, gmax: int = 3, mult_max: int = 2) -> Iterator[tuple[KatalanSpec, int, int]]:
    """Every ``(spec, y, z)`` meeting the mirror hypotheses and a decisive
    mark condition, with ``gamma`` entries in ``[0, gmax]`` and every mark
    multiplicity in ``[0, mult_max]``."""
    for l in range(2, lmax + 1):
        gammas = list(itertools.product(range(gmax + 1), repeat=l))
        mults = list(itertools.product(range(mult_max + 1), repeat=l))
        for psi in _ideals(l):
            for y in range(1, l):
                for z in range(y, l):
                    shape = _structure(psi, y, z)
                    if shape is None:
                        continue
                    mirrored, ladder = shape
                    # cheap filters first; mirror_apply re-checks everything
                    gs = [g for g in gammas if g[z - 1] + 1 == g[z]
                          and all(g[x - 1] == g[x] for x in mirrored)]
                    ms = [m for m in mults if m[y - 1] in (m[y], m[y] - 1)
                          and all(m[x - 1] + 1 == m[x] for x in ladder)]
                    for m in ms:
                        marks = tuple(x for x in range(1, l + 1) for _ in range(m[x - 1]))
                        for gamma in gs:
                            spec = KatalanSpec(psi, marks, gamma)
                            if mirror_apply(spec, y, z) is MirrorOutcome.NOT_APPLICABLE:
                                raise AssertionError(f"filter and mirror_apply disagree on {spec}, {y}, {z}")
                            yield spec, y, z


def _structure(psi: RootIdeal, y: int, z: int):
    # gamma- and mark-free conditions; returns the mirrored path and the ladder
    try:
        psi.bounce_path(y, z)
    except ValueError:
        return None
    upper = psi.up(z) if z > y else None
    mirrored = psi.bounce_path(y, upper) if upper is not None else []
    if not (psi.has_ceiling(y) and psi.has_wall(z) and all(psi.has_mirror(x) for x in mirrored)):
        return None
    start = psi.down(y)
    ladder = psi.bounce_path(start, z) if start is not None else []
    return mirrored, ladder


def suite_mirror(lmax: int = 5, gmax: int = 3, mult_max: int = 1) -> SuiteResult:
    """Both mirror conclusions on every instance of the bounded search.

    Values are compared in the Schur basis, which is exact and skips the
    conversion to h-monomials.
    """
    res = SuiteResult("mirror")
    zero = drop = 0
    vanishes: dict[tuple, bool] = {}
    for spec, y, z in mirror_candidates(lmax, gmax, mult_max):
        outcome = mirror_apply(spec, y, z)
        if outcome is MirrorOutcome.ZERO:
            zero += 1
            target = spec
        else:
            drop += 1
            # K(M; gamma) - K(M; gamma - e_{z+1}) is K(M + {z+1}; gamma)
            target = spec.replace(marks=spec.marks + (z + 1,))
        # distinct (y, z) often lead to the same spec
        key = (target.psi.row_starts, target.marks, target.gamma)
        if key not in vanishes:
            vanishes[key] = not evaluate_schur(target)
        ok = vanishes[key]
        res.checked += 1
        if not ok:
            res.fail((spec.to_json(), y, z, outcome.value), _weight(spec))
    res.notes.append(f"{zero} zero instances, {drop} drop instances")
    return res


def prune_corpus(lmax: int = 4, gmax: int = 4) -> Iterator[KatalanSpec]:
    """All ideals and gammas in range, each with no marks and with the
    marks ``L(psi)``."""
    for l in range(1, lmax + 1):
        for psi in _ideals(l):
            full = tuple(sorted(j for _, j in psi.roots()))
            for gamma in itertools.product(range(gmax + 1), repeat=l):
                yield KatalanSpec(psi, (), gamma)
                if full:
                    yield KatalanSpec(psi, full, gamma)


def default_hard_cap(spec: KatalanSpec) -> int:
    # a test checks that doubling it changes nothing
    return sum(spec.gamma) + spec.l ** 2


def suite_prune(lmax: int = 4, gmax: int = 4, cap: Callable[[KatalanSpec], int] = default_hard_cap) -> SuiteResult:
    res = SuiteResult("prune")
    for spec in prune_corpus(lmax, gmax):
        pruned = live_part(gamma_combo(spec))
        raw = live_part(capped_combo(spec, cap(spec)))
        res.checked += 1
        # equal live combinations give equal values; otherwise evaluate
        if pruned != raw and evaluate_combo(pruned) != evaluate_combo(raw):
            res.fail(spec.to_json(), _weight(spec))
    return res


def threeg_corpus(kmax: int = 4, lmax: int = 4) -> Iterator[tuple[tuple[int, ...], int]]:
    for k in range(1, kmax + 1):
        for l in range(1, lmax + 1):
            for lam in enumerate_kbounded(k, l, k * l):
                yield lam, k


def suite_threeg(kmax: int = 4, lmax: int = 4) -> SuiteResult:
    """Weight 1 is the K-k-Schur function and weight ``bottom + 1`` the
    closed one; both lie in the subring generated by h_1..h_k."""
    res = SuiteResult("threeg")
    for lam, k in threeg_corpus(kmax, lmax):
        b = delta_k(lam, k).bottom()
        g, hat = kkschur(lam, k), closed_kschur(lam, k)
        for ok, tag in ((weighted_kkschur(lam, k, 1) == g, "weight 1"),
                        (weighted_kkschur(lam, k, b + 1) == hat, "top weight"),
                        (in_lambda_k(g, k) and in_lambda_k(hat, k), "support")):
            res.checked += 1
            if not ok:
                res.fail((lam, k, tag), (len(lam), sum(lam)))
    return res


def run_suite(name: str, seed: int = 0, cases: int = 200, lmax: int | None = None) -> SuiteResult:
    if name == "lk":
        return suite_lk(seed, cases, lmax or 5)
    if name == "relk":
        return suite_relk(seed, cases, lmax or 5)
    if name == "mirror":
        return suite_mirror(lmax or 5)
    if name == "prune":
        return suite_prune(lmax or 4)
    if name == "threeg":
        return suite_threeg(4, lmax or 4)
    raise ValueError(f"unknown suite {name!r}")
