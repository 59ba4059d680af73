"""Structural expansion of weighted functions by lowering-operator recursion.

Nothing here evaluates a symmetric function. Every step rewrites
``L_{down^a(z)}`` applied to a weighted function as a signed sum of weighted
functions with the same weight, using only the combinatorics of
``delta_k(lam)``. Chaining the weight step from ``z`` down to weight 1 gives
the expansion in the K-k-Schur basis, and the sign of each intermediate
coefficient is checked as it is produced.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .bases import BasisCache, ExpansionError, alternating_check, closed_kschur, expand_in_kkschur
from .partitions import PartitionError, check_kbounded, in_hat_class, is_partition, is_strict, shift, size, strip_zeros
from .rootideal import delta_k


class HypothesisViolation(ValueError):
    """An input does not satisfy the conditions a recursion step needs."""


class SignLedgerError(AssertionError):
    """A recursion coefficient has the wrong sign; this is an internal bug."""


@dataclass(frozen=True)
class WeightedTerm:
    mu: tuple[int, ...]
    z: int
    coeff: int


def _as_terms(acc: dict) -> tuple[tuple[tuple[int, ...], int], ...]:
    items = [(mu, c) for mu, c in acc.items() if c]
    items.sort(key=lambda t: (-size(t[0]), tuple(-p for p in t[0])))
    return tuple(items)


def _check_signs(lam, terms, offset: int, what: str) -> None:
    n = size(lam)
    for mu, c in terms:
        if (-c if (n - size(mu) + offset) % 2 else c) < 0:
            raise SignLedgerError(f"{what}: coefficient {c} of {mu} has the wrong sign for {lam}")


@lru_cache(maxsize=None)
def lowering_terms(lam: tuple[int, ...], k: int, z: int, a: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """``L_{down^a(z)}`` of the weight-``z`` function of ``lam``, as pairs
    ``(mu, b)`` meaning ``sum b * (weight-z function of mu)``."""
    psi = delta_k(lam, k)
    b = psi.bottom()
    if not 1 <= z <= b:
        raise HypothesisViolation(f"z={z} outside [1, {b}] for {lam}")
    d = psi.down_iter(z, a)
    if d is None:
        return ()
    gamma = shift(lam, d, -1)
    if d > b:
        prev = psi.down_iter(z, a - 1)
        if prev is None or prev > b:
            raise HypothesisViolation(f"down^{a - 1}({z}) is not in [1, {b}] for {lam}")
        if is_partition(gamma):
            out = ((gamma, 1),)
        else:
            if prev <= b - 1 and not lam[z - 1] > lam[z]:
                raise HypothesisViolation(f"need lam_{z} > lam_{z + 1} for {lam}")
            out = ()
    else:
        if z > b - 1:
            raise HypothesisViolation(f"z={z} must lie in [1, {b - 1}] for {lam}")
        acc: dict[tuple[int, ...], int] = {}
        if is_partition(gamma):
            acc[gamma] = 1
            for mu, c in lowering_terms(gamma, k, z, a + 1):
                acc[mu] = acc.get(mu, 0) - c
        elif not lam[z - 1] > lam[z]:
            raise HypothesisViolation(f"need lam_{z} > lam_{z + 1} for {lam}")
        for mu, c in lowering_terms(lam, k, z, a + 1):
            acc[mu] = acc.get(mu, 0) + c
        out = _as_terms(acc)
    _check_signs(lam, out, 1, f"lowering a={a}")
    return out


def _check_step_hypothesis(lam: tuple[int, ...], k: int, z: int) -> int:
    b = delta_k(lam, k).bottom()
    if not 1 <= z <= b:
        raise HypothesisViolation(f"z={z} outside [1, {b}] for {lam}")
    if z != b and not lam[z - 1] > lam[z]:
        raise HypothesisViolation(f"need lam_{z} > lam_{z + 1} for {lam}")
    return b


def weight_step(lam: Sequence[int], k: int, z: int) -> list[WeightedTerm]:
    """Write the weight-``(z+1)`` function of ``lam`` in weight-``z`` functions."""
    lam = check_kbounded(lam, k)
    _check_step_hypothesis(lam, k, z)
    acc = {lam: 1}
    for mu, c in lowering_terms(lam, k, z, 1):
        acc[mu] = acc.get(mu, 0) - c
    terms = _as_terms(acc)
    _check_signs(lam, terms, 0, "weight step")
    for mu, _ in terms:
        if mu[:z] != lam[:z]:
            raise SignLedgerError(f"weight step changed the first {z} rows: {lam} -> {mu}")
    return [WeightedTerm(mu, z, c) for mu, c in terms]


def check_recursive_hypothesis(lam: tuple[int, ...], k: int, z_target: int) -> None:
    """``z_target - 1`` in ``[0, bottom]``, strict decrease through row
    ``z_target - 1`` and one step past it unless that row is the bottom."""
    b = delta_k(lam, k).bottom()
    z = z_target - 1
    if not 0 <= z <= b:
        raise HypothesisViolation(f"target weight {z_target} outside [1, {b + 1}] for {lam}")
    if not is_strict(lam[:z]):
        raise HypothesisViolation(f"first {z} parts of {lam} are not strictly decreasing")
    if 1 <= z < b and not lam[z - 1] > lam[z]:
        raise HypothesisViolation(f"need lam_{z} > lam_{z + 1} for {lam}")


@lru_cache(maxsize=None)
def _expand(lam: tuple[int, ...], k: int, z: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    if z == 1:
        return ((strip_zeros(lam), 1),)
    acc: dict[tuple[int, ...], int] = {}
    for term in weight_step(lam, k, z - 1):
        for nu, c in _expand(term.mu, k, z - 1):
            acc[nu] = acc.get(nu, 0) + term.coeff * c
    return _as_terms(acc)


def expand_recursive(lam: Sequence[int], k: int, z_target: int) -> dict[tuple[int, ...], int]:
    """K-k-Schur expansion of the weight-``z_target`` function of ``lam``."""
    lam = check_kbounded(lam, k)
    check_recursive_hypothesis(lam, k, z_target)
    return dict(_expand(lam, k, z_target))


def closed_recursive(lam: Sequence[int], k: int) -> dict[tuple[int, ...], int]:
    """The closed function is the weight ``bottom + 1`` case."""
    lam = check_kbounded(lam, k)
    return expand_recursive(lam, k, delta_k(lam, k).bottom() + 1)


def classify(lam: Sequence[int], k: int) -> str:
    if is_strict(lam):
        return "strict"
    if in_hat_class(lam, k, len(lam)):
        return "hatP"
    return "other"


@dataclass
class VerifyReport:
    lam: tuple[int, ...]
    k: int
    cls: str
    alternating: bool | None = None
    routes_agree: bool | None = None
    violation: tuple | None = None
    n_terms: int = 0
    millis: float = 0.0
    error: str | None = None
    terms: dict = field(default_factory=dict, repr=False)

    @property
    def ok(self) -> bool:
        return self.error is None and bool(self.alternating) and self.routes_agree is not False

    def to_json(self, timing: bool = True) -> dict:
        data = {"schema": "1", "lambda": list(self.lam), "k": self.k, "class": self.cls,
                "routesAgree": self.routes_agree, "alternating": self.alternating}
        if self.violation is not None:
            data["violation"] = {"mu": list(self.violation[0]), "coeff": str(self.violation[1])}
        if self.error is not None:
            data["error"] = self.error
        data["terms"] = [{"mu": list(mu), "coeff": str(c)} for mu, c in _as_terms(self.terms)]
        if timing:
            data["millis"] = self.millis
        return data


def verify(lam: Sequence[int], k: int, cache: BasisCache | None = None, unsafe: bool = False,
           linear: bool = True) -> VerifyReport:
    """Expand the closed function of ``lam`` both ways and check alternation.

    Outside the class covered by the recursion the structural route is
    refused unless ``unsafe`` is set, in which case only the linear solve
    runs and the report records the sign pattern it finds.
    """
    lam = check_kbounded(lam, k)
    report = VerifyReport(lam, k, classify(lam, k))
    start = time.perf_counter()
    try:
        rec = None
        if report.cls != "other":
            rec = closed_recursive(lam, k)
        elif not unsafe:
            raise HypothesisViolation(f"{lam} is outside the class covered by the recursion")
        lin = expand_in_kkschur(closed_kschur(lam, k), k, cache) if (linear or rec is None) else None
        if rec is not None and lin is not None:
            report.routes_agree = rec == lin
        terms = lin if lin is not None else rec
        report.terms = terms
        report.n_terms = len(terms)
        report.alternating, report.violation = alternating_check(lam, terms)
    except (HypothesisViolation, PartitionError) as exc:
        report.error = f"hypothesis: {exc}"
    except (ExpansionError, SignLedgerError) as exc:
        report.error = f"internal: {exc}"
    report.millis = round((time.perf_counter() - start) * 1000, 3)
    return report
