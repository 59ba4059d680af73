"""Named families of Katalan functions and expansion in the K-k-Schur basis.

``expand_in_kkschur`` peels the residual one degree at a time. Within a
degree the lexicographically smallest h-monomial ``h_nu`` of the top
component fixes the next coefficient, because the top part of ``g_nu^(k)``
is ``h_nu`` plus monomials that dominate ``nu``. That unitriangularity is
checked for every basis element used, and the finished expansion is
reconstructed and compared exactly. ``method="dense"`` solves the full
linear system of each degree over the rationals instead; it is practical
only for small degrees and is kept as a cross-check.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import uuid
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .functions import KatalanSpec, evaluate
from .partitions import check_kbounded, partitions_of, size, strip_zeros
from .rootideal import delta_k, second_components, weighted_marks
from .symfunc import SymFunc, g_of_vector, top_component

FAMILIES = ("g", "kkschur", "closed", "weighted")

log = logging.getLogger(__name__)


class ExpansionError(ArithmeticError):
    """The solver could not produce a unique integral expansion."""


class OutsideSpan(ExpansionError):
    pass


class NonIntegral(ExpansionError):
    pass


class NonUnique(ExpansionError):
    pass


# -- family specs ------------------------------------------------------------

def kkschur_spec(lam: Sequence[int], k: int) -> KatalanSpec:
    lam = check_kbounded(lam, k)
    return KatalanSpec(delta_k(lam, k), second_components(delta_k(lam, k + 1).roots()), lam)


def closed_spec(lam: Sequence[int], k: int) -> KatalanSpec:
    lam = check_kbounded(lam, k)
    psi = delta_k(lam, k)
    return KatalanSpec(psi, second_components(psi.roots()), lam)


def weighted_spec(lam: Sequence[int], k: int, z: int) -> KatalanSpec:
    lam = check_kbounded(lam, k)
    return KatalanSpec(delta_k(lam, k), weighted_marks(lam, k, z), lam)


def family_spec(family: str, lam: Sequence[int], k: int, z: int | None = None) -> KatalanSpec:
    if family == "kkschur":
        return kkschur_spec(lam, k)
    if family == "closed":
        return closed_spec(lam, k)
    if family == "weighted":
        if z is None:
            raise ValueError("the weighted family needs a weight z")
        return weighted_spec(lam, k, z)
    raise ValueError(f"family {family!r} has no Katalan spec")


def dual_grothendieck(mu: Sequence[int]) -> SymFunc:
    return g_of_vector(tuple(mu))


def closed_kschur(lam: Sequence[int], k: int) -> SymFunc:
    return evaluate(closed_spec(lam, k))


def weighted_kkschur(lam: Sequence[int], k: int, z: int) -> SymFunc:
    f = evaluate(weighted_spec(lam, k, z))
    if 1 < z <= delta_k(lam, k).bottom():
        # support at intermediate weights is recorded, never enforced
        inside = in_lambda_k(f, k)
        log.log(logging.DEBUG if inside else logging.WARNING,
                "weighted k=%d lambda=%s z=%d: parts <= k %s", k, tuple(lam), z, "yes" if inside else "NO")
    return f


@lru_cache(maxsize=4096)
def _kkschur_memo(lam: tuple[int, ...], k: int) -> SymFunc:
    return evaluate(kkschur_spec(lam, k))


def kkschur(lam: Sequence[int], k: int, cache: BasisCache | None = None) -> SymFunc:
    """The K-k-Schur function ``K(delta_k(lam); delta_{k+1}(lam); lam)``."""
    lam = check_kbounded(lam, k)
    if cache is None:
        return _kkschur_memo(lam, k)
    hit = cache.get(k, lam)
    if hit is None:
        hit = _kkschur_memo(lam, k)
        cache.put(k, lam, hit)
    return hit


def family_function(family: str, lam: Sequence[int], k: int, z: int | None = None) -> SymFunc:
    if family == "g":
        return dual_grothendieck(lam)
    if family == "kkschur":
        return kkschur(lam, k)
    return evaluate(family_spec(family, lam, k, z))


def in_lambda_k(f: SymFunc, k: int) -> bool:
    """Every h-monomial of ``f`` uses only h_1, ..., h_k."""
    return f.max_part() <= k


# -- expansions ----------------------------------------------------------------

@dataclass
class Expansion:
    k: int
    lam: tuple[int, ...]
    family: str
    terms: dict[tuple[int, ...], int]
    z: int | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.terms = {tuple(mu): c for mu, c in self.terms.items() if c}

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda t: (-size(t[0]), tuple(-p for p in t[0])))

    def alternating(self) -> tuple[bool, tuple[tuple[int, ...], int] | None]:
        return alternating_check(self.lam, self.terms)

    def reconstruct(self, cache: BasisCache | None = None) -> SymFunc:
        out = SymFunc.zero()
        for mu, c in self.terms.items():
            out = out + kkschur(mu, self.k, cache) * c
        return out

    def to_json(self) -> dict:
        ok, _ = self.alternating()
        data = {"schema": "1", "k": self.k, "lambda": list(self.lam), "family": self.family}
        if self.z is not None:
            data["z"] = self.z
        data["terms"] = [{"mu": list(mu), "coeff": str(c)} for mu, c in self.sorted_terms()]
        data["alternating"] = ok
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> Expansion:
        return cls(int(data["k"]), tuple(data["lambda"]), data["family"],
                   {tuple(t["mu"]): int(t["coeff"]) for t in data["terms"]}, data.get("z"))


def alternating_check(lam: Sequence[int], terms: Mapping[tuple[int, ...], int]):
    """``(True, None)`` when every ``(-1)^{|lam|-|mu|} b`` is nonnegative,
    otherwise ``(False, (mu, b))`` for the first offender in canonical order."""
    n = size(lam)
    for mu in sorted(terms, key=lambda m: (-size(m), tuple(-p for p in m))):
        b = terms[mu]
        if (-b if (n - size(mu)) % 2 else b) < 0:
            return False, (mu, b)
    return True, None


def expand_in_kkschur(f: SymFunc, k: int, cache: BasisCache | None = None,
                      method: str = "peel") -> dict[tuple[int, ...], int]:
    """Coefficients ``b_mu`` with ``f = sum b_mu g_mu^(k)``, ``mu`` k-bounded."""
    if method == "peel":
        terms = _peel(f, k, cache)
    elif method == "dense":
        terms = _dense(f, k, cache)
    else:
        raise ValueError(f"unknown expansion method {method!r}")
    check = SymFunc.zero()
    for mu, c in terms.items():
        check = check + kkschur(mu, k, cache) * c
    if check != f:
        raise ExpansionError("reconstruction does not reproduce the input")
    return terms


def _peel(f: SymFunc, k: int, cache: BasisCache | None) -> dict[tuple[int, ...], int]:
    residual = f
    terms: dict[tuple[int, ...], int] = {}
    while residual:
        d, top = top_component(residual)
        nu = min(top.terms())
        coeff = top.coefficient(nu)
        if nu and nu[0] > k:
            raise OutsideSpan(f"h-monomial {nu} of degree {d} is not {k}-bounded")
        if nu in terms:
            raise NonUnique(f"{nu} was peeled twice")
        basis = kkschur(nu, k, cache)
        bd, btop = top_component(basis)
        if bd != d or min(btop.terms()) != nu or btop.coefficient(nu) != 1:
            raise NonUnique(f"top part of g_{nu}^({k}) is not unitriangular at h_{nu}")
        terms[nu] = coeff
        residual = residual - basis * coeff
    return terms


def _solve_exact(matrix: list[list[int]], rhs: list[int]) -> list[Fraction]:
    """Gauss-Jordan over Q with pivots taken in row order."""
    rows = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(matrix, rhs)]
    ncols = len(matrix[0]) if matrix else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(all(x == 0 for x in row[:-1]) and row[-1] != 0 for row in rows):
        raise OutsideSpan("the linear system is inconsistent")
    if len(pivots) < ncols:
        raise NonUnique(f"rank {len(pivots)} < {ncols} unknowns")
    solution = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        solution[c] = rows[i][-1]
    return solution


def _dense(f: SymFunc, k: int, cache: BasisCache | None) -> dict[tuple[int, ...], int]:
    residual = f
    terms: dict[tuple[int, ...], int] = {}
    while residual:
        d, top = top_component(residual)
        candidates = list(partitions_of(d, k))
        tops = [top_component(kkschur(mu, k, cache))[1] for mu in candidates]
        monomials = sorted({m for t in tops for m in t.terms()} | set(top.terms()), reverse=True)
        matrix = [[t.coefficient(m) for t in tops] for m in monomials]
        solution = _solve_exact(matrix, [top.coefficient(m) for m in monomials])
        for mu, x in zip(candidates, solution):
            if x.denominator != 1:
                raise NonIntegral(f"coefficient of {mu} is {x}")
            if x:
                terms[mu] = terms.get(mu, 0) + int(x)
                residual = residual - kkschur(mu, k, cache) * int(x)
    return terms


def expand_family(family: str, lam: Sequence[int], k: int, z: int | None = None,
                  cache: BasisCache | None = None, method: str = "peel") -> Expansion:
    """Expand one of the named functions in the K-k-Schur basis."""
    f = family_function(family, lam, k, z)
    return Expansion(k, tuple(lam), family, expand_in_kkschur(f, k, cache, method), z)


# -- disk cache --------------------------------------------------------------------

def _digest(payload: list) -> str:
    return hashlib.sha256(json.dumps(payload, separators=(",", ":")).encode()).hexdigest()[:16]


class BasisCache:
    """Append-only store of K-k-Schur functions keyed by ``"k:mu"``.

    Each flush writes a fresh shard next to the others through a temporary
    file and an atomic rename, so concurrent writers never clobber each
    other. Lines that fail to parse or whose digest does not match are
    ignored and the value is recomputed.
    """

    def __init__(self, directory: str | os.PathLike | None):
        self.directory = Path(directory) if directory is not None else None
        self._data: dict[str, SymFunc] = {}
        self._pending: dict[str, SymFunc] = {}
        self.rejected = 0
        if self.directory is not None and self.directory.is_dir():
            self._load()

    @staticmethod
    def key(k: int, mu: Sequence[int]) -> str:
        return f"{k}:{','.join(str(p) for p in mu)}"

    def shards(self) -> list[Path]:
        if self.directory is None or not self.directory.is_dir():
            return []
        return sorted(self.directory.glob("basis-*.jsonl"))

    def _load(self) -> None:
        for shard in self.shards():
            with open(shard, encoding="utf-8") as fh:
                for line in fh:
                    try:
                        rec = json.loads(line)
                        if _digest(rec["terms"]) != rec["digest"]:
                            raise ValueError("digest mismatch")
                        self._data[rec["key"]] = SymFunc.from_json(rec["terms"])
                    except (ValueError, KeyError, TypeError):
                        self.rejected += 1

    def __len__(self) -> int:
        return len(self._data)

    def get(self, k: int, mu: Sequence[int]) -> SymFunc | None:
        return self._data.get(self.key(k, mu))

    def put(self, k: int, mu: Sequence[int], f: SymFunc) -> None:
        key = self.key(k, mu)
        if key not in self._data:
            self._data[key] = f
            self._pending[key] = f

    def flush(self) -> Path | None:
        if self.directory is None or not self._pending:
            return None
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            for key in sorted(self._pending):
                terms = self._pending[key].to_json()
                fh.write(json.dumps({"key": key, "terms": terms, "digest": _digest(terms)}) + "\n")
        target = self.directory / f"basis-{uuid.uuid4().hex}.jsonl"
        os.replace(tmp, target)
        self._pending.clear()
        return target

    def clear(self) -> int:
        removed = 0
        for shard in self.shards():
            shard.unlink()
            removed += 1
        self._data.clear()
        self._pending.clear()
        return removed


def basis_getter(cache: BasisCache | None) -> Callable[[Sequence[int], int], SymFunc]:
    return lambda mu, k: kkschur(mu, k, cache)


def strip_expansion(terms: Mapping[tuple[int, ...], int]) -> dict[tuple[int, ...], int]:
    out: dict[tuple[int, ...], int] = {}
    for mu, c in terms.items():
        key = strip_zeros(mu)
        out[key] = out.get(key, 0) + c
    return {mu: c for mu, c in out.items() if c}
