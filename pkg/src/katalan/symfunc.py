"""Exact sparse arithmetic in the polynomial ring on h_1, h_2, ...

A :class:`SymFunc` maps h-monomials (partitions, the empty one being the unit)
to Python ints. Besides ring arithmetic the module provides the inhomogeneous
complete functions ``k_hom``, the determinant ``g_of_vector`` and a
Jacobi-Trudi based conversion from Schur coefficients to the h basis.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


def monomial_key(mu: Monomial) -> tuple[int, Monomial]:
    """Canonical order: degree first, then lexicographic on the parts."""
    return (sum(mu), mu)


def _merge(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


def _insert(mu: Monomial, m: int) -> Monomial:
    # multiply an h-monomial by h_m, m >= 1
    for pos, part in enumerate(mu):
        if part < m:
            return mu[:pos] + (m,) + mu[pos:]
    return mu + (m,)


class SymFunc:
    """Immutable sparse element of Z[h_1, h_2, ...] in the h-monomial basis."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean: dict[Monomial, int] = {}
        if terms:
            for mu, c in terms.items():
                if not isinstance(c, int):
                    raise TypeError(f"coefficient {c!r} of {mu} is not an integer")
                if c:
                    mu = tuple(mu)
                    if any(p <= 0 for p in mu) or list(mu) != sorted(mu, reverse=True):
                        raise ValueError(f"{mu} is not a valid h-monomial")
                    clean[mu] = c
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict[Monomial, int]) -> SymFunc:
        # trusted constructor: keys canonical, zero coefficients removed
        obj = cls.__new__(cls)
        obj._terms = {mu: c for mu, c in terms.items() if c}
        return obj

    @classmethod
    def zero(cls) -> SymFunc:
        return cls._raw({})

    @classmethod
    def one(cls) -> SymFunc:
        return cls._raw({(): 1})

    # -- inspection -----------------------------------------------------
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]))

    def coefficient(self, mu: Sequence[int]) -> int:
        return self._terms.get(tuple(mu), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero function has no degree")
        return max(sum(mu) for mu in self._terms)

    def max_part(self) -> int:
        return max((mu[0] for mu in self._terms if mu), default=0)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: SymFunc | int) -> SymFunc:
        other = _coerce(other)
        out = dict(self._terms)
        for mu, c in other._terms.items():
            out[mu] = out.get(mu, 0) + c
        return SymFunc._raw(out)

    __radd__ = __add__

    def __neg__(self) -> SymFunc:
        return SymFunc._raw({mu: -c for mu, c in self._terms.items()})

    def __sub__(self, other: SymFunc | int) -> SymFunc:
        return self + (-_coerce(other))

    def __rsub__(self, other: SymFunc | int) -> SymFunc:
        return _coerce(other) - self

    def __mul__(self, other: SymFunc | int) -> SymFunc:
        if isinstance(other, int):
            return SymFunc._raw({mu: c * other for mu, c in self._terms.items()})
        if not isinstance(other, SymFunc):
            return NotImplemented
        out: dict[Monomial, int] = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                key = _merge(a, b)
                out[key] = out.get(key, 0) + ca * cb
        return SymFunc._raw(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = _coerce(other)
        if not isinstance(other, SymFunc):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- presentation ---------------------------------------------------
    def __repr__(self) -> str:
        return f"SymFunc({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mu, c in sorted(self._terms.items(), key=lambda t: monomial_key(t[0]), reverse=True):
            mono = _format_monomial(mu)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> list[dict]:
        return [{"h": list(mu), "c": str(c)} for mu, c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> SymFunc:
        return cls({tuple(entry["h"]): int(entry["c"]) for entry in data})


def _format_monomial(mu: Monomial) -> str:
    out = []
    i = 0
    while i < len(mu):
        j = i
        while j < len(mu) and mu[j] == mu[i]:
            j += 1
        out.append(f"h{mu[i]}" + (f"^{j - i}" if j - i > 1 else ""))
        i = j
    return "*".join(out)


def _coerce(x: SymFunc | int) -> SymFunc:
    if isinstance(x, SymFunc):
        return x
    if isinstance(x, int):
        return SymFunc._raw({(): x})
    raise TypeError(f"cannot use {type(x).__name__} as a symmetric function")


def h(m: int) -> SymFunc:
    """The complete homogeneous function h_m (h_0 = 1, h_m = 0 for m < 0)."""
    if m < 0:
        return SymFunc.zero()
    return SymFunc._raw({(m,) if m else (): 1})


def _binom_general(r: int, i: int) -> int:
    # C(r + i - 1, i), with the r = 0 convention giving 1 only at i = 0
    if r == 0:
        return 1 if i == 0 else 0
    return comb(r + i - 1, i)


@lru_cache(maxsize=None)
def k_hom(m: int, r: int) -> SymFunc:
    """``sum_{i=0}^{m} C(r+i-1, i) h_{m-i}``; zero for ``m < 0``."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if m < 0:
        return SymFunc.zero()
    out = {}
    for i in range(m + 1):
        c = _binom_general(r, i)
        if c:
            out[(m - i,) if m - i else ()] = c
    return SymFunc._raw(out)


def is_row_dead(gamma: Sequence[int]) -> bool:
    """True when some row of the determinant for ``g_gamma`` vanishes,
    i.e. ``gamma_i < i - l`` for some 1-based ``i``."""
    l = len(gamma)
    return any(g < i - l for i, g in enumerate(gamma, start=1))


@lru_cache(maxsize=200_000)
def g_of_vector(gamma: tuple[int, ...]) -> SymFunc:
    """``det(k_hom(gamma_i + j - i, i - 1))`` by memoized cofactor expansion."""
    gamma = tuple(gamma)
    l = len(gamma)
    if l == 0:
        return SymFunc.one()
    if is_row_dead(gamma):
        return SymFunc.zero()
    entries = [[k_hom(gamma[i] + j - i, i) for j in range(l)] for i in range(l)]
    memo: dict[int, SymFunc] = {}

    def minor(used: int) -> SymFunc:
        # rows are consumed bottom-up; `used` marks the columns already taken
        row = l - 1 - bin(used).count("1")
        if row < 0:
            return SymFunc.one()
        if used in memo:
            return memo[used]
        total = SymFunc.zero()
        free = [j for j in range(l) if not used >> j & 1]
        for pos, j in enumerate(free):
            entry = entries[row][j]
            if not entry:
                continue
            # the row being expanded is the last remaining one
            sign = -1 if (len(free) - 1 + pos) % 2 else 1
            sub = minor(used | 1 << j)
            if sub:
                total = total + entry * sub * sign
        memo[used] = total
        return total

    return minor(0)


def top_component(f: SymFunc) -> tuple[int, SymFunc]:
    """Top degree of ``f`` and the homogeneous part of that degree."""
    if not f:
        raise ValueError("the zero function has no top component")
    d = f.degree()
    return d, SymFunc._raw({mu: c for mu, c in f.terms().items() if sum(mu) == d})


def straighten(gamma: Sequence[int]) -> tuple[int, tuple[int, ...]] | None:
    """Rewrite ``det(h_{gamma_i + j - i})`` as ``sign * s_lambda``.

    Returns ``(sign, lambda)`` with trailing zeros stripped, or ``None`` when
    the determinant vanishes (a repeated row or a row of zeros).
    """
    l = len(gamma)
    us = [g - i for i, g in enumerate(gamma, start=1)]
    if len(set(us)) < l or (us and min(us) < -l):
        return None
    inversions = sum(1 for a in range(l) for b in range(a + 1, l) if us[a] < us[b])
    ordered = sorted(us, reverse=True)
    lam = [u + i for i, u in enumerate(ordered, start=1)]
    while lam and lam[-1] == 0:
        lam.pop()
    return (-1 if inversions % 2 else 1), tuple(lam)


@lru_cache(maxsize=None)
def schur(lam: tuple[int, ...]) -> SymFunc:
    """The Schur function s_lambda in the h basis (Jacobi-Trudi)."""
    n = len(lam)
    if n == 0:
        return SymFunc.one()
    # row i (0-based) may only use columns j with lam[i] + j - i >= 0
    starts = [max(0, i - lam[i]) for i in range(n)]
    memo: dict[int, dict[Monomial, int]] = {}

    def minor(used: int) -> dict[Monomial, int]:
        row = bin(used).count("1")
        if row == n:
            return {(): 1}
        if used in memo:
            return memo[used]
        free = [j for j in range(n) if not used >> j & 1]
        out: dict[Monomial, int] = {}
        if free[0] >= starts[row]:
            for pos, j in enumerate(free):
                m = lam[row] + j - row
                if m < 0:
                    continue
                sub = minor(used | 1 << j)
                sign = -1 if pos % 2 else 1
                for mu, c in sub.items():
                    key = _insert(mu, m) if m else mu
                    out[key] = out.get(key, 0) + sign * c
        out = {mu: c for mu, c in out.items() if c}
        memo[used] = out
        return out

    return SymFunc._raw(minor(0))


def from_schur(coeffs: Mapping[tuple[int, ...], int]) -> SymFunc:
    """Convert a Schur-basis combination to the h basis."""
    out: dict[Monomial, int] = {}
    for lam, c in coeffs.items():
        if not c:
            continue
        for mu, d in schur(tuple(lam)).terms().items():
            out[mu] = out.get(mu, 0) + c * d
    return SymFunc._raw(out)
