"""Katalan functions ``K(psi; M; gamma)`` and the identities they satisfy.

``K`` applies ``prod_{z in M} (1 - L_z)`` and ``prod_{(i,j) in psi} (1 - R_ij)^-1``
to ``g_gamma``, where ``L_z`` and ``R_ij`` translate the index vector.

Two evaluators are provided.

``method="sweep"`` (default) also writes ``g_gamma`` as translations of the
Jacobi-Trudi symbol ``s_gamma = det(h_{gamma_i + j - i})``: row ``i`` of the
defining determinant is ``(1 - L_i)^{-(i-1)}`` applied to the Jacobi-Trudi row.
Columns are processed from ``l`` down to ``1``; once column ``c`` is done,
coordinate ``c`` never moves again, so it can be checked against the
zero-row bound and the repeated-row rule. Every series is therefore cut
exactly, never by a heuristic. The result is accumulated in the Schur basis
and converted to h-monomials at the end.

``method="gamma"`` expands the raising series on index vectors with the
potential bound ``f(v) = sum (l - x) v_x <= F_max`` and sums ``g_of_vector``
determinants. It is slower and serves as an independent cross-check.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .partitions import shift
from .rootideal import RootIdeal, multiplicity, multiset_difference
from .symfunc import SymFunc, from_schur, g_of_vector, is_row_dead

GammaCombo = dict[tuple[int, ...], int]


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class KatalanSpec:
    psi: RootIdeal
    marks: tuple[int, ...]
    gamma: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "marks", tuple(sorted(self.marks)))
        object.__setattr__(self, "gamma", tuple(self.gamma))
        if len(self.gamma) != self.psi.l:
            raise SpecError(f"gamma has length {len(self.gamma)} but psi has l={self.psi.l}")
        if any(not 1 <= m <= self.psi.l for m in self.marks):
            raise SpecError(f"marks {self.marks} not supported on [1, {self.psi.l}]")

    @property
    def l(self) -> int:
        return self.psi.l

    def mult(self, a: int) -> int:
        return multiplicity(self.marks, a)

    def replace(self, psi: RootIdeal | None = None, marks: Sequence[int] | None = None,
                gamma: Sequence[int] | None = None) -> KatalanSpec:
        return KatalanSpec(psi if psi is not None else self.psi,
                           tuple(marks) if marks is not None else self.marks,
                           tuple(gamma) if gamma is not None else self.gamma)

    def to_json(self) -> dict:
        return {"psi": self.psi.to_json(), "marks": list(self.marks), "gamma": list(self.gamma)}

    @classmethod
    def from_json(cls, data: dict) -> KatalanSpec:
        try:
            return cls(RootIdeal.from_json(data["psi"]), tuple(int(m) for m in data["marks"]),
                       tuple(int(g) for g in data["gamma"]))
        except (KeyError, TypeError) as exc:
            raise SpecError(f"malformed Katalan spec: {exc}") from exc

    def diagram(self) -> str:
        return self.psi.diagram(self.marks, self.gamma)


# -- column sweep ------------------------------------------------------------

@lru_cache(maxsize=None)
def _series_coeffs(exponent: int, budget: int) -> tuple[int, ...]:
    """Coefficients of ``t^a`` in ``(1 - t)^exponent`` for ``a <= budget``."""
    if exponent >= 0:
        return tuple((-1) ** a * comb(exponent, a) for a in range(min(exponent, budget) + 1))
    e = -exponent
    return tuple(comb(e + a - 1, a) for a in range(budget + 1))


def evaluate_schur(spec: KatalanSpec) -> dict[tuple[int, ...], int]:
    """``K(psi; M; gamma)`` as a dict from partitions to Schur coefficients."""
    l = spec.l
    psi = spec.psi
    mult = Counter(spec.marks)
    # key: (coordinates 1..c still moving, final u-values sorted decreasing)
    states: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {(spec.gamma, ()): 1}
    for c in range(l, 0, -1):
        floor = c - l
        for i in [i for i in range(1, c) if (i, c) in psi]:
            nxt: dict = {}
            for (pre, fin), coef in states.items():
                budget = pre[c - 1] - floor
                if budget < 0:
                    continue
                pre = list(pre)
                for _ in range(budget + 1):
                    key = (tuple(pre), fin)
                    nxt[key] = nxt.get(key, 0) + coef
                    pre[i - 1] += 1
                    pre[c - 1] -= 1
            states = nxt
        exponent = mult[c] - (c - 1)
        nxt = {}
        for (pre, fin), coef in states.items():
            budget = pre[c - 1] - floor
            if budget < 0:
                continue
            head = pre[:c - 1]
            for a, w in enumerate(_series_coeffs(exponent, budget)):
                if not w:
                    continue
                u = pre[c - 1] - a - c
                # fin is strictly decreasing; slot u in, counting larger entries
                bigger = 0
                for f in fin:
                    if f <= u:
                        break
                    bigger += 1
                if bigger < len(fin) and fin[bigger] == u:
                    continue
                key = (head, fin[:bigger] + (u,) + fin[bigger:])
                nxt[key] = nxt.get(key, 0) + (-coef * w if bigger % 2 else coef * w)
        states = {k: v for k, v in nxt.items() if v}
    out: dict[tuple[int, ...], int] = {}
    for (_, fin), coef in states.items():
        lam = [u + i for i, u in enumerate(fin, start=1)]
        while lam and lam[-1] == 0:
            lam.pop()
        out[tuple(lam)] = out.get(tuple(lam), 0) + coef
    return {lam: c for lam, c in out.items() if c}


# -- GammaCombo route ----------------------------------------------------------

def root_order(psi: RootIdeal) -> list[tuple[int, int]]:
    """Rows top-to-bottom, columns right-to-left. After the last root of
    row ``i`` coordinate ``i`` never changes again."""
    return sorted(psi.roots(), key=lambda r: (r[0], -r[1]))


def potential(v: Sequence[int]) -> int:
    l = len(v)
    return sum((l - x) * g for x, g in enumerate(v, start=1))


def potential_bound(gamma: Sequence[int]) -> int:
    """Largest potential of a vector of the same size with no zero row:
    all slack goes on coordinate 1, the rest sit at ``x - l``."""
    l = len(gamma)
    if l == 0:
        return 0
    rest = [x - l for x in range(2, l + 1)]
    first = sum(gamma) - sum(rest)
    return potential([first] + rest)


def gamma_combo(spec: KatalanSpec, prune: bool = True, hard_cap: int | None = None) -> GammaCombo:
    """Formal combination of index vectors before determinants are taken."""
    if not prune and hard_cap is None:
        raise ValueError("an unpruned expansion needs a hard cap")
    l = spec.l
    fmax = potential_bound(spec.gamma)
    combo: GammaCombo = {spec.gamma: 1}
    order = root_order(spec.psi)
    for pos, (i, j) in enumerate(order):
        step = j - i
        nxt: GammaCombo = {}
        for v, coef in combo.items():
            f = potential(v)
            w = list(v)
            n = 0
            while (not prune or f <= fmax) and (hard_cap is None or n <= hard_cap):
                key = tuple(w)
                nxt[key] = nxt.get(key, 0) + coef
                w[i - 1] += 1
                w[j - 1] -= 1
                f += step
                n += 1
        combo = nxt
        if prune and (pos + 1 == len(order) or order[pos + 1][0] != i):
            # row i is finished: a dead coordinate i stays dead
            combo = {v: c for v, c in combo.items() if v[i - 1] >= i - l}
    combo = _apply_marks(combo, spec.marks)
    assert all(len(v) == l for v in combo)
    return combo


def _apply_marks(combo: GammaCombo, marks: Sequence[int]) -> GammaCombo:
    # (1 - L_z)^m as a binomial sum; lowering keeps a dead vector dead, so
    # dead vectors are dropped on the way
    combo = {v: c for v, c in combo.items() if c and not is_row_dead(v)}
    for z, m in sorted(Counter(marks).items()):
        weights = [(-1) ** a * comb(m, a) for a in range(m + 1)]
        nxt: GammaCombo = {}
        for v, coef in combo.items():
            head, x, tail = v[:z - 1], v[z - 1], v[z:]
            floor = x - (z - len(v))
            for a, w in enumerate(weights):
                if a > floor:
                    break
                key = head + (x - a,) + tail
                nxt[key] = nxt.get(key, 0) + w * coef
        combo = {k: c for k, c in nxt.items() if c}
    return combo


def capped_combo(spec: KatalanSpec, hard_cap: int) -> GammaCombo:
    """Raising series with every root used at most ``hard_cap`` times and no
    potential bound.

    Rows are processed top to bottom. After row ``i`` the coordinate ``i``
    is final, so a vector is dropped only when that coordinate already
    makes every completion row-dead or exceeds what a live vector of the
    same size allows. Used as the oracle for the potential prune.
    """
    l, n = spec.l, sum(spec.gamma)
    # largest value coordinate x of a live vector of size n can take
    floor_sum = sum(x - l for x in range(1, l + 1))
    combo: GammaCombo = {spec.gamma: 1}
    for i in range(1, l + 1):
        top = n - (floor_sum - (i - l))
        for (a, j) in spec.psi.roots():
            if a != i:
                continue
            nxt: GammaCombo = {}
            for v, coef in combo.items():
                w = list(v)
                # rows above are done, so coordinate i only grows from here
                for _ in range(hard_cap + 1):
                    if w[i - 1] > top:
                        break
                    key = tuple(w)
                    nxt[key] = nxt.get(key, 0) + coef
                    w[i - 1] += 1
                    w[j - 1] -= 1
            combo = nxt
        combo = {v: c for v, c in combo.items() if i - l <= v[i - 1] <= top}
    return _apply_marks(combo, spec.marks)


def live_part(combo: GammaCombo) -> GammaCombo:
    """Drop vectors whose determinant has a zero row."""
    return {v: c for v, c in combo.items() if c and not is_row_dead(v)}


def evaluate_combo(combo: GammaCombo) -> SymFunc:
    out: dict = {}
    for v, coef in combo.items():
        if not coef or is_row_dead(v):
            continue
        for mu, d in g_of_vector(v).terms().items():
            out[mu] = out.get(mu, 0) + coef * d
    return SymFunc(out)


def evaluate(spec: KatalanSpec, method: str = "sweep", *, prune: bool = True,
             hard_cap: int | None = None) -> SymFunc:
    """Evaluate ``K(psi; M; gamma)`` exactly in the h-monomial basis."""
    if method == "sweep":
        return from_schur(evaluate_schur(spec))
    if method == "gamma":
        return evaluate_combo(gamma_combo(spec, prune=prune, hard_cap=hard_cap))
    if method == "capped":
        if hard_cap is None:
            raise ValueError("the capped evaluator needs a hard cap")
        return evaluate_combo(capped_combo(spec, hard_cap))
    raise ValueError(f"unknown evaluation method {method!r}")


def katalan(psi: RootIdeal, marks: Sequence[int], gamma: Sequence[int]) -> SymFunc:
    return evaluate(KatalanSpec(psi, tuple(marks), tuple(gamma)))


# -- rewriting rules -------------------------------------------------------------

def apply_lowering(spec: KatalanSpec, z: int) -> KatalanSpec:
    """``L_z K(psi; M; gamma) = K(psi; M; gamma - e_z)``."""
    if not 1 <= z <= spec.l:
        raise SpecError(f"lowering index {z} outside [1, {spec.l}]")
    return spec.replace(gamma=shift(spec.gamma, z, -1))


def relk_split(spec: KatalanSpec, which: str, arg) -> list[tuple[int, KatalanSpec]]:
    """Signed right-hand side of one of the four splitting rules.

    ``which`` is ``remove_root``, ``add_root``, ``remove_mark`` or ``add_mark``;
    ``arg`` is the root or the index.
    """
    psi, gamma = spec.psi, spec.gamma
    if which == "remove_root":
        i, j = arg
        if not psi.is_removable(arg):
            raise SpecError(f"{arg} is not removable")
        return [(1, spec.replace(psi=psi.remove(arg))),
                (1, spec.replace(gamma=shift(shift(gamma, i, 1), j, -1)))]
    if which == "add_root":
        i, j = arg
        if not psi.is_addable(arg):
            raise SpecError(f"{arg} is not addable")
        bigger = psi.add(arg)
        return [(1, spec.replace(psi=bigger)),
                (-1, spec.replace(psi=bigger, gamma=shift(shift(gamma, i, 1), j, -1)))]
    if which == "remove_mark":
        if arg not in spec.marks:
            raise SpecError(f"{arg} is not a mark of {spec.marks}")
        fewer = multiset_difference(spec.marks, [arg])
        return [(1, spec.replace(marks=fewer)),
                (-1, spec.replace(marks=fewer, gamma=shift(gamma, arg, -1)))]
    if which == "add_mark":
        if not 1 <= arg <= spec.l:
            raise SpecError(f"mark {arg} outside [1, {spec.l}]")
        return [(1, spec.replace(marks=spec.marks + (arg,))),
                (1, spec.replace(gamma=shift(gamma, arg, -1)))]
    raise SpecError(f"unknown rule {which!r}")


class MirrorOutcome(enum.Enum):
    ZERO = "zero"
    DROP_EPSILON = "drop_epsilon"
    NOT_APPLICABLE = "not_applicable"


def mirror_hypotheses(spec: KatalanSpec, y: int, z: int) -> bool:
    """All six hypotheses of the mirror rule for the indices ``y <= z``."""
    psi, gamma, l = spec.psi, spec.gamma, spec.l
    if not 1 <= y <= z < l:
        raise SpecError(f"need 1 <= y <= z < l, got y={y}, z={z}, l={l}")
    try:
        psi.bounce_path(y, z)
    except ValueError:
        return False
    upper = psi.up(z) if z > y else None
    mirrored = psi.bounce_path(y, upper) if upper is not None else []
    ladder_start = psi.down(y)
    ladder = psi.bounce_path(ladder_start, z) if ladder_start is not None else []
    return (psi.has_ceiling(y)
            and all(psi.has_mirror(x) for x in mirrored)
            and psi.has_wall(z)
            and all(gamma[x - 1] == gamma[x] for x in mirrored)
            and gamma[z - 1] + 1 == gamma[z]
            and all(spec.mult(x) + 1 == spec.mult(x + 1) for x in ladder))


def mirror_apply(spec: KatalanSpec, y: int, z: int) -> MirrorOutcome:
    """Decide the mirror rule without evaluating anything."""
    if not mirror_hypotheses(spec, y, z):
        return MirrorOutcome.NOT_APPLICABLE
    if spec.mult(y) + 1 == spec.mult(y + 1):
        return MirrorOutcome.ZERO
    if spec.mult(y) == spec.mult(y + 1):
        return MirrorOutcome.DROP_EPSILON
    return MirrorOutcome.NOT_APPLICABLE
