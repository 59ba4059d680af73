"""Root ideals in the positive roots ``{(i, j) : 1 <= i < j <= l}``.

An ideal is stored by its row starts: row ``i`` holds exactly the roots
``(i, j)`` with ``row_starts[i-1] <= j <= l`` (a start of ``l + 1`` means an
empty row). Upper order ideals are exactly the staircases with nondecreasing
starts and ``start_i >= i + 1``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .partitions import check_kbounded

Root = tuple[int, int]


class RootIdealError(ValueError):
    pass


@dataclass(frozen=True)
class RootIdeal:
    l: int
    row_starts: tuple[int, ...]

    def __post_init__(self):
        starts = tuple(self.row_starts)
        object.__setattr__(self, "row_starts", starts)
        if len(starts) != self.l:
            raise RootIdealError(f"expected {self.l} row starts, got {len(starts)}")
        for i, c in enumerate(starts, start=1):
            if not i + 1 <= c <= self.l + 1 and not (i == self.l and c == self.l + 1):
                raise RootIdealError(f"row {i} start {c} outside [{i + 1}, {self.l + 1}]")
        if any(starts[i] > starts[i + 1] for i in range(self.l - 1)):
            raise RootIdealError(f"row starts {starts} are not nondecreasing")

    # -- construction ---------------------------------------------------
    @classmethod
    def empty(cls, l: int) -> RootIdeal:
        return cls(l, (l + 1,) * l)

    @classmethod
    def full(cls, l: int) -> RootIdeal:
        return cls(l, tuple(min(i + 1, l + 1) for i in range(1, l + 1)))

    @classmethod
    def from_roots(cls, l: int, roots: Iterable[Root]) -> RootIdeal:
        roots = set(roots)
        starts = []
        for i in range(1, l + 1):
            cols = sorted(j for (a, j) in roots if a == i)
            if cols and cols != list(range(cols[0], l + 1)):
                raise RootIdealError(f"row {i} of {sorted(roots)} is not a right-justified interval")
            starts.append(cols[0] if cols else l + 1)
        for (i, j) in roots:
            if not 1 <= i < j <= l:
                raise RootIdealError(f"{(i, j)} is not a positive root for l={l}")
        return cls(l, tuple(starts))

    @classmethod
    def all_ideals(cls, l: int) -> Iterator[RootIdeal]:
        """Every root ideal for length ``l`` (a Catalan number of them)."""

        def rec(i: int, lo: int, acc: tuple[int, ...]):
            if i > l:
                yield cls(l, acc)
                return
            for c in range(max(lo, i + 1), l + 2):
                yield from rec(i + 1, c, acc + (c,))

        if l == 0:
            yield cls(0, ())
            return
        yield from rec(1, 2, ())

    # -- membership -----------------------------------------------------
    def __contains__(self, root: object) -> bool:
        i, j = root  # type: ignore[misc]
        return 1 <= i < j <= self.l and j >= self.row_starts[i - 1]

    def roots(self) -> list[Root]:
        return [(i, j) for i in range(1, self.l + 1) for j in range(self.row_starts[i - 1], self.l + 1)]

    def __len__(self) -> int:
        return sum(self.row_length(i) for i in range(1, self.l + 1))

    def __iter__(self) -> Iterator[Root]:
        return iter(self.roots())

    def row_length(self, r: int) -> int:
        return self.l + 1 - self.row_starts[r - 1]

    def col_length(self, c: int) -> int:
        return sum(1 for i in range(1, c) if self.row_starts[i - 1] <= c)

    # -- removable / addable --------------------------------------------
    def is_removable(self, root: Root) -> bool:
        i, j = root
        if root not in self:
            return False
        below_ok = i + 1 >= j or self.row_starts[i] > j
        return j == self.row_starts[i - 1] and below_ok

    def is_addable(self, root: Root) -> bool:
        i, j = root
        if not 1 <= i < j <= self.l or root in self:
            return False
        right_ok = j == self.l or (i, j + 1) in self
        above_ok = i == 1 or (i - 1, j) in self
        return right_ok and above_ok

    def removable_roots(self) -> set[Root]:
        return {(i, self.row_starts[i - 1]) for i in range(1, self.l + 1)
                if self.row_starts[i - 1] <= self.l and self.is_removable((i, self.row_starts[i - 1]))}

    def addable_roots(self) -> set[Root]:
        out = set()
        for i in range(1, self.l):
            j = self.row_starts[i - 1] - 1
            if j > i and self.is_addable((i, j)):
                out.add((i, j))
        return out

    def remove(self, root: Root) -> RootIdeal:
        if not self.is_removable(root):
            raise RootIdealError(f"{root} is not removable")
        starts = list(self.row_starts)
        starts[root[0] - 1] += 1
        return RootIdeal(self.l, tuple(starts))

    def add(self, root: Root) -> RootIdeal:
        if not self.is_addable(root):
            raise RootIdealError(f"{root} is not addable")
        starts = list(self.row_starts)
        starts[root[0] - 1] -= 1
        return RootIdeal(self.l, tuple(starts))

    # -- bounce structure -----------------------------------------------
    def down(self, x: int) -> int | None:
        """Column of the removable root in row ``x``, if any."""
        c = self.row_starts[x - 1]
        if c <= self.l and self.is_removable((x, c)):
            return c
        return None

    def up(self, x: int) -> int | None:
        """Row of the removable root in column ``x``, if any."""
        for i in range(x - 1, 0, -1):
            if self.row_starts[i - 1] <= x:
                return i if self.is_removable((i, x)) else None
        return None

    def down_iter(self, x: int, a: int) -> int | None:
        """``down`` applied ``a`` times (``a = 0`` gives ``x``)."""
        for _ in range(a):
            if x is None:
                return None
            x = self.down(x)
        return x

    def bot(self, x: int) -> int:
        while (d := self.down(x)) is not None:
            x = d
        return x

    def top(self, x: int) -> int:
        while (u := self.up(x)) is not None:
            x = u
        return x

    def bounce_path(self, a: int, b: int) -> list[int]:
        """Vertices ``a, down(a), ..., b``; empty when ``a > b``."""
        if a > b:
            return []
        path = [a]
        while path[-1] != b:
            nxt = self.down(path[-1])
            if nxt is None or nxt > b:
                raise RootIdealError(f"{a} and {b} are not on one bounce path")
            path.append(nxt)
        return path

    def same_path(self, a: int, b: int) -> bool:
        return self.top(a) == self.top(b)

    # -- structural predicates ------------------------------------------
    def has_wall(self, r: int) -> bool:
        return 1 <= r < self.l and self.row_length(r) == self.row_length(r + 1)

    def has_ceiling(self, c: int) -> bool:
        return 1 <= c < self.l and self.col_length(c) == self.col_length(c + 1)

    def has_mirror(self, r: int) -> bool:
        if not 1 <= r < self.l:
            return False
        c = self.row_starts[r - 1]
        return (r + 2 <= c <= self.l - 1 and self.is_removable((r, c))
                and self.is_removable((r + 1, c + 1)))

    def bottom(self) -> int:
        """Last nonempty row (0 for the empty ideal)."""
        return max((i for i in range(1, self.l + 1) if self.row_length(i) > 0), default=0)

    # -- serialisation ---------------------------------------------------
    def to_json(self) -> dict:
        return {"l": self.l, "rowStarts": list(self.row_starts)}

    @classmethod
    def from_json(cls, data: dict) -> RootIdeal:
        return cls(int(data["l"]), tuple(int(c) for c in data["rowStarts"]))

    def diagram(self, marks: Sequence[int] = (), gamma: Sequence[int] | None = None) -> str:
        """ASCII grid: ``#`` for roots, ``*`` markers stacked in their column
        from the top row down, and ``gamma`` on the diagonal."""
        mult = Counter(marks)
        width = max([len(str(g)) for g in gamma] if gamma else [1]) + 1
        lines = []
        for i in range(1, self.l + 1):
            cells = []
            for j in range(1, self.l + 1):
                if i == j:
                    cell = str(gamma[i - 1]) if gamma is not None else "."
                elif (i, j) in self:
                    cell = "*" if i <= mult[j] else "#"
                elif i < j and i <= mult[j]:
                    cell = "*"
                else:
                    cell = "."
                cells.append(cell.rjust(width))
            lines.append("".join(cells))
        return "\n".join(lines)


def delta_k(lam: Sequence[int], k: int) -> RootIdeal:
    """The ideal ``{(i, j) : k - lam_i + i < j}`` for a k-bounded ``lam``."""
    lam = check_kbounded(lam, k)
    l = len(lam)
    starts = tuple(min(max(i + 1, k - lam[i - 1] + i + 1), l + 1) for i in range(1, l + 1))
    return RootIdeal(l, starts)


def second_components(roots: Iterable[Root]) -> tuple[int, ...]:
    """Multiset of columns of the given roots, as a sorted tuple."""
    return tuple(sorted(j for (_, j) in roots))


def multiplicity(marks: Sequence[int], a: int) -> int:
    return sum(1 for m in marks if m == a)


def multiset_difference(marks: Sequence[int], remove: Iterable[int]) -> tuple[int, ...]:
    left = Counter(marks)
    for r in remove:
        if left[r] <= 0:
            raise RootIdealError(f"{r} is not available in multiset {tuple(marks)}")
        left[r] -= 1
    return tuple(sorted(left.elements()))


def bottom_of(lam: Sequence[int], k: int) -> int:
    return delta_k(lam, k).bottom()


def downs(lam: Sequence[int], k: int) -> dict[int, int]:
    """``down`` of every row ``x`` in ``[1, bottom]`` for ``delta_k(lam)``."""
    psi = delta_k(lam, k)
    return {x: psi.down(x) for x in range(1, psi.bottom() + 1)}


def weighted_marks(lam: Sequence[int], k: int, z: int) -> tuple[int, ...]:
    """Marks of the weight-``z`` function: ``L(delta_k)`` minus the columns
    ``down(x)`` for ``x`` in ``[z, bottom]``."""
    psi = delta_k(lam, k)
    b = psi.bottom()
    if not 1 <= z <= b + 1:
        raise RootIdealError(f"weight {z} outside [1, {b + 1}]")
    drop = [psi.down(x) for x in range(z, b + 1)]
    return multiset_difference(second_components(psi.roots()), drop)
