"""Integer vectors, partitions and k-bounded enumeration.

Vectors and partitions are plain tuples of ints. Indices in the public API are
1-based, matching the usual matrix-style labelling of rows and columns; a
partition keeps its trailing zeros because its length is significant.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

IntVec = tuple[int, ...]
Partition = tuple[int, ...]


class PartitionError(ValueError):
    """Raised when a vector does not have the shape an operation requires."""


def size(v: Sequence[int]) -> int:
    return sum(v)


def is_partition(v: Sequence[int]) -> bool:
    """Weakly decreasing and nonnegative (trailing zeros allowed)."""
    return all(v[i] >= v[i + 1] for i in range(len(v) - 1)) and (not v or v[-1] >= 0)


def is_kbounded(v: Sequence[int], k: int) -> bool:
    return is_partition(v) and (not v or v[0] <= k)


def check_kbounded(v: Sequence[int], k: int) -> Partition:
    v = tuple(v)
    if not is_partition(v):
        raise PartitionError(f"{v} is not a weakly decreasing nonnegative vector")
    if v and v[0] > k:
        raise PartitionError(f"{v} is not {k}-bounded")
    return v


def strip_zeros(v: Sequence[int]) -> Partition:
    v = list(v)
    while v and v[-1] == 0:
        v.pop()
    return tuple(v)


def epsilon(i: int, l: int) -> IntVec:
    """Unit vector with a 1 in position ``i`` (1-based)."""
    if not 1 <= i <= l:
        raise IndexError(f"index {i} outside [1, {l}]")
    return tuple(1 if x == i else 0 for x in range(1, l + 1))


def epsilon_root(i: int, j: int, l: int) -> IntVec:
    """``e_i - e_j`` for a positive root ``(i, j)``."""
    if not 1 <= i < j <= l:
        raise IndexError(f"({i}, {j}) is not a positive root for l={l}")
    return tuple((x == i) - (x == j) for x in range(1, l + 1))


def shift(v: Sequence[int], i: int, amount: int = 1) -> IntVec:
    """Return ``v + amount * e_i`` (1-based ``i``)."""
    w = list(v)
    w[i - 1] += amount
    return tuple(w)


def parse_partition(text: str) -> Partition:
    """Parse ``"5,4,3,3"``; the empty string is the empty partition."""
    text = text.strip().strip("()[]")
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise PartitionError(f"cannot parse {text!r} as a comma-separated list") from exc


def format_partition(v: Sequence[int]) -> str:
    return ",".join(str(x) for x in v)


def _bounded(n: int, parts: int, k: int) -> Iterator[Partition]:
    # partitions of n into exactly `parts` positive parts, each <= k,
    # produced in lexicographically decreasing order
    if parts == 0:
        if n == 0:
            yield ()
        return
    hi = min(k, n - (parts - 1))
    lo = max(1, -(-n // parts))
    for first in range(hi, lo - 1, -1):
        for rest in _bounded(n - first, parts - 1, first):
            yield (first,) + rest


def enumerate_kbounded(k: int, l: int, max_size: int) -> list[Partition]:
    """All partitions with exactly ``l`` positive parts, largest part at most
    ``k`` and size at most ``max_size``; size ascending, then lex descending."""
    if min(k, l, max_size) < 0:
        raise ValueError("k, l and max_size must be nonnegative")
    out: list[Partition] = []
    for n in range(0, max_size + 1):
        out.extend(_bounded(n, l, k))
    return out


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """Partitions of ``n`` of any length with parts at most ``max_part``,
    in lexicographically increasing order."""
    if max_part is None:
        max_part = n
    out = []
    for parts in range(0, n + 1):
        out.extend(_bounded(n, parts, max_part))
    return tuple(sorted(out))


def in_hat_class(lam: Sequence[int], k: int, l: int) -> bool:
    """Membership in the class where ``lam[x-1] > lam[x]`` whenever
    ``k - lam[x] + x < l`` (with ``lam[0]`` read as infinity)."""
    lam = check_kbounded(lam, k)
    if len(lam) != l:
        raise PartitionError(f"{lam} has length {len(lam)}, expected {l}")
    for x in range(2, l + 1):
        if k - lam[x - 1] + x < l and not lam[x - 2] > lam[x - 1]:
            return False
    return True


def is_strict(lam: Sequence[int]) -> bool:
    return all(lam[i] > lam[i + 1] for i in range(len(lam) - 1))
