"""
Brute-force ground truth over the symmetric group.

Permutations are plain tuples holding the values ``1..n`` in one-line
notation, so ``(2, 3, 1)`` sends 1 to 2, 2 to 3 and 3 to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, permutations
from math import factorial
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidArgument, ResourceLimitError
from .poly import Poly

__all__ = [
    "DEFAULT_CAP", "DP_CAP", "JointTable",
    "check_perm", "descent_count", "reverse_values", "reverse_positions", "rollback",
    "permutation_array", "descents_of_array", "enumerate_joint", "first_counts_by_dp",
    "linear_extensions", "star_poset", "both_ends_poset", "descent_poly_of_set",
]

DEFAULT_CAP = 10
DP_CAP = 15


def check_perm(p: Sequence[int]) -> tuple[int, ...]:
    """Return ``p`` as a tuple, raising unless it is a permutation of ``1..len(p)``."""
    p = tuple(p)
    if len(p) == 0 or sorted(p) != list(range(1, len(p) + 1)):
        raise InvalidArgument(f"not a permutation of 1..{len(p)}: {p!r}")
    return p


def descent_count(p: Sequence[int]) -> int:
    return sum(1 for a, b in zip(p, p[1:]) if a > b)


def reverse_values(p: Sequence[int]) -> tuple[int, ...]:
    """Replace each value v by n + 1 - v."""
    n = len(p)
    return tuple(n + 1 - v for v in p)


def reverse_positions(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(reversed(p))


def rollback(p: Sequence[int]) -> tuple[int, ...]:
    """Decrement every value, sending 1 to n."""
    n = len(p)
    return tuple(v - 1 if v > 1 else n for v in p)


def permutation_array(n: int, first: int | None = None) -> np.ndarray:
    """All permutations of ``1..n`` (optionally only those starting with
    ``first``) as rows of an int8 array, in lexicographic order."""
    if first is None:
        return np.concatenate([permutation_array(n, f) for f in range(1, n + 1)])
    rest = [v for v in range(1, n + 1) if v != first]
    m = factorial(n - 1)
    out = np.empty((m, n), dtype=np.int8)
    out[:, 0] = first
    if n > 1:
        flat = np.fromiter(chain.from_iterable(permutations(rest)),
                           dtype=np.int8, count=m * (n - 1))
        out[:, 1:] = flat.reshape(m, n - 1)
    return out


def descents_of_array(perms: np.ndarray) -> np.ndarray:
    return (perms[:, :-1] > perms[:, 1:]).sum(axis=1)


@dataclass(frozen=True)
class JointTable:
    """Counts of permutations of ``1..n`` by (descents, first value, last value).

    ``counts[d, first - 1, last - 1]`` is the number of permutations with
    those three statistics.
    """
    n: int
    counts: np.ndarray

    def count(self, d: int, first: int, last: int) -> int:
        if 0 <= d < self.n and 1 <= first <= self.n and 1 <= last <= self.n:
            return int(self.counts[d, first - 1, last - 1])
        return 0

    def total(self) -> int:
        return int(self.counts.sum())

    def items(self) -> Iterator[tuple[tuple[int, int, int], int]]:
        """Nonzero ``((d, first, last), count)`` pairs in index order."""
        for d, f, l in zip(*np.nonzero(self.counts)):
            yield (int(d), int(f) + 1, int(l) + 1), int(self.counts[d, f, l])

    def euler_row(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.counts.sum(axis=(1, 2)))

    def first_counts(self) -> tuple[tuple[int, ...], ...]:
        """``[d][k-1]`` counts of permutations with d descents starting with k."""
        m = self.counts.sum(axis=2)
        return tuple(tuple(int(v) for v in row) for row in m)

    def last_counts(self) -> tuple[tuple[int, ...], ...]:
        m = self.counts.sum(axis=1)
        return tuple(tuple(int(v) for v in row) for row in m)


def enumerate_joint(n: int, cap: int = DEFAULT_CAP) -> JointTable:
    """Tabulate every permutation of ``1..n`` by (descents, first, last).

    The work is split by first value and the blocks summed in a fixed
    order. Refuses ``n > cap`` with :class:`ResourceLimitError`.
    """
    if n < 1:
        raise InvalidArgument(f"n must be positive, got {n}")
    if n > cap:
        raise ResourceLimitError("enumerate_joint", n, cap)
    counts = np.zeros(n * n * n, dtype=np.int64)
    for first in range(1, n + 1):
        block = permutation_array(n, first)
        des = descents_of_array(block).astype(np.int64)
        idx = (des * n + (first - 1)) * n + (block[:, -1].astype(np.int64) - 1)
        counts += np.bincount(idx, minlength=n * n * n)
    return JointTable(n, counts.reshape(n, n, n))


def first_counts_by_dp(n: int, cap: int = DP_CAP) -> tuple[tuple[int, ...], ...]:
    """Exhaustive count of permutations by (descents, first value) for ``n``
    beyond the reach of direct enumeration.

    Permutations are grown right to left; the state after placing a set of
    values records the leftmost value so far and the descents seen. Every
    arrangement is counted exactly once, with no appeal to any formula.
    Returns ``[d][k-1]`` like :meth:`JointTable.first_counts`.
    """
    if n < 1:
        raise InvalidArgument(f"n must be positive, got {n}")
    if n > cap:
        raise ResourceLimitError("first_counts_by_dp", n, cap)
    full = (1 << n) - 1
    dp = np.zeros((full + 1, n, n), dtype=np.int64)  # mask, leftmost value - 1, descents
    for v in range(n):
        dp[1 << v, v, 0] = 1
    for mask in range(1, full):
        cur = dp[mask]
        if not cur.any():
            continue
        cs = np.cumsum(cur, axis=0)
        total = cs[-1]
        for w in range(n):
            bit = 1 << w
            if mask & bit:
                continue
            smaller = cs[w - 1] if w > 0 else 0  # leftmost < w: placing w in front adds a descent
            larger = total - cs[w]
            tgt = dp[mask | bit, w]
            tgt += larger
            if w > 0:
                tgt[1:] += smaller[:-1]
    final = dp[full]
    return tuple(tuple(int(final[k, d]) for k in range(n)) for d in range(n))


def _closure(relations: Iterable[tuple[int, int]], n: int) -> list[list[bool]]:
    below = [[False] * (n + 1) for _ in range(n + 1)]
    for a, b in relations:
        if not (1 <= a <= n and 1 <= b <= n):
            raise InvalidArgument(f"relation ({a}, {b}) outside 1..{n}")
        if a != b:
            below[a][b] = True
    for m in range(1, n + 1):
        for i in range(1, n + 1):
            if below[i][m]:
                row_m = below[m]
                row_i = below[i]
                for j in range(1, n + 1):
                    if row_m[j]:
                        row_i[j] = True
    if any(below[i][i] for i in range(1, n + 1)):
        raise InvalidArgument("relations contain a cycle; not a partial order")
    return below


def linear_extensions(relations: Iterable[tuple[int, int]], n: int,
                      cap: int = DEFAULT_CAP) -> Iterator[tuple[int, ...]]:
    """Yield, in lexicographic order, every listing of ``1..n`` in which
    ``a`` precedes ``b`` whenever ``(a, b)`` is in the transitive closure
    of ``relations``.
    """
    if n > cap:
        raise ResourceLimitError("linear_extensions", n, cap)
    below = _closure(relations, n)
    preds = [{a for a in range(1, n + 1) if below[a][b]} for b in range(n + 1)]
    placed: list[int] = []
    used = [False] * (n + 1)

    def rec():
        if len(placed) == n:
            yield tuple(placed)
            return
        for v in range(1, n + 1):
            if not used[v] and all(used[a] for a in preds[v]):
                used[v] = True
                placed.append(v)
                yield from rec()
                placed.pop()
                used[v] = False

    return rec()


def star_poset(n: int, k: int) -> set[tuple[int, int]]:
    """``k`` below every other element; extensions are the permutations starting with ``k``."""
    return {(k, a) for a in range(1, n + 1) if a != k}


def both_ends_poset(n: int, k: int, l: int) -> set[tuple[int, int]]:
    """``k`` below everything, ``l`` above everything."""
    rel = {(k, a) for a in range(1, n + 1) if a not in (k, l)}
    rel |= {(a, l) for a in range(1, n + 1) if a not in (k, l)}
    rel.add((k, l))
    return rel


def descent_poly_of_set(perms: Iterable[Sequence[int]]) -> Poly:
    """``sum(x ** Des(p))`` over the given permutations."""
    counts: dict[int, int] = {}
    length = None
    for p in perms:
        if length is None:
            length = len(p)
        elif len(p) != length:
            raise InvalidArgument("permutations of mixed lengths")
        d = descent_count(p)
        counts[d] = counts.get(d, 0) + 1
    if not counts:
        return Poly()
    return Poly(counts.get(i, 0) for i in range(max(counts) + 1))
