"""
Eulerian numbers refined by the first (or last, or both) values of a
permutation, computed exactly with Python integers.

Notation used in docstrings::

    <n,d>       permutations of 1..n with d descents
    <n,d>_k     ... that also begin with k
    <n,d>^k     ... that also end with k
    <n,d>_k^l   ... that begin with k and end with l

>>> eulerian(4, 1)
11
>>> [refined_first(4, 1, k) for k in range(1, 5)]
[4, 4, 2, 1]
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import InvalidArgument

__all__ = [
    "METHODS", "RefinedTable", "EulerRow",
    "binom", "eulerian", "euler_row", "refined_first", "refined_last",
    "refined_table", "both_ends", "f_window",
]

METHODS = ("closed_form", "rec1", "rec2", "rec3")


def binom(n: int, k: int) -> int:
    """Binomial coefficient that is 0 whenever k < 0 or k > n (n >= 0)."""
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def _check_n(n):
    if not isinstance(n, int) or n < 1:
        raise InvalidArgument(f"n must be a positive integer, got {n!r}")


def _check_k(n, k):
    if not 1 <= k <= n:
        raise InvalidArgument(f"k must lie in [1, {n}], got {k}")


def _eulerian_sum(n: int, d: int) -> int:
    # the alternating sum itself, with no range shortcut
    return sum((-1) ** (d - j) * binom(n + 1, d - j) * (j + 1) ** n
               for j in range(0, d + 1))


def _refined_sum(n: int, d: int, k: int) -> int:
    # Python evaluates 0 ** 0 as 1, which is the convention required here
    return sum((-1) ** (d - j) * binom(n, d - j) * j ** (k - 1) * (j + 1) ** (n - k)
               for j in range(0, d + 1))


def eulerian(n: int, d: int) -> int:
    """Number of permutations of ``1..n`` with exactly ``d`` descents.

    Any integer ``d`` is accepted; values outside ``[0, n-1]`` give 0.
    """
    _check_n(n)
    if d < 0 or d >= n:
        return 0
    return _eulerian_sum(n, d)


def refined_first(n: int, d: int, k: int) -> int:
    """``<n,d>_k``: permutations with ``d`` descents beginning with ``k``."""
    _check_n(n)
    _check_k(n, k)
    if d < 0 or d >= n:
        return 0
    return _refined_sum(n, d, k)


def refined_last(n: int, d: int, k: int) -> int:
    """``<n,d>^k``: permutations with ``d`` descents ending with ``k``.

    Reversing positions swaps ascents and descents and moves the last
    value to the front, so ``<n,d>^k = <n,n-1-d>_k``.
    """
    _check_n(n)
    _check_k(n, k)
    return refined_first(n, n - 1 - d, k)


@dataclass(frozen=True)
class RefinedTable:
    """The matrix ``<n,d>_k`` for ``0 <= d <= n-1`` and ``1 <= k <= n``.

    ``counts[d][k - 1]`` holds ``<n,d>_k``.
    """
    n: int
    counts: tuple[tuple[int, ...], ...]
    method: str

    def count(self, d: int, k: int) -> int:
        """Entry ``<n,d>_k``, or 0 when ``(d, k)`` is outside the table."""
        if 0 <= d < self.n and 1 <= k <= self.n:
            return self.counts[d][k - 1]
        return 0

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.counts)

    def column_sums(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.counts))

    def column(self, k: int) -> tuple[int, ...]:
        return tuple(row[k - 1] for row in self.counts)

    def same_counts(self, other: "RefinedTable") -> bool:
        return self.n == other.n and self.counts == other.counts


@dataclass(frozen=True)
class EulerRow:
    n: int
    row: tuple[int, ...]


def euler_row(n: int) -> EulerRow:
    _check_n(n)
    return EulerRow(n, tuple(eulerian(n, d) for d in range(n)))


def _freeze(rows):
    return tuple(tuple(r) for r in rows)


def _table_closed_form(n):
    return _freeze([[_refined_sum(n, d, k) for k in range(1, n + 1)] for d in range(n)])


def _rec1_step(n, prev):
    # <n,d>_k = sum_{l=1}^{n-1} <n-1, d - [l<k]>_l
    rows = []
    for d in range(n):
        row = []
        for k in range(1, n + 1):
            row.append(sum(prev.count(d - 1 if l < k else d, l) for l in range(1, n)))
        rows.append(row)
    return _freeze(rows)


def _rec2_step(n, prev):
    # sweep k upward from <n,d>_1 = <n-1,d>, using
    # <n,d>_{k+1} = <n,d>_k - <n-1,d>_k + <n-1,d-1>_k   for 1 <= k <= n-1
    sums = prev.row_sums()
    rows = []
    for d in range(n):
        row = [sums[d] if d < n - 1 else 0]
        for k in range(1, n):
            row.append(row[-1] - prev.count(d, k) + prev.count(d - 1, k))
        rows.append(row)
    return _freeze(rows)


def _rec3_step(n, prev):
    # insert n into a permutation of n-1 letters beginning with k (k < n);
    # the k = n column is <n-1, d-1>
    sums = prev.row_sums()
    rows = []
    for d in range(n):
        row = [(n - d - 1) * prev.count(d - 1, k) + (d + 1) * prev.count(d, k)
               for k in range(1, n)]
        row.append(sums[d - 1] if d >= 1 else 0)
        rows.append(row)
    return _freeze(rows)


_STEPS = {"rec1": _rec1_step, "rec2": _rec2_step, "rec3": _rec3_step}


@lru_cache(maxsize=None)
def _cached_counts(n, method):
    if method == "closed_form":
        return _table_closed_form(n)
    if n == 1:
        return ((1,),)
    prev = RefinedTable(n - 1, _cached_counts(n - 1, method), method)
    return _STEPS[method](n, prev)


def refined_table(n: int, method: str = "rec3") -> RefinedTable:
    """Full ``(d, k)`` table of refined Eulerian numbers for one ``n``.

    ``method`` picks the construction: ``"closed_form"`` evaluates the
    alternating binomial sum cell by cell; ``"rec1"``, ``"rec2"`` and
    ``"rec3"`` build row ``n`` from row ``n-1`` by the second-letter split,
    the swap of ``k`` with ``k+1``, and insertion of the letter ``n``.
    All four produce the same table. Results are cached per
    ``(n, method)``.
    """
    _check_n(n)
    if method not in METHODS:
        raise InvalidArgument(f"unknown method {method!r}; expected one of {METHODS}")
    if method != "closed_form":
        # warm the cache bottom-up so deep n never recurses far
        for m in range(1, n):
            _cached_counts(m, method)
    return RefinedTable(n, _cached_counts(n, method), method)


def both_ends(n: int, d: int, k: int, l: int) -> int:
    """``<n,d>_k^l``: permutations with ``d`` descents, first value ``k``, last ``l``.

    Repeated rollback (subtract one from every value, 1 wraps to n) moves a
    permutation of this kind onto one that starts or ends with ``n``, and
    deleting ``n`` gives::

        <n,d>_k^{k+m} = <n-1,d>^m        <n,d>_{l+m}^l = <n-1,d-1>_m
    """
    _check_n(n)
    if n == 1:
        raise InvalidArgument("both_ends needs n >= 2")
    _check_k(n, k)
    _check_k(n, l)
    if k == l:
        return 0
    if l > k:
        return refined_last(n - 1, d, l - k)
    return refined_first(n - 1, d - 1, k - l)


def f_window(n: int, x: int) -> int:
    """Lay the rows ``<n,d>_n, ..., <n,d>_1`` end to end along the integers.

    ``f_window(n, n*d - k) == <n,d>_k``; positions that do not correspond
    to a cell of the table give 0.
    """
    _check_n(n)
    q = x // n
    d = q + 1
    k = n * q + n - x
    if 0 <= d <= n - 1 and 1 <= k <= n:
        return refined_first(n, d, k)
    return 0
