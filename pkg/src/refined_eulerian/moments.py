"""
Distribution of the first (and last) value of a permutation drawn
uniformly from those with a fixed number of descents.

Everything here is an exact :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import NamedTuple

from .errors import ConsistencyError, InvalidArgument, UndefinedDistribution
from .exact_core import binom, euler_row, eulerian, refined_table

__all__ = [
    "FirstDist", "UnimodalVerdict",
    "rising_factorial", "rising_moment", "rising_moment_direct",
    "lattice_path_sum", "paths_by_crossing_height",
    "expected_first", "expected_last", "first_dist", "last_dist",
    "geometric_ratio_sup", "tvd_geometric", "unimodal_case", "des_mean_var",
]


def rising_factorial(x: int, m: int) -> int:
    """``x (x+1) ... (x+m-1)``; 1 when ``m == 0``."""
    out = 1
    for i in range(m):
        out *= x + i
    return out


def _check_nd(n, d):
    if n < 1:
        raise InvalidArgument(f"n must be positive, got {n}")
    if not 0 <= d <= n - 1:
        raise UndefinedDistribution(f"no permutation of {n} letters has {d} descents")


@dataclass(frozen=True)
class FirstDist:
    """``probs[k-1]`` is P(first value = k | d descents)."""
    n: int
    d: int
    probs: tuple[Fraction, ...]

    def __getitem__(self, k: int) -> Fraction:
        return self.probs[k - 1]


def first_dist(n: int, d: int) -> FirstDist:
    _check_nd(n, d)
    t = refined_table(n)
    total = eulerian(n, d)
    return FirstDist(n, d, tuple(Fraction(c, total) for c in t.counts[d]))


def last_dist(n: int, d: int) -> FirstDist:
    """Same shape as :func:`first_dist`, for the last value."""
    _check_nd(n, d)
    t = refined_table(n)
    total = eulerian(n, d)
    # ending with k and d descents <-> starting with k and n-1-d descents
    return FirstDist(n, d, tuple(Fraction(c, total) for c in t.counts[n - 1 - d]))


def rising_moment(n: int, d: int, m: int) -> Fraction:
    """E[first^(m rising) | d descents], from the closed double sum

        <n,d> mu_m = m! sum_j (-1)^(d-j) C(n, d-j) sum_{l<n} C(m+n, l) j^l
    """
    _check_nd(n, d)
    if m < 0:
        raise InvalidArgument("m must be non-negative")
    total = 0
    for j in range(d + 1):
        inner = sum(comb(m + n, l) * j ** l for l in range(n))
        total += (-1) ** (d - j) * binom(n, d - j) * inner
    return Fraction(factorial(m) * total, eulerian(n, d))


def rising_moment_direct(n: int, d: int, m: int) -> Fraction:
    """Same quantity summed straight over the exact distribution."""
    dist = first_dist(n, d)
    return sum((rising_factorial(k, m) * p for k, p in enumerate(dist.probs, 1)),
               Fraction(0))


def lattice_path_sum(m: int, n: int, l: int) -> int:
    """``sum_r C(r+m, r) C(n-1-r, l-r)``, which should equal ``C(m+n, l)``."""
    return sum(comb(r + m, r) * binom(n - 1 - r, l - r) for r in range(l + 1))


def paths_by_crossing_height(m: int, n: int, l: int) -> dict[int, int]:
    """Enumerate every north/east lattice path from (0, 0) to (m+n-l, l)
    and tally the height at which it crosses the vertical line x = m + 1/2.

    Requires ``0 <= l <= n - 1`` so that the endpoint lies right of the line.
    """
    if not 0 <= l <= n - 1:
        raise InvalidArgument("need 0 <= l <= n - 1")
    steps = m + n
    tally: dict[int, int] = {}
    for north in combinations(range(steps), l):
        north_set = set(north)
        east = height = 0
        for s in range(steps):
            if s in north_set:
                height += 1
            else:
                if east == m:  # this east step goes from x=m to x=m+1
                    break
                east += 1
        tally[height] = tally.get(height, 0) + 1
    return tally


def expected_first(n: int, d: int) -> Fraction:
    """E[first value | d descents], summed from the table. Always ``d + 1``."""
    dist = first_dist(n, d)
    e = sum((k * p for k, p in enumerate(dist.probs, 1)), Fraction(0))
    if e != d + 1:
        raise ConsistencyError(f"E[first | n={n}, d={d}] = {e}, expected {d + 1}")
    return e


def expected_last(n: int, d: int) -> Fraction:
    dist = last_dist(n, d)
    e = sum((k * p for k, p in enumerate(dist.probs, 1)), Fraction(0))
    if e != n - d:
        raise ConsistencyError(f"E[last | n={n}, d={d}] = {e}, expected {n - d}")
    return e


def _geometric_p(n, d):
    if d < 1:
        raise InvalidArgument("geometric comparison needs d >= 1")
    _check_nd(n, d)
    return Fraction(d, d + 1)


def geometric_ratio_sup(n: int, d: int) -> Fraction:
    """``max_k |P(first = k) / ((1-p) p^(k-1)) - 1|`` with ``p = d/(d+1)``."""
    p = _geometric_p(n, d)
    dist = first_dist(n, d)
    best = Fraction(0)
    g = 1 - p
    for prob in dist.probs:
        best = max(best, abs(prob / g - 1))
        g *= p
    return best


def tvd_geometric(n: int, d: int) -> Fraction:
    """Total variation distance from the first-value law to Geometric(1 - p)
    on ``{1, 2, ...}``; the geometric mass ``p^n`` beyond ``n`` counts in full."""
    p = _geometric_p(n, d)
    dist = first_dist(n, d)
    acc = Fraction(0)
    g = 1 - p
    for prob in dist.probs:
        acc += abs(prob - g)
        g *= p
    return (acc + p ** n) / 2


class UnimodalVerdict(NamedTuple):
    case: str
    holds: bool


def _strict_up(s):
    return all(a < b for a, b in zip(s, s[1:]))


def _strict_down(s):
    return all(a > b for a, b in zip(s, s[1:]))


def unimodal_case(n: int, d: int) -> UnimodalVerdict:
    """Classify ``(n, d)`` and check the shape of ``<n,d>_n, ..., <n,d>_1``.

    Cases are tested in the order i, vii, ii..vi; the boundary rows ``d = 0``
    and ``d = n-1`` take precedence where small ``n`` makes the ranges overlap.
    """
    _check_nd(n, d)
    row = refined_table(n).counts[d]
    s = row[::-1]  # s[i] = <n,d>_{n-i}
    if d == 0:
        return UnimodalVerdict("i", all(v == 0 for v in s[:-1]) and s[-1] == 1)
    if d == n - 1:
        return UnimodalVerdict("vii", s[0] == 1 and all(v == 0 for v in s[1:]))
    if 2 * d <= n - 3:
        return UnimodalVerdict("ii", _strict_up(s))
    if n % 2 == 0 and 2 * d == n - 2:
        return UnimodalVerdict("iii", _strict_up(s[:-1]) and s[-2] == s[-1])
    if n % 2 == 1 and 2 * d == n - 1:
        peak = n - (n + 1) // 2  # index of <n,d>_{(n+1)/2}
        return UnimodalVerdict("iv", _strict_up(s[:peak + 1]) and _strict_down(s[peak:]))
    if n % 2 == 0 and 2 * d == n:
        return UnimodalVerdict("v", s[0] == s[1] and _strict_down(s[1:]))
    return UnimodalVerdict("vi", _strict_down(s))


def des_mean_var(n: int) -> tuple[Fraction, Fraction]:
    """Mean ``(n-1)/2`` and variance ``(n+1)/12`` of the descent count.

    For ``n >= 2`` both are recomputed from the Eulerian row and compared.
    At ``n = 1`` the variance formula gives 1/6 while the true variance is
    0, so that case is returned from the formulas without the check.
    """
    if n < 1:
        raise InvalidArgument("n must be positive")
    mean = Fraction(n - 1, 2)
    var = Fraction(n + 1, 12)
    if n >= 2:
        row = euler_row(n).row
        total = factorial(n)
        m1 = Fraction(sum(d * c for d, c in enumerate(row)), total)
        m2 = Fraction(sum(d * d * c for d, c in enumerate(row)), total)
        if (m1, m2 - m1 * m1) != (mean, var):
            raise ConsistencyError(f"descent moments at n={n}: {(m1, m2 - m1 * m1)}")
    return mean, var
