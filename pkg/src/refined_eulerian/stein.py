"""
The random-transposition exchangeable pair for the descent count.

``pi`` is uniform on S_n and ``tau`` is a uniform transposition, applied
to values: ``tau pi`` swaps two values wherever they sit. ``D = Des(pi)``
and ``D* = Des(tau pi)``. Exact results come from full enumeration at
small ``n``; larger ``n`` is handled by seeded Monte Carlo.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, InvalidArgument, ResourceLimitError, UndefinedDistribution
from .exact_core import eulerian
from .moments import des_mean_var
from .oracle import descent_count, descents_of_array, permutation_array

__all__ = [
    "EXACT_CAP", "MIN_ACCEPTANCE", "DriftReport",
    "uniform_perm", "uniform_transposition", "apply_transposition",
    "exact_joint_dd", "exact_drift", "drift_formula",
    "per_position_drift", "telescoped_drift", "enumerated_drift",
    "mc_drift", "lambda_of",
]

EXACT_CAP = 8
MIN_ACCEPTANCE = 1e-4
BATCH = 8192


def uniform_perm(rng: np.random.Generator, n: int) -> tuple[int, ...]:
    """Uniform permutation of ``1..n`` by Fisher-Yates on ``rng``."""
    if n < 1:
        raise InvalidArgument("n must be positive")
    a = list(range(1, n + 1))
    for i in range(n - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        a[i], a[j] = a[j], a[i]
    return tuple(a)


def uniform_transposition(rng: np.random.Generator, n: int) -> tuple[int, ...]:
    """A transposition of ``1..n`` in one-line form, uniform over all C(n, 2)."""
    if n < 2:
        raise InvalidArgument("transpositions need n >= 2")
    i, j = _pair_from_index(int(rng.integers(0, n * (n - 1) // 2)), n)
    img = list(range(1, n + 1))
    img[i - 1], img[j - 1] = j, i
    return tuple(img)


def _pair_from_index(idx: int, n: int) -> tuple[int, int]:
    # idx in [0, C(n,2)) -> (i, j) with 1 <= i < j <= n
    i = 1
    row = n - 1
    while idx >= row:
        idx -= row
        i += 1
        row -= 1
    return i, i + 1 + idx


def apply_transposition(p: Sequence[int], a: int, b: int) -> tuple[int, ...]:
    """``tau p`` for the transposition of values ``a`` and ``b``."""
    return tuple(b if v == a else a if v == b else v for v in p)


def _check_exact(n):
    if n < 2:
        raise InvalidArgument("need n >= 2")
    if n > EXACT_CAP:
        raise ResourceLimitError("exact enumeration of (pi, tau) pairs", n, EXACT_CAP)


def exact_joint_dd(n: int) -> np.ndarray:
    """``M[a, b]`` = number of pairs ``(pi, tau)`` with ``Des(pi) = a`` and
    ``Des(tau pi) = b``, over all ``n! * C(n, 2)`` pairs."""
    _check_exact(n)
    perms = permutation_array(n)
    d0 = descents_of_array(perms)
    out = np.zeros((n, n), dtype=np.int64)
    for a, b in combinations(range(1, n + 1), 2):
        swapped = np.where(perms == a, b, np.where(perms == b, a, perms))
        d1 = descents_of_array(swapped)
        out += np.bincount(d0 * n + d1, minlength=n * n).reshape(n, n)
    return out


def drift_formula(n: int, d: int) -> Fraction:
    """``(2(n-1) - 4d) / n``."""
    return Fraction(2 * (n - 1) - 4 * d, n)


def exact_drift(n: int, d: int) -> Fraction:
    """E[D* - D | D = d] by enumeration, checked against :func:`drift_formula`."""
    m = exact_joint_dd(n)
    if not 0 <= d < n or m[d].sum() == 0:
        raise UndefinedDistribution(f"no permutation of {n} letters has {d} descents")
    row = m[d]
    num = sum(int(row[b]) * (b - d) for b in range(n))
    val = Fraction(num, int(row.sum()))
    if val != drift_formula(n, d):
        raise ConsistencyError(f"drift at n={n}, d={d}: {val} != {drift_formula(n, d)}")
    return val


def per_position_drift(p: Sequence[int], i: int) -> Fraction:
    """E[D*_i - D_i | pi = p] for the adjacent pair at positions ``i, i+1`` (1-based)."""
    n = len(p)
    if not 1 <= i <= n - 1:
        raise InvalidArgument(f"position must lie in [1, {n - 1}], got {i}")
    a, b = p[i - 1], p[i]
    return Fraction(a - b, math.comb(n, 2)) + Fraction(2 * (1 - 2 * (a > b)), n - 1)


def telescoped_drift(p: Sequence[int]) -> Fraction:
    """``(p(1) - p(n)) / C(n, 2) + 2 - 4 Des(p) / (n - 1)``."""
    n = len(p)
    return Fraction(p[0] - p[-1], math.comb(n, 2)) + 2 - Fraction(4 * descent_count(p), n - 1)


def enumerated_drift(p: Sequence[int]) -> Fraction:
    """E[D* - D | pi = p], averaging over every transposition."""
    n = len(p)
    d = descent_count(p)
    total = sum(descent_count(apply_transposition(p, a, b)) - d
                for a, b in combinations(range(1, n + 1), 2))
    return Fraction(total, math.comb(n, 2))


@dataclass(frozen=True)
class DriftReport:
    n: int
    d: int
    samples: int
    mean: float
    std_error: float
    seed: int
    workers: int
    exact_target: Fraction

    def within(self, k: float = 4.0) -> bool:
        """Is the exact target within ``k`` standard errors of the mean?"""
        return abs(self.mean - float(self.exact_target)) <= k * self.std_error

    def to_dict(self) -> dict:
        out = asdict(self)
        out["exact_target"] = str(self.exact_target)
        return out


def _worker_sums(n, d, count, seed_seq):
    # returns (sum, sum of squares) of D* - D over `count` accepted samples
    rng = np.random.default_rng(seed_seq)
    base = np.arange(1, n + 1, dtype=np.int16)
    npairs = n * (n - 1) // 2
    iu, ju = np.triu_indices(n, k=1)
    s = 0
    s2 = 0
    got = 0
    while got < count:
        perms = rng.permuted(np.broadcast_to(base, (BATCH, n)), axis=1)
        keep = perms[descents_of_array(perms) == d]
        if keep.shape[0] == 0:
            continue
        keep = keep[: count - got]
        idx = rng.integers(0, npairs, size=keep.shape[0])
        a = (iu[idx] + 1).astype(np.int16)[:, None]
        b = (ju[idx] + 1).astype(np.int16)[:, None]
        swapped = np.where(keep == a, b, np.where(keep == b, a, keep))
        diff = descents_of_array(swapped).astype(np.int64) - d
        s += int(diff.sum())
        s2 += int((diff * diff).sum())
        got += keep.shape[0]
    return s, s2


def mc_drift(n: int, d: int, samples: int, seed: int, workers: int = 1) -> DriftReport:
    """Monte Carlo estimate of E[D* - D | D = d].

    ``pi`` is drawn uniformly and kept only when ``Des(pi) = d``. Samples
    are split across ``workers`` streams spawned from ``seed``; each stream
    is independent and the partial sums are combined in stream order, so
    the report depends only on ``(n, d, samples, seed, workers)``.
    """
    if n < 2:
        raise InvalidArgument("need n >= 2")
    if not 0 <= d <= n - 1:
        raise InvalidArgument(f"need 0 <= d <= {n - 1}")
    if samples < 1 or workers < 1:
        raise InvalidArgument("samples and workers must be positive")
    acceptance = eulerian(n, d) / math.factorial(n)
    if acceptance < MIN_ACCEPTANCE:
        raise ResourceLimitError(
            f"rejection sampling accepts {acceptance:.3g} of draws at d={d}; "
            "use exact enumeration instead", n, f"acceptance >= {MIN_ACCEPTANCE}")
    shares = [samples // workers + (1 if w < samples % workers else 0) for w in range(workers)]
    streams = np.random.SeedSequence(seed).spawn(workers)
    jobs = [(n, d, c, ss) for c, ss in zip(shares, streams) if c]
    if workers == 1:
        parts = [_worker_sums(*job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda job: _worker_sums(*job), jobs))
    s = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    mean = s / samples
    if samples > 1:
        var = (s2 - s * s / samples) / (samples - 1)
        se = math.sqrt(max(var, 0.0) / samples)
    else:
        se = float("inf")
    return DriftReport(n, d, samples, mean, se, seed, workers, drift_formula(n, d))


def lambda_of(n: int) -> Fraction:
    """``4 / n``; at ``n <= 8`` also confirms E[W* - W | W] = -(4/n) W exactly.

    With ``W = (D - mu) / sigma`` the identity is equivalent, after
    multiplying through by ``sigma``, to ``E[D* - D | D = d] = -(4/n)(d - mu)``
    for every attainable ``d``, which is what gets compared.
    """
    if n < 1:
        raise InvalidArgument("n must be positive")
    lam = Fraction(4, n)
    if 2 <= n <= EXACT_CAP:
        mu, _ = des_mean_var(n)
        m = exact_joint_dd(n)
        for d in range(n):
            row = m[d]
            tot = int(row.sum())
            if not tot:
                continue
            drift = Fraction(sum(int(row[b]) * (b - d) for b in range(n)), tot)
            if drift != -lam * (d - mu):
                raise ConsistencyError(f"standardized drift fails at n={n}, d={d}")
    return lam
