"""
Named verification suites.

Each check takes ``nmax`` and returns a list of failure records; an empty
list means the identity held everywhere it was tested. A record names the
identity and the indices of the offending case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable

from . import exact_core as core
from . import moments, oracle, real_roots, series, stein

MAX_RECORDED = 20


@dataclass
class CheckResult:
    name: str
    failures: list = field(default_factory=list)
    cases: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, identity, **witness):
        if len(self.failures) < MAX_RECORDED:
            self.failures.append({"identity": identity, "witness": witness})

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "cases": self.cases,
                "failures": self.failures}


# core

def four_method_agreement(nmax):
    r = CheckResult("four_method_agreement")
    for n in range(1, nmax + 1):
        ref = core.refined_table(n, "closed_form")
        for m in core.METHODS[1:]:
            r.cases += 1
            t = core.refined_table(n, m)
            if t.counts != ref.counts:
                r.fail("closed_form == " + m, n=n)
    return r


def oracle_marginals(nmax):
    r = CheckResult("oracle_marginals")
    for n in range(1, min(nmax, oracle.DEFAULT_CAP) + 1):
        j = oracle.enumerate_joint(n)
        t = core.refined_table(n, "closed_form")
        r.cases += 1
        if j.total() != factorial(n):
            r.fail("total mass n!", n=n)
        if j.first_counts() != t.counts:
            r.fail("first-value marginal == table", n=n)
        last = tuple(tuple(core.refined_last(n, d, k) for k in range(1, n + 1)) for d in range(n))
        if j.last_counts() != last:
            r.fail("last-value marginal == refined_last", n=n)
        if j.euler_row() != core.euler_row(n).row:
            r.fail("descent marginal == Eulerian row", n=n)
    return r


def basic_identities(nmax):
    r = CheckResult("basic_identities")
    for n in range(1, nmax + 1):
        t = core.refined_table(n)
        fact = factorial(n - 1)
        prev = core.euler_row(n - 1).row if n > 1 else None
        row = core.euler_row(n).row
        for d in range(n):
            r.cases += 1
            if n > 1:
                if t.count(d, 1) != (prev[d] if d < n - 1 else 0):
                    r.fail("<n,d>_1 = <n-1,d>", n=n, d=d)
                if t.count(d, n) != (prev[d - 1] if d >= 1 else 0):
                    r.fail("<n,d>_n = <n-1,d-1>", n=n, d=d)
            if t.row_sums()[d] != row[d]:
                r.fail("sum_k <n,d>_k = <n,d>", n=n, d=d)
            if row[d] != row[n - 1 - d]:
                r.fail("<n,d> = <n,n-1-d>", n=n, d=d)
            for k in range(1, n + 1):
                a = t.count(d, k)
                if not (a == t.count(n - 1 - d, n + 1 - k) == core.refined_last(n, n - 1 - d, k)
                        == core.refined_last(n, d, n + 1 - k)):
                    r.fail("reversal symmetries", n=n, d=d, k=k)
        for k, s in enumerate(t.column_sums(), 1):
            if s != fact:
                r.fail("sum_d <n,d>_k = (n-1)!", n=n, k=k)
    return r


def both_ends_oracle(nmax):
    r = CheckResult("both_ends_oracle")
    for n in range(2, min(nmax, oracle.DEFAULT_CAP) + 1):
        j = oracle.enumerate_joint(n)
        for d in range(n):
            for k in range(1, n + 1):
                for l in range(1, n + 1):
                    r.cases += 1
                    if core.both_ends(n, d, k, l) != j.count(d, k, l):
                        r.fail("both_ends == enumeration", n=n, d=d, k=k, l=l)
            if sum(core.both_ends(n, d, k, l) for k in range(1, n + 1)
                   for l in range(1, n + 1)) != core.eulerian(n, d):
                r.fail("endpoint partition", n=n, d=d)
    return r


def window_sum(nmax, source="closed_form"):
    """``<n+1,d>_k = sum_{i<n} f_n(nd - k - i)``; ``source="oracle"`` takes both
    sides from exhaustive counts instead of the formula."""
    r = CheckResult(f"window_sum[{source}]")
    for n in range(1, nmax):
        if source == "oracle":
            small = oracle.first_counts_by_dp(n)
            big = oracle.first_counts_by_dp(n + 1)

            def f(x, n=n, small=small):
                q = x // n
                d, k = q + 1, n * q + n - x
                return small[d][k - 1] if 0 <= d < n and 1 <= k <= n else 0
        else:
            big = core.refined_table(n + 1, "closed_form").counts

            def f(x, n=n):
                return core.f_window(n, x)
        for d in range(n + 1):
            for k in range(1, n + 2):
                r.cases += 1
                if big[d][k - 1] != sum(f(n * d - k - i) for i in range(n)):
                    r.fail("window sum", n=n, d=d, k=k)
    return r


# moments

def expectations(nmax):
    r = CheckResult("expected_first_last")
    for n in range(1, nmax + 1):
        for d in range(n):
            r.cases += 1
            try:
                moments.expected_first(n, d)
                moments.expected_last(n, d)
            except Exception as exc:  # ConsistencyError carries the mismatch
                r.fail(str(exc), n=n, d=d)
    return r


def moment_consistency(nmax, mmax=4):
    r = CheckResult("moment_consistency")
    for n in range(1, nmax + 1):
        for d in range(n):
            for m in range(mmax + 1):
                r.cases += 1
                if moments.rising_moment(n, d, m) != moments.rising_moment_direct(n, d, m):
                    r.fail("closed moment == direct sum", n=n, d=d, m=m)
    return r


def lattice_paths(nmax, mmax=5):
    r = CheckResult("lattice_path_identity")
    from math import comb
    for m in range(mmax + 1):
        for n in range(1, nmax + 1):
            for l in range(n):
                r.cases += 1
                tally = moments.paths_by_crossing_height(m, n, l)
                expect = {h: comb(h + m, h) * core.binom(n - 1 - h, l - h) for h in range(l + 1)}
                expect = {h: c for h, c in expect.items() if c}
                if tally != expect or moments.lattice_path_sum(m, n, l) != comb(m + n, l):
                    r.fail("crossing-height split", m=m, n=n, l=l)
    return r


def unimodality(nmax):
    r = CheckResult("unimodality")
    for n in range(1, nmax + 1):
        for d in range(n):
            r.cases += 1
            v = moments.unimodal_case(n, d)
            if not v.holds:
                r.fail("case " + v.case, n=n, d=d)
    return r


def geometric_decrease(nmax=None, sizes=(16, 32, 64), ds=(1, 2, 3)):
    r = CheckResult("geometric_decrease")
    for d in ds:
        for fn in (moments.geometric_ratio_sup, moments.tvd_geometric):
            vals = [fn(n, d) for n in sizes]
            r.cases += 1
            if not all(a > b for a, b in zip(vals, vals[1:])):
                r.fail(fn.__name__ + " decreasing", d=d)
    return r


# roots

def tower_consistency(nmax):
    r = CheckResult("tower_consistency")
    for n in range(1, nmax + 1):
        for u in range(n):
            v = n - 1 - u
            r.cases += 1
            h = real_roots.h_numerator(u, v)
            c = real_roots.c_poly(u, v)
            if h.numerator != c or h.pole_order != n:
                r.fail("operator tower == table column", u=u, v=v)
            deg = u if v == 0 else u + v - 1
            if c.degree != deg:
                r.fail("degree rule", u=u, v=v)
            if c.multiplicity_at_zero() != (0 if u == 0 else 1):
                r.fail("order of vanishing at 0", u=u, v=v)
    return r


def first_fixed_verdicts(nmax):
    r = CheckResult("first_fixed_verdicts")
    for n in range(1, nmax + 1):
        for k in range(1, n + 1):
            r.cases += 1
            if not real_roots.check_neggers_first_fixed(n, k).verdict:
                r.fail("distinct real roots", n=n, k=k)
    return r


def both_fixed_verdicts(nmax):
    r = CheckResult("both_fixed_verdicts")
    for n in range(2, nmax + 1):
        for k in range(1, n + 1):
            for l in range(1, n + 1):
                if k == l:
                    continue
                r.cases += 1
                if not real_roots.check_neggers_both_fixed(n, k, l).verdict:
                    r.fail("distinct real roots", n=n, k=k, l=l)
    return r


def tower_steps(nmax):
    """Distinct single operator steps of the tower with ``u + v + 1 <= nmax``."""
    steps = []
    for v in range(nmax - 1):
        steps.append(((0, v), (0, v + 1), "Dx"))
    for n in range(1, nmax):
        for u in range(n):
            v = n - 1 - u
            steps.append(((u, v), (u + 1, v), "xD"))
    return steps


def interlacing(nmax):
    r = CheckResult("interlacing")
    for (u0, v0), (u1, v1), op in tower_steps(nmax):
        r.cases += 1
        parent = real_roots.h_numerator(u0, v0)
        child = real_roots.h_numerator(u1, v1)
        if not real_roots.check_step_interlacing(parent, child, op):
            r.fail("interlacing " + op, u=u0, v=v0)
    return r


# generating functions

def gf_tables(nmax):
    r = CheckResult("gf_tables")
    for n in range(1, nmax + 1):
        t = core.refined_table(n)
        r.cases += 1
        for k in range(1, n + 1):
            if series.gf_nk(n, k) != series.Poly(t.column(k)):
                r.fail("gf_nk", n=n, k=k)
        for d in range(n):
            if series.gf_nd(n, d) != series.Poly((0,) + t.counts[d]):
                r.fail("gf_nd", n=n, d=d)
        full = {(d, k): c for d, row in enumerate(t.counts) for k, c in enumerate(row, 1) if c}
        if series.gf_n(n) != full:
            r.fail("gf_n", n=n)
        if series.a_poly(n) != series.Poly((0,) + core.euler_row(n).row):
            r.fail("a_n", n=n)
    return r


def pde(nmax=None, orders=(8, 9, 8)):
    r = CheckResult("pde")
    r.cases = 1
    if not series.pde_check(*orders):
        r.fail("generating-function PDE", orders=list(orders))
    return r


PROBES = ((0.3, 0.5, 0.2), (-0.5, 0.3, 0.15), (0.7, 0.8, -0.25))


def gfall_numeric(nmax=None, n_max=18, tol=1e-6):
    r = CheckResult("gfall_numeric")
    for x, y, z in PROBES:
        r.cases += 1
        res = series.gfall_numeric_check(x, y, z, n_max, tol)
        if not res < tol:
            r.fail("closed form vs truncated sum", x=x, y=y, z=z, residual=res)
    return r


# stein

def exchangeability(nmax):
    r = CheckResult("exchangeability")
    for n in range(2, min(nmax, stein.EXACT_CAP) + 1):
        r.cases += 1
        m = stein.exact_joint_dd(n)
        if not (m == m.T).all():
            r.fail("joint (D, D*) symmetric", n=n)
        if int(m.sum()) != factorial(n) * n * (n - 1) // 2:
            r.fail("total mass", n=n)
    return r


def drift_identity(nmax):
    r = CheckResult("drift_identity")
    for n in range(2, min(nmax, stein.EXACT_CAP) + 1):
        for d in range(n):
            r.cases += 1
            try:
                stein.exact_drift(n, d)
            except Exception as exc:
                r.fail(str(exc), n=n, d=d)
        try:
            stein.lambda_of(n)
        except Exception as exc:
            r.fail(str(exc), n=n)
    return r


def telescoping(nmax):
    r = CheckResult("telescoping")
    for n in range(2, min(nmax, 7) + 1):
        for p in oracle.permutation_array(n):
            p = tuple(int(v) for v in p)
            r.cases += 1
            s = sum((stein.per_position_drift(p, i) for i in range(1, n)), Fraction(0))
            if not s == stein.telescoped_drift(p) == stein.enumerated_drift(p):
                r.fail("per-position drifts telescope", perm=list(p))
    return r


SUITES: dict[str, list[Callable]] = {
    "core": [four_method_agreement, oracle_marginals, basic_identities, both_ends_oracle,
             window_sum],
    "moments": [expectations, moment_consistency, lattice_paths, unimodality, geometric_decrease],
    "roots": [tower_consistency, first_fixed_verdicts, both_fixed_verdicts, interlacing],
    "gf": [gf_tables, pde, gfall_numeric],
    "stein": [exchangeability, drift_identity, telescoping],
}
SUITES["all"] = [c for name in ("core", "moments", "roots", "gf", "stein") for c in SUITES[name]]


def run_suite(name: str, nmax: int) -> list[CheckResult]:
    return [check(nmax) for check in SUITES[name]]
