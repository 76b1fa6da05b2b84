"""
Generating functions for refined Eulerian numbers.

Exact work uses truncated power series in ``x, y, z`` with Fraction
coefficients. Floating point appears only in :func:`gfall_numeric_check`,
which compares a truncated triple sum to the closed-form integral.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from .errors import ConsistencyError, DomainError, InvalidArgument
from .exact_core import binom, refined_first, refined_table
from .poly import Poly

__all__ = [
    "GUARD", "TriSeries",
    "gf_nk", "gf_nd", "gf_n", "a_poly", "egf_A",
    "b_series", "pde_check",
    "adaptive_simpson", "b_series_value", "gfall_closed_form", "gfall_numeric_check",
]

GUARD = 5


class TriSeries:
    """Truncated power series in ``x, y, z``.

    ``orders = (X, Y, Z)`` keeps monomials ``x^a y^b z^c`` with
    ``a <= X, b <= Y, c <= Z``. Coefficients live in a dict keyed by
    ``(a, b, c)``; zeros are not stored.
    """

    __slots__ = ("orders", "coeffs")

    def __init__(self, orders, coeffs=None):
        self.orders = tuple(orders)
        X, Y, Z = self.orders
        self.coeffs = {}
        for key, c in (coeffs or {}).items():
            a, b, cz = key
            if c and a <= X and b <= Y and cz <= Z:
                self.coeffs[key] = Fraction(c)

    def __getitem__(self, key) -> Fraction:
        return self.coeffs.get(tuple(key), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, TriSeries):
            return NotImplemented
        return self.orders == other.orders and self.coeffs == other.coeffs

    def __repr__(self):
        return f"TriSeries(orders={self.orders}, terms={len(self.coeffs)})"

    def _common(self, other):
        return tuple(min(p, q) for p, q in zip(self.orders, other.orders))

    def restrict(self, orders) -> "TriSeries":
        return TriSeries(orders, self.coeffs)

    def __add__(self, other: "TriSeries") -> "TriSeries":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return TriSeries(self._common(other), out)

    def __neg__(self):
        return TriSeries(self.orders, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "TriSeries":
        return TriSeries(self.orders, {k: c * s for k, c in self.coeffs.items()})

    def __mul__(self, other: "TriSeries") -> "TriSeries":
        X, Y, Z = orders = self._common(other)
        out: dict = {}
        for (a1, b1, c1), u in self.coeffs.items():
            for (a2, b2, c2), v in other.coeffs.items():
                a, b, c = a1 + a2, b1 + b2, c1 + c2
                if a <= X and b <= Y and c <= Z:
                    out[a, b, c] = out.get((a, b, c), 0) + u * v
        return TriSeries(orders, out)

    def times_monomial(self, a: int, b: int, c: int) -> "TriSeries":
        return TriSeries(self.orders, {(i + a, j + b, k + c): v
                                       for (i, j, k), v in self.coeffs.items()})

    def dz(self) -> "TriSeries":
        """Partial derivative in ``z``; the z-order drops by one."""
        X, Y, Z = self.orders
        return TriSeries((X, Y, Z - 1), {(a, b, c - 1): c * v
                                         for (a, b, c), v in self.coeffs.items() if c > 0})

    @classmethod
    def from_poly_xyz(cls, orders, terms) -> "TriSeries":
        """Build from an iterable of ``((a, b, c), coefficient)``."""
        out: dict = {}
        for key, v in terms:
            out[key] = out.get(key, 0) + v
        return cls(orders, out)


def _guarded_product(series: Poly, power: int, keep: int, guard_top: int, what: str) -> Poly:
    # (1-x)^power * (truncated series); coefficients keep+1 .. guard_top must vanish
    prod = Poly([1, -1]) ** power * series
    stray = [i for i in range(keep + 1, guard_top + 1) if prod[i] != 0]
    if stray:
        raise ConsistencyError(f"{what}: guard coefficients {stray} did not vanish")
    return prod.truncate(keep)


def gf_nk(n: int, k: int, guard: int = GUARD) -> Poly:
    """``sum_d <n,d>_k x^d``, from ``(1-x)^n sum_j j^(k-1) (j+1)^(n-k) x^j``.

    The infinite sum is cut at ``j = n - 1 + guard``; the product must then
    be zero in degrees ``n .. n - 1 + guard``, which is checked.
    """
    if not 1 <= k <= n:
        raise InvalidArgument(f"need 1 <= k <= n, got n={n}, k={k}")
    top = n - 1 + guard
    s = Poly(j ** (k - 1) * (j + 1) ** (n - k) for j in range(top + 1))
    return _guarded_product(s, n, n - 1, top, f"gf_nk({n}, {k})")


def gf_nd(n: int, d: int) -> Poly:
    """``sum_k <n,d>_k y^k`` as a polynomial in ``y``.

    Uses ``y sum_j (-1)^(d-j) C(n, d-j) ((j+1)^n - (jy)^n) / (j+1-jy)``
    with the quotient expanded as a finite geometric sum.
    """
    if n < 1:
        raise InvalidArgument("n must be positive")
    coeffs = [0] * (n + 1)
    for j in range(max(d, -1) + 1):
        w = (-1) ** (d - j) * binom(n, d - j)
        if not w:
            continue
        for i in range(n):
            coeffs[i + 1] += w * (j + 1) ** (n - 1 - i) * j ** i
    return Poly(coeffs)


def gf_n(n: int, guard: int = GUARD) -> dict[tuple[int, int], int]:
    """``sum_{d,k} <n,d>_k x^d y^k`` as ``{(d, k): coefficient}`` (nonzero only).

    Expands ``(1-x)^n y sum_j x^j ((j+1)^n - (jy)^n) / (j+1-jy)`` as a
    truncated series in ``x`` with the same guard check as :func:`gf_nk`.
    """
    if n < 1:
        raise InvalidArgument("n must be positive")
    top = n - 1 + guard
    orders = (top, n, 0)
    s = TriSeries.from_poly_xyz(orders, (
        ((j, i + 1, 0), (j + 1) ** (n - 1 - i) * j ** i)
        for j in range(top + 1) for i in range(n)))
    factor = TriSeries(orders, {(i, 0, 0): binom(n, i) * (-1) ** i for i in range(n + 1)})
    prod = factor * s
    stray = [key for key in prod.coeffs if key[0] >= n]
    if stray:
        raise ConsistencyError(f"gf_n({n}): guard coefficients {sorted(stray)} did not vanish")
    return {(a, b): int(v) for (a, b, _), v in sorted(prod.coeffs.items())}


def a_poly(n: int, guard: int = GUARD) -> Poly:
    """``a_n(x) = sum_d <n,d> x^(d+1)``, from ``(1-x)^(n+1) sum_j j^n x^j``."""
    if n < 1:
        raise InvalidArgument("n must be positive")
    top = n + guard
    s = Poly(j ** n for j in range(top + 1))
    return _guarded_product(s, n + 1, n, top, f"a_poly({n})")


def egf_A(x_order: int, z_order: int) -> TriSeries:
    """``A(x, z) = sum_{n>=1} a_n(x) z^n / n!``, truncated.

    The ``n = 0`` term is left out. The result is a :class:`TriSeries`
    with y-order 0.
    """
    if x_order < 1 or z_order < 1:
        raise InvalidArgument("orders must be >= 1")
    out = {}
    for n in range(1, z_order + 1):
        a = a_poly(n)
        f = math.factorial(n)
        for i, c in enumerate(a):
            if c:
                out[i, 0, n] = c / f
    return TriSeries((x_order, 0, z_order), out)


CountFn = Callable[[int, int, int], int]


def b_series(x_order: int, y_order: int, z_order: int,
             counts: CountFn | None = None) -> TriSeries:
    """``B = sum <n,d>_k x^d y^k z^n / n!`` over ``n >= 1``, truncated.

    ``counts(n, d, k)`` supplies the entries; it defaults to the exact
    tables and exists so callers can feed in altered data.
    """
    out = {}
    for n in range(1, z_order + 1):
        if counts is None:
            t = refined_table(n)
            get = lambda d, k, t=t: t.counts[d][k - 1]
        else:
            get = lambda d, k, n=n: counts(n, d, k)
        f = math.factorial(n)
        for d in range(min(n - 1, x_order) + 1):
            for k in range(1, min(n, y_order) + 1):
                c = get(d, k)
                if c:
                    out[d, k, n] = Fraction(c, f)
    return TriSeries((x_order, y_order, z_order), out)


def pde_check(x_order: int, y_order: int, z_order: int,
              counts: CountFn | None = None) -> bool:
    """Verify coefficientwise that

        (1/y - 1) dB/dz + (1 - x) B = (1 - y) + A(x, z)/x - y A(x, yz)

    on every monomial the truncation determines. Both sides are multiplied
    by ``xy`` first so that all terms are polynomial.
    """
    if z_order < 1:
        raise InvalidArgument("z_order must be >= 1 to compare any coefficient")
    if x_order < 0 or y_order < 0:
        raise InvalidArgument("orders must be non-negative")
    X, Y, Z = x_order, y_order, z_order
    win = (X, Y, Z - 1)
    B = b_series(X, Y, Z, counts)
    # x(1-y) B_z + xy(1-x) B
    Bz = B.dz()
    lhs = (Bz.times_monomial(1, 0, 0) - Bz.times_monomial(1, 1, 0)
           + B.times_monomial(1, 1, 0) - B.times_monomial(2, 1, 0)).restrict(win)
    # xy(1-y) + y A(x,z) - x y^2 A(x,yz)
    A = egf_A(max(X, 1), Z)
    const = TriSeries(win, {(1, 1, 0): 1, (1, 2, 0): -1})
    yA = TriSeries(win, {(a, 1, c): v for (a, _, c), v in A.coeffs.items()})
    xy2A_yz = TriSeries(win, {(a + 1, c + 2, c): v for (a, _, c), v in A.coeffs.items()})
    rhs = const + yA - xy2A_yz
    return lhs.restrict(win) == rhs.restrict(win)


def adaptive_simpson(f: Callable[[float], float], a: float, b: float, tol: float,
                     max_depth: int = 50) -> float:
    """Integrate ``f`` over ``[a, b]`` (either orientation) by adaptive Simpson."""
    if a == b:
        return 0.0

    def simpson(fa, fm, fb, a, b):
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def rec(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, a, m)
        right = simpson(fm, frm, fb, m, b)
        delta = left + right - whole
        if depth <= 0 or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        return (rec(a, m, fa, flm, fm, left, tol / 2, depth - 1)
                + rec(m, b, fm, frm, fb, right, tol / 2, depth - 1))

    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    return rec(a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, max_depth)


def b_series_value(x: float, y: float, z: float, n_max: int) -> float:
    """Float value of ``B(x, y, z)`` summed over ``1 <= n <= n_max``."""
    terms = []
    for n in range(1, n_max + 1):
        t = refined_table(n)
        scale = z ** n / math.factorial(n)
        for d, row in enumerate(t.counts):
            for k, c in enumerate(row, 1):
                if c:
                    terms.append(c * scale * x ** d * y ** k)
    return math.fsum(terms)


def _check_domain(x, y):
    if not (0 < abs(x) < 1):
        raise DomainError(f"need 0 < |x| < 1, got x={x}")
    if not (0 < y < 1):
        raise DomainError(f"need 0 < y < 1, got y={y}")


def gfall_closed_form(x: float, y: float, z: float, tol: float = 1e-9) -> float:
    """``(1/theta) * integral_theta^(theta^y) dt / (x - t^(1 - 1/y))`` with
    ``theta = exp(z (1 - x) / (1/y - 1))``."""
    _check_domain(x, y)
    alpha = (1 - x) / (1 / y - 1)
    theta = math.exp(alpha * z)
    lo, hi = theta, theta ** y
    e = 1 - 1 / y

    def denom(t):
        return x - t ** e

    # t^e is monotone in t, so the denominator's extremes sit at the endpoints
    da, db = denom(lo), denom(hi)
    if da * db <= 0 or min(abs(da), abs(db)) < 1e-8:
        raise DomainError(f"integrand is singular on [{lo}, {hi}] (x={x}, y={y}, z={z})")
    return adaptive_simpson(lambda t: 1.0 / denom(t), lo, hi, tol) / theta


def gfall_numeric_check(x: float, y: float, z: float, n_max: int, tol: float) -> float:
    """Absolute difference between the truncated triple sum and the closed form.

    Refuses when the tail beyond ``z^n_max`` could exceed ``tol/10``:
    each order-``n`` block is at most ``|z|^n`` in size because
    ``|x|, |y| < 1`` and there are ``n!`` permutations.
    """
    _check_domain(x, y)
    if not abs(z) < 1:
        raise DomainError(f"need |z| < 1 to bound the truncation, got z={z}")
    tail = abs(z) ** (n_max + 1) / (1 - abs(z))
    if tail >= tol / 10:
        raise DomainError(f"truncation at n_max={n_max} leaves tail bound {tail:.3g} >= tol/10")
    series = b_series_value(x, y, z, n_max)
    closed = gfall_closed_form(x, y, z, tol / 10)
    return abs(series - closed)
