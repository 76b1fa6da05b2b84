"""
Real-rootedness of descent polynomials for the star posets (one element
below, or above, all others) and for the posets that pin both ends.

Root counting is exact: Sturm chains over the rationals, with roots
isolated by bisection when their relative order matters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import ConsistencyError, InvalidArgument, ResourceLimitError
from .exact_core import both_ends, refined_table
from .poly import Poly

__all__ = [
    "C_CAP", "HRep", "RootVerdict",
    "c_poly", "apply_Dx", "apply_xD", "h_numerator", "h_tower",
    "sturm_chain", "sturm_distinct_real_roots", "isolate_real_roots",
    "strictly_interlaced", "check_step_interlacing",
    "check_neggers_first_fixed", "reverse_descent_poly",
    "both_fixed_polynomial", "check_neggers_both_fixed",
]

C_CAP = 40

ONE_MINUS_X = Poly([1, -1])
X = Poly.x()


def c_poly(u: int, v: int, cap: int = C_CAP) -> Poly:
    """Descent polynomial of the permutations of ``1..u+v+1`` that begin with ``u+1``."""
    if u < 0 or v < 0:
        raise InvalidArgument("u and v must be non-negative")
    n = u + v + 1
    if n > cap:
        raise ResourceLimitError("c_poly", n, cap)
    return Poly(refined_table(n).column(u + 1))


@dataclass(frozen=True)
class HRep:
    """The rational function ``numerator / (1 - x) ** pole_order``."""
    numerator: Poly
    pole_order: int


def apply_Dx(h: HRep) -> HRep:
    """``d/dx (x h)``."""
    N, m = h.numerator, h.pole_order
    num = ONE_MINUS_X * (N + X * N.derivative()) + X * N * m
    return HRep(num, m + 1)


def apply_xD(h: HRep) -> HRep:
    """``x d/dx h``."""
    N, m = h.numerator, h.pole_order
    num = X * (ONE_MINUS_X * N.derivative() + N * m)
    return HRep(num, m + 1)


def h_tower(u: int, v: int) -> list[tuple[tuple[int, int], str, HRep]]:
    """Every stage from ``1/(1-x)`` to ``h_{u,v}``: ``v`` steps of ``Dx`` then ``u`` of ``xD``.

    Each entry is ``((u', v'), operator that produced it, HRep)``; the
    first entry has operator ``""``.
    """
    if u < 0 or v < 0:
        raise InvalidArgument("u and v must be non-negative")
    h = HRep(Poly([1]), 1)
    out = [((0, 0), "", h)]
    for j in range(1, v + 1):
        h = apply_Dx(h)
        out.append(((0, j), "Dx", h))
    for i in range(1, u + 1):
        h = apply_xD(h)
        out.append(((i, v), "xD", h))
    return out


def h_numerator(u: int, v: int, cap: int = C_CAP) -> HRep:
    """``h_{u,v} = sum_j j^u (j+1)^v x^j`` written as ``N(x) / (1-x)^(u+v+1)``.

    Built by operators alone; ``N`` should coincide with :func:`c_poly`.
    """
    if u + v + 1 > cap:
        raise ResourceLimitError("h_numerator", u + v + 1, cap)
    h = h_tower(u, v)[-1][2]
    if h.numerator(1) != factorial(u + v):
        raise ConsistencyError(f"h_{{{u},{v}}} numerator at 1 is {h.numerator(1)}")
    return h


@dataclass(frozen=True)
class RootVerdict:
    degree: int
    distinct_real_roots: int
    squarefree: bool
    verdict: bool


def sturm_chain(p: Poly) -> list[Poly]:
    """Sturm sequence of ``p``, each member scaled to a primitive integer polynomial."""
    chain = [p.primitive(), p.derivative().primitive()]
    while not chain[-1].is_zero():
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append((-r).primitive())
    return [q for q in chain if not q.is_zero()]


def _variations(signs) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _var_at(chain, x) -> int:
    return _variations(_sign(q(x)) for q in chain)


def _var_at_inf(chain, positive: bool) -> int:
    return _variations(_sign(q.leading) * (1 if positive or q.degree % 2 == 0 else -1)
                       for q in chain)


def _squarefree_part(p: Poly) -> tuple[Poly, bool]:
    g = p.gcd(p.derivative())
    return (p // g), g.degree == 0


def sturm_distinct_real_roots(p: Poly) -> RootVerdict:
    """Count distinct real roots of ``p`` and decide whether they are all
    real and simple."""
    if p.is_zero():
        raise InvalidArgument("zero polynomial has no finite root count")
    if p.degree == 0:
        return RootVerdict(0, 0, True, True)
    q, squarefree = _squarefree_part(p)
    chain = sturm_chain(q)
    count = _var_at_inf(chain, False) - _var_at_inf(chain, True)
    return RootVerdict(p.degree, count, squarefree, squarefree and count == p.degree)


def _root_bound(p: Poly) -> Fraction:
    lead = abs(p.leading)
    return 1 + max(abs(c) / lead for c in p.coeffs[:-1])


_SPLITS = [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4), Fraction(3, 4),
           Fraction(2, 5), Fraction(3, 5)]


def isolate_real_roots(p: Poly, width: Fraction | None = None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi)``, one per distinct real root, in increasing order.

    Each root lies in ``(lo, hi]``, or equals ``lo == hi`` when bisection
    lands on it exactly. With ``width`` every interval is narrowed below it.
    """
    if p.is_zero():
        raise InvalidArgument("zero polynomial")
    if p.degree == 0:
        return []
    q, _ = _squarefree_part(p)
    chain = sturm_chain(q)
    M = _root_bound(q)
    out: list[tuple[Fraction, Fraction]] = []

    def split(a, b, va, vb):
        c = va - vb
        if c == 0:
            return
        if c == 1:
            out.append((a, b))
            return
        for t in _SPLITS:
            m = a + (b - a) * t
            if q(m) != 0:
                break
        else:  # pragma: no cover - q has more roots than sample points here
            raise ConsistencyError("could not find a non-root bisection point")
        vm = _var_at(chain, m)
        split(a, m, va, vm)
        split(m, b, vm, vb)

    split(-M, M, _var_at(chain, -M), _var_at(chain, M))
    if width is not None:
        out = [_refine(q, lo, hi, width) for lo, hi in out]
    return out


def _refine(q, lo, hi, width):
    slo = _sign(q(lo))
    while hi - lo >= width:
        m = (lo + hi) / 2
        sm = _sign(q(m))
        if sm == 0:
            return m, m
        if sm == slo:
            lo = m
        else:
            hi = m
    return lo, hi


def strictly_interlaced(inner, outer) -> bool:
    """True when the isolating intervals alternate strictly.

    With equal lengths the pattern is ``inner[0] < outer[0] < inner[1] < ...``;
    with ``len(outer) == len(inner) + 1`` it is ``outer[0] < inner[0] < outer[1] < ...``.
    """
    if len(inner) == len(outer):
        seq = [iv for pair in zip(inner, outer) for iv in pair]
    elif len(outer) == len(inner) + 1:
        seq = [iv for pair in zip(outer, inner) for iv in pair] + [outer[-1]]
    else:
        return False
    return all(a[1] < b[0] for a, b in zip(seq, seq[1:]))


def check_step_interlacing(parent: HRep, child: HRep, op: str) -> bool:
    """Check how the roots of one tower stage sit relative to the next.

    For ``Dx`` the child's roots are compared with those of ``x * parent``;
    for ``xD`` the child must vanish to first order at 0 and its other
    roots are compared with the parent's. Between consecutive compared
    roots the child has exactly one root, and it has one more to the left
    of all of them when the function being differentiated tends to 0 at
    infinity. Interval widths shrink until the order is decided.
    """
    if op == "Dx":
        outer_poly, inner_poly, add_zero = parent.numerator, child.numerator, True
        decays = parent.pole_order > parent.numerator.degree + 1
    elif op == "xD":
        c = child.numerator
        if c[0] != 0 or c[1] == 0:
            return False
        outer_poly, inner_poly, add_zero = parent.numerator, c // X, False
        decays = parent.pole_order > parent.numerator.degree
    else:
        raise InvalidArgument(f"unknown operator {op!r}")
    if add_zero and outer_poly(0) == 0:
        return False
    for p in (outer_poly, inner_poly):
        if not sturm_distinct_real_roots(p).verdict:
            return False
    width = Fraction(1, 2 ** 8)
    for _ in range(24):
        outer = isolate_real_roots(outer_poly, width)
        if add_zero:
            outer = sorted(outer + [(Fraction(0), Fraction(0))])
        inner = isolate_real_roots(inner_poly, width)
        if len(inner) != len(outer) - (0 if decays else 1):
            return False
        if strictly_interlaced(inner, outer):
            return True
        width /= 2 ** 8
    return False


def check_neggers_first_fixed(n: int, k: int, cap: int = C_CAP) -> RootVerdict:
    """Verdict for the permutations of ``1..n`` beginning with ``k``."""
    if not 1 <= k <= n:
        raise InvalidArgument(f"need 1 <= k <= n, got n={n}, k={k}")
    return sturm_distinct_real_roots(c_poly(k - 1, n - k, cap))


def reverse_descent_poly(p: Poly, n: int) -> Poly:
    """``x^(n-1) p(1/x)``: the descent polynomial after turning the poset upside down."""
    return p.reversed(n)


def both_fixed_polynomial(n: int, k: int, l: int) -> Poly:
    """``sum_d <n,d>_k^l x^d``."""
    return Poly(both_ends(n, d, k, l) for d in range(n))


def check_neggers_both_fixed(n: int, k: int, l: int) -> RootVerdict:
    """Verdict for the permutations of ``1..n`` that begin with ``k`` and end with ``l``.

    The polynomial reduces to one on ``n-1`` letters: for ``l = k + m``
    it is the ending-with-``m`` polynomial, and for ``k = l + m`` it is
    ``x`` times the beginning-with-``m`` polynomial. The verdict is taken
    on that reduced polynomial. In the second case the extra factor ``x``
    repeats the root at 0 whenever ``m >= 2``, so the full polynomial is
    real-rooted but not squarefree there.
    """
    if n < 2:
        raise InvalidArgument("need n >= 2")
    if k == l:
        raise InvalidArgument("first and last values must differ")
    if not (1 <= k <= n and 1 <= l <= n):
        raise InvalidArgument("k and l must lie in [1, n]")
    full = both_fixed_polynomial(n, k, l)
    if l > k:
        m = l - k
        reduced = reverse_descent_poly(c_poly(m - 1, n - 1 - m), n - 1)
        expected_full = reduced
    else:
        m = k - l
        reduced = c_poly(m - 1, n - 1 - m)
        expected_full = reduced.shift(1)
    if full != expected_full:
        raise ConsistencyError(f"both-ends polynomial mismatch at n={n}, k={k}, l={l}")
    return sturm_distinct_real_roots(reduced)
