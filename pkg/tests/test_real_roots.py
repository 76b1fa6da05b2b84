from fractions import Fraction
from math import factorial

import pytest
import sympy

from refined_eulerian import exact_core as core
from refined_eulerian import oracle
from refined_eulerian import real_roots as rr
from refined_eulerian.errors import InvalidArgument, ResourceLimitError
from refined_eulerian.poly import Poly

FIGURE = {  # (u, v): (numerator, pole order) of h_{u,v}
    (0, 2): ([1, 1], 3),
    (0, 3): ([1, 4, 1], 4),
    (1, 3): ([0, 8, 14, 2], 5),
    (2, 3): ([0, 8, 60, 48, 4], 6),
    (3, 3): ([0, 8, 160, 384, 160, 8], 7),
}


def test_c_poly_examples():
    assert rr.c_poly(0, 2) == Poly([1, 1])
    assert rr.c_poly(1, 3)(1) == factorial(4)
    for u in range(1, 8):
        c = rr.c_poly(u, 0)
        # degree u with leading coefficient 1 (the reversal); the lower terms
        # are those of the Eulerian polynomial, c_{u,0} = x A_u(x)
        assert c.degree == u and c.leading == 1
        assert c == Poly((0,) + core.euler_row(u).row)


def test_c_poly_errors():
    with pytest.raises(InvalidArgument):
        rr.c_poly(-1, 2)
    with pytest.raises(ResourceLimitError):
        rr.c_poly(30, 30)


def test_figure_numerators():
    for (u, v), (num, pole) in FIGURE.items():
        h = rr.h_numerator(u, v)
        assert h.numerator == Poly(num) and h.pole_order == pole
    h = rr.h_numerator(0, 0)
    assert h.numerator == Poly([1]) and h.pole_order == 1


def test_tower_shape():
    tower = rr.h_tower(2, 3)
    assert [t[0] for t in tower] == [(0, 0), (0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]
    assert [t[1] for t in tower] == ["", "Dx", "Dx", "Dx", "xD", "xD"]


def test_operators_against_sympy():
    # apply the operators to the rational function directly and compare
    x = sympy.symbols("x")
    f = 1 / (1 - x)
    for v in range(3):
        f = sympy.diff(x * f, x)
    for u in range(2):
        f = x * sympy.diff(f, x)
    h = rr.h_numerator(2, 3)
    num = sum(int(c) * x ** i for i, c in enumerate(h.numerator.coeffs))
    assert sympy.simplify(f - num / (1 - x) ** h.pole_order) == 0


@pytest.mark.parametrize("n", range(1, 21))
def test_tower_consistency(n):
    for u in range(n):
        v = n - 1 - u
        h = rr.h_numerator(u, v)
        c = rr.c_poly(u, v)
        assert h.numerator == c and h.pole_order == n
        assert c.degree == (u if v == 0 else u + v - 1)
        if u == 0:
            assert c(0) != 0
        else:
            assert c[0] == 0 and c[1] != 0


def test_sturm_examples():
    assert rr.sturm_distinct_real_roots(Poly([1, 4, 1])).distinct_real_roots == 2
    assert rr.sturm_distinct_real_roots(Poly([1, 0, 1])).distinct_real_roots == 0
    v = rr.sturm_distinct_real_roots(Poly([0, 0, 2]))
    assert v.distinct_real_roots == 1 and not v.squarefree and not v.verdict
    q = rr.c_poly(3, 3) // Poly.x()
    v = rr.sturm_distinct_real_roots(q)
    assert v.distinct_real_roots == 4 and v.verdict
    assert all(hi < 0 for _, hi in rr.isolate_real_roots(q, Fraction(1, 1000)))
    with pytest.raises(InvalidArgument):
        rr.sturm_distinct_real_roots(Poly())


def test_sturm_against_sympy():
    x = sympy.symbols("x")
    cases = [Poly([1, 4, 1]), Poly([-2, 0, 1]), Poly([1, 0, 1]), Poly([0, 0, 2]),
             Poly([-1, 0, 0, 1]), Poly([6, -5, 1]) * Poly([6, -5, 1]) * Poly([1, 0, 1]),
             rr.c_poly(4, 5), rr.c_poly(0, 9)]
    for p in cases:
        expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i
                   for i, c in enumerate(p.coeffs))
        assert rr.sturm_distinct_real_roots(p).distinct_real_roots == \
            len(sympy.real_roots(expr, multiple=False))


def test_isolation_intervals():
    p = Poly([-2, 0, 1]) * Poly([-3, 1])  # roots -sqrt2, sqrt2, 3
    ivs = rr.isolate_real_roots(p, Fraction(1, 10 ** 6))
    assert len(ivs) == 3
    for (lo, hi), r in zip(ivs, (-2 ** 0.5, 2 ** 0.5, 3)):
        assert lo <= r <= hi + 1e-12 and hi - lo < 1e-6
    assert rr.isolate_real_roots(Poly([5])) == []


def test_interlacing_helper():
    a = [(Fraction(-3), Fraction(-3)), (Fraction(-1), Fraction(-1))]
    b = [(Fraction(-2), Fraction(-2)), (Fraction(0), Fraction(0))]
    assert rr.strictly_interlaced(a, b)
    assert not rr.strictly_interlaced(b, a[:1])
    assert not rr.strictly_interlaced(b, a)


def test_interlacing_positive_steps():
    for (u0, v0), (u1, v1), op in [((0, 0), (0, 1), "Dx"), ((0, 1), (0, 2), "Dx"),
                                   ((0, 3), (1, 3), "xD"), ((2, 3), (3, 3), "xD")]:
        assert rr.check_step_interlacing(rr.h_numerator(u0, v0), rr.h_numerator(u1, v1), op)


def test_interlacing_negative():
    parent = rr.h_numerator(1, 2)  # 4x + 2x^2, roots -2 and 0
    child = rr.h_numerator(2, 2)
    assert rr.check_step_interlacing(parent, child, "xD")
    # same degree and root count, but both roots left of -2
    fake = rr.HRep(Poly([0, 1]) * Poly([5, 1]) * Poly([6, 1]), child.pole_order)
    assert not rr.check_step_interlacing(parent, fake, "xD")
    # repeated root
    fake = rr.HRep(Poly([0, 1]) * Poly([1, 1]) ** 2, child.pole_order)
    assert not rr.check_step_interlacing(parent, fake, "xD")
    # no simple zero at 0
    fake = rr.HRep(Poly([1, 16, 4]), child.pole_order)
    assert not rr.check_step_interlacing(parent, fake, "xD")
    with pytest.raises(InvalidArgument):
        rr.check_step_interlacing(parent, child, "bogus")


def test_interlacing_whole_tower():
    from refined_eulerian.checks import interlacing
    r = interlacing(12)
    assert r.passed and r.cases > 70


def test_first_fixed_examples():
    v = rr.check_neggers_first_fixed(5, 2)
    assert v.verdict and rr.c_poly(1, 3) == Poly([0, 8, 14, 2])
    v = rr.check_neggers_first_fixed(1, 1)
    assert v == rr.RootVerdict(0, 0, True, True)
    for n in range(2, 10):
        assert rr.c_poly(0, n - 1) == Poly(core.euler_row(n - 1).row)
        assert rr.check_neggers_first_fixed(n, 1).verdict


@pytest.mark.parametrize("n", range(1, 21))
def test_first_fixed_verdicts(n):
    for k in range(1, n + 1):
        assert rr.check_neggers_first_fixed(n, k).verdict


def test_reverse_descent_poly():
    assert rr.reverse_descent_poly(Poly([0, 2]), 3) == Poly([0, 2])
    assert rr.reverse_descent_poly(Poly([1, 4, 1]), 3) == Poly([1, 4, 1])
    with pytest.raises(InvalidArgument):
        rr.reverse_descent_poly(Poly([1, 4, 1]), 2)


def test_reverse_matches_upside_down_poset():
    for n in range(2, 7):
        for k in range(1, n + 1):
            up = Poly(core.refined_last(n, d, k) for d in range(n))
            assert rr.reverse_descent_poly(rr.c_poly(k - 1, n - k), n) == up


def test_both_fixed_examples():
    assert rr.check_neggers_both_fixed(4, 1, 3).verdict
    ext = oracle.linear_extensions(oracle.both_ends_poset(4, 1, 3), 4)
    assert oracle.descent_poly_of_set(ext) == rr.both_fixed_polynomial(4, 1, 3)
    for n in range(3, 9):
        # first 1, last n: the ending-with-(n-1) polynomial on n-1 letters
        want = Poly(core.refined_last(n - 1, d, n - 1) for d in range(n - 1))
        assert rr.both_fixed_polynomial(n, 1, n) == want
    with pytest.raises(InvalidArgument):
        rr.check_neggers_both_fixed(4, 2, 2)
    with pytest.raises(InvalidArgument):
        rr.check_neggers_both_fixed(1, 1, 1)


def test_both_fixed_double_root_at_zero():
    # for k - l >= 2 the full polynomial is x * c with c(0) = 0 as well;
    # the verdict is given on the reduced polynomial
    full = rr.both_fixed_polynomial(4, 3, 1)
    assert full == Poly([0, 0, 2])
    assert not rr.sturm_distinct_real_roots(full).verdict
    assert rr.check_neggers_both_fixed(4, 3, 1).verdict


@pytest.mark.parametrize("n", range(2, 16))
def test_both_fixed_verdicts(n):
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            if k != l:
                v = rr.check_neggers_both_fixed(n, k, l)
                assert v.verdict
                assert rr.check_neggers_both_fixed(n, n + 1 - k, n + 1 - l).verdict
