import doctest
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from refined_eulerian import poly as poly_mod
from refined_eulerian.errors import InvalidArgument
from refined_eulerian.poly import Poly

coeffs = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=6), max_size=6)
x = sympy.symbols("x")


def to_sympy(p):
    return sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(p.coeffs))


def test_doctests():
    assert doctest.testmod(poly_mod).failed == 0


def test_basics():
    p = Poly([1, 4, 1, 0, 0])
    assert p.coeffs == (1, 4, 1) and p.degree == 2
    assert Poly().degree == -1 and Poly().is_zero()
    assert str(p) == "1 + 4x + x^2"
    assert p == Poly([1, 4, 1]) and hash(p) == hash(Poly([1, 4, 1]))
    assert p[7] == 0
    assert Poly.monomial(3, 2) == Poly([0, 0, 3])
    assert Poly([0, 2]).int_coeffs() == (0, 2)
    with pytest.raises(AttributeError):
        p.coeffs = ()
    with pytest.raises(TypeError):
        Poly([0.5])


def test_eval_exact_and_float():
    p = Poly([1, 4, 1])
    assert p(Fraction(1, 2)) == Fraction(13, 4)
    assert p(0.5) == pytest.approx(3.25)


def test_division_errors_and_helpers():
    with pytest.raises(ZeroDivisionError):
        divmod(Poly([1]), Poly())
    assert Poly([0, 0, 2, 1]).multiplicity_at_zero() == 2
    with pytest.raises(InvalidArgument):
        Poly().multiplicity_at_zero()
    assert Poly([1, 2]).reversed(4) == Poly([0, 0, 2, 1])
    assert Poly([Fraction(1, 2), Fraction(-3, 4)]).primitive() == Poly([2, -3])
    assert Poly([-2, -4]).primitive() == Poly([-1, -2])


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs)
def test_ring_ops_against_sympy(a, b):
    p, q = Poly(a), Poly(b)
    assert sympy.expand(to_sympy(p + q) - (to_sympy(p) + to_sympy(q))) == 0
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert to_sympy(p.derivative()) == sympy.expand(sympy.diff(to_sympy(p), x))
    if not q.is_zero():
        quo, rem = divmod(p, q)
        assert quo * q + rem == p
        assert rem.degree < q.degree


@settings(max_examples=40, deadline=None)
@given(coeffs, coeffs)
def test_gcd_against_sympy(a, b):
    p, q = Poly(a), Poly(b)
    if p.is_zero() and q.is_zero():
        return
    g = p.gcd(q)
    want = sympy.Poly(sympy.gcd(to_sympy(p), to_sympy(q)), x)
    assert g.degree == want.degree()
