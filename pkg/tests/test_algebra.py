from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from x0plus import algebra
from x0plus.algebra import NumberField, QQ


def test_rational_roots():
    # 6x^3 - 7x^2 + 1 = (x - 1)(2x - 1)(3x + 1)
    assert algebra.rational_roots([1, 0, -7, 6]) == [Fraction(-1, 3), Fraction(1, 2), Fraction(1)]
    assert algebra.rational_roots([0, 0, 1]) == [0]
    assert algebra.rational_roots([-2, 0, 1]) == []


def test_squarefree_decomposition():
    x = sympy.Symbol("x")
    p = sympy.Poly((x - 1) ** 3 * (x + 2) * (x ** 2 + 1) ** 2, x)
    dec = algebra.squarefree_decomposition(list(reversed(p.all_coeffs())))
    assert dec == [([2, 1], 1), ([-1, 1, 1, 1], 2)] or sorted(m for _, m in dec) == [1, 2, 3]
    prod = [1]
    for f, m in dec:
        for _ in range(m):
            prod = algebra.pmul(prod, f)
    assert algebra.primitive_int(prod) == algebra.primitive_int(list(reversed(p.all_coeffs())))


def test_resultant_matches_sympy():
    x = sympy.Symbol("x")
    a, b = [3, 0, -2, 1], [-1, 4, 5]
    ref = sympy.resultant(sympy.Poly(list(reversed(a)), x), sympy.Poly(list(reversed(b)), x))
    assert algebra.sylvester_resultant(a, b) == ref


def test_interpolate_exact():
    xs = list(range(-3, 4))
    coeffs = [5, -1, 0, 2, 0, 0, 1]
    ys = [algebra.peval(coeffs, x) for x in xs]
    assert algebra.interpolate(xs, ys) == [Fraction(c) for c in coeffs]


def test_number_field_arithmetic():
    K = NumberField([-2, 0, 1])  # Q(sqrt 2)
    r = K.gen()
    assert K.mul(r, r) == K.coerce(2)
    inv = K.inv(K.add(K.one, r))  # 1/(1 + sqrt2) = sqrt2 - 1
    assert inv == K.sub(r, K.one)
    assert K.minpoly(K.add(K.one, r)) == [-1, -2, 1]
    assert K.minpoly(K.coerce(3)) == [-3, 1]


def test_field_poly_gcd():
    K = NumberField([-2, 0, 1])
    r = K.gen()
    # (u - r)(u + 1) and (u - r)(u - 3) share u - r
    a = [K.mul(r, K.coerce(-1)), K.sub(K.one, r), K.one]
    b = [K.mul(r, K.coerce(3)), K.sub(K.coerce(-3), r), K.one]
    g = algebra.field_poly_gcd(a, b, K)
    assert len(g) == 2 and g[0] == K.sub(K.zero, r)
    assert algebra.field_poly_gcd([Fraction(-1), Fraction(1)], [Fraction(1), Fraction(1)], QQ) == [Fraction(1)]


@pytest.mark.parametrize("disc,fund", [(8, 8), (32, 8), (-3, -3), (-12, -3), (5, 5), (-20, -20), (-80, -20), (28, 28),
                                       (-16 * 7, -7)])
def test_fundamental_discriminant(disc, fund):
    assert algebra.fundamental_discriminant_of(disc) == fund


def test_fundamental_discriminant_rejects_squares():
    with pytest.raises(ValueError):
        algebra.fundamental_discriminant_of(9)
    with pytest.raises(ValueError):
        algebra.fundamental_discriminant_of(0)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=2, max_size=6).filter(lambda p: p[-1] != 0))
def test_rational_roots_match_sympy(p):
    x = sympy.Symbol("x")
    ref = sorted(set(r for r in sympy.roots(sympy.Poly(list(reversed(p)), x), filter="Q")))
    assert algebra.rational_roots(p) == [Fraction(int(r.p), int(r.q)) for r in ref]
