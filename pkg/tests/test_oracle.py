import math
from fractions import Fraction
from functools import reduce

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cyclobasis.arith import euler_phi
from cyclobasis.basis import CoordVector, decompose_root, key_from_str
from cyclobasis.oracle import (
    IntPolynomial,
    PowerPoly,
    cyclotomic_poly,
    key_power,
    lift,
    numeric_eval,
    power_proportionality,
    re_im_power,
    root_power,
    vector_power,
)


def P(n, *coeffs):
    return PowerPoly.from_fractions(n, coeffs)


@pytest.mark.parametrize(
    "n, coeffs", [(1, (-1, 1)), (2, (1, 1)), (4, (1, 0, 1)), (12, (1, 0, -1, 0, 1)), (105, None)]
)
def test_cyclotomic_examples(n, coeffs):
    if coeffs is None:  # first n with a coefficient of magnitude 2
        assert -2 in cyclotomic_poly(105).coeffs
    else:
        assert cyclotomic_poly(n).coeffs == coeffs


def test_cyclotomic_matches_sympy():
    x = sympy.Symbol("x")
    for n in range(1, 121):
        expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
        assert list(cyclotomic_poly(n).coeffs) == [int(c) for c in expected], n


def test_cyclotomic_degree_is_phi():
    for n in range(1, 501):
        assert cyclotomic_poly(n).degree == euler_phi(n)


def test_product_of_cyclotomics_is_xn_minus_1():
    for n in range(1, 201):
        prod = reduce(lambda a, b: a * b, (cyclotomic_poly(d) for d in range(1, n + 1) if n % d == 0))
        assert prod.coeffs == (-1,) + (0,) * (n - 1) + (1,)


def test_int_polynomial_division():
    a = IntPolynomial((1, 2, 1))
    assert a.divexact(IntPolynomial((1, 1))) == IntPolynomial((1, 1))
    with pytest.raises(ArithmeticError):
        a.divexact(IntPolynomial((2, 1)))
    assert IntPolynomial((1, 0, 0)).coeffs == (1,)


@pytest.mark.parametrize(
    "n, t, expected", [(4, 3, (0, -1)), (3, 2, (-1, -1)), (7, 0, (1, 0, 0, 0, 0, 0)), (12, 13, (0, 1, 0, 0))]
)
def test_root_power_examples(n, t, expected):
    assert root_power(n, t) == P(n, *expected)


def test_re_im_power_examples():
    assert re_im_power(4, 1) == (P(4, 0, 0), P(4, 0, 1))
    assert re_im_power(3, 1) == (P(3, Fraction(-1, 2), 0), P(3, Fraction(1, 2), 1))
    for n in [1, 2, 5, 12]:
        re, im = re_im_power(n, 0)
        assert re == root_power(n, 0) and not im


def test_key_power_examples():
    assert key_power(3, key_from_str("B3.1")) == P(3, Fraction(1, 2), 1)
    assert key_power(2, key_from_str("A2.0")) == P(2, 1)
    # cos(2 pi/3) lifted to conductor 12 is (x^4 + x^8)/2 reduced mod Phi_12
    half = Fraction(1, 2)
    direct = (root_power(12, 4) + root_power(12, 8)).scale(half)
    assert key_power(12, key_from_str("A4.0*A3.1")) == direct == P(12, half * -1, 0, 0, 0)


def test_lift_respects_multiplication():
    a, b = root_power(5, 2), re_im_power(5, 1)[1]
    assert lift(a * b, 15) == lift(a, 15) * lift(b, 15)
    with pytest.raises(ValueError):
        lift(a, 12)


def test_vector_power_examples():
    assert vector_power(CoordVector(3)) == PowerPoly.zero(3)
    assert vector_power(CoordVector(3, {key_from_str("A3.1"): -2})) == root_power(3, 0)
    assert vector_power(decompose_root(12, 1)[1]) == re_im_power(12, 1)[1]


def test_oracle_equivalence_small():
    # the full n <= 150 sweep lives in the acceptance suite
    for n in range(1, 61):
        for t in range(n):
            re, im = decompose_root(n, t)
            ore, oim = re_im_power(n, t)
            assert vector_power(re) == ore and vector_power(im) == oim, (n, t)


def test_numeric_eval_examples():
    v = numeric_eval(decompose_root(12, 3)[1], 128)
    assert abs(v - 1j) < mpmath.mpf(2) ** -108
    v = numeric_eval(decompose_root(12, 1)[0], 128)
    with mpmath.workprec(160):
        assert abs(v - mpmath.cos(mpmath.pi / 6)) < mpmath.mpf(2) ** -108
    assert numeric_eval(CoordVector(7), 128) == 0
    with pytest.raises(ValueError):
        numeric_eval(CoordVector(7), 32)


def test_numeric_consistency():
    bits = 192
    with mpmath.workprec(bits + 32):
        tol = mpmath.mpf(2) ** -(bits - 20)
        for n in range(1, 61):
            for t in range(n):
                re, im = decompose_root(n, t)
                ang = 2 * mpmath.pi * t / n
                assert abs(numeric_eval(re, bits) - mpmath.cos(ang)) < tol
                assert abs(numeric_eval(im, bits) - 1j * mpmath.sin(ang)) < tol


def test_power_poly_normalization():
    assert PowerPoly(3, (2, 4), 4) == PowerPoly(3, (1, 2), 2)
    assert PowerPoly(3, (1, 1), -2) == PowerPoly(3, (-1, -1), 2)
    assert PowerPoly(3, (0, 0), 7) == PowerPoly.zero(3)
    with pytest.raises(ValueError):
        PowerPoly(3, (1,))


def test_power_poly_json_round_trip():
    for n in [3, 12, 30]:
        for t in range(n):
            for x in re_im_power(n, t):
                assert PowerPoly.from_json(n, x.to_json()) == x
    assert re_im_power(3, 1)[1].to_json() == ["1/2", "1/1"]


def test_power_proportionality():
    u, v = re_im_power(5, 1)[1], re_im_power(5, 4)[1]
    assert power_proportionality(u, v) == -1
    assert power_proportionality(u, re_im_power(5, 2)[1]) is None
    with pytest.raises(ZeroDivisionError):
        power_proportionality(u, PowerPoly.zero(5))


def elements(n):
    coeff = st.fractions(min_value=-20, max_value=20, max_denominator=12)
    return st.lists(coeff, min_size=euler_phi(n), max_size=euler_phi(n)).map(lambda c: P(n, *c))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([1, 3, 5, 8, 12, 15, 21, 36, 60]).flatmap(lambda n: st.tuples(elements(n), elements(n), elements(n))))
def test_multiplication_ring_laws(abc):
    a, b, c = abc
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_roots_multiply_like_exponents():
    for n in [5, 12, 18, 35]:
        for s in range(n):
            for t in range(0, n, 3):
                assert root_power(n, s) * root_power(n, t) == root_power(n, s + t)


def test_power_form_evaluates_correctly():
    # evaluate the power form at omega_n in floating point
    for n in [7, 12, 30]:
        w = complex(math.cos(2 * math.pi / n), math.sin(2 * math.pi / n))
        for t in range(n):
            c = sum(float(c) * w**j for j, c in enumerate(root_power(n, t).coeffs))
            assert c == pytest.approx(w**t, abs=1e-9)
