from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qmzv.scalars import (
    HBAR,
    ONE,
    Q,
    ZERO,
    AtLeast,
    HbarPoly,
    PolyQ,
    RationalFunction,
    TruncatedSeries,
    hbar_eval,
    q_binomial,
    q_integer,
    q_shifted_factorial,
    series_expand,
    valuation,
)
from qmzv.scalars.polynomial import cyclotomic, igcd, imul

from oracles import q, sympy_series, to_sympy


def rf(num, den=(1,)):
    return RationalFunction(PolyQ(num), PolyQ(den))


# -- q-integers, factorials, binomials --------------------------------------------

def test_q_integer_examples():
    assert q_integer(0) == PolyQ()
    assert q_integer(1) == PolyQ([1])
    assert q_integer(3) == PolyQ([1, 1, 1])


@pytest.mark.parametrize("n", range(1, 15))
def test_q_integer_times_one_minus_q(n):
    assert q_integer(n) * PolyQ([1, -1]) == PolyQ([1] + [0] * (n - 1) + [-1])


def test_q_shifted_factorial_examples():
    x = rf([2, 3], [1, 5])
    assert q_shifted_factorial(x, 0) == ONE
    assert q_shifted_factorial(Q, 2) == rf([1, -1]) * rf([1, 0, -1])
    assert q_shifted_factorial(RationalFunction.q_power(-1), 1) == ONE - RationalFunction.q_power(-1)


def test_q_shifted_factorial_generic_matches_product():
    x = rf([1, 2], [3, 0, 1])
    expected = ONE
    for j in range(4):
        expected = expected * (ONE - x * RationalFunction.q_power(j))
    assert q_shifted_factorial(x, 4) == expected


def test_q_binomial_examples():
    assert q_binomial(2, 1) == PolyQ([1, 1])
    assert q_binomial(4, 2) == PolyQ([1, 1, 2, 1, 1])
    for n in range(6):
        assert q_binomial(n, 0) == PolyQ([1])


def _pascal(n, k):
    # [n, k] = [n-1, k-1] + q^k [n-1, k]
    if k < 0 or k > n:
        return PolyQ()
    if k == 0 or k == n:
        return PolyQ([1])
    return _pascal(n - 1, k - 1) + PolyQ([0] * k + [1]) * _pascal(n - 1, k)


@pytest.mark.parametrize("n", range(13))
def test_q_binomial_symmetry_and_pascal(n):
    for k in range(n + 1):
        assert q_binomial(n, k) == q_binomial(n, n - k)
        assert q_binomial(n, k) == _pascal(n, k)


def test_q_binomial_out_of_range():
    with pytest.raises(ValueError):
        q_binomial(2, 3)


# -- series and valuations ---------------------------------------------------------

def test_series_expand_examples():
    assert series_expand(rf([1], [1, 1]), 4) == TruncatedSeries([1, -1, 1, -1], 4)
    assert series_expand(rf([0, 0, 1], [1, 2, 1]), 5) == TruncatedSeries([0, 0, 1, -2, 3], 5)
    assert series_expand(RationalFunction.const(5), 3) == TruncatedSeries([5], 3)


def test_series_expand_rejects_pole_at_zero():
    with pytest.raises(ValueError, match="not q-adically regular"):
        series_expand(RationalFunction.q_power(-1), 5)


def test_valuation_examples():
    assert valuation(TruncatedSeries([0, 0, 1, 1], 10)) == 2
    assert valuation(TruncatedSeries([], 10)) == AtLeast(10)
    assert str(valuation(TruncatedSeries([], 10))) == "≥10"
    assert valuation(TruncatedSeries([3, 1], 10)) == 0


def test_series_printing():
    assert str(TruncatedSeries([0, 1, 1, -1, 2], 5)) == "q + q^2 - q^3 + 2q^4 + O(q^5)"
    assert str(TruncatedSeries([1], 3)) == "1 + O(q^3)"
    assert str(TruncatedSeries([], 3)) == "O(q^3)"
    assert str(TruncatedSeries([Fraction(1, 2), Fraction(-1, 3)], 3)) == "1/2 - (1/3)q + O(q^3)"


def test_mixed_precision_takes_minimum():
    a = TruncatedSeries([1, 1, 1], 3)
    b = TruncatedSeries([1, 2, 3, 4, 5], 5)
    assert (a + b).precision == 3
    assert (a * b).precision == 3
    assert a * b == TruncatedSeries([1, 3, 6], 3)


def test_hbar_eval_examples():
    assert hbar_eval(HBAR) == PolyQ([1, -1])
    assert hbar_eval(HbarPoly([1])) == PolyQ([1])
    assert hbar_eval(HBAR * HBAR - 2 * HBAR) == PolyQ([-1, 0, 1])


# -- rational functions --------------------------------------------------------------

def test_rational_function_normal_form_and_printing():
    f = rf([1, 3], [1, -1])
    assert str(f) == "(1 + 3q)/(1 - q)"
    assert rf([2, 2], [1, 1]) == RationalFunction.const(2)
    assert (Q - ONE) / Q == ONE - RationalFunction.q_power(-1)


def test_rational_function_cancels_cyclotomic_factors():
    f = rf([1, 0, 0, -1], [1, -1])  # (1 - q^3) / (1 - q)
    assert f.is_polynomial()
    assert f.to_poly() == PolyQ([1, 1, 1])


def test_rational_function_zero_and_division():
    assert ZERO * rf([1, 2]) == ZERO
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_cyclotomic_polynomials_match_sympy():
    for d in range(1, 25):
        expected = sympy.Poly(sympy.cyclotomic_poly(d, q), q).all_coeffs()[::-1]
        assert list(cyclotomic(d)) == [int(c) for c in expected]


def test_large_products_match_schoolbook():
    a = tuple((i * 7919) % 113 - 56 for i in range(60))
    b = tuple((i * 104729) % 97 - 48 for i in range(45))
    expected = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            expected[i + j] += x * y
    assert list(imul(a, b)) == expected


def test_integer_gcd_matches_sympy():
    f = sympy.expand((1 + 2 * q - q ** 3) * (3 - q + q ** 2) ** 2)
    g = sympy.expand((3 - q + q ** 2) * (5 + q ** 4))
    cf = tuple(int(c) for c in sympy.Poly(f, q).all_coeffs()[::-1])
    cg = tuple(int(c) for c in sympy.Poly(g, q).all_coeffs()[::-1])
    assert list(igcd(cf, cg)) == [3, -1, 1]


# -- randomized properties -------------------------------------------------------------

small = st.integers(-6, 6)
nums = st.lists(small, min_size=1, max_size=5)
dens = st.tuples(st.sampled_from([-2, -1, 1, 2, 3]), st.lists(small, max_size=4)).map(
    lambda t: [t[0]] + t[1])
rfs = st.builds(rf, nums, dens)


@given(rfs, rfs)
def test_series_expand_is_ring_homomorphism(f, g):
    P = 12
    assert series_expand(f * g, P) == series_expand(f, P) * series_expand(g, P)
    assert series_expand(f + g, P) == series_expand(f, P) + series_expand(g, P)
    assert series_expand(f - g, P) == series_expand(f, P) - series_expand(g, P)


@settings(max_examples=20)
@given(rfs)
def test_series_expand_matches_sympy(f):
    P = 8
    assert list(series_expand(f, P).coeffs) == sympy_series(to_sympy(f), P)


@given(rfs, rfs, rfs)
def test_equality_consistent_with_arithmetic(f, g, h):
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f - f == ZERO
    if g:
        assert (f / g) * g == f
        assert hash((f / g) * g) == hash(f)


@settings(max_examples=20)
@given(rfs, rfs)
def test_arithmetic_matches_sympy(f, g):
    assert sympy.cancel(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0
    assert sympy.cancel(to_sympy(f + g) - to_sympy(f) - to_sympy(g)) == 0


@given(rfs, st.sampled_from([Fraction(1, 3), Fraction(-3, 7), Fraction(5, 2)]))
def test_evaluation_is_homomorphism(f, x):
    g = f * f + f
    try:
        fx = f.evaluate(x)
    except ZeroDivisionError:
        return
    assert g.evaluate(x) == fx * fx + fx


@given(st.lists(st.integers(-20, 20), max_size=10), st.lists(st.integers(-20, 20), max_size=10))
def test_series_inverse(a, b):
    s = TruncatedSeries([1] + a, 11)
    t = TruncatedSeries(b, 11)
    assert (t / s) * s == t
