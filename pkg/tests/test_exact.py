from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rspin.exact import (CycExt, MPoly, Series, bernoulli_number, bernoulli_poly,
                         bernoulli_poly_by_series, cyclotomic_poly, double_factorial,
                         lagrange_invert, solve_linear, vandermonde)

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def test_bernoulli_numbers():
    assert [bernoulli_number(k) for k in range(7)] == [
        1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42)]


@given(st.integers(0, 8), fracs)
def test_bernoulli_poly_two_routes(k, v):
    assert bernoulli_poly(k, v) == bernoulli_poly_by_series(k, v)


@given(st.integers(1, 8), fracs)
def test_bernoulli_difference(k, v):
    # B_k(v + 1) - B_k(v) = k v^{k-1}
    assert bernoulli_poly(k, v + 1) - bernoulli_poly(k, v) == k * v ** (k - 1)


def test_double_factorial():
    assert [double_factorial(n) for n in (-3, -1, 0, 1, 5, 6)] == [-1, 1, 1, 1, 15, 48]


def test_cyclotomic():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)


# --- CycExt -------------------------------------------------------------

@pytest.mark.parametrize("r", range(1, 7))
def test_cycext_relations(r):
    z, a, rho = CycExt.zeta(r), CycExt.alpha(r), CycExt.rho(r)
    assert z ** r == 1
    assert a * a == Fraction(-2, r)
    assert rho ** r == r
    assert CycExt.rho(r, r + 1) == rho * r
    # sum of all r-th roots of unity
    assert sum((CycExt.zeta(r, k) for k in range(r)), CycExt.const(r, 0)) == (1 if r == 1 else 0)


@pytest.mark.parametrize("r", [1, 2, 3, 4, 6])
def test_cycext_inverse(r):
    x = CycExt.zeta(r) * 3 + CycExt.const(r, 2)
    assert x * x.inverse() == 1
    y = CycExt.alpha(r) * CycExt.rho(r, 1) * 5
    assert y * (1 / y) == 1


@given(st.integers(1, 6), st.lists(fracs, min_size=3, max_size=3))
@settings(max_examples=40)
def test_cycext_ring_axioms(r, cs):
    a = CycExt.zeta(r) * cs[0] + cs[1]
    b = CycExt.alpha(r) * cs[2] + CycExt.zeta(r, 2)
    c = CycExt.rho(r) + cs[0]
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


def test_cycext_to_fraction_rejects_irrational():
    with pytest.raises(ValueError):
        CycExt.rho(2, 1).to_fraction()
    assert CycExt.const(3, Fraction(2, 7)).to_fraction() == Fraction(2, 7)


# --- Series -------------------------------------------------------------

series_coeffs = st.lists(fracs, min_size=6, max_size=6)


@given(series_coeffs)
def test_exp_log_roundtrip(cs):
    s = Series([0] + cs[1:], 6)
    assert s.exp().log() == s


@given(series_coeffs)
def test_reciprocal(cs):
    s = Series([1] + cs[1:], 6)
    assert s * s.reciprocal() == Series.one(6)


@given(series_coeffs)
def test_sqrt(cs):
    s = Series([1] + cs[1:], 6)
    r = s.sqrt()
    assert r * r == s


@given(series_coeffs)
def test_lagrange_inversion(cs):
    f = Series([0, 1] + cs[2:], 6)
    g = lagrange_invert(f)
    assert f.compose(g) == Series([0, 1], 6)
    assert g.compose(f) == Series([0, 1], 6)


def test_series_order_mismatch():
    with pytest.raises(ValueError):
        Series([1], 3) + Series([1], 4)


def test_lambert_w_coefficients():
    # inverse of z e^{-z}: coefficients n^{n-1}/n!
    f = Series([0, 1], 7) * Series([0, -1], 7).exp()
    g = lagrange_invert(f)
    from math import factorial
    assert [g[n] for n in range(1, 7)] == [Fraction(n ** (n - 1), factorial(n)) for n in range(1, 7)]


# --- linear algebra / polynomials -----------------------------------------

def test_solve_linear():
    assert solve_linear([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]


def test_mpoly_exact_division():
    x, y = MPoly.var(2, 0), MPoly.var(2, 1)
    p = (x + y) * (x - y * 2) + 0
    assert p.exact_div(x + y) == x - y * 2
    with pytest.raises(ArithmeticError):
        (x * x + 1).exact_div(x + y)


def test_vandermonde():
    assert vandermonde([1, 2, 4]) == 1 * 3 * 2
    assert vandermonde([3, 3, 1]) == 0
