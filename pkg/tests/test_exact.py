from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reglab.exact import (
    PoleOrderError,
    Polynomial,
    RationalFunction,
    TruncatedSeries,
    VariableMismatch,
    extended_euclid,
    format_rational,
    parse_rational,
    rational_residue,
    series_add,
    series_fractional_pow,
    series_inv,
    series_mul,
)

X = Polynomial([0, 1], "x")
T = Polynomial([0, 1], "t")

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
polys = st.lists(rationals, min_size=0, max_size=5).map(lambda c: Polynomial(c, "x"))
nonzero_polys = polys.filter(bool)


# --- rationals -------------------------------------------------------------


def test_rational_serialization_roundtrip():
    assert format_rational(Fraction(-12, 5)) == "-12/5"
    assert format_rational(Fraction(4, 2)) == "2"
    assert parse_rational("6/4") == Fraction(3, 2)
    assert parse_rational("0") == Fraction(0, 1)


# --- polynomials -------------------------------------------------------------


def test_zero_polynomial_degree_sentinel():
    z = Polynomial([0, 0], "x")
    assert not z
    assert z.degree < 0
    assert Polynomial([1, 2, 0, 0]).degree == 1


def test_mixing_variables_is_an_error():
    with pytest.raises(VariableMismatch):
        X + T


def test_euclid_shared_factor():
    d, A, B = extended_euclid(X * X - 1, X + 1)
    assert d == X + 1
    assert A == 0 and B == 1


def test_euclid_unit_gcd():
    d, A, B = extended_euclid(X, Polynomial([1], "x"))
    assert d == 1 and A == 0 and B == 1


def test_euclid_catalog_family_i_at_half():
    # 4x^3 - 3x - (1 - 2t) at t = 1/2
    f = Polynomial([0, -3, 0, 4], "x")
    g = f.derivative()
    assert g == Polynomial([-3, 0, 12], "x")
    d, A, B = extended_euclid(f, g)
    assert d == 1
    assert A * f + B * g == 1


@given(nonzero_polys, nonzero_polys)
@settings(max_examples=60, deadline=None)
def test_euclid_bezout_property(f, g):
    d, A, B = extended_euclid(f, g)
    assert A * f + B * g == d
    assert d.leading == 1
    assert not f % d and not g % d


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_polynomial_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == Polynomial([], "x")


@given(polys, nonzero_polys)
@settings(max_examples=60, deadline=None)
def test_division_with_remainder(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_rational_function_is_reduced_with_monic_denominator():
    r = RationalFunction(T * T * 2 - 2, T * 4 - 4)
    assert r.num == (T + 1) * Fraction(1, 2)
    assert r.den == 1
    s = RationalFunction(Polynomial([3], "t"), T * 6)
    assert s.den == T and s.num == Fraction(1, 2)


@given(st.lists(rationals, min_size=1, max_size=3), st.lists(rationals, min_size=1, max_size=3).filter(lambda c: any(c)))
@settings(max_examples=40, deadline=None)
def test_rational_function_field_axioms(n, d):
    r = RationalFunction(Polynomial(n, "t"), Polynomial(d, "t"))
    s = RationalFunction(T + 3, T * T + 1)
    assert (r + s) - s == r
    assert r * s / s == r
    if r:
        assert r * r.inverse() == 1
    # quotient rule against product rule
    assert (r * s).derivative() == r.derivative() * s + r * s.derivative()


# --- residues ------------------------------------------------------------------


def test_residue_simple_pole():
    assert rational_residue(Polynomial([1], "t"), T, 0) == 1


def test_residue_double_pole_rejected():
    with pytest.raises(PoleOrderError):
        rational_residue(Polynomial([1], "t"), T * T, 0)


def test_residue_not_a_pole():
    assert rational_residue(Polynomial([1], "t"), T - 1, 0) == 0


def test_residue_dlog_discriminant_at_one():
    # Delta'/Delta = 3/t + 1/(t - 1): the residue at 1 is ord_1 Delta = +1
    delta = T ** 3 * (Polynomial([1, -1], "t")) * 110592
    assert rational_residue(delta.derivative(), delta, 1) == 1
    assert rational_residue(delta.derivative(), delta, 0) == 3


@given(st.lists(rationals, min_size=0, max_size=2), st.sets(st.integers(-4, 4), min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_residues_sum_to_zero(num, poles):
    # num / prod(t - p) with deg num <= #poles - 2 is regular at infinity with zero residue there
    den = Polynomial([1], "t")
    for p in poles:
        den = den * (T - p)
    num = Polynomial(num[: max(len(poles) - 1, 0)], "t")
    total = sum(rational_residue(num, den, p) for p in poles)
    assert total == 0


def test_residue_linearity():
    den = T * (T - 1) * (T + 2)
    a, b = T * T + 1, T - 7
    for p in (0, 1, -2):
        lhs = rational_residue(a * 3 + b * Fraction(-2, 5), den, p)
        rhs = 3 * rational_residue(a, den, p) - Fraction(2, 5) * rational_residue(b, den, p)
        assert lhs == rhs


# --- truncated series ---------------------------------------------------------------


def series(coeffs, order, offset=0):
    return TruncatedSeries(coeffs, offset, order)


def test_series_product_and_inverse():
    p = series_mul(series([1, 1], 6), series([1, -1], 6))
    assert p.coefficients(0, 6) == [1, 0, -1, 0, 0, 0]
    g = series_inv(series([1, -1], 8))
    assert g.coefficients(0, 8) == [1] * 8
    s = series_add(series([1, 2], 4), series([0, 0, 3], 3))
    assert s.order == 3 and s.coefficients(0, 3) == [1, 2, 3]


def test_series_unknown_coefficients_raise():
    with pytest.raises(Exception):
        series([1, 2], 3)[3]


def test_laurent_offsets():
    q = series([0, 1, 5], 5)
    inv = series_inv(q)
    assert inv.offset == -1
    assert series_mul(inv, q).coefficients(0, 3) == [1, 0, 0]


def test_fractional_pow_examples():
    one = series([1], 10)
    assert series_fractional_pow(one, Fraction(3, 7)).coefficients(0, 10) == [1] + [0] * 9
    sq = series_fractional_pow(series([1, 1], 5), 2)
    assert sq.coefficients(0, 5) == [1, 2, 1, 0, 0]
    x = Fraction(2, 5)
    g = series_fractional_pow(series([1, -27, 729], 3), x)
    assert g[1] == -27 * x


def test_fractional_pow_rejects_bad_constant_term():
    with pytest.raises(Exception):
        series_fractional_pow(series([2, 1], 4), Fraction(1, 2))


unit_series = st.lists(rationals, min_size=1, max_size=6).map(lambda c: series([1] + c, 7))


@given(unit_series, rationals, rationals)
@settings(max_examples=40, deadline=None)
def test_fractional_pow_exponent_law(f, a, b):
    lhs = series_mul(series_fractional_pow(f, a), series_fractional_pow(f, b))
    rhs = series_fractional_pow(f, a + b)
    assert lhs.coefficients(0, 7) == rhs.coefficients(0, 7)


@given(unit_series, st.integers(0, 4))
@settings(max_examples=40, deadline=None)
def test_fractional_pow_integer_matches_repeated_product(f, n):
    prod = series([1], 7)
    for _ in range(n):
        prod = series_mul(prod, f)
    assert series_fractional_pow(f, n).coefficients(0, 7) == prod.coefficients(0, 7)


@given(unit_series, st.integers(2, 5))
@settings(max_examples=30, deadline=None)
def test_fractional_root_then_power(f, n):
    r = series_fractional_pow(f, Fraction(1, n))
    assert (r ** n).coefficients(0, 7) == f.coefficients(0, 7)
