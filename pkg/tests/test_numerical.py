from math import comb

import pytest
from hypothesis import given, strategies as st

from koszulspec import NotStabilized, NumericalPolynomial, binom, fit_numerical_polynomial


def test_binom_negative_top():
    assert binom(-1, 3) == -1
    assert binom(-3, 2) == 6
    assert binom(5, 2) == 10 and binom(2, 5) == 0


def test_cusp_fit():
    p = fit_numerical_polynomial([1, 3, 5, 7, 9, 11])
    assert str(p) == "2*r - 1"
    assert p.degree == 1 and p.leading_difference() == 2


def test_fit_ignores_irregular_start():
    p = fit_numerical_polynomial([1, 2, 4, 7, 10, 13, 16])
    assert p.degree == 1 and p(7) == 16 and p(3) == 4


def test_constant_and_zero():
    assert fit_numerical_polynomial([5, 5, 5]).coeffs == (5,)
    assert fit_numerical_polynomial([0, 0, 0, 0]).degree == -1


def test_affine_plane_samuel():
    p = fit_numerical_polynomial([comb(r + 1, 2) for r in range(1, 8)])
    assert p.degree == 2 and p.nth_difference(2) == 1


def test_nth_difference_rules():
    p = NumericalPolynomial((1, 2))
    assert p.nth_difference(2) == 0 and p.nth_difference(1) == 2
    with pytest.raises(ValueError):
        NumericalPolynomial((0, 0, 3)).nth_difference(1)


def test_not_stabilized():
    with pytest.raises(NotStabilized):
        fit_numerical_polynomial([1, 3])
    with pytest.raises(NotStabilized):
        fit_numerical_polynomial([1, 2, 4, 8, 16, 32])


def test_power_form_text():
    assert str(NumericalPolynomial((0, 1, 1))) == "1/2*r^2 + 1/2*r"


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4), st.integers(-3, 3))
def test_fit_recovers_polynomial(coeffs, start):
    p = NumericalPolynomial(tuple(coeffs))
    values = [p(r) for r in range(start, start + p.degree + 5)]
    q = fit_numerical_polynomial(values, start=start)
    assert q == p


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4), st.integers(-10, 10))
def test_integer_valued_and_difference(coeffs, r):
    p = NumericalPolynomial(tuple(coeffs))
    assert isinstance(p(r), int)
    assert p.difference()(r) == p(r + 1) - p(r)
    pc = p.power_coeffs()
    assert sum(c * r ** i for i, c in enumerate(pc)) == p(r)
