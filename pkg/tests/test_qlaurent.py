#!/usr/bin/env python

"""Tests for `wrtkernel.qlaurent`."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wrtkernel.errors import NotDivisibleError
from wrtkernel.qlaurent import (ONE, ZERO, QLaurent, X_poly, ZQLaurent, divide_or_raise, exact_divide, pochhammer,
                                pochhammer_newton, q_bracket, q_bracket_binom, q_braces, q_factorial_braces,
                                q_lambda, q_pochhammer, q_round_binom)

q = QLaurent.q_power(1)

laurent = st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=5).map(QLaurent)


@pytest.fixture
def quantum_three():
    """[3] = q^-1 + 1 + q."""
    return QLaurent({-4: 1, 0: 1, 4: 1})


def test_bracket(quantum_three):
    assert q_bracket(3) == quantum_three
    assert q_bracket(-3) == -quantum_three
    assert q_bracket(0) == ZERO
    assert q_bracket(1) == ONE


@pytest.mark.parametrize("n", range(-4, 8))
def test_bracket_is_braces_ratio(n):
    assert exact_divide(q_braces(n), q_braces(1)) == q_bracket(n)


def test_lambda_and_braces():
    assert q_lambda(2) == q + q ** -1
    assert q_braces(2) * q_lambda(2) == q_braces(4)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(7) for k in range(n + 1)])
def test_bracket_binom_is_factorial_ratio(n, k):
    ratio = exact_divide(q_factorial_braces(n), q_factorial_braces(k) * q_factorial_braces(n - k))
    assert q_bracket_binom(n, k) == ratio
    assert q_bracket_binom(n, k).conjugate() == q_bracket_binom(n, k)


def test_bracket_binom_outside_range():
    assert q_bracket_binom(3, 4) == ZERO
    assert q_bracket_binom(3, -1) == ZERO


def test_round_binom_negative_top():
    assert q_round_binom(-1, 1) == QLaurent.q_power(-1, -1)
    assert q_round_binom(5, 0) == ONE
    assert q_round_binom(2, 3) == ZERO
    with pytest.raises(ValueError):
        q_round_binom(3, -1)


@settings(max_examples=40, deadline=None)
@given(st.integers(-4, 4), st.integers(0, 5))
def test_pochhammer_newton_expansion(a, m):
    assert pochhammer(a, m) == pochhammer_newton(a, m)


@pytest.mark.parametrize("k", range(8))
def test_x_poly(k):
    assert X_poly(k) == exact_divide(q_pochhammer(1, k), q_pochhammer(1, k // 2))


def test_exact_divide():
    assert exact_divide(ONE - q ** 2, ONE - q) == ONE + q
    assert exact_divide(ONE + q, ONE - q) is None
    assert exact_divide(ZERO, ONE - q) == ZERO
    assert exact_divide(QLaurent.constant(1), QLaurent.constant(2)) is None
    assert exact_divide(QLaurent.constant(1), QLaurent.constant(2), rational=True) == QLaurent({0: Fraction(1, 2)},
                                                                                               rational=True)
    with pytest.raises(ZeroDivisionError):
        exact_divide(ONE, ZERO)
    with pytest.raises(NotDivisibleError):
        divide_or_raise(ONE + q, ONE - q)


@settings(max_examples=50, deadline=None)
@given(laurent, laurent)
def test_product_divides_back(f, g):
    if g:
        assert exact_divide(f * g, g) == f


@settings(max_examples=50, deadline=None)
@given(laurent)
def test_text_form(f):
    assert QLaurent.from_text(str(f)) == f


def test_quarter_powers():
    v = QLaurent.q_power(Fraction(1, 2))
    assert v * v == q
    assert not v.in_z_q()
    with pytest.raises(ValueError):
        QLaurent.q_power(Fraction(1, 3))
    with pytest.raises(ValueError):
        (ONE + q) ** -1
    assert (-q) ** -2 == q ** -2


def test_non_integral_coefficient_rejected():
    with pytest.raises(ValueError):
        QLaurent({0: Fraction(1, 2)})


def test_two_variables():
    f = pochhammer(0, 1)
    assert f == ZQLaurent({0: 1, 1: -1})
    assert f.evaluate_z(4) == ONE - q
    assert f.sigma() == ZQLaurent({0: 1, -1: -1})
    assert f.shift_z(1).evaluate_z(0) == ONE - q
    assert pochhammer(-2, 5).evaluate_z(0) == ZERO
