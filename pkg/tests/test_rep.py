#!/usr/bin/env python

"""Tests for `wrtkernel.rep`."""
import pytest

from wrtkernel.qlaurent import ONE, ZERO, exact_divide, q_bracket, q_bracket_binom, q_braces, q_lambda
from wrtkernel.rep import (B_closed, B_recursive, B_trace, P_basis, RElt, S_basis, V_n, change_of_basis,
                           expand_in_basis, expand_Vn, expected_Vn_coefficient, orthogonality_value, rosso_pairing,
                           to_vn_basis, verify_orthogonality)


@pytest.fixture
def V():
    """The fundamental representation."""
    return RElt.V()


def test_v_n(V):
    assert V_n(1) == RElt.constant(1)
    assert V_n(3) == V * V - 1
    assert V_n(4) == V ** 3 - V * 2
    with pytest.raises(ValueError):
        V_n(0)


@pytest.mark.parametrize("n", range(1, 6))
def test_characters(n):
    for m in range(1, 5):
        assert V_n(n).evaluate(q_lambda(m)) == exact_divide(q_bracket(n * m), q_bracket(m))


def test_basis_peeling(V):
    x = V ** 3 + V * 2 - 5
    for eps in (0, 1):
        total = RElt()
        for k, c in expand_in_basis(x, eps).items():
            total = total + P_basis(k, eps) * c
        assert total == x


@pytest.mark.parametrize("n", range(1, 8))
@pytest.mark.parametrize("eps", [0, 1])
def test_expand_vn(n, eps):
    coefficients = expand_Vn(n, eps)
    assert len(coefficients) == n
    assert coefficients[n - 1] == ONE
    assert coefficients[0] == (q_bracket(n) if eps == 0 else exact_divide(q_bracket(n) * q_lambda(n), q_lambda(1)))


def test_expected_coefficient():
    assert expected_Vn_coefficient(4, 0, 0) == q_bracket(4)
    assert expected_Vn_coefficient(3, 1, 0) == q_bracket_binom(4, 3)
    assert expected_Vn_coefficient(2, 3, 1) == ZERO


def test_to_vn_basis(V):
    assert to_vn_basis(V * V) == {3: ONE, 1: ONE}
    assert to_vn_basis(RElt()) == {}


def test_change_of_basis():
    rows = change_of_basis(4, 1)
    assert len(rows) == 5
    assert all(rows[k][k] == ONE for k in range(5))
    assert rows[1][0] == -q_lambda(2)


@pytest.mark.parametrize("eps", [0, 1])
def test_orthogonality(eps):
    for k in range(4):
        for p in range(4):
            assert verify_orthogonality(k, p, eps)


def test_orthogonality_values():
    assert orthogonality_value(0, 0) == ONE
    assert orthogonality_value(0, 1) == q_lambda(1)
    assert rosso_pairing(RElt.constant(1), RElt.constant(1)) == ONE
    assert rosso_pairing(S_basis(1, 0), P_basis(0, 0)) == ZERO


@pytest.mark.parametrize("n", range(1, 9))
def test_rosso_pairing_symmetric(n):
    for m in range(1, 9):
        assert rosso_pairing(V_n(m), V_n(n)) == rosso_pairing(V_n(n), V_n(m))


def test_rosso_pairing_symmetric_on_products(V):
    x = V_n(2) * V_n(3) + V_n(1)
    y = V * V_n(4) - 3
    assert rosso_pairing(x, y) == rosso_pairing(y, x)


@pytest.mark.parametrize("n", range(5))
def test_b_trace(n):
    for l in range(n + 1):
        for j in range(-4, 5):
            assert B_trace(n, l, j) == B_recursive(n, l, j)


@pytest.mark.parametrize("j", range(-3, 4))
def test_b_first_level(j):
    assert B_recursive(0, 0, j) == ONE
    assert B_closed(1, 0, j) == q_braces(j - 1) * q_braces(j + 1)
    assert B_closed(2, 3, j) == ZERO


def test_coercion(V):
    assert (V + 2) - 2 == V
    with pytest.raises(TypeError):
        V + "x"
