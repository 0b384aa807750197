#!/usr/bin/env python

"""Tests for `wrtkernel.ideal_div`."""
import itertools

import pytest

from wrtkernel.cyclo import RootSpec
from wrtkernel.ideal_div import (IkElement, QuadForm, ZnPoly, andrews_sum, check_div1, check_lemma_xbar,
                                 check_pochhammer_divisibility, check_symmetric_divisibility, check_thm1,
                                 check_two_variable_expansion, check_xbar_divisibility, evaluation_criterion,
                                 expand_pochhammer_basis, lambda_Q, lambda_Q_reduced, materialize_basis)
from wrtkernel.qlaurent import ONE, QLaurent, X_poly, ZQLaurent, pochhammer, q_pochhammer


@pytest.fixture
def forms():
    """A few quadratic forms, with and without linear terms."""
    return [QuadForm(1), QuadForm(-1), QuadForm(2, 1, -1), QuadForm(-3, 2, 3), QuadForm(0, 1, 0)]


def test_lambda_q():
    f = ZQLaurent({0: 1, 2: 3})
    assert lambda_Q(f, QuadForm(1, 0, 1)) == QLaurent.q_power(1) + QLaurent.q_power(5, 3)
    assert lambda_Q(f, QuadForm(2, -1, 0)) == lambda_Q_reduced(f, QuadForm(2, -1, 0))


@pytest.mark.parametrize("k", range(5))
def test_thm1_on_generators(k, forms):
    for Q in forms:
        for d, a in itertools.product(range(-2, 3), repeat=2):
            quotient = check_thm1(IkElement.generator(k, d, a), Q)
            assert quotient * X_poly(k) == lambda_Q(IkElement.generator(k, d, a).materialize(), Q)


def test_thm1_on_combinations(forms):
    e = IkElement(3, ((QLaurent.q_power(2), 1, 0), (QLaurent.constant(-5), -1, 2)))
    for Q in forms:
        check_thm1(e, Q)
    assert str(e).count("z^") == 2


def test_ik_element_validation():
    with pytest.raises(ValueError):
        IkElement(-1)
    with pytest.raises(ValueError):
        IkElement(2, ((QLaurent.q_power(0.5), 0, 0),))
    with pytest.raises(ValueError):
        IkElement.generator(1) + IkElement.generator(2)


@pytest.mark.parametrize("k", range(1, 6))
def test_andrews_sum(k, forms):
    for Q in forms:
        andrews_sum(k, Q)


@pytest.mark.parametrize("l", range(4))
def test_symmetric_and_pochhammer_divisibility(l):
    for a2, m in itertools.product((-2, -1, 1, 2), range(4)):
        check_symmetric_divisibility(m, l, QuadForm(a2))
        check_pochhammer_divisibility(m - 1, l, QuadForm(a2))
    with pytest.raises(ValueError):
        check_symmetric_divisibility(0, l, QuadForm(1, 1))
    with pytest.raises(ValueError):
        check_pochhammer_divisibility(0, l, QuadForm(1, 1))


def test_evaluation_criterion():
    assert evaluation_criterion(IkElement.generator(3, 1, -1))
    assert evaluation_criterion(IkElement(2, ((ONE, 0, 5),)) + IkElement(2, ((ONE, 1, 0),)), range(-3, 4))


def test_pochhammer_basis_expansion():
    f = ZnPoly.from_univariate(pochhammer(0, 2), 0, 1)
    table = expand_pochhammer_basis(ZnPoly(1, f.terms, q_pochhammer(1, 2)))
    assert table == {(2,): ONE}
    assert materialize_basis(table, 1) == ZnPoly(1, f.terms, q_pochhammer(1, 2))


@pytest.mark.parametrize("a,k", [(a, k) for a in range(-2, 3) for k in range(4)])
def test_two_variable_expansion(a, k):
    table = check_two_variable_expansion(a, k)
    assert all(max(ks) <= k for ks in table)


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_root_of_unity_divisibility(r):
    spec = RootSpec(r)
    for k in range(r):
        check_xbar_divisibility(k, spec)
        for Q in (QuadForm(1), QuadForm(-2, 1, 1)):
            check_div1(IkElement.generator(k, 1, -1), Q, spec)
            check_lemma_xbar(1, k, Q, spec)
    with pytest.raises(ValueError):
        check_div1(IkElement.generator(r), QuadForm(1), spec)
    with pytest.raises(ValueError):
        check_lemma_xbar(0, r, QuadForm(1), spec)
