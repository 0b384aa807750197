#!/usr/bin/env python

"""Tests for `wrtkernel.cyclo`."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wrtkernel.cyclo import (CycElt, Group, RootSpec, complex_embed, cyclotomic_poly, divides, euler_phi, ev_xi,
                             is_associate, O_xi, positive_representative, real_sign, sqrt_in_ring, x_k)
from wrtkernel.errors import DegenerateRootError, RootSpecError
from wrtkernel.qlaurent import ONE, QLaurent, q_pochhammer


@pytest.fixture
def spec5():
    """SU(2) at r = 5 with the default fourth root."""
    return RootSpec(5)


def small_elements(t):
    n = euler_phi(t)
    return st.lists(st.integers(-3, 3), min_size=n, max_size=n).map(lambda c: CycElt(t, c))


def test_cyclotomic_poly():
    assert euler_phi(20) == 8
    assert len(cyclotomic_poly(20)) == 9
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)


def test_root_spec_defaults(spec5):
    assert spec5.t == 40
    assert spec5.group is Group.SU2
    assert spec5.ord4 == 20
    assert spec5.xi() ** 5 == spec5.one()
    assert spec5.xi() != spec5.one()
    assert RootSpec.from_json(spec5.to_json()) == spec5


def test_root_spec_rejections():
    with pytest.raises(RootSpecError):
        RootSpec(1)
    with pytest.raises(RootSpecError):
        RootSpec(4, group=Group.SO3)
    with pytest.raises(RootSpecError):
        RootSpec(5, 1)
    with pytest.raises(RootSpecError):
        RootSpec(5, group="so4")


def test_degenerate_root():
    with pytest.raises(DegenerateRootError, match="vanishes"):
        RootSpec(3, 4)
    spec = RootSpec(3, 4, allow_degenerate=True)
    assert spec.is_degenerate
    assert spec.ord4 == 6
    assert not RootSpec(3, 4, Group.SO3).is_degenerate


@pytest.mark.parametrize("r", range(2, 10))
def test_valid_specs(r):
    specs = RootSpec.valid(r)
    assert specs
    for spec in specs:
        assert spec.ord4 != 2 * r
        assert len(spec.fourth_roots()) == 4


@pytest.mark.parametrize("r", range(2, 10))
def test_full_pochhammer_is_r(r):
    spec = RootSpec(r)
    assert ev_xi(q_pochhammer(1, r - 1), spec) == r


@pytest.mark.parametrize("r", range(2, 10))
def test_o_xi_square(r):
    spec = RootSpec(r)
    o = O_xi(spec)
    assert is_associate(o * o, spec.const(r if r % 2 else r // 2))


def test_x_k_vanishes_past_r(spec5):
    assert x_k(2, spec5)
    assert not x_k(10, spec5)


def test_associates(spec5):
    one_minus = spec5.one() - spec5.xi()
    assert is_associate(one_minus, spec5.one() - spec5.xi(2))
    assert not is_associate(one_minus, spec5.const(2))
    assert not is_associate(one_minus, CycElt.zero(spec5.t))
    with pytest.raises(ValueError):
        is_associate(CycElt.zero(40), CycElt.zero(40))
    with pytest.raises(ZeroDivisionError):
        divides(CycElt.zero(40), spec5.one())


def test_divides(spec5):
    one_minus = spec5.one() - spec5.xi()
    assert divides(one_minus, spec5.const(5)) is not None
    assert divides(spec5.const(2), spec5.const(3)) is None
    assert (spec5.const(3) / 2).rational_value() == Fraction(3, 2)


@settings(max_examples=30, deadline=None)
@given(small_elements(12))
def test_inverse(x):
    if x:
        assert x * x.inverse() == CycElt.one(12)


@settings(max_examples=30, deadline=None)
@given(small_elements(20), small_elements(20))
def test_conjugate_is_multiplicative(x, y):
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()


def test_ev_xi_is_a_ring_map(spec5):
    f = QLaurent({1: 2, -3: 1})
    g = ONE - QLaurent.q_power(2)
    assert ev_xi(f * g, spec5) == ev_xi(f, spec5) * ev_xi(g, spec5)
    assert ev_xi(QLaurent.monomial(1), spec5) == spec5.zeta(spec5.u)


@pytest.mark.parametrize("r", range(2, 9))
def test_square_roots(r):
    spec = RootSpec(r)
    assert sqrt_in_ring(2, spec) ** 2 == 2
    root = sqrt_in_ring(r, spec)
    assert root * root == r
    assert real_sign(root) == 1
    with pytest.raises(ValueError):
        sqrt_in_ring(r + 2, spec)


def test_embedding(spec5):
    i = complex_embed(spec5.imag_unit())
    assert i.imag.a <= 1 <= i.imag.b
    assert real_sign(spec5.const(-2)) == -1
    assert positive_representative(spec5.const(-3)) == 3
    with pytest.raises(ValueError):
        positive_representative(spec5.imag_unit())


def test_units(spec5):
    assert spec5.xi().is_unit()
    assert not spec5.const(2).is_unit()
    assert (spec5.one() + spec5.xi()).is_unit()
