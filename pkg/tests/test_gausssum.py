#!/usr/bin/env python

"""Tests for `wrtkernel.gausssum`."""
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wrtkernel.cyclo import RootSpec, is_associate
from wrtkernel.gausssum import RootOfUnity, gauss_brute, gauss_reduce


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 24), st.integers(-30, 30), st.integers(-30, 30))
def test_reduce_matches_brute(n, b, d):
    root = RootOfUnity(n, 1)
    assert gauss_reduce(b, d, root) == gauss_brute(b, d, root)


@pytest.mark.parametrize("r", range(2, 17))
def test_squares(r):
    spec = RootSpec(r)
    xi = RootOfUnity.xi(spec)
    for b in range(1, r):
        if math.gcd(b, r) != 1:
            continue
        g = gauss_reduce(b, 0, xi)
        if r % 4 == 2:
            assert not g
            gb = gauss_reduce(b, b, xi)
            assert is_associate(gb * gb, spec.const(2 * r))
        elif r % 2:
            assert is_associate(g * g, spec.const(r))
        else:
            assert is_associate(g * g, spec.const(2 * r))


def test_prime_square_is_exact():
    spec = RootSpec(5)
    g = gauss_reduce(1, 0, RootOfUnity.xi(spec))
    assert g * g == 5


def test_root_of_unity():
    root = RootOfUnity(24, 4)
    assert root.order == 6
    assert root.power(3).order == 2
    spec = RootSpec(5)
    assert RootOfUnity.xi(spec).order == 5
    assert RootOfUnity.xi_quarter(spec).order == 20


def test_spec_as_root():
    spec = RootSpec(7)
    assert gauss_brute(2, 1, spec) == gauss_brute(2, 1, RootOfUnity.xi(spec))
    with pytest.raises(ValueError):
        gauss_brute(1, 0, spec, order=8)


def test_vanishing_cases():
    root = RootOfUnity(8, 1)
    assert not gauss_reduce(1, 1, root)
    assert not gauss_reduce(2, 1, RootOfUnity(6, 1))
    assert gauss_reduce(0, 0, root) == 8
