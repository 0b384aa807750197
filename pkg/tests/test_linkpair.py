#!/usr/bin/env python

"""Tests for `wrtkernel.linkpair`."""
from fractions import Fraction

import pytest
import sympy

from wrtkernel.errors import SchemaError, SizeBoundError
from wrtkernel.linkpair import (TRIVIAL, LinkingPairing, block_sum, cyclic, diagonal_pairing, e0_trading_pairs,
                                find_isomorphism, hyperbolic, is_isomorphic, is_prime_type, phi_B,
                                smith_normal_form, stabilized_diagonal)


@pytest.fixture
def a2_pairing():
    """The pairing of the A_2 matrix, on Z/3."""
    return phi_B([[2, 1], [1, 2]])


def test_cyclic():
    p = cyclic(5)
    assert p.orders == (5,)
    assert p.gram == ((Fraction(1, 5),),)
    assert p((2,), (3,)) == Fraction(1, 5)
    assert cyclic(-4).gram == ((Fraction(3, 4),),)
    assert cyclic(1) == TRIVIAL


def test_phi_b(a2_pairing):
    assert a2_pairing.orders == (3,)
    assert is_isomorphic(a2_pairing, cyclic(-3))
    assert not is_isomorphic(a2_pairing, cyclic(3))
    with pytest.raises(ValueError):
        phi_B([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        phi_B([[1, 1], [1, 1]])


def test_smith_normal_form():
    diagonal, left, right = smith_normal_form([[2, 0], [0, 3]])
    assert diagonal == [1, 6]
    assert left * sympy.Matrix([[2, 0], [0, 3]]) * right == sympy.diag(1, 6)


def test_validation():
    with pytest.raises(ValueError):
        LinkingPairing((2,), ((Fraction(0),),))
    with pytest.raises(ValueError):
        LinkingPairing((4, 4), ((Fraction(1, 4), Fraction(1, 4)), (Fraction(0), Fraction(1, 4))))
    with pytest.raises(ValueError):
        LinkingPairing((2,), ((Fraction(1, 3),),))
    with pytest.raises(ValueError):
        LinkingPairing((1,), ((Fraction(0),),))


def test_hyperbolic():
    e1 = hyperbolic(1)
    assert not e1.self_linking(e1.elements(), 2).any()
    e = hyperbolic(2)
    assert e.size == 16
    assert sorted(set(e.self_linking(e.elements(), 4).tolist())) == [0, 2]
    assert not is_isomorphic(e, diagonal_pairing([4, 4]))
    assert not is_isomorphic(e, diagonal_pairing([4, -4]))


def test_block_sum():
    p = block_sum(cyclic(2), cyclic(-3))
    assert p.size == 6
    assert is_isomorphic(p, cyclic(6))
    assert not is_isomorphic(block_sum(cyclic(2), cyclic(3)), cyclic(6))
    assert block_sum() == TRIVIAL


@pytest.mark.parametrize("k", [1, 2])
def test_e0_trading(k):
    lhs, rhs = e0_trading_pairs(k)
    witness = find_isomorphism(lhs, rhs)
    assert witness is not None
    assert len(witness) == lhs.rank


def test_literal_relation_only_at_k1():
    assert is_isomorphic(block_sum(hyperbolic(1), cyclic(-2)), diagonal_pairing([-2, 2, 2]))
    assert not is_isomorphic(block_sum(hyperbolic(2), cyclic(-4)), diagonal_pairing([-4, 4, 4]))


def test_size_bound():
    with pytest.raises(SizeBoundError):
        find_isomorphism(diagonal_pairing([2, 2, 2]), diagonal_pairing([2, 2, 2]), bound=4)
    assert find_isomorphism(cyclic(2), cyclic(3)) is None


def test_prime_type():
    assert is_prime_type([4, -3, 1, 0, 9])
    assert not is_prime_type([6])


def test_stabilized_diagonal():
    result = stabilized_diagonal([3], [1])
    assert result.entries == (3, -2, 2, -2)
    assert result.verified is True
    doubled = stabilized_diagonal([3], [1], s=2, enhancement=(1, 0))
    assert doubled.entries == (3, 3, -2, 2, 2, -2, -2)
    assert doubled.framings == (3, 3, -2, 2, 2, -2, -2, 1, 0)
    assert doubled.presentation().m == 9
    with pytest.raises(ValueError):
        stabilized_diagonal([1], [1])
    with pytest.raises(ValueError):
        stabilized_diagonal([3], [1], s=0)
    with pytest.raises(ValueError):
        stabilized_diagonal([3], [1], enhancement=(2,))


def test_json(a2_pairing):
    assert LinkingPairing.from_json(a2_pairing.to_json()) == a2_pairing
    with pytest.raises(SchemaError):
        LinkingPairing.from_json({"orders": [2], "gram": [[[1]]]})
