#!/usr/bin/env python

"""Tests for `wrtkernel.jones`."""
import pytest

from wrtkernel.cyclo import RootSpec
from wrtkernel.errors import PresentationError, SchemaError
from wrtkernel.jones import (SPLIT_DIAGONAL, TABLE_BACKED, FreeComponent, JonesTable, SurgeryBlock,
                             SurgeryPresentation, block_modulus, connected_sum, epsilon_vector, habiro_basis,
                             habiro_blocks, hopf_pair, jones_value, lens, mirror, odd_colors_in_z_q,
                             presentation_blocks, symmetry_check, unknot)
from wrtkernel.qlaurent import ONE, ZERO, QLaurent, q_bracket, q_factorial_braces


@pytest.fixture
def pair():
    """L(2, 1) with its core colored 3."""
    return hopf_pair(2, 3)


def test_values(pair):
    assert jones_value(hopf_pair(0, 2), (3,)) == q_bracket(6)
    assert jones_value(unknot(0), (4,)) == q_bracket(4)
    assert jones_value(pair, (1,)) == QLaurent.monomial(0) * q_bracket(3)
    assert jones_value(unknot(1), (2,)) == QLaurent.monomial(3) * q_bracket(2)
    with pytest.raises(PresentationError):
        jones_value(pair, (1, 2))


def test_free_components():
    pres = SurgeryPresentation((SurgeryBlock(0),), (FreeComponent(2),))
    assert jones_value(pres, (3,)) == q_bracket(2) * q_bracket(3)
    assert pres.colors == (2,)
    assert pres.cross_linking == ((0,),)


def test_shape(pair):
    assert pair.m == 1
    assert pair.framings == (2,)
    assert pair.colors == (3,)
    assert pair.beta == (1, 0, 0)
    assert pair.family == SPLIT_DIAGONAL
    assert pair.linking_matrix() == [[2, 1], [1, 0]]
    assert connected_sum(pair, lens(-1)).beta == (1, 1, 0)


def test_epsilon_vector():
    assert epsilon_vector(hopf_pair(1, 2)) == (1,)
    assert epsilon_vector(hopf_pair(1, 3)) == (0,)
    assert epsilon_vector(unknot(4)) == (0,)


def test_mirror(pair):
    assert mirror(mirror(pair)) == pair
    assert jones_value(mirror(pair), (2,)) == jones_value(pair, (2,)).conjugate()


def test_json(pair):
    assert SurgeryPresentation.from_json(pair.to_json()) == pair
    with pytest.raises(SchemaError):
        SurgeryPresentation.from_json({"surgery": [{"framing": "x"}]})
    with pytest.raises(PresentationError):
        SurgeryPresentation.from_json({"surgery": [{"framing": 1, "companion": {"color": 0}}]})


def test_table(pair):
    table = JonesTable.from_presentation(pair, 4)
    assert table[(2,)] == jones_value(pair, (2,))
    assert (5,) not in table
    with pytest.raises(PresentationError):
        table[(5,)]
    with pytest.raises(PresentationError):
        JonesTable(2, {(1,): ONE})
    assert JonesTable.from_json(table.to_json()) == table
    pres = SurgeryPresentation((SurgeryBlock(2),), table=table)
    assert pres.family == TABLE_BACKED
    assert pres.colors == (3,)
    with pytest.raises(PresentationError):
        SurgeryPresentation((SurgeryBlock(2), SurgeryBlock(1)), table=table)


def test_basis():
    assert habiro_basis(2, 2, 0) == ZERO
    assert habiro_basis(3, 2, 0) == q_factorial_braces(2)
    assert habiro_basis(5, 0, 0) == q_bracket(5)
    assert block_modulus(0) == ONE


def test_blocks_of_unknot():
    blocks = presentation_blocks(unknot(3), 3)
    assert blocks.coefficients == {(0,): ONE}
    assert blocks.eps == (0,)


def test_blocks_of_empty_presentation():
    blocks = presentation_blocks(SurgeryPresentation(), 2)
    assert dict(blocks.items()) == {(): ONE}


@pytest.mark.parametrize("s", range(1, 6))
def test_blocks_reconstruct(s):
    pres = hopf_pair(1, s)
    blocks = presentation_blocks(pres, 4)
    zero = pres.zero_framed()
    for n in range(1, 6):
        assert blocks.reconstruct((n,)) == jones_value(zero, (n,))
    assert set(blocks.quotients) == set(blocks.coefficients)


def test_blocks_two_components():
    pres = connected_sum(hopf_pair(1, 2), hopf_pair(-1, 3))
    table = JonesTable.from_presentation(pres.zero_framed(), 3)
    blocks = habiro_blocks(table, pres.epsilon_vector(), 2)
    assert blocks.eps == (1, 0)
    assert blocks.reconstruct((3, 2)) == table[(3, 2)]
    with pytest.raises(PresentationError):
        habiro_blocks(table, (1,), 2)


@pytest.mark.parametrize("r", [3, 4, 5])
def test_symmetry(r):
    spec = RootSpec(r)
    for pres in (unknot(2), hopf_pair(1, 2), hopf_pair(-2, 3)):
        for n in range(1, r):
            assert symmetry_check(pres, spec, (1,), (n,))
            assert symmetry_check(pres, spec, (0,), (n,))


def test_odd_colors():
    assert odd_colors_in_z_q(hopf_pair(1, 3), (5,))
    assert not jones_value(hopf_pair(0, 2), (1,)).in_z_q()
    with pytest.raises(ValueError):
        odd_colors_in_z_q(hopf_pair(1, 2), (5,))
