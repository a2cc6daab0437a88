"""Finite Abelian group arithmetic: torsion, halving, enumeration."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ballab.abelian import (
    FiniteAbelianGroup,
    GroupElement,
    GroupStructure,
    element_at,
    element_index,
    element_order,
    enumerate_elements,
    half,
    in_double_image,
    in_two_torsion,
    parse_element,
    parse_group,
    structure_cardinality,
    two_torsion_count,
)
from ballab.errors import BoundExceededError, FormatError

moduli_strategy = st.lists(st.integers(1, 12), min_size=1, max_size=3).map(tuple)


@st.composite
def group_and_element(draw):
    group = FiniteAbelianGroup(draw(moduli_strategy))
    residues = tuple(draw(st.integers(0, n - 1)) for n in group.moduli)
    return group, GroupElement(group, residues)


class TestGroupBasics:
    def test_parse_group(self):
        assert parse_group("Z2xZ4").moduli == (2, 4)
        assert parse_group("z6").moduli == (6,)

    def test_parse_group_rejects_garbage(self):
        for bad in ("", "Z", "Z2x", "2", "Z2 x Z4", "Z0"):
            with pytest.raises(FormatError):
                parse_group(bad)

    def test_parse_element(self):
        group = parse_group("Z2xZ4")
        assert parse_element(group, "1,6").residues == (1, 2)
        with pytest.raises(FormatError):
            parse_element(group, "1")
        with pytest.raises(FormatError):
            parse_element(group, "1,x")

    def test_rejects_bad_moduli(self):
        with pytest.raises(ValueError):
            FiniteAbelianGroup((0,))

    def test_arithmetic(self):
        group = parse_group("Z4")
        a = group.element([3])
        assert (a + a).residues == (2,)
        assert (-a).residues == (1,)
        assert (3 * a).residues == (1,)
        with pytest.raises(ValueError):
            a + parse_group("Z5").element([1])


class TestOrderAndTorsion:
    def test_order_examples(self):
        assert element_order(parse_group("Z6"), parse_group("Z6").element([3])) == 2
        g24 = parse_group("Z2xZ4")
        assert element_order(g24, g24.element([1, 2])) == 2
        assert element_order(g24, g24.zero()) == 1

    def test_two_torsion_examples(self):
        assert two_torsion_count(parse_group("Z4")) == 2
        assert two_torsion_count(parse_group("Z3")) == 1
        g6 = parse_group("Z6")
        assert in_two_torsion(g6, g6.element([3]))

    @settings(max_examples=100, deadline=None)
    @given(group_and_element())
    def test_order_divides_group_order(self, pair):
        group, a = pair
        assert group.order % element_order(group, a) == 0

    @settings(max_examples=100, deadline=None)
    @given(group_and_element())
    def test_order_is_minimal(self, pair):
        group, a = pair
        m = element_order(group, a)
        assert (m * a).is_zero()
        assert all(not (j * a).is_zero() for j in range(1, m))


class TestHalving:
    def test_examples(self):
        g6 = parse_group("Z6")
        assert half(g6, g6.element([4])).residues == (2,)
        g4 = parse_group("Z4")
        assert half(g4, g4.element([1])) is None
        g3 = parse_group("Z3")
        assert half(g3, g3.element([1])).residues == (2,)

    @settings(max_examples=100, deadline=None)
    @given(group_and_element())
    def test_half_of_double(self, pair):
        group, a = pair
        doubled = 2 * a
        assert in_double_image(group, doubled)
        assert (2 * half(group, doubled)) == doubled

    @settings(max_examples=60, deadline=None)
    @given(moduli_strategy.filter(lambda m: len(m) <= 2 and max(m) <= 8))
    def test_torsion_double_image_factorization(self, moduli):
        group = FiniteAbelianGroup(moduli)
        if group.order > 64:
            return
        elements = list(enumerate_elements(group))
        doubles = {2 * a for a in elements}
        torsion = [a for a in elements if in_two_torsion(group, a)]
        assert group.order == len(torsion) * len(doubles)
        assert len(torsion) == two_torsion_count(group)
        assert doubles == {a for a in elements if in_double_image(group, a)}


class TestStructureCardinality:
    def test_examples(self):
        g4 = parse_group("Z4")
        assert structure_cardinality(GroupStructure(exp_A=2, exp_A2=1), g4) == 32
        assert structure_cardinality(GroupStructure(exp_A=5), parse_group("Z2")) == 32
        assert structure_cardinality(GroupStructure(), parse_group("Z6")) == 1

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            GroupStructure(exp_A=-1)

    def test_describe(self):
        assert GroupStructure(exp_A=5).describe() == "A^5"
        assert GroupStructure(exp_A=2, exp_A2=1).describe() == "A^2 x A_2^1"
        assert GroupStructure(exp_A=1, exp_2A=3).describe() == "A^1 x (2A)^3"
        assert GroupStructure().describe() == "1"


class TestEnumeration:
    def test_z2xz2(self):
        group = parse_group("Z2xZ2")
        assert [a.residues for a in enumerate_elements(group)] == [
            (0, 0),
            (0, 1),
            (1, 0),
            (1, 1),
        ]

    def test_z3(self):
        assert [a.residues for a in enumerate_elements(parse_group("Z3"))] == [
            (0,),
            (1,),
            (2,),
        ]

    def test_trivial(self):
        assert len(list(enumerate_elements(parse_group("Z1")))) == 1

    def test_bound(self):
        with pytest.raises(BoundExceededError):
            list(enumerate_elements(parse_group("Z100"), bound=50))

    @settings(max_examples=60, deadline=None)
    @given(group_and_element())
    def test_element_index_roundtrip(self, pair):
        group, a = pair
        assert element_at(group, element_index(group, a)) == a

    def test_index_matches_enumeration(self):
        group = parse_group("Z3xZ2")
        for i, a in enumerate(enumerate_elements(group)):
            assert element_index(group, a) == i
            assert element_at(group, i) == a
