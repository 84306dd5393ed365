# ---------------------------------------------------------------
# test_group_action.py
#
# Purpose:
#   Unit tests for permutation groups, orbits and the primitivity
#   classification in scripts/group_action.py.
#
# Requirements:
#   - Dependencies: pytest, scripts/group_action, scripts/families.
#
# Output:
#   - Asserts group orders, orbit sizes and the class of small vertex
#     sets of the 2-subsets of [4].
# ---------------------------------------------------------------

# tests/test_group_action.py

import pytest

from scripts.combinatorics import mask_from_elements
from scripts.errors import BudgetExceededError, ParameterError
from scripts.families import SetFamily
from scripts.group_action import (
    GroupAction,
    Primitivity,
    act_mask,
    classify_primitivity,
    is_imprimitive_set,
    is_semi_imprimitive,
)


def test_act_mask():
    assert act_mask((1, 0, 2), 0b001) == 0b010
    assert act_mask((2, 0, 1), 0b011) == 0b101


def test_group_orders():
    assert len(GroupAction.symmetric(4).elements()) == 24
    assert len(GroupAction.parse("2,1,3;2,3,1", 3).elements()) == 6
    assert len(GroupAction.parse("2,3,4,1", 4).elements()) == 4


def test_parse_rejects_bad_generators():
    with pytest.raises(ParameterError):
        GroupAction.parse("1,1,2", 3)
    with pytest.raises(ParameterError):
        GroupAction.parse("a,b", 2)
    with pytest.raises(ParameterError):
        GroupAction.parse(" ; ", 3)


def test_orbit_and_budget():
    s4 = GroupAction.symmetric(4)
    edge = [mask_from_elements([1, 2])]
    assert len(s4.orbit(edge)) == 6
    with pytest.raises(BudgetExceededError):
        s4.orbit(edge, budget=3)


def test_perfect_matching_is_imprimitive():
    s4 = GroupAction.symmetric(4)
    b = SetFamily.from_sets([[1, 2], [3, 4]], 4)
    assert is_imprimitive_set(b, s4)
    assert classify_primitivity(b, s4) is Primitivity.IMPRIMITIVE


def test_path_of_two_edges_is_semi_imprimitive():
    s4 = GroupAction.symmetric(4)
    b = SetFamily.from_sets([[1, 2], [1, 3]], 4)
    assert not is_imprimitive_set(b, s4)
    assert is_semi_imprimitive(b, s4)
    assert classify_primitivity(b, s4) is Primitivity.SEMI_IMPRIMITIVE


def test_path_of_three_edges_is_primitive():
    s4 = GroupAction.symmetric(4)
    b = SetFamily.from_sets([[1, 2], [2, 3], [3, 4]], 4)
    assert classify_primitivity(b, s4) is Primitivity.PRIMITIVE


def test_trivial_sizes_and_blown_budget():
    s4 = GroupAction.symmetric(4)
    assert classify_primitivity(SetFamily.from_sets([[1, 2]], 4), s4) is Primitivity.PRIMITIVE
    b = SetFamily.from_sets([[1, 2], [1, 3]], 4)
    assert classify_primitivity(b, s4, budget=2) is Primitivity.UNKNOWN
    with pytest.raises(ParameterError):
        is_imprimitive_set(SetFamily.from_sets([[1, 2]], 4), s4)
