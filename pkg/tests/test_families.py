# ---------------------------------------------------------------
# test_families.py
#
# Purpose:
#   Unit tests for family values, intersection predicates, shadows,
#   restrictions, threshold families, complements and the shadow
#   bound checks in scripts/families.py.
#
# Requirements:
#   - Dependencies: numpy, pytest, scripts/families, scripts/constructions.
#
# Output:
#   - Asserts predicate results on hand-built families and the shadow
#     bound on a seeded random corpus.
#
# Notes:
#   - Random inputs use numpy.random.default_rng with fixed seeds.
# ---------------------------------------------------------------

# tests/test_families.py

from fractions import Fraction

import numpy as np
import pytest

from scripts.combinatorics import LSpec, all_k_masks, mask_from_elements
from scripts.constructions import construct_pairwise_extremal
from scripts.errors import ParameterError
from scripts.families import (
    FamilyTuple,
    SetFamily,
    complement_family,
    complement_sets,
    is_complement_closed,
    is_cross_L,
    is_L_intersecting,
    is_pairwise_cross_L,
    is_rcross_L,
    lovasz_check,
    random_family,
    random_pairwise_tuple,
    restrict,
    rwise_profiles,
    shadow,
    shadow_corpus,
    strip,
    threshold_S,
    threshold_S_value,
    threshold_separation_audit,
    threshold_T,
    threshold_T_value,
)


def star(n, k, element=1):
    bit = 1 << (element - 1)
    return SetFamily.of((m for m in all_k_masks(n, k) if m & bit), n, k)


def test_family_construction_and_validation():
    f = SetFamily.from_sets([[1, 3], [1, 2], [1, 3]], 4)
    assert f.to_sets() == [[1, 2], [1, 3]]
    assert f.k == 2 and len(f) == 2
    assert mask_from_elements([1, 2]) in f
    assert str(f) == "{{1,2}, {1,3}}"
    with pytest.raises(ParameterError):
        SetFamily(4, 2, (5, 3))
    with pytest.raises(ParameterError):
        SetFamily(4, 2, (7,))
    with pytest.raises(ParameterError):
        SetFamily.from_sets([[1, 5]], 4)


def test_union_and_intersection():
    a = SetFamily.from_sets([[1, 2], [1, 3]], 4)
    b = SetFamily.from_sets([[1, 3], [2, 4]], 4)
    assert a.union(b).to_sets() == [[1, 2], [1, 3], [2, 4]]
    assert a.intersection(b).to_sets() == [[1, 3]]
    with pytest.raises(ParameterError):
        a.union(SetFamily.complete(5, 2))


def test_cross_and_intersecting_predicates():
    a = SetFamily.from_sets([[1, 2]], 4)
    b = SetFamily.from_sets([[3, 4]], 4)
    assert is_cross_L(a, b, LSpec.of([0], 2))
    assert not is_cross_L(a, b, LSpec.of([1], 2))
    assert is_L_intersecting(star(5, 2), LSpec.of([1], 2))
    assert not is_L_intersecting(SetFamily.complete(4, 2), LSpec.of([1], 2))
    with pytest.raises(ParameterError):
        is_cross_L(a, b, LSpec.of([0], 3))


def test_shared_set_counts_as_intersection_k():
    a = SetFamily.from_sets([[1, 2]], 4)
    assert is_cross_L(a, a, LSpec.of([2], 2))
    assert not is_cross_L(a, a, LSpec.of([0, 1], 2))


def test_pairwise_and_rcross():
    t = FamilyTuple.of(
        SetFamily.from_sets([[1, 2]], 4),
        SetFamily.from_sets([[1, 3]], 4),
        SetFamily.from_sets([[1, 4]], 4),
    )
    assert is_pairwise_cross_L(t, LSpec.of([1], 2))
    assert is_rcross_L(t, LSpec.of([1], 2))
    assert not is_rcross_L(t, LSpec.of([0], 2))
    assert rwise_profiles(t) == {1}
    with pytest.raises(ParameterError):
        is_rcross_L(FamilyTuple.of(star(4, 2)), LSpec.of([1], 2))


def test_rcross_and_cross_coincide_for_two_families():
    rng = np.random.default_rng(3)
    L = LSpec.of([0, 2], 3)
    for _ in range(20):
        a = random_family(6, 3, 4, rng)
        b = random_family(6, 3, 4, rng)
        assert is_rcross_L(FamilyTuple.of(a, b), L) == is_cross_L(a, b, L)


def test_shadow():
    f = SetFamily.from_sets([[1, 2, 3]], 5)
    assert shadow(f, 2).to_sets() == [[1, 2], [1, 3], [2, 3]]
    assert len(shadow(SetFamily.complete(5, 3), 1)) == 5
    assert shadow(f, 3) == f
    with pytest.raises(ParameterError):
        shadow(f, 4)


@pytest.mark.parametrize("n, k", [(6, 3), (7, 4), (8, 5)])
def test_shadow_of_a_shadow_is_a_shadow(n, k):
    rng = np.random.default_rng(n + k)
    for _ in range(10):
        f = random_family(n, k, int(rng.integers(1, 15)), rng)
        for j in range(1, k + 1):
            for i in range(j + 1):
                assert shadow(shadow(f, j), i) == shadow(f, i), (j, i)


def test_restrict_and_strip():
    f = star(5, 2)
    one = mask_from_elements([1])
    assert restrict(f, one) == f
    assert len(restrict(SetFamily.complete(5, 2), mask_from_elements([2]))) == 4
    stripped = strip(f, one)
    assert stripped.k == 1
    assert stripped.to_sets() == [[2], [3], [4], [5]]
    assert len(restrict(f, mask_from_elements([1, 2, 3]))) == 0


def test_threshold_families():
    f = star(6, 2)
    assert threshold_S_value(6, 2, 1) == Fraction(7, 2)
    assert threshold_T_value(6, 2, 1) == 1
    assert threshold_S(f, 1).to_sets() == [[1]]
    assert len(threshold_T(f, 1)) == 6
    with pytest.raises(ParameterError):
        threshold_S(f, 0)


def test_complements():
    f = SetFamily.from_sets([[1, 2], [3, 4]], 4)
    assert is_complement_closed(f)
    assert not is_complement_closed(SetFamily.from_sets([[1, 2]], 4))
    assert not is_complement_closed(SetFamily.complete(5, 2))
    assert len(complement_family(f)) == 4
    assert complement_sets(SetFamily.from_sets([[1, 2]], 5)).to_sets() == [[3, 4, 5]]


def test_lovasz_check_on_a_star():
    report = lovasz_check(star(5, 2), 1)
    assert report["size"] == 4
    assert report["shadow_size"] == 5
    assert report["x"] == pytest.approx((1 + 33 ** 0.5) / 2, abs=1e-6)
    assert report["satisfied"] and report["cap_satisfied"]
    assert report["size_cap"] == pytest.approx(10.0, abs=1e-6)


def test_lovasz_check_is_tight_on_complete_layers():
    layer = SetFamily.of(all_k_masks(4, 2), 7, 2)
    report = lovasz_check(layer, 1)
    assert report["shadow_size"] == 4
    assert report["lovasz_lower_bound"] == pytest.approx(4.0, abs=1e-6)
    assert abs(report["slack"]) < 1e-6


def test_lovasz_check_levels():
    with pytest.raises(ParameterError):
        lovasz_check(star(5, 2), 2)
    with pytest.raises(ParameterError):
        lovasz_check(star(5, 2), 0)
    empty = lovasz_check(SetFamily.empty(5, 3), 1)
    assert empty["satisfied"] and empty["x"] is None


def test_shadow_corpus():
    report = shadow_corpus(7, 3, trials=60, seed=0)
    assert report["levels"] == [1, 2]
    assert report["checked"] == 120
    assert report["violations"] == 0
    assert report["cap_violations"] == 0
    assert report["min_slack"] >= -1e-6
    assert report["equality_checked"] == 10
    assert report["equality_tight"] == report["equality_checked"]


@pytest.mark.parametrize("n, k", [(4, 2), (5, 3), (6, 2), (6, 4), (7, 3), (8, 4)])
def test_shadow_corpus_grid(n, k):
    report = shadow_corpus(n, k, trials=30, seed=n * 10 + k)
    assert report["violations"] == 0
    assert report["cap_violations"] == 0
    assert report["equality_checked"] == (n - k + 1) * (k - 1)
    assert report["equality_tight"] == report["equality_checked"]


def test_shadow_corpus_is_seeded():
    first = shadow_corpus(6, 3, trials=10, seed=5, i=1)
    second = shadow_corpus(6, 3, trials=10, seed=5, i=1)
    assert first == second


def test_random_family():
    rng = np.random.default_rng(0)
    f = random_family(6, 2, 5, rng)
    assert len(f) == 5
    with pytest.raises(ParameterError):
        random_family(4, 2, 7, rng)


def test_random_pairwise_tuples_are_valid():
    rng = np.random.default_rng(1)
    for L in [LSpec.of([0, 3], 3), LSpec.of([1, 3], 3), LSpec.of([0, 2], 2)]:
        t = random_pairwise_tuple(6, L.k, 3, L, rng)
        assert t.all_nonempty()
        assert is_pairwise_cross_L(t, L)


def test_threshold_separation_audit_on_constructed_tuples():
    L = LSpec.of([0, 2], 2)
    t = construct_pairwise_extremal(6, 2, 3, L)
    report = threshold_separation_audit(t, L)
    assert report["applicable"]
    assert report["s"] == 1
    assert report["allowed"] == [0]
    assert report["violations"] == []


def test_threshold_separation_audit_on_random_tuples():
    rng = np.random.default_rng(7)
    L = LSpec.of([0, 3], 3)
    for _ in range(10):
        t = random_pairwise_tuple(6, 3, 3, L, rng)
        report = threshold_separation_audit(t, L)
        assert report["applicable"]
        assert report["violations"] == []


def test_threshold_separation_audit_not_applicable():
    L = LSpec.of([1, 2], 2)
    t = construct_pairwise_extremal(6, 2, 2, L)
    assert not threshold_separation_audit(t, L)["applicable"]
