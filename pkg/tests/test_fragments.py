# ---------------------------------------------------------------
# test_fragments.py
#
# Purpose:
#   Unit tests for the conflict graph, the nontrivial independence
#   number, fragments and the fragment-structure checks in
#   scripts/fragments.py.
#
# Requirements:
#   - Dependencies: pytest, scipy (through scripts/fragments).
#
# Output:
#   - Asserts α, ε and d(X) on small instances, the census of small
#     fragments and the verdict of each check.
#
# Notes:
#   - At (4,2,{1}) the imprimitive fragments are the three pairs
#     {A, [4] \ A}; at (6,2,{1,2}) every single vertex is a fragment.
# ---------------------------------------------------------------

# tests/test_fragments.py

import pytest

from config.settings import EXIT_MISMATCH
from scripts.combinatorics import LSpec
from scripts.errors import InvariantError, ParameterError, exit_code_for
from scripts.families import SetFamily
from scripts.fragments import (
    PASS,
    UNKNOWN,
    alpha_exhaustive,
    alpha_nontrivial,
    build_graph,
    check_imprimitive_fragment,
    check_primitive_fragments,
    closure_audit,
    enumerate_fragments,
    epsilon,
    fragments_report,
    imprimitive_are_complementary_pairs,
    is_fragment,
    phi,
)
from scripts.group_action import Primitivity


def test_graph_degree_matches_closed_form():
    assert build_graph(4, 2, LSpec.of([1], 2)).degree == 2
    assert build_graph(6, 2, LSpec.of([1, 2], 2)).degree == 6
    assert build_graph(5, 2, LSpec.of([2], 2)).degree == 9
    with pytest.raises(ParameterError):
        build_graph(5, 1, LSpec.of([0], 1))
    with pytest.raises(ParameterError):
        build_graph(5, 2, LSpec.of([0], 3))


def test_graph_degree_disagreement_raises_an_engine_error(monkeypatch):
    monkeypatch.setattr("scripts.fragments.closed_form_degree", lambda n, k, L: -1)
    with pytest.raises(InvariantError, match="closed form"):
        build_graph(4, 2, LSpec.of([1], 2))
    assert exit_code_for(InvariantError("x")) == EXIT_MISMATCH


@pytest.mark.parametrize("n, k, values, alpha", [
    (4, 2, [1], 6),
    (6, 2, [1, 2], 10),
    (5, 2, [2], 2),
    (5, 2, [0, 1], 10),
])
def test_alpha_agrees_with_exhaustive_scan(n, k, values, alpha):
    g = build_graph(n, k, LSpec.of(values, k))
    result = alpha_nontrivial(g)
    assert result.value == alpha
    assert alpha_exhaustive(g) == alpha
    assert alpha_nontrivial(g, use_symmetry=False).value == alpha
    assert len(result.x_side) + len(result.y_side) == alpha


def test_alpha_with_threads():
    g = build_graph(6, 2, LSpec.of([1, 2], 2))
    assert alpha_nontrivial(g, threads=2).value == 10


def test_complete_bipartite_graph_has_no_alpha():
    g = build_graph(3, 2, LSpec.of([0], 2))
    assert alpha_nontrivial(g) is None
    assert alpha_exhaustive(g) is None
    with pytest.raises(ParameterError):
        epsilon(g)


def test_epsilon_and_is_fragment():
    g = build_graph(6, 2, LSpec.of([1, 2], 2))
    assert epsilon(g) == 5
    assert epsilon(g, "Y") == 5
    assert is_fragment(g, SetFamily.from_sets([[1, 2]], 6))
    assert not is_fragment(g, SetFamily.from_sets([[1, 2], [3, 4]], 6))
    with pytest.raises(ParameterError):
        epsilon(g, "Z")


def test_census_of_complementary_pairs():
    g = build_graph(4, 2, LSpec.of([1], 2))
    census = enumerate_fragments(g, size_cap=2)
    assert census.epsilon == 0
    assert census.complete and not census.exhaustive
    assert [rec.vertices.to_sets() for rec in census.records] == [
        [[1, 2], [3, 4]],
        [[1, 3], [2, 4]],
        [[2, 3], [1, 4]],
    ]
    assert all(rec.primitivity is Primitivity.IMPRIMITIVE for rec in census.records)
    assert imprimitive_are_complementary_pairs(census)
    assert enumerate_fragments(g, size_cap=1).records == []


def test_size_capped_census_at_six_three():
    g = build_graph(6, 3, LSpec.of([1, 2], 3))
    census = enumerate_fragments(g, size_cap=2)
    assert census.epsilon == 0
    assert len(census.records) == 10
    for rec in census.records:
        a, b = rec.vertices.members
        assert a ^ b == 0b111111
    assert all(rec.primitivity is Primitivity.IMPRIMITIVE for rec in census.records)
    assert imprimitive_are_complementary_pairs(census)


def test_checks_on_complementary_pairs():
    g = build_graph(4, 2, LSpec.of([1], 2))
    census = enumerate_fragments(g, size_cap=2)
    primitive = check_primitive_fragments(census)
    assert primitive["verdict"] == PASS
    assert primitive["star_bound"] == 5
    assert primitive["size_diagnostic"] == UNKNOWN
    imprimitive = check_imprimitive_fragment(census)
    assert imprimitive["hypothesis"] is True
    assert imprimitive["verdict"] == PASS
    assert closure_audit(census)["verdict"] == PASS


def test_single_vertex_fragments():
    g = build_graph(6, 2, LSpec.of([1, 2], 2))
    census = enumerate_fragments(g, size_cap=1)
    assert len(census.records) == 15
    assert census.records[0].primitivity is Primitivity.PRIMITIVE
    assert check_primitive_fragments(census)["branch"] == "equality"
    imprimitive = check_imprimitive_fragment(census)
    assert imprimitive["hypothesis"] is False
    assert imprimitive["verdict"] == PASS


def test_phi_maps_to_the_partner_side():
    g = build_graph(6, 2, LSpec.of([1, 2], 2))
    record = enumerate_fragments(g, size_cap=1).records[0]
    partner = phi(g, record)
    assert partner.side == "Y"
    assert len(partner.vertices) == 9
    assert not partner.balanced


def test_census_limits():
    g = build_graph(6, 2, LSpec.of([1, 2], 2))
    with pytest.raises(ParameterError):
        enumerate_fragments(g, size_cap=0)
    truncated = enumerate_fragments(g, size_cap=3, budget=5)
    assert not truncated.complete
    assert check_primitive_fragments(truncated)["size_diagnostic"] == UNKNOWN


def test_fragments_report():
    g = build_graph(4, 2, LSpec.of([1], 2))
    census = enumerate_fragments(g, size_cap=2)
    report = fragments_report(census, {"primitive_fragments": {"verdict": PASS}})
    assert report["alpha"] == 6
    assert report["epsilonX"] == report["epsilonY"] == 0
    assert report["dX"] == 2
    assert len(report["fragments"]) == 3
    assert report["primitive_fragments"]["verdict"] == PASS
