#!/usr/bin/env python3
"""
Tests for the bipartite graph model: vertices and shores, matchings,
matching coverage, extendability and matching porosity.
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.cache import get_cache_stats
from core.errors import GraphValidationError, InvalidShore, NoPerfectMatching, NotPerfect, TooSmall
from core.generators import complete_bipartite, even_cycle
from core.graph_core import (
    A,
    B,
    BipartiteGraph,
    Matching,
    Vertex,
    are_isomorphic,
    balance,
    check_shore,
    cut_edges,
    enumerate_perfect_matchings,
    first_perfect_matching,
    format_shore,
    has_perfect_matching,
    is_conformal,
    is_k_extendable,
    is_matching_covered,
    matching_porosity,
    matching_porosity_certificate,
    maximum_matching,
    restrict_matching,
    shore,
)
from core.width2 import ladder


def test_vertex_names():
    assert Vertex.parse("a3") == A(3)
    assert Vertex.parse(" b12 ") == B(12)
    assert str(B(7)) == "b7"
    assert A(1).other_side == "b"
    with pytest.raises(InvalidShore):
        Vertex.parse("c1")
    with pytest.raises(InvalidShore):
        Vertex.parse("a")


def test_shore_helpers():
    x = shore("a1,b2", "b1")
    assert x == frozenset({A(1), B(1), B(2)})
    assert format_shore(x) == "a1,b1,b2"
    assert balance(complete_bipartite(3), x) == 1


def test_graph_rejects_missing_vertices():
    with pytest.raises(GraphValidationError):
        BipartiteGraph((1, 2), (1,), frozenset({(1, 2)}))
    with pytest.raises(GraphValidationError):
        BipartiteGraph((0,), (1,), frozenset())


def test_graph_accessors(c6):
    assert c6.order == 6
    assert c6.a_count == 3 and c6.b_count == 3
    assert c6.neighbours(A(1)) == frozenset({B(1), B(2)})
    assert c6.neighbours(B(1)) == frozenset({A(1), A(3)})
    assert c6.degree(A(2)) == 2
    assert c6.has_edge(3, 1) and not c6.has_edge(1, 3)
    assert c6.induced(shore("a1,b1,b2")).edge_list == [(1, 1), (1, 2)]


def test_check_shore(c4):
    with pytest.raises(InvalidShore):
        check_shore(c4, [])
    with pytest.raises(InvalidShore):
        check_shore(c4, c4.vertex_set)
    with pytest.raises(InvalidShore):
        check_shore(c4, [A(9)])
    assert check_shore(c4, c4.vertex_set, proper=False) == c4.vertex_set


def test_cut_edges(c6):
    assert cut_edges(c6, shore("a1,b1")) == [(1, 2), (3, 1)]


def test_perfect_matchings_are_enumerated_once():
    assert len(enumerate_perfect_matchings(even_cycle(3))) == 2
    assert len(enumerate_perfect_matchings(complete_bipartite(3))) == 6
    matchings = enumerate_perfect_matchings(complete_bipartite(4))
    assert len(matchings) == 24
    assert len(set(matchings)) == 24
    assert all(m.is_perfect(complete_bipartite(4)) for m in matchings)


def test_maximum_matching_and_perfect(c6):
    m = maximum_matching(c6)
    assert len(m) == 3
    assert m.is_perfect(c6)
    assert first_perfect_matching(c6).is_perfect(c6)
    assert not has_perfect_matching(complete_bipartite(2, 3))
    assert has_perfect_matching(c6, removed=[A(1), B(1)])
    with pytest.raises(NoPerfectMatching):
        first_perfect_matching(BipartiteGraph.from_counts(2, 2, {(1, 1), (2, 1)}))


def test_matching_partner_and_restriction(c6):
    m = Matching.of([(1, 1), (2, 2), (3, 3)])
    assert m.partner(A(2)) == B(2)
    assert m.partner(B(3)) == A(3)
    assert restrict_matching(c6, m, shore("a1,b1,a2")).pairs == frozenset({(1, 1)})


def test_matching_covered():
    assert is_matching_covered(even_cycle(3))
    assert is_matching_covered(complete_bipartite(3))

    # a1b2 lies in no perfect matching
    g = BipartiteGraph.from_counts(2, 2, {(1, 1), (1, 2), (2, 2)})
    verdict = is_matching_covered(g)
    assert not verdict
    assert verdict.witness == (1, 2)

    two_edges = BipartiteGraph.from_counts(2, 2, {(1, 1), (2, 2)})
    assert is_matching_covered(two_edges).reason == "disconnected"


def test_extendability(c4, c6, k33, k44):
    assert is_k_extendable(c6, 1)
    assert is_k_extendable(k33, 2)
    assert is_k_extendable(k44, 3)
    verdict = is_k_extendable(c6, 2)
    assert not verdict
    assert isinstance(verdict.witness, Matching)
    with pytest.raises(TooSmall):
        is_k_extendable(c4, 2)


def test_porosity_of_tight_and_loose_cuts(c6, k33):
    # a claw closed under the minority class is crossed exactly once
    assert matching_porosity(c6, shore("a1,b1,b2")) == 1
    assert matching_porosity(c6, shore("a1,b1")) == 2
    assert matching_porosity(k33, shore("a1,b1")) == 2
    assert matching_porosity(k33, shore("a1,b1,b2")) == 3


def test_porosity_engines_agree(k44):
    for names in ("a1,b1", "a1,a2,b1", "a1,a2,b3,b4", "a1,b2,b3"):
        x = shore(names)
        by_assignment = matching_porosity(k44, x, engine="assignment")
        by_enumeration = matching_porosity(k44, x, engine="enumerate")
        assert by_assignment == by_enumeration


def test_porosity_certificate_attains_value(l5):
    x = shore("a1,b1,b2,b3,a2")
    result = matching_porosity_certificate(l5, x)
    crossing = sum(1 for a, b in result.matching.pairs if (A(a) in x) != (B(b) in x))
    assert result.matching.is_perfect(l5)
    assert crossing == result.value
    assert result.engine == "assignment"


def test_porosity_is_cached(k33):
    x = shore("a1,b1")
    matching_porosity(k33, x)
    before = get_cache_stats()["hits"]
    matching_porosity(k33, x)
    assert get_cache_stats()["hits"] == before + 1


def test_porosity_without_perfect_matching():
    g = BipartiteGraph.from_counts(2, 2, {(1, 1), (2, 1)})
    with pytest.raises(NoPerfectMatching):
        matching_porosity(g, shore("a1,b1"))


def test_conformal_sets(k33):
    assert is_conformal(k33, shore("a1,b1,a2,b2"))
    assert not is_conformal(k33, shore("a1,a2,b1"))
    m = Matching.of([(1, 1), (2, 2), (3, 3)])
    assert is_conformal(k33, shore("a1,b1"), m)
    assert not is_conformal(k33, shore("a1,b2"), m)
    with pytest.raises(NotPerfect):
        is_conformal(k33, shore("a1,b1"), Matching.of([(1, 1)]))


def test_isomorphism_respects_colour_classes():
    assert are_isomorphic(ladder(3), complete_bipartite(3))
    assert are_isomorphic(even_cycle(3), even_cycle(3).swap_sides())
    assert not are_isomorphic(even_cycle(3), ladder(3))
    # K_{1,2} plus an isolated vertex, with the classes swapped
    g = BipartiteGraph.from_counts(1, 2, {(1, 1), (1, 2)})
    h = BipartiteGraph.from_counts(2, 1, {(1, 1), (2, 1)})
    assert are_isomorphic(g, h)
