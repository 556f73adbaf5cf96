#!/usr/bin/env python3
"""
Tests for the matching-relative side: M-directions and split graphs,
M-anchored width-2 decompositions, butterfly minors, cyclic porosity,
cyclewidth 2 and directed tree decompositions.
"""

import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.decomp_tree import width
from core.errors import CapExceeded, NotContractible, NotPerfect, NotWidth2, StructureViolation, ValidationError
from core.generators import (
    bidirected_complete,
    complete_bipartite,
    directed_cycle,
    even_cycle,
    random_splice_chain,
)
from core.graph_core import Matching, first_perfect_matching
from core.m_width_digraph import (
    CyclewidthStatus,
    Digraph,
    DirectedTreeDecomposition,
    Route,
    brute_force_cyclewidth,
    brute_force_mpmw,
    butterfly_contract,
    cyclewidth2_check,
    cyclic_porosity,
    directed_tree_decomposition_w2,
    has_butterfly_minor,
    has_forbidden_2conn_butterfly_minor,
    is_strongly_k_connected,
    m_direction,
    mpmw2_check,
    mpmw2_decompose,
    split_graph,
    validate_directed_tree_decomposition,
    validate_m_decomposition,
)
from core.width2 import ladder


def test_m_direction_of_c4_is_a_digon(c4, identity):
    direction = m_direction(c4, identity(2))
    assert direction.digraph.arcs == frozenset({(1, 2), (2, 1)})
    assert direction.vertex_map == {(1, 1): 1, (2, 2): 2}


def test_m_direction_needs_a_perfect_matching(c4):
    with pytest.raises(NotPerfect):
        m_direction(c4, Matching.of([(1, 1)]))


def test_split_graph_inverts_m_direction(triangle, bi_k4):
    g, m = split_graph(triangle)
    assert g == even_cycle(3)
    assert m_direction(g, m).digraph == triangle
    g, m = split_graph(bi_k4)
    assert g == complete_bipartite(4)
    assert m_direction(g, m).digraph == bi_k4


def test_mpmw2_on_even_cycle(c6):
    m = first_perfect_matching(c6)
    result = mpmw2_check(c6, m)
    assert result
    assert result.brace_classes == ["C4", "C4"]
    report = validate_m_decomposition(result.decomposition)
    assert report.conformal
    assert report.width == 2


def test_mpmw2_on_spliced_braces(k33, c4, rng):
    host = random_splice_chain([k33, c4, k33], rng)
    m = first_perfect_matching(host)
    d = mpmw2_decompose(host, m)
    d.validate()
    assert d.anchor == m
    assert width(d).width == 2


def test_mpmw2_rejects_other_braces(k2, l4, identity):
    result = mpmw2_check(l4, identity(4))
    assert not result
    assert result.witness == l4
    with pytest.raises(NotWidth2):
        mpmw2_decompose(l4, identity(4))
    assert not mpmw2_check(k2, identity(1))


def test_mpmw2_agrees_with_brute_force(c6, k33, identity):
    for g in (c6, k33):
        m = first_perfect_matching(g)
        assert mpmw2_check(g, m).ok == (brute_force_mpmw(g, m).value == 2)
    assert brute_force_mpmw(complete_bipartite(4), identity(4)).value > 2


def test_butterfly_contraction(triangle, bi_k3):
    contracted = butterfly_contract(triangle, (1, 2))
    assert contracted.vertices == (1, 3)
    assert contracted.arcs == frozenset({(1, 3), (3, 1)})
    with pytest.raises(NotContractible):
        butterfly_contract(bi_k3, (1, 2))
    with pytest.raises(NotContractible):
        butterfly_contract(triangle, (2, 1))


def test_strong_connectivity(triangle, bi_k3, bi_k4):
    assert is_strongly_k_connected(bi_k3, 2)
    assert is_strongly_k_connected(bi_k4, 3)
    assert not is_strongly_k_connected(triangle, 2)
    assert not is_strongly_k_connected(bi_k3, 3)


def test_forbidden_minor_search(bi_k3, bi_k4):
    found = has_forbidden_2conn_butterfly_minor(bi_k4)
    assert found
    assert found.witness.order == 4
    assert not has_forbidden_2conn_butterfly_minor(bi_k3)
    assert not has_forbidden_2conn_butterfly_minor(directed_cycle(5))
    with pytest.raises(CapExceeded):
        has_forbidden_2conn_butterfly_minor(directed_cycle(6), cap=5)


def test_named_minor_search(bi_k3, digon):
    assert has_butterfly_minor(directed_cycle(4), directed_cycle(3))
    assert has_butterfly_minor(directed_cycle(4), digon)
    assert not has_butterfly_minor(directed_cycle(4), bi_k3)
    assert has_butterfly_minor(bidirected_complete(4), bi_k3)
    with pytest.raises(ValidationError):
        has_butterfly_minor(bi_k3, Digraph.from_count(2, {(1, 2)}))


def test_cyclic_porosity(bi_k3, bi_k4):
    assert cyclic_porosity(bi_k3, {1}) == 2
    assert cyclic_porosity(bi_k4, {1, 2}) == 4
    assert cyclic_porosity(directed_cycle(4), {1, 2}) == 2
    assert cyclic_porosity(Digraph.from_count(3, {(1, 2), (2, 3)}), {2}) == 0


def test_brute_force_cyclewidth(bi_k3, bi_k4):
    assert brute_force_cyclewidth(bi_k3).width == 2
    assert brute_force_cyclewidth(bi_k4).width == 4
    assert brute_force_cyclewidth(directed_cycle(4)).width == 2
    assert brute_force_cyclewidth(Digraph.from_count(3, {(1, 2), (2, 3)})).width == 0
    assert brute_force_cyclewidth(Digraph.from_count(1, set())).width == 0


def test_cyclewidth2_routes(triangle, bi_k3, bi_k4):
    acyclic = Digraph.from_count(3, {(1, 2), (2, 3), (1, 3)})
    assert cyclewidth2_check(acyclic).status == CyclewidthStatus.ACYCLIC
    for via in (Route.BIPARTITE, Route.MINORS, Route.BOTH):
        assert cyclewidth2_check(triangle, via).width_two
        assert cyclewidth2_check(bi_k3, via).width_two
        verdict = cyclewidth2_check(bi_k4, via)
        assert verdict.status == CyclewidthStatus.ABOVE_TWO
        assert verdict.witness is not None


def test_cyclewidth_routes_agree_on_random_digraphs():
    from core.generators import random_digraph

    rng = random.Random(7)
    for _ in range(12):
        d = random_digraph(5, 0.35, rng)
        try:
            cyclewidth2_check(d, Route.BOTH)
        except StructureViolation as e:
            pytest.fail(str(e))


def test_directed_tree_decomposition_of_a_cycle(triangle):
    dtd = directed_tree_decomposition_w2(triangle)
    assert len(dtd.nodes) == 2
    assert all(len(guard) == 1 for guard in dtd.guards.values())
    report = validate_directed_tree_decomposition(triangle, dtd, max_width=2)
    assert report.valid
    assert report.near_partition
    assert dtd.width <= 2


def test_directed_tree_decomposition_of_longer_cycles_and_bi_k3(bi_k3):
    for d in (directed_cycle(5), bi_k3):
        dtd = directed_tree_decomposition_w2(d)
        assert validate_directed_tree_decomposition(d, dtd, max_width=2).valid


def test_directed_tree_decomposition_refusals(bi_k4):
    with pytest.raises(NotWidth2):
        directed_tree_decomposition_w2(bi_k4)
    with pytest.raises(NotWidth2):
        directed_tree_decomposition_w2(Digraph.from_count(3, {(1, 2), (2, 3)}))
    two_triangles = Digraph.from_count(6, {(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)})
    assert cyclewidth2_check(two_triangles).status == CyclewidthStatus.WIDTH_TWO
    with pytest.raises(NotWidth2):
        directed_tree_decomposition_w2(two_triangles)
    single = directed_tree_decomposition_w2(Digraph.from_count(1, set()))
    assert single.bags == {0: frozenset({1})}


def test_validator_catches_broken_decompositions(triangle):
    overlapping = DirectedTreeDecomposition(
        triangle, 0, [(0, 1)], {0: frozenset({1, 2}), 1: frozenset({2, 3})}, {(0, 1): frozenset({1})}
    )
    report = validate_directed_tree_decomposition(triangle, overlapping)
    assert not report.near_partition
    assert not report.valid

    # without a guard the bag below is left and re-entered along the cycle
    unguarded = DirectedTreeDecomposition(
        triangle, 0, [(0, 1)], {0: frozenset({1}), 1: frozenset({2, 3})}, {(0, 1): frozenset()}
    )
    report = validate_directed_tree_decomposition(triangle, unguarded)
    assert (0, 1) in report.normality_violations
