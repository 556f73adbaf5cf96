#!/usr/bin/env python3
"""
Tests for width-2 recognition of braces: elimination orderings, the greedy
search, certificate decompositions, ladders and the exhaustive oracles.
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.decomp_tree import width
from core.errors import CapExceeded, NotABrace, ValidationError, WidthNotTwo
from core.generators import all_braces, complete_bipartite
from core.graph_core import A, B, BipartiteGraph, are_isomorphic
from core.width2 import (
    EliminationOrdering,
    RefutationTag,
    add_reach_edge,
    brute_force_pmw,
    decomposition_from_ordering,
    fits_ladder,
    iter_leaf_labelled_trees,
    ladder,
    ladder_embedding,
    ladder_labelling,
    mew,
    order,
    ordering_from_decomposition,
    ordering_width,
    pmw2_check,
    shore_law_violations,
    spine_shore_report,
)


def test_small_ladders():
    assert are_isomorphic(ladder(2), complete_bipartite(2))
    assert are_isomorphic(ladder(3), complete_bipartite(3))
    l4 = ladder(4)
    assert len(l4.edges) == 15
    assert not l4.has_edge(1, 4)
    with pytest.raises(ValidationError):
        ladder(0)


def test_ordering_must_be_a_permutation(k33):
    with pytest.raises(ValidationError):
        EliminationOrdering((A(1), A(2)), k33)
    with pytest.raises(ValidationError):
        EliminationOrdering((A(1), A(1), A(2)), k33)


def test_ordering_profile(l5):
    ordering = EliminationOrdering(l5.a_vertices, l5)
    profile = ordering_width(ordering)
    assert profile.width == 2
    assert [row[1] for row in profile.rows] == [3, 4, 5, 5, 5]
    assert ordering.reach(A(2)) == frozenset(B(j) for j in range(1, 5))
    assert ordering.position(A(3)) == 3


def test_greedy_order_on_ladders():
    for n in range(3, 7):
        g = ladder(n)
        found = order(g)
        assert found is not None
        assert ordering_width(found).width == 2


def test_order_refuses_non_braces(c6):
    with pytest.raises(NotABrace):
        order(c6)


def test_order_fails_without_a_claw(k44):
    assert order(k44) is None


def test_mew():
    assert mew(ladder(4)).value == 2
    assert mew(complete_bipartite(3)).value == 2
    result = mew(complete_bipartite(4))
    assert result.value == 3
    assert ordering_width(result.ordering).width == 3
    assert mew(ladder(4), colour="b").value == 2
    with pytest.raises(CapExceeded):
        mew(ladder(5), cap=4)


def test_decomposition_from_ordering(l5):
    ordering = EliminationOrdering(l5.a_vertices, l5)
    d = decomposition_from_ordering(ordering)
    d.validate()
    assert width(d).width == 2
    assert shore_law_violations(d) == []
    laws = spine_shore_report(d)
    assert [len(law.shore) for law in laws] == [4, 6]
    assert all(law.balance == 2 for law in laws)


def test_decomposition_from_wide_ordering_fails(k44):
    with pytest.raises(WidthNotTwo):
        decomposition_from_ordering(EliminationOrdering(k44.a_vertices, k44))


def test_ordering_round_trip(l5):
    ordering = EliminationOrdering(l5.a_vertices, l5)
    back = ordering_from_decomposition(decomposition_from_ordering(ordering))
    assert back.order == ordering.order


def test_ladder_labelling_and_embedding(l5, k44, c6):
    ordering = EliminationOrdering(l5.a_vertices, l5)
    labels = ladder_labelling(ordering)
    assert labels == l5.b_vertices
    assert fits_ladder(l5, ordering.order, labels)
    assert ladder_embedding(c6) is not None
    assert ladder_embedding(k44) is None


def test_reach_edges_keep_the_ordering_width():
    edges = {(i, j) for i in range(1, 5) for j in range(1, 5) if j <= i + 2} - {(2, 1)}
    g = BipartiteGraph.from_counts(4, 4, edges)
    ordering = EliminationOrdering(g.a_vertices, g)
    grown = add_reach_edge(ordering, A(2), B(1))
    assert grown.host.has_edge(2, 1)
    assert ordering_width(grown).width == ordering_width(ordering).width
    with pytest.raises(ValidationError):
        add_reach_edge(ordering, A(1), B(4))


def test_pmw2_certificate_on_ladders(l5):
    certificate = pmw2_check(l5)
    assert certificate.success
    assert certificate.tag is None
    assert width(certificate.decomposition).width == 2
    assert fits_ladder(l5, certificate.ordering.order, certificate.ladder_labelling)


def test_pmw2_on_c4(c4):
    certificate = pmw2_check(c4)
    assert certificate.success
    assert width(certificate.decomposition).width == 2


def test_pmw2_refutations(k44, c6):
    certificate = pmw2_check(k44)
    assert not certificate.success
    assert certificate.refutation == RefutationTag.NO_DEGREE_3_START
    assert certificate.tag == "no-degree-3-start"

    with pytest.raises(NotABrace):
        pmw2_check(c6)
    lenient = pmw2_check(c6, reject_non_braces=False)
    assert lenient.tag == "not-a-brace"


def test_leaf_labelled_tree_counts():
    assert len(list(iter_leaf_labelled_trees(2))) == 1
    assert len(list(iter_leaf_labelled_trees(4))) == 3
    assert len(list(iter_leaf_labelled_trees(5))) == 15
    assert len(list(iter_leaf_labelled_trees(6))) == 105


def test_brute_force_pmw(k2, c4, c6, k33):
    assert brute_force_pmw(k2).value == 1
    assert brute_force_pmw(c4).value == 2
    assert brute_force_pmw(c6).value == 2
    result = brute_force_pmw(k33)
    assert result.value == 2
    assert width(result.decomposition).width == 2
    with pytest.raises(CapExceeded):
        brute_force_pmw(ladder(5))


def test_greedy_agrees_with_brute_force_on_small_braces():
    for n in (2, 3, 4):
        for g in all_braces(n):
            certificate = pmw2_check(g)
            assert certificate.success == (brute_force_pmw(g).value == 2)
