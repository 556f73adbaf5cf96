#!/usr/bin/env python3
"""
Tests for braces, tight cuts, contractions, splicing and the tight cut
decomposition.
"""

import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.errors import CapExceeded, GraphValidationError, NotTight
from core.generators import all_braces, complete_bipartite, even_cycle, random_splice_chain
from core.graph_core import A, B, are_isomorphic, complement, shore
from core.tight_cuts import (
    BraceClass,
    IdMint,
    bicontract,
    contract,
    contraction_path,
    find_nontrivial_tight_cut,
    gluing_data,
    is_brace,
    is_matching_minor_by_reduction,
    is_tight_cut,
    iter_nontrivial_tight_cuts,
    same_brace_multiset,
    small_brace_iso,
    splice,
    tight_cut_decomposition,
)
from core.width2 import ladder


def test_small_braces(k2, c4, k33, k44, c6):
    assert is_brace(c4)
    assert is_brace(k33)
    assert is_brace(k44)
    assert is_brace(ladder(4))
    assert not is_brace(c6)
    verdict = is_brace(k2)
    assert not verdict
    assert verdict.reason == "K2 is trivial"


def test_brace_classes(c4, k33, k44):
    assert small_brace_iso(c4) == BraceClass.C4
    assert small_brace_iso(k33) == BraceClass.K33
    assert small_brace_iso(k44) == BraceClass.OTHER


def test_tight_cut_checks(c6, k33):
    check = is_tight_cut(c6, shore("a1,b1,b2"))
    assert check.tight and not check.trivial
    assert not is_tight_cut(k33, shore("a1,b1,b2"))
    assert is_tight_cut(k33, shore("a1")).trivial

    even = is_tight_cut(c6, shore("a1,b1"))
    assert not even.tight
    assert even.method == "parity"


def test_braces_have_no_nontrivial_tight_cut(k33, k44):
    assert find_nontrivial_tight_cut(k33) is None
    assert find_nontrivial_tight_cut(k44) is None
    assert find_nontrivial_tight_cut(ladder(5)) is None


def test_even_cycle_tight_cuts(c6):
    cuts = list(iter_nontrivial_tight_cuts(even_cycle(4)))
    assert cuts
    for cut in cuts:
        assert len(cut.shore) % 2 == 1
        assert is_tight_cut(even_cycle(4), cut.shore).tight
    assert find_nontrivial_tight_cut(c6, rng=random.Random(3)) is not None


def test_tight_cut_search_respects_cap(c6):
    with pytest.raises(CapExceeded):
        list(iter_nontrivial_tight_cuts(c6, cap=4))


def test_contract_keeps_majority_colour(c6):
    contracted, record = contract(c6, shore("a1,b1,b2"))
    assert record.vertex.side == "b"
    assert small_brace_iso(contracted) == BraceClass.C4
    assert record.mapping[A(1)] == record.vertex
    with pytest.raises(NotTight):
        contract(complete_bipartite(3), shore("a1,b1,b2"))


def test_bicontraction(c6, k33):
    contracted, record = bicontract(c6, B(1))
    assert record.shore == shore("b1,a1,a3")
    assert contracted.order == 4
    assert small_brace_iso(contracted) == BraceClass.C4
    with pytest.raises(NotTight):
        bicontract(k33, A(1))


def test_fresh_ids_never_collide(c6):
    mint = IdMint(c6)
    first, second = mint.fresh("a"), mint.fresh("a")
    assert first != second
    assert not c6.has_vertex(first) and not c6.has_vertex(second)


def test_gluing_data_contractions(c6):
    z = shore("a1,b1,b2")
    gluing = gluing_data(c6, z)
    assert gluing.g_z.has_vertex(gluing.v_z)
    assert gluing.g_zbar.has_vertex(gluing.v_zbar)
    assert gluing.g_z.order + gluing.g_zbar.order == c6.order + 2
    assert gluing.v_z.side != gluing.v_zbar.side


def test_splice_inverts_contraction(k33):
    spliced, record = splice(k33, A(1), k33, B(1))
    assert spliced.order == 10
    check = is_tight_cut(spliced, record.shore)
    assert check.tight and not check.trivial
    contracted, _ = contract(spliced, record.shore)
    assert are_isomorphic(contracted, k33)
    contracted, _ = contract(spliced, complement(spliced, record.shore))
    assert are_isomorphic(contracted, k33)


def test_decomposition_of_even_cycles(c6):
    tree = tight_cut_decomposition(c6)
    assert tree.brace_classes() == ["C4", "C4"]
    assert len(tree.laminar_family()) == 1
    assert tight_cut_decomposition(even_cycle(4)).brace_classes() == ["C4", "C4", "C4"]


def test_decomposition_of_a_brace_is_one_leaf(k33):
    tree = tight_cut_decomposition(k33)
    assert len(tree.leaves()) == 1
    assert tree.laminar_family() == []
    assert tree.brace_classes() == ["K33"]


def test_decomposition_needs_matching_covered():
    from core.graph_core import BipartiteGraph

    g = BipartiteGraph.from_counts(2, 2, {(1, 1), (1, 2), (2, 2)})
    with pytest.raises(GraphValidationError):
        tight_cut_decomposition(g)


def test_brace_multiset_is_independent_of_cut_order(k33, c4):
    host = random_splice_chain([k33, c4, k33], random.Random(5))
    first = tight_cut_decomposition(host)
    assert sorted(first.brace_classes()) == ["C4", "K33", "K33"]
    for seed in range(3):
        again = tight_cut_decomposition(host, rng=random.Random(seed))
        assert same_brace_multiset(first.braces(), again.braces())


def test_laminar_family_is_laminar(k33, c4):
    host = random_splice_chain([k33, c4, k33, c4], random.Random(11))
    family = tight_cut_decomposition(host).laminar_family()
    for x in family:
        x_bar = host.vertex_set - x
        for y in family:
            y_bar = host.vertex_set - y
            corners = (x & y, x & y_bar, x_bar & y, x_bar & y_bar)
            assert any(not corner for corner in corners)


def test_brace_tree_joins_braces(c6):
    tree = tight_cut_decomposition(even_cycle(4))
    braces = tree.brace_tree()
    assert len(braces.nodes) == 3
    assert len(braces.edges) == 2
    path = braces.path(braces.nodes[0], braces.nodes[-1])
    assert path[0] == braces.nodes[0] and path[-1] == braces.nodes[-1]


def test_contraction_path_starts_at_root(c6):
    tree = tight_cut_decomposition(c6)
    leaf = tree.leaves()[0]
    steps = contraction_path(tree, leaf.node_id)
    assert steps[0].node_id == tree.root
    assert steps[-1].node_id == leaf.node_id


def test_matching_minor_by_reduction(c4, c6, k33):
    verdict = is_matching_minor_by_reduction(c4, c6)
    assert verdict
    assert verdict.witness[0] == 0
    assert not is_matching_minor_by_reduction(k33, c6)


def test_all_braces_on_small_orders():
    assert len(all_braces(2)) == 1
    assert len(all_braces(3)) == 1
    assert are_isomorphic(all_braces(3)[0], complete_bipartite(3))
