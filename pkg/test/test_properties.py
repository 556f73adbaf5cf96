#!/usr/bin/env python3
"""
Property tests over random small graphs and digraphs (hypothesis drives the
seeds, the generators build the instances).
"""

import os
import random
import sys

from hypothesis import assume, given, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.decomp_tree import classify_edges, contract_decomposition, eliminate_odd_edges, width, z_orientation
from core.generators import (
    even_cycle,
    random_decomposition,
    random_digraph,
    random_m_decomposition,
    random_matching_covered,
)
from core.graph_core import (
    A,
    B,
    balance,
    enumerate_perfect_matchings,
    first_perfect_matching,
    is_k_extendable,
    matching_porosity,
    shore,
)
from core.m_width_digraph import (
    CyclewidthStatus,
    Route,
    brute_force_cyclewidth,
    brute_force_mpmw,
    cyclewidth2_check,
    directed_tree_decomposition_w2,
    is_strongly_k_connected,
    m_direction,
    mpmw2_check,
    split_graph,
    validate_directed_tree_decomposition,
)
from core.tight_cuts import same_brace_multiset, tight_cut_decomposition
from core.width2 import brute_force_pmw, ladder, pmw2_check

seeds = st.integers(min_value=0, max_value=2 ** 16)
small = settings(max_examples=25, deadline=None)


def _random_shore(g, rng):
    vertices = list(g.vertices)
    size = rng.randrange(1, len(vertices))
    return frozenset(rng.sample(vertices, size))


@small
@given(seeds, st.integers(min_value=2, max_value=4))
def test_porosity_engines_agree(seed, n):
    rng = random.Random(seed)
    g = random_matching_covered(n, 0.5, rng)
    x = _random_shore(g, rng)
    value = matching_porosity(g, x, "assignment")
    assert value == matching_porosity(g, x, "enumerate")
    assert value % 2 == len(x) % 2
    assert value >= abs(balance(g, x))


@small
@given(seeds, st.integers(min_value=2, max_value=4))
def test_random_decompositions_have_width_at_least_two(seed, n):
    rng = random.Random(seed)
    g = random_matching_covered(n, 0.5, rng)
    assert width(random_decomposition(g, rng)).width >= 2


@small
@given(seeds, st.integers(min_value=2, max_value=4))
def test_odd_edge_elimination_bound(seed, n):
    rng = random.Random(seed)
    g = random_matching_covered(n, 0.5, rng)
    d = random_decomposition(g, rng)
    before = width(d).width
    cleaned = eliminate_odd_edges(d)
    assert classify_edges(cleaned.tree).odd_edges == []
    assert width(cleaned).width <= before + before % 2


def _once_crossed_odd_shore(m, rng):
    """Some M-pairs whole plus one endpoint of another pair: odd, and crossed by exactly one M-edge."""
    pairs = [(A(a), B(b)) for a, b in m.edge_list]
    rng.shuffle(pairs)
    whole = pairs[:rng.randrange(len(pairs))]
    split = pairs[len(whole)]
    return frozenset(v for pair in whole for v in pair) | {rng.choice(split)}


@small
@given(seeds)
def test_contraction_keeps_the_width_bound_and_z_orientation_has_one_sink(seed):
    rng = random.Random(seed)
    c6 = even_cycle(3)
    m = first_perfect_matching(c6)
    z = shore("a1,b1,b2")
    d = random_m_decomposition(c6, m, rng)
    assert width(contract_decomposition(d, z), strict=False).width <= width(d).width
    orientation = z_orientation(d, z)
    assert orientation.sink is not None
    assert orientation.sinks == (orientation.sink,)


@small
@given(seeds, st.integers(min_value=2, max_value=4))
def test_m_anchored_z_orientation_has_one_sink(seed, n):
    rng = random.Random(seed)
    g = random_matching_covered(n, 0.5, rng)
    m = rng.choice(enumerate_perfect_matchings(g))
    d = random_m_decomposition(g, m, rng)
    orientation = z_orientation(d, _once_crossed_odd_shore(m, rng))
    assert orientation.inconsistencies == frozenset()
    assert orientation.sink is not None
    assert orientation.sinks == (orientation.sink,)


@small
@given(seeds, st.integers(min_value=2, max_value=4), st.sampled_from([1, 2]))
def test_k_extendable_iff_m_direction_strongly_k_connected(seed, n, k):
    assume(n >= k + 1)
    rng = random.Random(seed)
    g = random_matching_covered(n, 0.5, rng)
    m = rng.choice(enumerate_perfect_matchings(g))
    assert bool(is_k_extendable(g, k)) == is_strongly_k_connected(m_direction(g, m).digraph, k)


@small
@given(seeds, seeds)
def test_brace_multiset_ignores_cut_choice(graph_seed, cut_seed):
    g = random_matching_covered(4, 0.4, random.Random(graph_seed))
    first = [leaf.graph for leaf in tight_cut_decomposition(g).leaves()]
    second = [leaf.graph for leaf in tight_cut_decomposition(g, rng=random.Random(cut_seed)).leaves()]
    assert same_brace_multiset(first, second)


@small
@given(seeds, st.integers(min_value=1, max_value=5))
def test_split_graph_and_m_direction_are_inverse(seed, n):
    d = random_digraph(n, 0.4, random.Random(seed))
    g, m = split_graph(d)
    assert m.is_perfect(g)
    assert m_direction(g, m).digraph == d


@small
@given(seeds, st.integers(min_value=2, max_value=4))
def test_cyclewidth_two_matches_brute_force(seed, n):
    d = random_digraph(n, 0.5, random.Random(seed))
    verdict = cyclewidth2_check(d, Route.BOTH)
    if verdict.status == CyclewidthStatus.ACYCLIC:
        assert brute_force_cyclewidth(d).width == 0
    elif verdict.status == CyclewidthStatus.WIDTH_TWO:
        assert brute_force_cyclewidth(d).width <= 2
    else:
        assert brute_force_cyclewidth(d).width > 2


@small
@given(seeds, st.integers(min_value=2, max_value=4))
def test_moving_one_vertex_changes_porosity_by_one(seed, n):
    rng = random.Random(seed)
    g = random_matching_covered(n, 0.5, rng)
    x = _random_shore(g, rng)
    outside = [v for v in g.vertices if v not in x]
    assume(len(outside) > 1)
    grown = x | {rng.choice(outside)}
    assert abs(matching_porosity(g, grown) - matching_porosity(g, x)) <= 1


@settings(max_examples=9, deadline=None)
@given(st.integers(min_value=2, max_value=10))
def test_ladders_have_width_two(n):
    certificate = pmw2_check(ladder(n))
    assert certificate.success
    assert width(certificate.decomposition).width == 2


@small
@given(seeds, st.integers(min_value=2, max_value=4))
def test_mpmw2_does_not_depend_on_the_matching(seed, n):
    g = random_matching_covered(n, 0.5, random.Random(seed))
    answers = {mpmw2_check(g, m).ok for m in enumerate_perfect_matchings(g)}
    assert len(answers) == 1


@settings(max_examples=10, deadline=None)
@given(seeds, st.integers(min_value=2, max_value=3))
def test_m_width_sandwich(seed, n):
    rng = random.Random(seed)
    g = random_matching_covered(n, 0.6, rng)
    m = rng.choice(enumerate_perfect_matchings(g))
    pmw = brute_force_pmw(g).value
    mpmw = brute_force_mpmw(g, m).value
    assert pmw <= mpmw <= 2 * pmw


@small
@given(seeds, st.integers(min_value=2, max_value=4))
def test_directed_tree_decompositions_validate(seed, n):
    d = random_digraph(n, 0.6, random.Random(seed))
    assume(d.is_strongly_connected())
    assume(cyclewidth2_check(d).status == CyclewidthStatus.WIDTH_TWO)
    dtd = directed_tree_decomposition_w2(d)
    report = validate_directed_tree_decomposition(d, dtd, max_width=2)
    assert report.valid
    assert all(len(guard) == 1 for guard in dtd.guards.values())
