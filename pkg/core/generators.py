# core/generators.py

"""
Graph families and random instances for tests, fixtures and the CLI.
"""

import logging
import random
from itertools import combinations, product
from typing import List, Optional, Tuple

from core.decomp_tree import CubicTree, DecompositionTree
from core.errors import ValidationError
from core.graph_core import (
    BipartiteGraph,
    Matching,
    Vertex,
    are_isomorphic,
    enumerate_perfect_matchings,
    is_connected,
)
from core.m_width_digraph import Digraph
from core.tight_cuts import is_brace, splice

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 10_000


def complete_bipartite(n: int, m: Optional[int] = None) -> BipartiteGraph:
    m = n if m is None else m
    return BipartiteGraph.from_counts(n, m, product(range(1, n + 1), range(1, m + 1)))


def even_cycle(n: int) -> BipartiteGraph:
    """C_2n: a_i b_i and a_i b_(i+1), indices mod n."""
    if n < 2:
        raise ValidationError("an even cycle needs n >= 2")
    edges = {(i, i) for i in range(1, n + 1)} | {(i, i % n + 1) for i in range(1, n + 1)}
    return BipartiteGraph.from_counts(n, n, edges)


def bidirected_complete(k: int) -> Digraph:
    return Digraph.bidirected(k, combinations(range(1, k + 1), 2))


def directed_cycle(k: int) -> Digraph:
    return Digraph.from_count(k, {(i, i % k + 1) for i in range(1, k + 1)})


def random_digraph(n: int, p: float, rng: random.Random) -> Digraph:
    arcs = {(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v and rng.random() < p}
    return Digraph.from_count(n, arcs)


def matching_covered_core(g: BipartiteGraph) -> BipartiteGraph:
    """The edges of g lying in some perfect matching."""
    used = set()
    for m in enumerate_perfect_matchings(g):
        used |= m.pairs
    return BipartiteGraph(g.a_ids, g.b_ids, frozenset(used))


def random_matching_covered(n: int, p: float, rng: random.Random) -> BipartiteGraph:
    """
    Random matching covered graph on n + n vertices: a random perfect
    matching plus random edges, keeping only edges in some perfect matching,
    retried until connected.
    """
    for _ in range(MAX_ATTEMPTS):
        partners = list(range(1, n + 1))
        rng.shuffle(partners)
        edges = {(a, partners[a - 1]) for a in range(1, n + 1)}
        edges |= {(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if rng.random() < p}
        g = matching_covered_core(BipartiteGraph.from_counts(n, n, edges))
        if is_connected(g):
            return g
    raise ValidationError(f"no connected matching covered graph found for n={n}, p={p}")


def random_brace(n: int, p: float, rng: random.Random) -> BipartiteGraph:
    """Random brace on n + n vertices by rejection."""
    for _ in range(MAX_ATTEMPTS):
        g = random_matching_covered(n, p, rng)
        if is_brace(g):
            return g
    raise ValidationError(f"no brace found for n={n}, p={p}")


def random_splice_chain(pieces: List[BipartiteGraph], rng: random.Random) -> BipartiteGraph:
    """Splice braces one after another at random vertices; every splice leaves a tight cut."""
    host = pieces[0]
    for piece in pieces[1:]:
        v_h = rng.choice(host.vertices)
        v_j = rng.choice(piece.vertices)
        host, _ = splice(host, v_h, piece, v_j)
    return compact(host)


def compact(g: BipartiteGraph) -> BipartiteGraph:
    """Renumber both classes to 1..n, keeping relative order."""
    a_map = {a: i for i, a in enumerate(g.a_ids, start=1)}
    b_map = {b: j for j, b in enumerate(g.b_ids, start=1)}
    return BipartiteGraph.from_counts(g.a_count, g.b_count, {(a_map[a], b_map[b]) for a, b in g.edges})


def all_braces(n: int) -> List[BipartiteGraph]:
    """Every brace on n + n vertices up to isomorphism (n <= 4)."""
    if n > 4:
        raise ValidationError("exhaustive brace generation is limited to n <= 4")
    if n == 1:
        return []
    cells = list(product(range(1, n + 1), range(1, n + 1)))
    found: List[BipartiteGraph] = []
    for size in range(2 * n if n == 2 else 3 * n, n * n + 1):
        for edges in combinations(cells, size):
            g = BipartiteGraph.from_counts(n, n, edges)
            if n >= 3 and min(g.degree(v) for v in g.vertices) < 3:
                continue
            if not is_brace(g):
                continue
            if any(are_isomorphic(g, h) for h in found):
                continue
            found.append(g)
    logger.debug(f"{len(found)} braces on {n}+{n} vertices")
    return found


def random_cubic_tree(leaves: int, rng: random.Random) -> Tuple[CubicTree, List[int]]:
    """Random cubic tree by inserting leaves on random edges; returns the tree and its leaves in insertion order."""
    if leaves < 2:
        raise ValidationError("a decomposition tree needs at least two leaves")
    if leaves == 2:
        return CubicTree.from_edges([(0, 1)]), [0, 1]
    edges = [(0, leaves), (1, leaves), (2, leaves)]
    next_inner = leaves + 1
    for leaf in range(3, leaves):
        u, v = edges.pop(rng.randrange(len(edges)))
        edges += [(u, next_inner), (next_inner, v), (next_inner, leaf)]
        next_inner += 1
    return CubicTree.from_edges(edges), list(range(leaves))


def random_decomposition(g: BipartiteGraph, rng: random.Random, anchor: Optional[Matching] = None) -> DecompositionTree:
    tree, leaves = random_cubic_tree(g.order, rng)
    vertices = list(g.vertices)
    rng.shuffle(vertices)
    return DecompositionTree(tree, dict(zip(leaves, vertices)), g, anchor)


def random_m_decomposition(g: BipartiteGraph, m: Matching, rng: random.Random) -> DecompositionTree:
    """Random decomposition in which every edge of m is a cherry, so every inner shore is M-conformal."""
    pairs = [(Vertex("a", a), Vertex("b", b)) for a, b in m.edge_list]
    rng.shuffle(pairs)
    count = len(pairs)
    if count == 1:
        return DecompositionTree(CubicTree.from_edges([(0, 1)]), {0: pairs[0][0], 1: pairs[0][1]}, g, m)
    # shape over the cherry heads
    if count == 2:
        shape_edges = [(0, 1)]
    else:
        shape, _ = random_cubic_tree(count, rng)
        shape_edges = shape.edge_list
    offset = max(max(e) for e in shape_edges) + 1
    edges = list(shape_edges)
    delta = {}
    for head, (first, second) in enumerate(pairs):
        leaf_first, leaf_second = offset + 2 * head, offset + 2 * head + 1
        edges += [(head, leaf_first), (head, leaf_second)]
        delta[leaf_first] = first
        delta[leaf_second] = second
    return DecompositionTree(CubicTree.from_edges(edges), delta, g, m)
