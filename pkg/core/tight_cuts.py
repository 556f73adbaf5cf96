# core/tight_cuts.py

"""
Tight cuts of matching covered bipartite graphs: recognition, search,
contraction, splicing (the inverse of contraction) and the full tight cut
decomposition into braces.
"""

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Tuple

from core.config import get_config, resolve_cap
from core.errors import CapExceeded, GraphValidationError, NoPerfectMatching, NotTight
from core.graph_core import (
    A,
    B,
    BipartiteGraph,
    Shore,
    Vertex,
    Verdict,
    are_isomorphic,
    check_shore,
    complement,
    cut_edges,
    format_shore,
    is_k_extendable,
    is_matching_covered,
    matching_porosity,
    perfect_matching_masks,
)

logger = logging.getLogger(__name__)


class BraceClass(Enum):
    C4 = "C4"
    K33 = "K33"
    OTHER = "other"


@dataclass(frozen=True)
class TightCutCheck:
    tight: bool
    trivial: bool
    method: str

    def __bool__(self) -> bool:
        return self.tight


@dataclass(frozen=True)
class TightCut:
    """A nontrivial tight cut, given by one of its shores."""
    shore: Shore

    def __post_init__(self):
        if len(self.shore) < 3 or len(self.shore) % 2 == 0:
            raise NotTight(f"tight cut shore must be odd with at least 3 vertices: {format_shore(self.shore)}")

    def __str__(self) -> str:
        return "{" + format_shore(self.shore) + "}"


class IdMint:
    """Hands out fresh vertex indices, per colour class, above everything seen so far."""

    def __init__(self, g: BipartiteGraph):
        self._next = {"a": g.max_index("a") + 1, "b": g.max_index("b") + 1}

    def fresh(self, side: str) -> Vertex:
        v = Vertex(side, self._next[side])
        self._next[side] += 1
        return v


@dataclass(frozen=True)
class ContractionRecord:
    parent: BipartiteGraph
    shore: Shore
    vertex: Vertex
    mapping: Dict[Vertex, Vertex] = field(hash=False, compare=False)

    @property
    def parent_id(self) -> int:
        return hash(self.parent)


@dataclass(frozen=True)
class GluingData:
    """
    A host together with one of its tight cuts and the two contractions:
    `g_z` has Z shrunk to `v_z`, `g_zbar` has the complement shrunk to `v_zbar`.
    """
    host: BipartiteGraph
    z: Shore
    g_z: BipartiteGraph
    v_z: Vertex
    g_zbar: BipartiteGraph
    v_zbar: Vertex


def small_brace_iso(g: BipartiteGraph) -> BraceClass:
    """Exact classification: C4, K3,3 or anything else."""
    if g.a_count == 2 and g.b_count == 2 and len(g.edges) == 4:
        return BraceClass.C4
    if g.a_count == 3 and g.b_count == 3 and len(g.edges) == 9:
        return BraceClass.K33
    return BraceClass.OTHER


def is_brace(g: BipartiteGraph) -> Verdict:
    """2-extendability for graphs on at least 6 vertices; C4 is a brace, K2 is trivial."""
    if g.order < 6:
        if small_brace_iso(g) == BraceClass.C4:
            return Verdict(True)
        if g.order == 2 and len(g.edges) == 1:
            return Verdict(False, "K2 is trivial")
        return Verdict(False, "too small to be a brace")
    return is_k_extendable(g, 2)


def _crossings_oracle(g: BipartiteGraph) -> Tuple[Callable[[Shore], bool], str]:
    """Tightness test for odd shores: exact enumeration below the cap, porosity above it."""
    if g.order <= get_config().tight_enum_cap:
        try:
            masks, position = perfect_matching_masks(g)
        except CapExceeded:
            masks = None
        if masks is not None:
            if not masks:
                raise NoPerfectMatching(f"{g} has no perfect matching")

            def by_enumeration(z: Shore) -> bool:
                cut_mask = 0
                for e in cut_edges(g, z):
                    cut_mask |= 1 << position[e]
                return all(bin(m & cut_mask).count("1") == 1 for m in masks)

            return by_enumeration, "enumeration"

    def by_porosity(z: Shore) -> bool:
        return matching_porosity(g, z) == 1

    return by_porosity, "porosity"


def is_tight_cut(g: BipartiteGraph, z) -> TightCutCheck:
    """
    Whether every perfect matching crosses ∂(Z) exactly once. Trivial cuts
    (a single vertex on one side) are tight and flagged as trivial.
    """
    z = check_shore(g, z)
    trivial = len(z) == 1 or len(z) == g.order - 1
    if len(z) % 2 == 0:
        return TightCutCheck(False, trivial, "parity")
    oracle, method = _crossings_oracle(g)
    if method == "porosity":
        logger.warning(f"Tightness of {{{format_shore(z)}}} decided by porosity, graph above enumeration cap")
    return TightCutCheck(oracle(z), trivial, method)


def _candidate_shores(g: BipartiteGraph) -> Iterator[Shore]:
    """
    Odd shores S ∪ N(S) with S inside one colour class and |N(S)| = |S| + 1.

    In a matching covered bipartite graph a tight cut has imbalance 1 and
    its minority class has no neighbour outside the shore, so every
    nontrivial tight cut has a shore of this form.
    """
    n = g.order
    seen = set()
    for size in range(1, (n - 4) // 2 + 1):
        for side in ("a", "b"):
            for subset in combinations(g.vertices_of(side), size):
                reach = g.neighbourhood(subset)
                if len(reach) != size + 1:
                    continue
                z = frozenset(subset) | reach
                if len(z) > n - 3:
                    continue
                key = min(tuple(sorted(z)), tuple(sorted(g.vertex_set - z)))
                if key in seen:
                    continue
                seen.add(key)
                yield z


def iter_nontrivial_tight_cuts(g: BipartiteGraph, cap: Optional[int] = None) -> Iterator[TightCut]:
    """Every nontrivial tight cut once (one shore per cut), in deterministic order."""
    cap = resolve_cap(cap, "tight_cut_cap")
    if g.order > cap:
        raise CapExceeded("tight cut search", g.order, cap)
    if g.order < 6:
        return
    oracle, method = _crossings_oracle(g)
    logger.debug(f"Searching tight cuts of {g} ({method} oracle)")
    for z in _candidate_shores(g):
        if oracle(z):
            yield TightCut(z)


def find_nontrivial_tight_cut(
    g: BipartiteGraph,
    cap: Optional[int] = None,
    rng: Optional[random.Random] = None,
) -> Optional[TightCut]:
    """
    Some nontrivial tight cut, or None when g is a brace. Without `rng` the
    first cut in deterministic order is returned; with `rng` a uniformly
    random one.
    """
    cuts = iter_nontrivial_tight_cuts(g, cap)
    if rng is None:
        return next(cuts, None)
    found = list(cuts)
    return rng.choice(found) if found else None


def contract(
    g: BipartiteGraph,
    z,
    mint: Optional[IdMint] = None,
    checked: bool = False,
) -> Tuple[BipartiteGraph, ContractionRecord]:
    """
    Identify Z to one fresh vertex v_Z and drop parallel edges. v_Z takes
    the majority colour of Z, which is the colour of every Z-endpoint of the
    cut.

    Raises:
        NotTight: if ∂(Z) is not a tight cut (trivial cuts are accepted)
    """
    z = check_shore(g, z)
    if not checked and not is_tight_cut(g, z):
        raise NotTight(f"{{{format_shore(z)}}} is not a tight cut")
    a_inside = sum(1 for v in z if v.side == "a")
    side = "a" if 2 * a_inside > len(z) else "b"
    v_z = mint.fresh(side) if mint is not None else Vertex(side, g.max_index(side) + 1)

    keep = complement(g, z)
    outside_neighbours = g.neighbourhood(z) & keep
    edges = set()
    for a, b in g.edges:
        if A(a) in keep and B(b) in keep:
            edges.add((a, b))
    for y in outside_neighbours:
        edges.add((v_z.index, y.index) if side == "a" else (y.index, v_z.index))

    kept = list(keep) + [v_z]
    contracted = BipartiteGraph(
        tuple(v.index for v in kept if v.side == "a"),
        tuple(v.index for v in kept if v.side == "b"),
        frozenset(edges),
    )
    mapping = {v: v for v in keep}
    mapping.update({v: v_z for v in z})
    logger.debug(f"Contracted {{{format_shore(z)}}} to {v_z}: {contracted}")
    return contracted, ContractionRecord(g, z, v_z, mapping)


def bicontract(g: BipartiteGraph, v: Vertex, mint: Optional[IdMint] = None) -> Tuple[BipartiteGraph, ContractionRecord]:
    """Contract the closed neighbourhood of a degree-2 vertex."""
    if g.degree(v) != 2:
        raise NotTight(f"bicontraction needs a degree-2 vertex, {v} has degree {g.degree(v)}")
    return contract(g, frozenset({v}) | g.neighbours(v), mint)


def gluing_data(g: BipartiteGraph, z, mint: Optional[IdMint] = None) -> GluingData:
    """Both contractions of one tight cut, ready for merging decompositions."""
    z = check_shore(g, z)
    if not is_tight_cut(g, z):
        raise NotTight(f"{{{format_shore(z)}}} is not a tight cut")
    mint = mint or IdMint(g)
    g_z, rec_z = contract(g, z, mint, checked=True)
    g_zbar, rec_zbar = contract(g, complement(g, z), mint, checked=True)
    return GluingData(g, z, g_z, rec_z.vertex, g_zbar, rec_zbar.vertex)


@dataclass(frozen=True)
class SpliceRecord:
    h_vertex: Vertex
    j_vertex: Vertex
    j_map: Dict[Vertex, Vertex] = field(hash=False, compare=False)
    shore: Shore = frozenset()


def splice(h: BipartiteGraph, v_h: Vertex, j: BipartiteGraph, v_j: Vertex) -> Tuple[BipartiteGraph, SpliceRecord]:
    """
    Inverse of tight cut contraction: remove v_h and v_j and join every
    neighbour of v_h to every neighbour of v_j. J is relabelled above H's
    indices (with its classes swapped when v_h and v_j share a colour). The
    image of V(J) − v_j is a tight cut shore whose contractions are H and J.
    """
    if not h.has_vertex(v_h) or not j.has_vertex(v_j):
        raise GraphValidationError("splice vertices must belong to their graphs")
    if v_h.side == v_j.side:
        j = j.swap_sides()
        v_j = Vertex(v_j.other_side, v_j.index)

    offset = {"a": h.max_index("a"), "b": h.max_index("b")}
    j_map = {u: Vertex(u.side, u.index + offset[u.side]) for u in j.vertices if u != v_j}

    a_ids = [v.index for v in h.a_vertices if v != v_h] + [u.index for u in j_map.values() if u.side == "a"]
    b_ids = [v.index for v in h.b_vertices if v != v_h] + [u.index for u in j_map.values() if u.side == "b"]
    edges = set()
    for a, b in h.edges:
        if v_h not in (A(a), B(b)):
            edges.add((a, b))
    for a, b in j.edges:
        if v_j not in (A(a), B(b)):
            edges.add((j_map[A(a)].index, j_map[B(b)].index))
    for x in h.neighbours(v_h):
        for y in j.neighbours(v_j):
            y = j_map[y]
            edges.add((x.index, y.index) if x.side == "a" else (y.index, x.index))

    spliced = BipartiteGraph(tuple(a_ids), tuple(b_ids), frozenset(edges))
    return spliced, SpliceRecord(v_h, v_j, j_map, frozenset(j_map.values()))


@dataclass
class TightCutNode:
    node_id: int
    graph: BipartiteGraph
    provenance: Dict[Vertex, FrozenSet[Vertex]]
    parent: Optional[int] = None
    cut: Optional[Shore] = None
    host_cut: Optional[Shore] = None
    # (child keeping the complement with Z shrunk, child keeping Z with the complement shrunk)
    children: Tuple[int, ...] = ()
    contraction_vertices: Tuple[Vertex, ...] = ()
    brace_class: Optional[BraceClass] = None

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class BraceTree:
    """Leaf braces joined along the tight cuts used between them."""
    nodes: List[int]
    edges: Dict[FrozenSet[int], Shore]
    owner: Dict[Vertex, int]

    def neighbours(self, node: int) -> List[int]:
        return sorted(next(iter(e - {node})) for e in self.edges if node in e)

    def path(self, source: int, target: int) -> List[int]:
        """Unique path between two braces."""
        previous = {source: None}
        frontier = [source]
        while frontier:
            current = frontier.pop()
            if current == target:
                break
            for nxt in self.neighbours(current):
                if nxt not in previous:
                    previous[nxt] = current
                    frontier.append(nxt)
        route = [target]
        while previous[route[-1]] is not None:
            route.append(previous[route[-1]])
        return list(reversed(route))


@dataclass
class TightCutTree:
    """Binary history of tight cut contractions; leaves are braces."""
    host: BipartiteGraph
    nodes: Dict[int, TightCutNode] = field(default_factory=dict)
    root: int = 0

    def leaves(self) -> List[TightCutNode]:
        return [self.nodes[i] for i in sorted(self.nodes) if self.nodes[i].is_leaf]

    def braces(self) -> List[BipartiteGraph]:
        return [node.graph for node in self.leaves()]

    @property
    def bricks(self) -> List[BipartiteGraph]:
        # Contractions of bipartite graphs stay bipartite
        return []

    def brace_classes(self) -> List[str]:
        return sorted(node.brace_class.value for node in self.leaves())

    def laminar_family(self) -> List[Shore]:
        return [self.nodes[i].host_cut for i in sorted(self.nodes) if self.nodes[i].host_cut is not None]

    def brace_tree(self) -> BraceTree:
        owner: Dict[Vertex, int] = {}
        for leaf in self.leaves():
            for v in leaf.graph.vertices:
                owner[v] = leaf.node_id
        edges: Dict[FrozenSet[int], Shore] = {}
        for node in self.nodes.values():
            if node.is_leaf:
                continue
            v_z, v_zbar = node.contraction_vertices
            edges[frozenset({owner[v_z], owner[v_zbar]})] = node.host_cut
        return BraceTree(sorted(leaf.node_id for leaf in self.leaves()), edges, owner)


def tight_cut_decomposition(
    g: BipartiteGraph,
    cap: Optional[int] = None,
    rng: Optional[random.Random] = None,
) -> TightCutTree:
    """
    Contract nontrivial tight cuts until every piece is a brace.

    With `rng` the cut taken at each step is chosen at random; the multiset
    of braces does not depend on that choice.
    """
    cap = resolve_cap(cap, "tight_cut_cap")
    if g.order > cap:
        raise CapExceeded("tight cut decomposition", g.order, cap)
    covered = is_matching_covered(g)
    if not covered:
        raise GraphValidationError(f"tight cut decomposition needs a matching covered graph ({covered.reason})")

    mint = IdMint(g)
    tree = TightCutTree(host=g)
    tree.nodes[0] = TightCutNode(0, g, {v: frozenset({v}) for v in g.vertices})
    pending = [0]
    next_id = 1
    while pending:
        node = tree.nodes[pending.pop(0)]
        cut = find_nontrivial_tight_cut(node.graph, cap, rng)
        if cut is None:
            node.brace_class = small_brace_iso(node.graph)
            logger.debug(f"Node {node.node_id} is a brace ({node.brace_class.value}): {node.graph}")
            continue

        z = cut.shore
        zbar = complement(node.graph, z)
        g_z, rec_z = contract(node.graph, z, mint, checked=True)
        g_zbar, rec_zbar = contract(node.graph, zbar, mint, checked=True)
        inside = frozenset().union(*(node.provenance[v] for v in z))
        outside = frozenset().union(*(node.provenance[v] for v in zbar))

        node.cut = z
        node.host_cut = inside
        node.contraction_vertices = (rec_z.vertex, rec_zbar.vertex)
        prov_z = {v: node.provenance[v] for v in zbar}
        prov_z[rec_z.vertex] = inside
        prov_zbar = {v: node.provenance[v] for v in z}
        prov_zbar[rec_zbar.vertex] = outside

        tree.nodes[next_id] = TightCutNode(next_id, g_z, prov_z, parent=node.node_id)
        tree.nodes[next_id + 1] = TightCutNode(next_id + 1, g_zbar, prov_zbar, parent=node.node_id)
        node.children = (next_id, next_id + 1)
        pending.extend(node.children)
        logger.info(f"Tight cut {cut} in node {node.node_id} split into nodes {next_id}, {next_id + 1}")
        next_id += 2

    logger.info(f"Tight cut decomposition of {g}: braces {tree.brace_classes()}")
    return tree


def same_brace_multiset(first: List[BipartiteGraph], second: List[BipartiteGraph]) -> bool:
    """Whether two brace lists agree up to isomorphism (as multisets)."""
    if len(first) != len(second):
        return False
    remaining = list(second)
    for brace in first:
        for i, other in enumerate(remaining):
            if are_isomorphic(brace, other):
                del remaining[i]
                break
        else:
            return False
    return True


def contraction_path(tree: TightCutTree, node_id: int) -> List[TightCutNode]:
    """Nodes from the root down to `node_id`; each step is one tight cut contraction."""
    path = [tree.nodes[node_id]]
    while path[-1].parent is not None:
        path.append(tree.nodes[path[-1].parent])
    return list(reversed(path))


def is_matching_minor_by_reduction(h: BipartiteGraph, g: BipartiteGraph, cap: Optional[int] = None) -> Verdict:
    """
    Sufficient test that h is a matching minor of g: some brace of g is
    isomorphic to h. Braces are reached from g by tight cut contractions,
    and every tight cut contraction is a matching minor. A negative answer
    proves nothing.
    """
    tree = tight_cut_decomposition(g, cap)
    for leaf in tree.leaves():
        if are_isomorphic(leaf.graph, h):
            steps = contraction_path(tree, leaf.node_id)
            return Verdict(True, witness=[node.node_id for node in steps])
    return Verdict(False, "no brace of the host is isomorphic to the target")
