# core/decomp_tree.py

"""
Perfect matching decompositions as data.

A decomposition is a cubic tree whose leaves are mapped bijectively onto the
vertices of a host graph; every tree edge splits the leaves into two shores
and its width is the matching porosity of that cut. This module validates
and measures decompositions, analyses spines and odd edges, and implements
the tree surgeries used to transform them: odd-edge elimination,
restriction to conformal subgraphs, tight cut contraction and merging along
a tight cut.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple, Union

import networkx as nx

from core.config import PorosityEngine
from core.errors import (
    IncompatibleGluing,
    InvalidDecomposition,
    InvalidShore,
    MConformalityViolated,
    NotConformal,
    NotMAnchored,
    NotTight,
    OddLeafCount,
)
from core.graph_core import (
    A,
    B,
    BipartiteGraph,
    Matching,
    Shore,
    Vertex,
    check_shore,
    format_shore,
    is_conformal,
    is_matching_covered,
    matching_porosity_certificate,
    restrict_matching,
)
from core.tight_cuts import GluingData, IdMint, contract, is_tight_cut

logger = logging.getLogger(__name__)
cert_logger = logging.getLogger("certificates")

TreeEdge = Tuple[int, int]
Adjacency = Dict[int, Set[int]]


def _edge(u: int, v: int) -> TreeEdge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class CubicTree:
    """Tree whose nodes have degree 1 (leaves) or 3."""
    nodes: FrozenSet[int]
    tree_edges: FrozenSet[TreeEdge]
    _adjacency: Dict[int, FrozenSet[int]] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "tree_edges", frozenset(_edge(u, v) for u, v in self.tree_edges))
        adjacency: Dict[int, Set[int]] = {u: set() for u in self.nodes}
        for u, v in self.tree_edges:
            if u not in adjacency or v not in adjacency:
                raise InvalidDecomposition(f"tree edge {u}-{v} references a missing node")
            if u == v:
                raise InvalidDecomposition(f"loop at tree node {u}")
            adjacency[u].add(v)
            adjacency[v].add(u)
        object.__setattr__(self, "_adjacency", {u: frozenset(n) for u, n in adjacency.items()})

    @classmethod
    def from_edges(cls, edges: Iterable[TreeEdge]) -> "CubicTree":
        edges = [tuple(e) for e in edges]
        nodes = {u for e in edges for u in e}
        return cls(frozenset(nodes), frozenset(edges))

    @classmethod
    def from_adjacency(cls, adjacency: Adjacency) -> "CubicTree":
        edges = {_edge(u, v) for u, nbrs in adjacency.items() for v in nbrs}
        return cls(frozenset(adjacency), frozenset(edges))

    def adjacency(self) -> Adjacency:
        """Mutable copy of the adjacency, for surgery."""
        return {u: set(n) for u, n in self._adjacency.items()}

    def neighbours(self, u: int) -> List[int]:
        return sorted(self._adjacency[u])

    def degree(self, u: int) -> int:
        return len(self._adjacency[u])

    def is_leaf(self, u: int) -> bool:
        return len(self._adjacency[u]) == 1

    @property
    def leaves(self) -> List[int]:
        return sorted(u for u in self.nodes if self.is_leaf(u))

    @property
    def inner_nodes(self) -> List[int]:
        return sorted(u for u in self.nodes if not self.is_leaf(u))

    @property
    def edge_list(self) -> List[TreeEdge]:
        return sorted(self.tree_edges)

    def is_inner_edge(self, e: TreeEdge) -> bool:
        return not self.is_leaf(e[0]) and not self.is_leaf(e[1])

    def side(self, e: TreeEdge, node: int) -> FrozenSet[int]:
        """Nodes in the component of T − e that contains `node`."""
        u, v = e
        blocked = v if node == u else u
        seen = {node}
        stack = [node]
        while stack:
            current = stack.pop()
            for nxt in self._adjacency[current]:
                if nxt not in seen and not (current == node and nxt == blocked):
                    seen.add(nxt)
                    stack.append(nxt)
        return frozenset(seen)

    def leaves_on_side(self, e: TreeEdge, node: int) -> List[int]:
        return sorted(u for u in self.side(e, node) if self.is_leaf(u))

    def validate(self):
        if len(self.nodes) < 2:
            raise InvalidDecomposition("a decomposition tree needs at least two nodes")
        if len(self.tree_edges) != len(self.nodes) - 1 or not nx.is_connected(self.to_networkx()):
            raise InvalidDecomposition("not a tree")
        bad = [u for u in sorted(self.nodes) if self.degree(u) not in (1, 3)]
        if bad:
            raise InvalidDecomposition(f"nodes of degree other than 1 or 3: {bad}")

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.tree_edges)
        return graph

    def is_isomorphic(self, other: "CubicTree") -> bool:
        return nx.is_isomorphic(self.to_networkx(), other.to_networkx())

    def spine(self) -> Adjacency:
        """T minus its leaves."""
        inner = set(self.inner_nodes)
        return {u: {v for v in self._adjacency[u] if v in inner} for u in inner}


@dataclass(frozen=True)
class DecompositionTree:
    """Cubic tree with a leaf bijection onto V(host); anchored when `anchor` is given."""
    tree: CubicTree
    delta: Mapping[int, Vertex] = field(hash=False)
    host: BipartiteGraph = None
    anchor: Optional[Matching] = None

    def validate(self):
        self.tree.validate()
        leaves = set(self.tree.leaves)
        if set(self.delta) != leaves:
            raise InvalidDecomposition("leaf map does not cover exactly the leaves")
        images = list(self.delta.values())
        if len(set(images)) != len(images):
            raise InvalidDecomposition("leaf map is not injective")
        if set(images) != set(self.host.vertex_set):
            raise InvalidDecomposition("leaf map is not onto the host's vertices")
        if self.anchor is not None and not self.anchor.is_perfect(self.host):
            raise InvalidDecomposition(f"anchor {self.anchor} is not a perfect matching of the host")

    def leaf_of(self, v: Vertex) -> int:
        for leaf, image in self.delta.items():
            if image == v:
                return leaf
        raise InvalidShore(f"{v} is not mapped by the decomposition")

    def shore(self, e: TreeEdge, node: Optional[int] = None) -> Shore:
        """Host vertices on `node`'s side of e (default: the side of e's first endpoint)."""
        node = e[0] if node is None else node
        return frozenset(self.delta[leaf] for leaf in self.tree.leaves_on_side(e, node))

    def with_tree(self, adjacency: Adjacency, delta: Optional[Mapping[int, Vertex]] = None,
                  host: Optional[BipartiteGraph] = None, anchor: Union[Matching, None, str] = "keep") -> "DecompositionTree":
        return DecompositionTree(
            CubicTree.from_adjacency(adjacency),
            dict(self.delta if delta is None else delta),
            self.host if host is None else host,
            self.anchor if anchor == "keep" else anchor,
        )


class EdgeKind(Enum):
    TRIVIAL = "trivial"
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class EdgeClassification:
    kinds: Dict[TreeEdge, EdgeKind] = field(hash=False)
    spine_nodes: FrozenSet[int] = frozenset()
    spine_of_spine_nodes: FrozenSet[int] = frozenset()
    spine_degrees: Dict[int, int] = field(default_factory=dict, hash=False)

    @property
    def odd_edges(self) -> List[TreeEdge]:
        return sorted(e for e, kind in self.kinds.items() if kind == EdgeKind.ODD)

    def count(self, kind: EdgeKind) -> int:
        return sum(1 for k in self.kinds.values() if k == kind)


@dataclass(frozen=True)
class EdgeReport:
    edge: TreeEdge
    shore: Shore
    porosity: int
    matching: Matching
    inner: bool


@dataclass(frozen=True)
class WidthReport:
    width: int
    edges: Tuple[EdgeReport, ...]
    argmax: TreeEdge
    certificate: Matching
    m_violations: Tuple[TreeEdge, ...] = ()

    def porosity_of(self, e: TreeEdge) -> int:
        e = _edge(*e)
        for report in self.edges:
            if report.edge == e:
                return report.porosity
        raise KeyError(e)


@dataclass(frozen=True)
class ZOrientation:
    orientation: Dict[TreeEdge, Tuple[int, int]] = field(hash=False)
    inconsistencies: FrozenSet[int] = frozenset()
    sinks: Tuple[int, ...] = ()
    sink: Optional[int] = None

    def out_degree(self, node: int) -> int:
        return sum(1 for tail, _ in self.orientation.values() if tail == node)


def anchor_crossings(d: DecompositionTree, e: TreeEdge) -> List[Tuple[int, int]]:
    """Edges of the anchor matching in the cut of tree edge e."""
    x = d.shore(e)
    return [(a, b) for a, b in d.anchor.edge_list if (A(a) in x) != (B(b) in x)]


def width(
    d: DecompositionTree,
    engine: Union[PorosityEngine, str, None] = None,
    strict: bool = True,
    workers: Optional[int] = None,
) -> WidthReport:
    """
    Maximum porosity over the tree edges, with a per-edge report.

    For anchored decompositions every inner edge must have an M-conformal
    shore; violations raise MConformalityViolated unless `strict` is off, in
    which case they are only reported.
    """
    d.validate()
    edges = d.tree.edge_list

    def evaluate(e: TreeEdge) -> EdgeReport:
        x = d.shore(e)
        result = matching_porosity_certificate(d.host, x, engine)
        return EdgeReport(e, x, result.value, result.matching, d.tree.is_inner_edge(e))

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = tuple(pool.map(evaluate, edges))
    else:
        reports = tuple(evaluate(e) for e in edges)

    violations: Tuple[TreeEdge, ...] = ()
    if d.anchor is not None:
        violations = tuple(r.edge for r in reports if r.inner and anchor_crossings(d, r.edge))
        if violations and strict:
            raise MConformalityViolated(list(violations))

    best = max(reports, key=lambda r: (r.porosity, -edges.index(r.edge)))
    cert_logger.debug(f"Decomposition of {d.host}: width {best.porosity} at edge {best.edge}")
    return WidthReport(best.porosity, reports, best.edge, best.matching, violations)


def classify_edges(t: CubicTree) -> EdgeClassification:
    """Trivial (leaf), even or odd, by the parity of the leaves on each side."""
    if len(t.leaves) % 2:
        raise OddLeafCount(f"tree has {len(t.leaves)} leaves")
    kinds = {}
    for e in t.edge_list:
        if not t.is_inner_edge(e):
            kinds[e] = EdgeKind.TRIVIAL
        elif len(t.leaves_on_side(e, e[0])) % 2:
            kinds[e] = EdgeKind.ODD
        else:
            kinds[e] = EdgeKind.EVEN
    spine = t.spine()
    degrees = {u: len(n) for u, n in spine.items()}
    spine_of_spine = frozenset(u for u, deg in degrees.items() if deg != 1)
    return EdgeClassification(kinds, frozenset(spine), spine_of_spine, degrees)


def odd_paths(t: CubicTree, classification: Optional[EdgeClassification] = None) -> List[List[int]]:
    """The odd edges as node paths, each starting at its lower-id endpoint."""
    classification = classification or classify_edges(t)
    graph = nx.Graph()
    graph.add_edges_from(classification.odd_edges)
    paths = []
    for component in nx.connected_components(graph):
        ends = sorted(u for u in component if graph.degree(u) == 1)
        if len(ends) != 2:
            raise InvalidDecomposition(f"odd edges do not form a path around {sorted(component)}")
        paths.append(nx.shortest_path(graph, ends[0], ends[1]))
    return sorted(paths, key=lambda p: p[0])


def _leaf_neighbour(adjacency: Adjacency, u: int) -> int:
    leaves = sorted(v for v in adjacency[u] if len(adjacency[v]) == 1)
    if len(leaves) != 1:
        raise InvalidDecomposition(f"node {u} should carry exactly one leaf, carries {leaves}")
    return leaves[0]


def eliminate_odd_edges(d: DecompositionTree) -> DecompositionTree:
    """
    Remove every odd edge by path surgery. For each odd path from x1 to x2:
    drop the leaf edges x1l1 and x2l2, contract the non-path edge at x2,
    and hang l1 and l2 from a new node y adjacent to x1. Every edge of the
    path changes parity and no other edge does, so the odd edges decrease.

    The result decomposes the same host with the same leaf map; its width
    is at most k + (k mod 2) for an input of width k. The anchor is dropped
    since the surgery does not preserve M-conformality.
    """
    d.validate()
    adjacency = d.tree.adjacency()
    rounds = 0
    while True:
        tree = CubicTree.from_adjacency(adjacency)
        paths = odd_paths(tree)
        if not paths:
            break
        path = paths[0]
        x1, x2 = path[0], path[-1]
        l1 = _leaf_neighbour(adjacency, x1)
        l2 = _leaf_neighbour(adjacency, x2)
        before_x2 = path[-2]
        w = next(v for v in sorted(adjacency[x2]) if v not in (before_x2, l2))

        adjacency[x1].discard(l1)
        adjacency[l1].discard(x1)
        adjacency[x2].discard(l2)
        adjacency[l2].discard(x2)

        # Contract x2w, keeping the name x2
        for v in adjacency.pop(w):
            adjacency[v].discard(w)
            if v != x2:
                adjacency[v].add(x2)
                adjacency[x2].add(v)

        y = max(adjacency) + 1
        adjacency[y] = {x1, l1, l2}
        adjacency[x1].add(y)
        adjacency[l1].add(y)
        adjacency[l2].add(y)
        rounds += 1
        logger.debug(f"Odd path {path}: moved leaf {l2} next to {l1} under new node {y}")

    if rounds:
        logger.info(f"Eliminated odd edges in {rounds} surgery round(s)")
    return d.with_tree(adjacency, anchor=None)


def trim_adjacency(adjacency: Adjacency) -> Adjacency:
    """Suppress degree-2 nodes in place, joining each one's neighbours."""
    while True:
        degree_two = sorted(u for u, n in adjacency.items() if len(n) == 2)
        if not degree_two:
            return adjacency
        u = degree_two[0]
        p, q = sorted(adjacency.pop(u))
        # Contracting toward p keeps p's name
        adjacency[p].discard(u)
        adjacency[q].discard(u)
        adjacency[p].add(q)
        adjacency[q].add(p)


def trim(t: Union[CubicTree, Adjacency]) -> CubicTree:
    """Contract one edge at every degree-2 node until the tree is cubic."""
    adjacency = t.adjacency() if isinstance(t, CubicTree) else {u: set(n) for u, n in t.items()}
    if sum(1 for n in adjacency.values() if len(n) == 1) < 2:
        raise InvalidDecomposition("trimming needs at least two leaves")
    return CubicTree.from_adjacency(trim_adjacency(adjacency))


def _prune_and_trim(adjacency: Adjacency, drop: Iterable[int], keep_leaves: Set[int]) -> Adjacency:
    """Delete the given leaves, then unmapped leaves repeatedly, then trim."""
    for leaf in drop:
        for v in adjacency.pop(leaf):
            adjacency[v].discard(leaf)
    while True:
        loose = [u for u, n in adjacency.items() if len(n) <= 1 and u not in keep_leaves]
        if not loose:
            break
        for u in loose:
            for v in adjacency.pop(u):
                adjacency[v].discard(u)
    return trim_adjacency(adjacency)


def restrict_to_conformal(d: DecompositionTree, h: Iterable[Vertex]) -> DecompositionTree:
    """
    Decomposition of the subgraph induced by a conformal vertex set H whose
    width is at most width(d).

    Raises:
        NotConformal: if host − H has no perfect matching or host[H] is not
            matching covered
    """
    d.validate()
    h = check_shore(d.host, h, proper=False)
    if not is_conformal(d.host, h):
        raise NotConformal(f"host minus {{{format_shore(h)}}} has no perfect matching")
    sub = d.host.induced(h)
    covered = is_matching_covered(sub)
    if not covered:
        raise NotConformal(f"induced subgraph is not matching covered ({covered.reason})")
    if h == d.host.vertex_set:
        return d

    drop = [leaf for leaf, v in d.delta.items() if v not in h]
    keep = {leaf for leaf, v in d.delta.items() if v in h}
    adjacency = _prune_and_trim(d.tree.adjacency(), drop, keep)
    delta = {leaf: v for leaf, v in d.delta.items() if v in h}

    anchor = None
    if d.anchor is not None:
        restricted = restrict_matching(d.host, d.anchor, h)
        anchor = restricted if restricted.is_perfect(sub) else None
    return d.with_tree(adjacency, delta=delta, host=sub, anchor=anchor)


def z_orientation(d: DecompositionTree, z: Iterable[Vertex]) -> ZOrientation:
    """
    Orient leaf edges away from their leaf and every inner edge toward the
    side holding an odd number of Z-vertices. Nodes with two or more
    outgoing edges are reported as inconsistencies.
    """
    d.validate()
    z = check_shore(d.host, z)
    if len(z) % 2 == 0:
        raise InvalidShore(f"Z-orientation needs an odd shore, got {len(z)} vertices")
    tree = d.tree
    orientation = {}
    for e in tree.edge_list:
        u, v = e
        if tree.is_leaf(u):
            orientation[e] = (u, v)
        elif tree.is_leaf(v):
            orientation[e] = (v, u)
        else:
            on_v_side = sum(1 for leaf in tree.leaves_on_side(e, v) if d.delta[leaf] in z)
            orientation[e] = (u, v) if on_v_side % 2 else (v, u)

    out_degree = {u: 0 for u in tree.nodes}
    for tail, _ in orientation.values():
        out_degree[tail] += 1
    inconsistencies = frozenset(u for u, k in out_degree.items() if k >= 2)
    sinks = tuple(sorted(u for u, k in out_degree.items() if k == 0))
    return ZOrientation(orientation, inconsistencies, sinks, sinks[0] if len(sinks) == 1 else None)


def contract_decomposition(d: DecompositionTree, z: Iterable[Vertex], mint: Optional[IdMint] = None) -> DecompositionTree:
    """
    Decomposition of the tight cut contraction G_Z of width at most width(d).

    Let x be the endpoint in Z of the unique anchor edge crossing the cut.
    The leaves of Z − x are deleted, the tree is trimmed, and x's leaf is
    remapped to the contraction vertex v_Z.

    Raises:
        NotMAnchored: if d carries no anchor matching
        NotTight: if ∂(Z) is not a nontrivial tight cut
    """
    if d.anchor is None:
        raise NotMAnchored("contraction needs an anchored decomposition")
    d.validate()
    z = check_shore(d.host, z)
    check = is_tight_cut(d.host, z)
    if not check.tight:
        raise NotTight(f"{{{format_shore(z)}}} is not a tight cut")
    if check.trivial:
        raise NotTight(f"{{{format_shore(z)}}} is a trivial tight cut")

    crossing = [(a, b) for a, b in d.anchor.edge_list if (A(a) in z) != (B(b) in z)]
    a, b = crossing[0]
    x, y = (A(a), B(b)) if A(a) in z else (B(b), A(a))

    g_z, record = contract(d.host, z, mint, checked=True)
    v_z = record.vertex
    drop = [leaf for leaf, v in d.delta.items() if v in z and v != x]
    keep = {leaf for leaf, v in d.delta.items() if v not in z or v == x}
    adjacency = _prune_and_trim(d.tree.adjacency(), drop, keep)

    delta = {leaf: (v_z if v == x else v) for leaf, v in d.delta.items() if leaf in keep}
    pairs = {(p, q) for p, q in d.anchor.pairs if A(p) not in z and B(q) not in z}
    pairs.add((v_z.index, y.index) if v_z.side == "a" else (y.index, v_z.index))
    logger.debug(f"Contracted decomposition at {{{format_shore(z)}}}: {x} becomes {v_z}")
    return DecompositionTree(CubicTree.from_adjacency(adjacency), delta, g_z, Matching(frozenset(pairs)))


def merge_decompositions(d_h: DecompositionTree, d_j: DecompositionTree, gluing: GluingData) -> DecompositionTree:
    """
    Decomposition of the host from decompositions of its two contractions.

    The leaf of d_h mapped to v_Z̄ and the leaf of d_j mapped to v_Z are
    deleted and their former neighbours joined by one edge, whose shore is
    the tight cut itself (porosity 1). The result is unanchored.

    Raises:
        IncompatibleGluing: if the decompositions do not match the gluing
            data or the cut is not tight in the host
    """
    if d_h.host == gluing.g_z and d_j.host == gluing.g_zbar:
        d_h, d_j = d_j, d_h
    if d_h.host != gluing.g_zbar or d_j.host != gluing.g_z:
        raise IncompatibleGluing("decompositions do not decompose the two contractions of the gluing data")
    if not d_h.host.has_vertex(gluing.v_zbar) or not d_j.host.has_vertex(gluing.v_z):
        raise IncompatibleGluing("contraction vertices are absent")
    check = is_tight_cut(gluing.host, gluing.z)
    if not check.tight:
        raise IncompatibleGluing(f"{{{format_shore(gluing.z)}}} is not tight in the host")
    d_h.validate()
    d_j.validate()

    leaf_h = d_h.leaf_of(gluing.v_zbar)
    leaf_j = d_j.leaf_of(gluing.v_z)
    offset = max(d_h.tree.nodes) + 1 - min(d_j.tree.nodes)

    adjacency = d_h.tree.adjacency()
    for u, nbrs in d_j.tree.adjacency().items():
        adjacency[u + offset] = {v + offset for v in nbrs}
    p_h = next(iter(adjacency.pop(leaf_h)))
    p_j = next(iter(adjacency.pop(leaf_j + offset)))
    adjacency[p_h].discard(leaf_h)
    adjacency[p_j].discard(leaf_j + offset)
    adjacency[p_h].add(p_j)
    adjacency[p_j].add(p_h)

    delta = {leaf: v for leaf, v in d_h.delta.items() if leaf != leaf_h}
    delta.update({leaf + offset: v for leaf, v in d_j.delta.items() if leaf != leaf_j})
    merged = DecompositionTree(CubicTree.from_adjacency(adjacency), delta, gluing.host, None)
    merged.validate()
    logger.debug(f"Merged decompositions along {{{format_shore(gluing.z)}}} at tree edge {_edge(p_h, p_j)}")
    return merged


def glue_edge(merged: DecompositionTree, gluing: GluingData) -> TreeEdge:
    """The tree edge of a merged decomposition whose shore is the tight cut."""
    for e in merged.tree.edge_list:
        x = merged.shore(e)
        if x == gluing.z or x == gluing.host.vertex_set - gluing.z:
            return e
    raise IncompatibleGluing("no tree edge realises the tight cut")


def relabel_nodes(d: DecompositionTree) -> DecompositionTree:
    """Renumber tree nodes 0..n-1: inner nodes first, then leaves by vertex."""
    order = d.tree.inner_nodes + sorted(d.tree.leaves, key=lambda leaf: d.delta[leaf])
    mapping = {old: new for new, old in enumerate(order)}
    edges = [(mapping[u], mapping[v]) for u, v in d.tree.edge_list]
    delta = {mapping[leaf]: v for leaf, v in d.delta.items()}
    return DecompositionTree(CubicTree(frozenset(mapping.values()), frozenset(edges)), delta, d.host, d.anchor)


def cherry_decomposition(host: BipartiteGraph, pairs: List[Tuple[Vertex, Vertex]], anchor: Optional[Matching] = None) -> DecompositionTree:
    """
    Cherries hung from a path (two at each end) or, for three pairs, from a
    single centre. Used for the base trees of C4 and K3,3.
    """
    if len(pairs) == 1:
        tree = CubicTree.from_edges([(0, 1)])
        return DecompositionTree(tree, {0: pairs[0][0], 1: pairs[0][1]}, host, anchor)
    edges = []
    delta = {}
    next_id = 0

    def cherry(first: Vertex, second: Vertex) -> int:
        nonlocal next_id
        node = next_id
        edges.extend([(node, node + 1), (node, node + 2)])
        delta[node + 1] = first
        delta[node + 2] = second
        next_id += 3
        return node

    heads = [cherry(u, v) for u, v in pairs]
    if len(heads) == 2:
        edges.append((heads[0], heads[1]))
    elif len(heads) == 3:
        centre = next_id
        edges.extend((centre, head) for head in heads)
    else:
        # caterpillar spine with two cherries at each end
        spine = list(range(next_id, next_id + len(heads) - 2))
        edges.extend((spine[i], spine[i + 1]) for i in range(len(spine) - 1))
        edges.extend([(spine[0], heads[0]), (spine[0], heads[1])])
        for position, head in enumerate(heads[2:-2]):
            edges.append((spine[position + 1], head))
        edges.extend([(spine[-1], heads[-2]), (spine[-1], heads[-1])])
    return DecompositionTree(CubicTree.from_edges(edges), delta, host, anchor)
