# core/m_width_digraph.py

"""
Width 2 relative to a fixed perfect matching, and its digraph side.

Contracting every edge of a perfect matching M of a bipartite graph gives
its M-direction, a digraph whose cyclewidth equals the M-perfect matching
width of the graph. This module builds M-directions and their inverse,
decides and constructs M-anchored width-2 decompositions through the tight
cut decomposition, decides cyclewidth 2 (through braces or through a
butterfly minor search), and builds directed tree decompositions with
singleton guards for digraphs of cyclewidth 2.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from core.config import resolve_cap
from core.decomp_tree import (
    CubicTree,
    DecompositionTree,
    WidthReport,
    cherry_decomposition,
    relabel_nodes,
    width,
)
from core.errors import (
    CapExceeded,
    GraphValidationError,
    IncompatibleGluing,
    InvalidDecomposition,
    NotContractible,
    NotPerfect,
    NotWidth2,
    StructureViolation,
    ValidationError,
)
from core.graph_core import (
    A,
    B,
    BipartiteGraph,
    Matching,
    Shore,
    Vertex,
    complement,
    format_shore,
)
from core.tight_cuts import BraceClass, GluingData, TightCutTree, tight_cut_decomposition
from core.width2 import OracleResult, porosity_table, search_leaf_labelled_trees, tree_to_decomposition

logger = logging.getLogger(__name__)
oracle_logger = logging.getLogger("oracle")
cert_logger = logging.getLogger("certificates")

Arc = Tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    """Simple digraph on integer vertex ids; antiparallel pairs allowed, loops not."""
    vertices: Tuple[int, ...]
    arcs: FrozenSet[Arc]

    def __post_init__(self):
        vertices = tuple(sorted(set(self.vertices)))
        if len(vertices) != len(tuple(self.vertices)):
            raise GraphValidationError("duplicate digraph vertex")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        present = set(vertices)
        for u, v in self.arcs:
            if u == v:
                raise GraphValidationError(f"self-loop at {u}")
            if u not in present or v not in present:
                raise GraphValidationError(f"arc ({u},{v}) references a missing vertex")

    @classmethod
    def from_count(cls, n: int, arcs: Iterable[Arc]) -> "Digraph":
        return cls(tuple(range(1, n + 1)), frozenset(arcs))

    @classmethod
    def bidirected(cls, n: int, undirected: Iterable[Tuple[int, int]]) -> "Digraph":
        arcs = set()
        for u, v in undirected:
            arcs |= {(u, v), (v, u)}
        return cls.from_count(n, arcs)

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def arc_list(self) -> List[Arc]:
        return sorted(self.arcs)

    def out_neighbours(self, u: int) -> List[int]:
        return sorted(v for x, v in self.arcs if x == u)

    def in_neighbours(self, v: int) -> List[int]:
        return sorted(u for u, x in self.arcs if x == v)

    def induced(self, vertices: Iterable[int]) -> "Digraph":
        keep = set(vertices)
        return Digraph(tuple(keep), frozenset((u, v) for u, v in self.arcs if u in keep and v in keep))

    def remove_vertices(self, vertices: Iterable[int]) -> "Digraph":
        return self.induced(set(self.vertices) - set(vertices))

    def remove_arc(self, arc: Arc) -> "Digraph":
        return Digraph(self.vertices, self.arcs - {arc})

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.arcs)
        return graph

    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.to_networkx())

    def strong_components(self) -> List[FrozenSet[int]]:
        found = [frozenset(c) for c in nx.strongly_connected_components(self.to_networkx())]
        return sorted(found, key=lambda c: min(c))

    def is_strongly_connected(self) -> bool:
        return self.order > 0 and nx.is_strongly_connected(self.to_networkx())

    def is_isomorphic(self, other: "Digraph") -> bool:
        return nx.is_isomorphic(self.to_networkx(), other.to_networkx())

    def __str__(self) -> str:
        return f"Digraph(|V|={self.order}, |A|={len(self.arcs)})"


@dataclass(frozen=True)
class MDirection:
    digraph: Digraph
    origin: BipartiteGraph
    matching: Matching
    # M-edge (a_index, b_index) -> digraph vertex
    vertex_map: Dict[Tuple[int, int], int] = field(hash=False, compare=False)


def m_direction(g: BipartiteGraph, m: Matching) -> MDirection:
    """
    Contract every edge of m and orient the rest from A to B. The vertex of
    the M-edge a_i b_j is i, and a_i b is an arc i -> k where a_k is matched
    to b.

    Raises:
        NotPerfect: if m is not a perfect matching of g
    """
    if not m.is_perfect(g):
        raise NotPerfect(f"{m} is not a perfect matching of {g}")
    owner_of_b = {b: a for a, b in m.pairs}
    arcs = {(a, owner_of_b[b]) for a, b in g.edges if owner_of_b[b] != a}
    digraph = Digraph(tuple(a for a, _ in m.pairs), frozenset(arcs))
    return MDirection(digraph, g, m, {(a, b): a for a, b in m.pairs})


def split_graph(d: Digraph) -> Tuple[BipartiteGraph, Matching]:
    """Inverse of m_direction: vertex v becomes the matching edge a_v b_v, arc (u, w) the edge a_u b_w."""
    edges = {(v, v) for v in d.vertices} | set(d.arcs)
    g = BipartiteGraph(d.vertices, d.vertices, frozenset(edges))
    return g, Matching(frozenset((v, v) for v in d.vertices))


@dataclass(frozen=True)
class MDecompositionReport:
    width: int
    violations: Tuple[Tuple[int, int], ...]
    report: WidthReport = field(compare=False)

    @property
    def conformal(self) -> bool:
        return not self.violations


def validate_m_decomposition(d: DecompositionTree) -> MDecompositionReport:
    """Width of an anchored decomposition and the inner edges whose cut holds an anchor edge."""
    if d.anchor is None:
        raise InvalidDecomposition("decomposition has no anchor matching")
    report = width(d, strict=False)
    return MDecompositionReport(report.width, report.m_violations, report)


def _pair(u: Vertex, w: Vertex) -> Tuple[int, int]:
    return (u.index, w.index) if u.side == "a" else (w.index, u.index)


def _crossing_edge(m: Matching, z: Shore) -> Tuple[Vertex, Vertex]:
    """The unique edge of m across ∂(Z), as (endpoint in Z, endpoint outside)."""
    crossing = [(A(a), B(b)) for a, b in m.pairs if (A(a) in z) != (B(b) in z)]
    if len(crossing) != 1:
        raise IncompatibleGluing(f"{len(crossing)} matching edges cross {{{format_shore(z)}}}")
    a, b = crossing[0]
    return (a, b) if a in z else (b, a)


def glue_m_decompositions(d_z: DecompositionTree, d_zbar: DecompositionTree, gluing: GluingData,
                          anchor: Matching) -> DecompositionTree:
    """
    Glue anchored decompositions of the two contractions of a tight cut in
    which every anchor edge is a cherry. With xy the anchor edge across the
    cut (x in Z), the cherries {v_Z, y} and {x, v_Z̄} lose their leaves,
    their heads are identified to one node t, and a new cherry {x, y} is
    hung from t.
    """
    if d_z.host != gluing.g_z or d_zbar.host != gluing.g_zbar:
        raise IncompatibleGluing("decompositions do not decompose the two contractions of the gluing data")
    x, y = _crossing_edge(anchor, gluing.z)

    def cherry_head(d: DecompositionTree, first: Vertex, second: Vertex) -> Tuple[int, int, int]:
        leaf_first, leaf_second = d.leaf_of(first), d.leaf_of(second)
        head = d.tree.neighbours(leaf_first)[0]
        if d.tree.neighbours(leaf_second) != [head]:
            raise IncompatibleGluing(f"{first} and {second} do not form a cherry")
        return head, leaf_first, leaf_second

    t_z, *dropped_z = cherry_head(d_z, gluing.v_z, y)
    t_zbar, *dropped_zbar = cherry_head(d_zbar, x, gluing.v_zbar)
    offset = max(d_z.tree.nodes) + 1 - min(d_zbar.tree.nodes)

    adjacency = d_z.tree.adjacency()
    for u, nbrs in d_zbar.tree.adjacency().items():
        adjacency[u + offset] = {v + offset for v in nbrs}
    for leaf in dropped_z + [leaf + offset for leaf in dropped_zbar]:
        for v in adjacency.pop(leaf):
            adjacency[v].discard(leaf)

    t = t_z
    for v in adjacency.pop(t_zbar + offset):
        adjacency[v].discard(t_zbar + offset)
        adjacency[v].add(t)
        adjacency[t].add(v)

    head = max(adjacency) + 1
    leaf_x, leaf_y = head + 1, head + 2
    adjacency[head] = {t, leaf_x, leaf_y}
    adjacency[t].add(head)
    adjacency[leaf_x] = {head}
    adjacency[leaf_y] = {head}

    delta = {leaf: v for leaf, v in d_z.delta.items() if leaf not in dropped_z}
    delta.update({leaf + offset: v for leaf, v in d_zbar.delta.items() if leaf not in dropped_zbar})
    delta[leaf_x] = x
    delta[leaf_y] = y
    glued = DecompositionTree(CubicTree.from_adjacency(adjacency), delta, gluing.host, anchor)
    glued.validate()
    return relabel_nodes(glued)


@dataclass
class MWidth2Result:
    ok: bool
    brace_classes: List[str]
    tree: Optional[TightCutTree] = None
    decomposition: Optional[DecompositionTree] = None
    witness: Optional[BipartiteGraph] = None

    def __bool__(self) -> bool:
        return self.ok


def _require_perfect(g: BipartiteGraph, m: Matching):
    if not m.is_perfect(g):
        raise NotPerfect(f"{m} is not a perfect matching of {g}")


def mpmw2_check(g: BipartiteGraph, m: Matching, build: bool = True) -> MWidth2Result:
    """
    Whether g has M-perfect matching width 2: every brace of its tight cut
    decomposition is C4 or K3,3. The answer does not depend on m; m is only
    used to build the certificate decomposition.
    """
    _require_perfect(g, m)
    tree = tight_cut_decomposition(g)
    classes = tree.brace_classes()
    bad = [leaf.graph for leaf in tree.leaves() if leaf.brace_class == BraceClass.OTHER]
    if bad:
        logger.info(f"{g}: brace {bad[0]} is neither C4 nor K3,3")
        return MWidth2Result(False, classes, tree, witness=bad[0])
    decomposition = _decompose_node(tree, tree.root, m) if build else None
    if decomposition is not None:
        _validate_width2(decomposition)
    return MWidth2Result(True, classes, tree, decomposition)


def _validate_width2(d: DecompositionTree):
    report = validate_m_decomposition(d)
    if report.violations:
        raise StructureViolation(f"glued decomposition is not M-conformal at {list(report.violations)}")
    if report.width != 2:
        raise StructureViolation(f"glued decomposition has width {report.width}")
    cert_logger.info(f"M-anchored width-2 decomposition of {d.host} validated")


def _decompose_node(tree: TightCutTree, node_id: int, m: Matching) -> DecompositionTree:
    node = tree.nodes[node_id]
    if node.is_leaf:
        if node.brace_class not in (BraceClass.C4, BraceClass.K33):
            raise NotWidth2(f"brace {node.graph} is neither C4 nor K3,3", witness=node.graph)
        return cherry_decomposition(node.graph, [(A(a), B(b)) for a, b in m.edge_list], m)

    z = node.cut
    zbar = complement(node.graph, z)
    v_z, v_zbar = node.contraction_vertices
    x, y = _crossing_edge(m, z)
    inside = [(a, b) for a, b in m.pairs if A(a) in z and B(b) in z]
    outside = [(a, b) for a, b in m.pairs if A(a) in zbar and B(b) in zbar]
    m_z = Matching(frozenset(outside + [_pair(v_z, y)]))
    m_zbar = Matching(frozenset(inside + [_pair(x, v_zbar)]))

    first, second = node.children
    d_z = _decompose_node(tree, first, m_z)
    d_zbar = _decompose_node(tree, second, m_zbar)
    gluing = GluingData(node.graph, z, tree.nodes[first].graph, v_z, tree.nodes[second].graph, v_zbar)
    return glue_m_decompositions(d_z, d_zbar, gluing, m)


def mpmw2_decompose(g: BipartiteGraph, m: Matching) -> DecompositionTree:
    """
    M-anchored decomposition of width 2 in which every edge of m is a
    cherry, glued recursively along the tight cut decomposition from the
    cherry trees of C4 and the three-cherry star of K3,3.

    Raises:
        NotWidth2: if some brace is neither C4 nor K3,3
    """
    result = mpmw2_check(g, m)
    if not result:
        raise NotWidth2(f"{g} has a brace other than C4 and K3,3", witness=result.witness)
    return result.decomposition


def butterfly_contract(d: Digraph, arc: Arc) -> Digraph:
    """
    Contract an arc that is the only out-arc of its tail or the only in-arc
    of its head. The merged vertex keeps the tail's id.

    Raises:
        NotContractible: otherwise
    """
    u, v = arc
    if arc not in d.arcs:
        raise NotContractible(f"({u},{v}) is not an arc")
    if len(d.out_neighbours(u)) != 1 and len(d.in_neighbours(v)) != 1:
        raise NotContractible(f"({u},{v}) is neither the only out-arc of {u} nor the only in-arc of {v}")
    arcs = set()
    for p, q in d.arcs:
        p = u if p == v else p
        q = u if q == v else q
        if p != q:
            arcs.add((p, q))
    return Digraph(tuple(w for w in d.vertices if w != v), frozenset(arcs))


def is_strongly_k_connected(d: Digraph, k: int) -> bool:
    """|V| > k and D − X is strongly connected for every X with |X| < k."""
    if d.order <= k:
        return False
    if k <= 0:
        return True
    for size in range(k):
        for removed in combinations(d.vertices, size):
            if not d.remove_vertices(removed).is_strongly_connected():
                return False
    return True


@dataclass(frozen=True)
class MinorSearchResult:
    found: bool
    witness: Optional[Digraph] = None
    examined: int = 0

    def __bool__(self) -> bool:
        return self.found


def _minor_moves(state: Digraph) -> List[Digraph]:
    """Vertex deletions and butterfly contractions, deleting arcs first where a contraction needs it."""
    moves = [state.remove_vertices([v]) for v in state.vertices]
    for u, v in state.arc_list:
        others_out = [(u, w) for w in state.out_neighbours(u) if w != v]
        others_in = [(w, v) for w in state.in_neighbours(v) if w != u]
        for extra in (others_out, others_in):
            pruned = Digraph(state.vertices, state.arcs - set(extra))
            moves.append(butterfly_contract(pruned, (u, v)))
    return moves


def find_butterfly_minor(d: Digraph, accept, min_order: int, cap: Optional[int] = None) -> MinorSearchResult:
    """
    Search the butterfly minors of d with at least `min_order` vertices for
    one satisfying `accept`, which must be monotone under adding arcs. Arc
    deletions only matter to make a contraction possible, so the moves are
    vertex deletion and contraction after clearing the other out-arcs of
    the tail (or in-arcs of the head). Each strong component is searched on
    its own.
    """
    cap = resolve_cap(cap, "minor_search_cap")
    if d.order > cap:
        raise CapExceeded("butterfly minor search", d.order, cap)
    seen: Set[Tuple[Tuple[int, ...], FrozenSet[Arc]]] = set()
    stack = [d]
    examined = 0
    while stack:
        state = stack.pop()
        for component in state.strong_components():
            if len(component) < min_order:
                continue
            piece = state.induced(component)
            key = (piece.vertices, piece.arcs)
            if key in seen:
                continue
            seen.add(key)
            examined += 1
            if accept(piece):
                oracle_logger.info(f"Butterfly minor found after {examined} states: {piece}")
                return MinorSearchResult(True, piece, examined)
            if piece.order > min_order:
                stack.extend(_minor_moves(piece))
    oracle_logger.info(f"No butterfly minor found in {examined} states of {d}")
    return MinorSearchResult(False, None, examined)


def has_forbidden_2conn_butterfly_minor(d: Digraph, cap: Optional[int] = None) -> MinorSearchResult:
    """
    Whether d has a strongly 2-connected butterfly minor other than the
    digon and the bi-directed triangle. Those are the only strongly
    2-connected digraphs on at most three vertices, so the search is for
    one on four or more.
    """
    return find_butterfly_minor(d, lambda h: is_strongly_k_connected(h, 2), 4, cap)


def has_butterfly_minor(d: Digraph, h: Digraph, cap: Optional[int] = None) -> MinorSearchResult:
    """Whether h is a butterfly minor of d, for strongly connected h."""
    if not h.is_strongly_connected():
        raise ValidationError("minor search target must be strongly connected")

    def accept(candidate: Digraph) -> bool:
        if candidate.order != h.order:
            return False
        matcher = nx.algorithms.isomorphism.DiGraphMatcher(candidate.to_networkx(), h.to_networkx())
        return matcher.subgraph_is_monomorphic()

    return find_butterfly_minor(d, accept, h.order, cap)


def _cycle_masks(d: Digraph) -> Tuple[Dict[int, int], List[Tuple[int, List[Arc]]]]:
    position = {v: i for i, v in enumerate(d.vertices)}
    cycles = []
    for cycle in nx.simple_cycles(d.to_networkx()):
        mask = sum(1 << position[v] for v in cycle)
        arcs = [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
        cycles.append((mask, arcs))
    return position, cycles


def _family_maximum(n: int, cycles: List[Tuple[int, int]]) -> int:
    """Max total weight of vertex-disjoint cycles, given (mask, weight) pairs."""
    by_lowest: Dict[int, List[Tuple[int, int]]] = {}
    for mask, weight in cycles:
        lowest = (mask & -mask).bit_length() - 1
        by_lowest.setdefault(lowest, []).append((mask, weight))
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def best(decided: int) -> int:
        if decided == full:
            return 0
        free = ~decided & full
        v = (free & -free).bit_length() - 1
        value = best(decided | (1 << v))
        for mask, weight in by_lowest.get(v, ()):
            if mask & decided == 0:
                value = max(value, weight + best(decided | mask))
        return value

    return best(0)


def cyclic_porosity(d: Digraph, x: Iterable[int], cap: Optional[int] = None) -> int:
    """Max over families of vertex-disjoint directed cycles of the arcs they use across ∂(X)."""
    cap = resolve_cap(cap, "cyclic_oracle_cap")
    if d.order > cap:
        raise CapExceeded("cyclic porosity", d.order, cap)
    x = set(x)
    if not x <= set(d.vertices):
        raise ValidationError("shore is not a set of digraph vertices")
    _, cycles = _cycle_masks(d)
    weighted = [(mask, sum(1 for u, v in arcs if (u in x) != (v in x))) for mask, arcs in cycles]
    return _family_maximum(d.order, weighted)


@dataclass(frozen=True)
class CycleDecomposition:
    """Cubic tree with leaves mapped onto the vertices of a digraph."""
    tree: Optional[CubicTree]
    delta: Dict[int, int] = field(hash=False)
    digraph: Digraph = None
    width: int = 0

    def shore(self, e: Tuple[int, int], node: Optional[int] = None) -> FrozenSet[int]:
        node = e[0] if node is None else node
        return frozenset(self.delta[leaf] for leaf in self.tree.leaves_on_side(e, node))


def brute_force_cyclewidth(d: Digraph, cap: Optional[int] = None) -> CycleDecomposition:
    """Exact cyclewidth by exhausting leaf-labelled cubic trees over a table of cyclic porosities."""
    cap = resolve_cap(cap, "cyclic_oracle_cap")
    if d.order > cap:
        raise CapExceeded("brute-force cyclewidth", d.order, cap)
    if d.order == 1:
        return CycleDecomposition(None, {0: d.vertices[0]}, d, 0)
    _, cycles = _cycle_masks(d)
    index = {v: i for i, v in enumerate(d.vertices)}
    # per cycle: arcs as bit positions
    arc_bits = [(mask, [(index[u], index[v]) for u, v in arcs]) for mask, arcs in cycles]

    def cost(mask: int) -> int:
        weighted = [(cmask, sum(1 for i, j in arcs if (mask >> i & 1) != (mask >> j & 1))) for cmask, arcs in arc_bits]
        return _family_maximum(d.order, weighted)

    floor = 2 if cycles else 0
    value, tree = search_leaf_labelled_trees(d.order, cost, floor)
    edges, labels = tree
    delta = {node: d.vertices[label] for node, label in labels.items()}
    oracle_logger.info(f"cyclewidth of {d} = {value}")
    return CycleDecomposition(CubicTree.from_edges(edges), delta, d, value)


def brute_force_mpmw(g: BipartiteGraph, m: Matching, cap: Optional[int] = None) -> OracleResult:
    """Exact M-perfect matching width: the best tree whose inner shores never split an edge of m."""
    _require_perfect(g, m)
    cap = resolve_cap(cap, "oracle_cap")
    if g.order > cap:
        raise CapExceeded("brute-force M-perfect matching width", g.order, cap)
    position = {v: i for i, v in enumerate(g.vertices)}
    pairs = [(position[A(a)], position[B(b)]) for a, b in m.pairs]

    def admissible(mask: int, inner: bool) -> bool:
        return not inner or all((mask >> i & 1) == (mask >> j & 1) for i, j in pairs)

    floor = 1 if g.order == 2 else 2
    value, tree = search_leaf_labelled_trees(g.order, porosity_table(g), floor, admissible)
    oracle_logger.info(f"M-pmw of {g} for {m} = {value}")
    return OracleResult(value, tree_to_decomposition(g, tree, anchor=m))


class CyclewidthStatus(Enum):
    ACYCLIC = "acyclic"
    WIDTH_TWO = "width-two"
    ABOVE_TWO = "above-two"


class Route(Enum):
    BIPARTITE = "bipartite"
    MINORS = "minors"
    BOTH = "both"


@dataclass
class CyclewidthVerdict:
    status: CyclewidthStatus
    route: Route
    witness: Optional[object] = None

    @property
    def width_two(self) -> bool:
        return self.status == CyclewidthStatus.WIDTH_TWO


def _bipartite_route(d: Digraph) -> CyclewidthVerdict:
    for component in d.strong_components():
        if len(component) < 2:
            continue
        g, _ = split_graph(d.induced(component))
        tree = tight_cut_decomposition(g)
        for leaf in tree.leaves():
            if leaf.brace_class == BraceClass.OTHER:
                return CyclewidthVerdict(CyclewidthStatus.ABOVE_TWO, Route.BIPARTITE, leaf.graph)
    return CyclewidthVerdict(CyclewidthStatus.WIDTH_TWO, Route.BIPARTITE)


def _minors_route(d: Digraph, cap: Optional[int]) -> CyclewidthVerdict:
    search = has_forbidden_2conn_butterfly_minor(d, cap)
    if search:
        return CyclewidthVerdict(CyclewidthStatus.ABOVE_TWO, Route.MINORS, search.witness)
    return CyclewidthVerdict(CyclewidthStatus.WIDTH_TWO, Route.MINORS)


def cyclewidth2_check(d: Digraph, via: Route = Route.BIPARTITE, cap: Optional[int] = None) -> CyclewidthVerdict:
    """
    Decide whether a digraph has cyclewidth exactly 2.

    Cyclic porosity is always even, so cyclewidth 1 is impossible: acyclic
    digraphs (cyclewidth 0) are reported separately. Otherwise either every
    brace of the split graph of every strong component is C4 or K3,3, or
    equivalently no strongly 2-connected butterfly minor has four or more
    vertices.

    Raises:
        StructureViolation: if the two routes disagree under `Route.BOTH`
    """
    via = Route(via)
    if d.is_acyclic():
        return CyclewidthVerdict(CyclewidthStatus.ACYCLIC, via)
    if via == Route.BIPARTITE:
        return _bipartite_route(d)
    if via == Route.MINORS:
        return _minors_route(d, cap)
    bipartite = _bipartite_route(d)
    minors = _minors_route(d, cap)
    if bipartite.status != minors.status:
        raise StructureViolation(
            f"cyclewidth routes disagree on {d}: bipartite {bipartite.status.value}, minors {minors.status.value}"
        )
    return CyclewidthVerdict(bipartite.status, Route.BOTH, minors.witness or bipartite.witness)


@dataclass
class DirectedTreeDecomposition:
    """Arborescence with bags (a near-partition of V) and guards on its arcs."""
    digraph: Digraph
    root: int
    arcs: List[Tuple[int, int]]
    bags: Dict[int, FrozenSet[int]]
    guards: Dict[Tuple[int, int], FrozenSet[int]]

    @property
    def nodes(self) -> List[int]:
        return sorted(self.bags)

    def children(self, node: int) -> List[int]:
        return sorted(c for p, c in self.arcs if p == node)

    def below(self, node: int) -> List[int]:
        """node and all its descendants."""
        found = [node]
        for child in self.children(node):
            found.extend(self.below(child))
        return found

    def gamma(self, node: int) -> FrozenSet[int]:
        """Bag plus the guards of incident arcs."""
        result = set(self.bags[node])
        for arc, guard in self.guards.items():
            if node in arc:
                result |= guard
        return frozenset(result)

    @property
    def width(self) -> int:
        return max(len(self.gamma(t)) for t in self.nodes) - 1


@dataclass
class DTDReport:
    near_partition: bool
    normality_violations: Dict[Tuple[int, int], FrozenSet[int]]
    guard_sizes: Dict[Tuple[int, int], int]
    width: int
    problems: List[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.problems


def validate_directed_tree_decomposition(d: Digraph, dtd: DirectedTreeDecomposition, max_width: Optional[int] = None) -> DTDReport:
    """
    Independent check: bags near-partition V(D); below every arc e the bags
    form a γ(e)-normal set W, i.e. W avoids γ(e) and no directed walk in
    D − γ(e) leaves W and comes back; optionally width at most `max_width`.
    """
    problems = []
    seen: List[int] = [v for bag in dtd.bags.values() for v in bag]
    near_partition = len(seen) == len(set(seen)) and set(seen) == set(d.vertices)
    if not near_partition:
        problems.append("bags do not partition the vertex set")

    graph = d.to_networkx()
    violations = {}
    for arc in dtd.arcs:
        guard = dtd.guards.get(arc, frozenset())
        w = set().union(*(dtd.bags[t] for t in dtd.below(arc[1])))
        if w & guard:
            violations[arc] = frozenset(w & guard)
            problems.append(f"arc {arc}: guard {sorted(guard)} meets the bags below")
            continue
        rest = graph.subgraph(set(d.vertices) - guard)
        reached, reaching = set(), set()
        for v in w:
            reached |= nx.descendants(rest, v)
            reaching |= nx.ancestors(rest, v)
        escaped = (reached & reaching) - w
        if escaped:
            violations[arc] = frozenset(escaped)
            problems.append(f"arc {arc}: walks leave and re-enter the bags below through {sorted(escaped)}")

    sizes = {arc: len(guard) for arc, guard in dtd.guards.items()}
    w = dtd.width
    if max_width is not None and w > max_width:
        problems.append(f"width {w} exceeds {max_width}")
    return DTDReport(near_partition, violations, sizes, w, problems)


def directed_tree_decomposition_w2(d: Digraph) -> DirectedTreeDecomposition:
    """
    Directed tree decomposition of width at most 2 with singleton guards
    for a strongly connected digraph of cyclewidth 2. Digraphs of cyclewidth
    2 with several strong components are not handled: they raise NotWidth2
    even though cyclewidth2_check accepts them.

    The arborescence is the brace tree of the split graph rooted at its
    lowest node. The guard of an arc is the matching edge crossing the tight
    cut that joins its two braces. A vertex whose matching edge lies inside
    one brace goes to that brace's bag; a vertex whose matching edge crosses
    cuts goes to the node of the brace path between its two ends nearest
    the root.

    Raises:
        NotWidth2: if d is not strongly connected or some brace is neither
            C4 nor K3,3
    """
    if d.order == 1:
        return DirectedTreeDecomposition(d, 0, [], {0: frozenset(d.vertices)}, {})
    if not d.is_strongly_connected():
        raise NotWidth2(f"{d} is not strongly connected")
    g, m = split_graph(d)
    tree = tight_cut_decomposition(g)
    bad = [leaf.graph for leaf in tree.leaves() if leaf.brace_class == BraceClass.OTHER]
    if bad:
        raise NotWidth2(f"brace {bad[0]} is neither C4 nor K3,3", witness=bad[0])

    brace_tree = tree.brace_tree()
    root = min(brace_tree.nodes)
    parent = {root: None}
    depth = {root: 0}
    frontier = [root]
    arcs = []
    while frontier:
        node = frontier.pop(0)
        for nxt in brace_tree.neighbours(node):
            if nxt not in parent:
                parent[nxt] = node
                depth[nxt] = depth[node] + 1
                arcs.append((node, nxt))
                frontier.append(nxt)

    bags: Dict[int, Set[int]] = {t: set() for t in brace_tree.nodes}
    for v in d.vertices:
        home_a = brace_tree.owner[A(v)]
        home_b = brace_tree.owner[B(v)]
        if home_a == home_b:
            bags[home_a].add(v)
        else:
            path = brace_tree.path(home_a, home_b)
            bags[min(path, key=lambda t: (depth[t], t))].add(v)

    guards = {}
    for arc in arcs:
        z = brace_tree.edges[frozenset(arc)]
        crossing = [v for v in d.vertices if (A(v) in z) != (B(v) in z)]
        if len(crossing) != 1:
            raise StructureViolation(f"{len(crossing)} matching edges cross the cut of brace arc {arc}")
        guards[arc] = frozenset(crossing)

    dtd = DirectedTreeDecomposition(d, root, arcs, {t: frozenset(b) for t, b in bags.items()}, guards)
    report = validate_directed_tree_decomposition(d, dtd, max_width=2)
    if not report.valid:
        raise StructureViolation(f"directed tree decomposition failed validation: {report.problems}")
    cert_logger.info(f"Directed tree decomposition of {d}: {len(dtd.nodes)} bags, width {dtd.width}")
    return dtd
