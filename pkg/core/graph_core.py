# core/graph_core.py

"""
Bipartite graphs, matchings, cuts and the quantities every other module is
built on: conformality, matching porosity and k-extendability.

Vertices are `Vertex(side, index)` values with side "a" or "b". Indices are
stable: no operation renumbers them, and contractions elsewhere mint fresh
ones. Graphs and matchings are immutable after construction.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from networkx.algorithms import isomorphism
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from core.cache import cache
from core.config import PorosityEngine, get_config, resolve_cap
from core.errors import (
    CapExceeded,
    GraphValidationError,
    InvalidShore,
    NoPerfectMatching,
    NotPerfect,
    TooSmall,
)

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
SIDES = ("a", "b")


@dataclass(frozen=True, order=True)
class Vertex:
    """A vertex of a bipartite graph: colour class plus stable index."""
    side: str
    index: int

    def __post_init__(self):
        if self.side not in SIDES:
            raise GraphValidationError(f"vertex side must be 'a' or 'b', got {self.side!r}")

    def __str__(self) -> str:
        return f"{self.side}{self.index}"

    @property
    def other_side(self) -> str:
        return "b" if self.side == "a" else "a"

    @classmethod
    def parse(cls, text: str) -> "Vertex":
        text = text.strip()
        if len(text) < 2 or text[0] not in SIDES or not text[1:].isdigit():
            raise InvalidShore(f"not a vertex name: {text!r} (expected e.g. a3 or b7)")
        return cls(text[0], int(text[1:]))


Shore = FrozenSet[Vertex]


def A(i: int) -> Vertex:
    return Vertex("a", i)


def B(j: int) -> Vertex:
    return Vertex("b", j)


def shore(*names: Union[str, Vertex]) -> Shore:
    """Build a shore from vertex names, e.g. shore("a1", "b2") or shore("a1,b2")."""
    vertices = set()
    for name in names:
        if isinstance(name, Vertex):
            vertices.add(name)
            continue
        for part in str(name).split(","):
            if part.strip():
                vertices.add(Vertex.parse(part))
    return frozenset(vertices)


def format_shore(x: Iterable[Vertex]) -> str:
    return ",".join(str(v) for v in sorted(x))


@dataclass(frozen=True)
class BipartiteGraph:
    """
    Simple bipartite graph with colour classes A and B.

    `edges` holds (a_index, b_index) pairs; `a_ids` and `b_ids` list the
    indices present in each class (1..n for freshly built graphs).
    """
    a_ids: Tuple[int, ...]
    b_ids: Tuple[int, ...]
    edges: FrozenSet[Edge]
    _adjacency: Dict[Vertex, FrozenSet[Vertex]] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        a_ids = tuple(self.a_ids)
        b_ids = tuple(self.b_ids)
        if len(set(a_ids)) != len(a_ids) or len(set(b_ids)) != len(b_ids):
            raise GraphValidationError("duplicate vertex index in a colour class")
        if any(i < 1 for i in a_ids + b_ids):
            raise GraphValidationError("vertex indices are 1-based")
        object.__setattr__(self, "a_ids", tuple(sorted(a_ids)))
        object.__setattr__(self, "b_ids", tuple(sorted(b_ids)))
        object.__setattr__(self, "edges", frozenset(self.edges))

        a_set, b_set = set(a_ids), set(b_ids)
        adjacency: Dict[Vertex, set] = {A(i): set() for i in self.a_ids}
        adjacency.update({B(j): set() for j in self.b_ids})
        for a, b in self.edges:
            if a not in a_set or b not in b_set:
                raise GraphValidationError(f"edge a{a}b{b} references a missing vertex")
            adjacency[A(a)].add(B(b))
            adjacency[B(b)].add(A(a))
        object.__setattr__(self, "_adjacency", {v: frozenset(n) for v, n in adjacency.items()})

    @classmethod
    def from_counts(cls, a_count: int, b_count: int, edges: Iterable[Edge]) -> "BipartiteGraph":
        if a_count < 1 or b_count < 1:
            raise GraphValidationError("both colour classes need at least one vertex")
        return cls(tuple(range(1, a_count + 1)), tuple(range(1, b_count + 1)), frozenset(edges))

    @property
    def a_count(self) -> int:
        return len(self.a_ids)

    @property
    def b_count(self) -> int:
        return len(self.b_ids)

    @property
    def a_vertices(self) -> Tuple[Vertex, ...]:
        return tuple(A(i) for i in self.a_ids)

    @property
    def b_vertices(self) -> Tuple[Vertex, ...]:
        return tuple(B(j) for j in self.b_ids)

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return self.a_vertices + self.b_vertices

    @property
    def vertex_set(self) -> FrozenSet[Vertex]:
        return frozenset(self._adjacency)

    @property
    def order(self) -> int:
        return len(self._adjacency)

    @property
    def edge_list(self) -> List[Edge]:
        return sorted(self.edges)

    def vertices_of(self, side: str) -> Tuple[Vertex, ...]:
        return self.a_vertices if side == "a" else self.b_vertices

    def has_vertex(self, v: Vertex) -> bool:
        return v in self._adjacency

    def has_edge(self, a: int, b: int) -> bool:
        return (a, b) in self.edges

    def neighbours(self, v: Vertex) -> FrozenSet[Vertex]:
        try:
            return self._adjacency[v]
        except KeyError:
            raise InvalidShore(f"{v} is not a vertex of the graph") from None

    def neighbourhood(self, vertices: Iterable[Vertex]) -> FrozenSet[Vertex]:
        result = set()
        for v in vertices:
            result |= self.neighbours(v)
        return frozenset(result)

    def degree(self, v: Vertex) -> int:
        return len(self.neighbours(v))

    def max_index(self, side: str) -> int:
        ids = self.a_ids if side == "a" else self.b_ids
        return max(ids) if ids else 0

    def induced(self, vertices: Iterable[Vertex]) -> "BipartiteGraph":
        keep = frozenset(vertices)
        a_ids = tuple(v.index for v in keep if v.side == "a")
        b_ids = tuple(v.index for v in keep if v.side == "b")
        edges = frozenset((a, b) for a, b in self.edges if A(a) in keep and B(b) in keep)
        return BipartiteGraph(a_ids, b_ids, edges)

    def remove_vertices(self, vertices: Iterable[Vertex]) -> "BipartiteGraph":
        return self.induced(self.vertex_set - frozenset(vertices))

    def with_edge(self, a: int, b: int) -> "BipartiteGraph":
        return BipartiteGraph(self.a_ids, self.b_ids, self.edges | {(a, b)})

    def swap_sides(self) -> "BipartiteGraph":
        """The same graph with the roles of A and B exchanged."""
        return BipartiteGraph(self.b_ids, self.a_ids, frozenset((b, a) for a, b in self.edges))

    def to_networkx(self, exclude: Iterable[Vertex] = ()) -> nx.Graph:
        excluded = frozenset(exclude)
        graph = nx.Graph()
        for v in self.vertices:
            if v not in excluded:
                graph.add_node(v, side=v.side, bipartite=0 if v.side == "a" else 1)
        for a, b in self.edge_list:
            if A(a) not in excluded and B(b) not in excluded:
                graph.add_edge(A(a), B(b))
        return graph

    def biadjacency(self, exclude: Iterable[Vertex] = ()) -> Tuple[np.ndarray, Tuple[int, ...], Tuple[int, ...]]:
        """0/1 matrix with rows for the kept A-indices and columns for the kept B-indices."""
        excluded = frozenset(exclude)
        rows = tuple(i for i in self.a_ids if A(i) not in excluded)
        cols = tuple(j for j in self.b_ids if B(j) not in excluded)
        row_pos = {a: r for r, a in enumerate(rows)}
        col_pos = {b: c for c, b in enumerate(cols)}
        matrix = np.zeros((len(rows), len(cols)), dtype=np.int8)
        for a, b in self.edges:
            if a in row_pos and b in col_pos:
                matrix[row_pos[a], col_pos[b]] = 1
        return matrix, rows, cols

    def __str__(self) -> str:
        return f"BipartiteGraph(|A|={self.a_count}, |B|={self.b_count}, |E|={len(self.edges)})"


@dataclass(frozen=True)
class Matching:
    """A set of pairwise vertex-disjoint (a_index, b_index) edges."""
    pairs: FrozenSet[Edge]

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        a_seen = [a for a, _ in self.pairs]
        b_seen = [b for _, b in self.pairs]
        if len(set(a_seen)) != len(a_seen) or len(set(b_seen)) != len(b_seen):
            raise GraphValidationError("matching edges are not vertex-disjoint")

    @classmethod
    def of(cls, pairs: Iterable[Edge]) -> "Matching":
        return cls(frozenset(pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Edge]:
        return iter(sorted(self.pairs))

    @property
    def edge_list(self) -> List[Edge]:
        return sorted(self.pairs)

    def covered(self) -> FrozenSet[Vertex]:
        return frozenset([A(a) for a, _ in self.pairs] + [B(b) for _, b in self.pairs])

    def partner(self, v: Vertex) -> Optional[Vertex]:
        for a, b in self.pairs:
            if v == A(a):
                return B(b)
            if v == B(b):
                return A(a)
        return None

    def is_matching_of(self, g: BipartiteGraph) -> bool:
        return all(g.has_edge(a, b) for a, b in self.pairs)

    def is_perfect(self, g: BipartiteGraph) -> bool:
        return self.is_matching_of(g) and self.covered() == g.vertex_set

    def __str__(self) -> str:
        return "{" + ", ".join(f"a{a}b{b}" for a, b in self.edge_list) + "}"


@dataclass(frozen=True)
class Verdict:
    """Boolean answer with a reason and witness data for the false case."""
    ok: bool
    reason: str = ""
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class PorosityResult:
    value: int
    matching: Matching
    engine: str


def check_shore(g: BipartiteGraph, x: Iterable[Vertex], proper: bool = True) -> Shore:
    """Validate a shore: non-empty, inside V(g), and (if proper) with a non-empty complement."""
    x = frozenset(x)
    if not x:
        raise InvalidShore("shore is empty")
    missing = x - g.vertex_set
    if missing:
        raise InvalidShore(f"shore contains non-vertices: {format_shore(missing)}")
    if proper and x == g.vertex_set:
        raise InvalidShore("shore complement is empty")
    return x


def complement(g: BipartiteGraph, x: Iterable[Vertex]) -> Shore:
    return g.vertex_set - frozenset(x)


def cut_edges(g: BipartiteGraph, x: Iterable[Vertex]) -> List[Edge]:
    """Edges of ∂(X), sorted."""
    x = frozenset(x)
    return [(a, b) for a, b in g.edge_list if (A(a) in x) != (B(b) in x)]


def balance(g: BipartiteGraph, x: Iterable[Vertex]) -> int:
    """||X ∩ A| − |X ∩ B||."""
    x = frozenset(x)
    a_part = sum(1 for v in x if v.side == "a")
    return abs(a_part - (len(x) - a_part))


def is_connected(g: BipartiteGraph) -> bool:
    return nx.is_connected(g.to_networkx())


def components(g: BipartiteGraph) -> List[List[Vertex]]:
    return sorted(sorted(c) for c in nx.connected_components(g.to_networkx()))


def vertex_connectivity(g: BipartiteGraph) -> int:
    return nx.node_connectivity(g.to_networkx())


def are_isomorphic(g: BipartiteGraph, h: BipartiteGraph) -> bool:
    """Isomorphism respecting colour classes, allowing both classes to swap."""
    if g.order != h.order or len(g.edges) != len(h.edges):
        return False
    match = isomorphism.categorical_node_match("side", None)
    left = g.to_networkx()
    if nx.is_isomorphic(left, h.to_networkx(), node_match=match):
        return True
    return nx.is_isomorphic(left, h.swap_sides().to_networkx(), node_match=match)


def maximum_matching(g: BipartiteGraph, removed: Iterable[Vertex] = ()) -> Matching:
    """Maximum matching of g − removed (Hopcroft–Karp)."""
    graph = g.to_networkx(exclude=removed)
    top = [v for v in graph.nodes if v.side == "a"]
    if graph.number_of_edges() == 0:
        return Matching(frozenset())
    mate = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=top)
    return Matching(frozenset((v.index, mate[v].index) for v in top if v in mate))


def has_perfect_matching(g: BipartiteGraph, removed: Iterable[Vertex] = ()) -> bool:
    """Whether g − removed has a perfect matching."""
    matrix, rows, cols = g.biadjacency(exclude=removed)
    if len(rows) != len(cols):
        return False
    if not rows:
        return True
    if matrix.sum() == 0:
        return False
    matched = maximum_bipartite_matching(csr_matrix(matrix), perm_type="column")
    return int(np.count_nonzero(matched >= 0)) == len(rows)


def enumerate_perfect_matchings(g: BipartiteGraph, cap: Optional[int] = None) -> List[Matching]:
    """
    Every perfect matching of g exactly once, in lexicographic order of the
    sorted edge list.

    Raises:
        CapExceeded: if |V(g)| is above the enumeration cap
    """
    cap = resolve_cap(cap, "enumeration_cap")
    if g.order > cap:
        raise CapExceeded("perfect matching enumeration", g.order, cap)
    if g.a_count != g.b_count:
        return []

    a_list = g.a_ids
    options = {a: sorted(v.index for v in g.neighbours(A(a))) for a in a_list}
    found: List[Matching] = []
    used: set = set()
    chosen: List[Edge] = []

    def extend(position: int):
        if position == len(a_list):
            found.append(Matching(frozenset(chosen)))
            return
        a = a_list[position]
        for b in options[a]:
            if b in used:
                continue
            used.add(b)
            chosen.append((a, b))
            extend(position + 1)
            chosen.pop()
            used.discard(b)

    extend(0)
    logger.debug(f"Enumerated {len(found)} perfect matchings of {g}")
    return found


def perfect_matching_masks(g: BipartiteGraph, cap: Optional[int] = None) -> Tuple[List[int], Dict[Edge, int]]:
    """Perfect matchings as integer bitsets over the sorted edge list."""
    position = {e: i for i, e in enumerate(g.edge_list)}
    masks = []
    for m in enumerate_perfect_matchings(g, cap):
        mask = 0
        for e in m.pairs:
            mask |= 1 << position[e]
        masks.append(mask)
    return masks, position


def is_matching_covered(g: BipartiteGraph) -> Verdict:
    """Connected, and every edge lies in some perfect matching."""
    if not is_connected(g):
        return Verdict(False, "disconnected", components(g))
    if g.a_count != g.b_count:
        return Verdict(False, "colour classes differ in size", g.edge_list[0] if g.edges else None)
    for a, b in g.edge_list:
        if not has_perfect_matching(g, removed=(A(a), B(b))):
            return Verdict(False, "edge in no perfect matching", (a, b))
    return Verdict(True)


def hall_surplus_violation(g: BipartiteGraph, k: int, cap: Optional[int] = None) -> Optional[FrozenSet[Vertex]]:
    """
    First X ⊆ A (by size, then lexicographically) with 1 ≤ |X| ≤ |A|−k and
    |N(X)| < |X| + k, or None when the surplus condition holds everywhere.
    """
    cap = resolve_cap(cap, "enumeration_cap")
    if g.order > cap:
        raise CapExceeded("Hall surplus check", g.order, cap)
    b_pos = {j: p for p, j in enumerate(g.b_ids)}
    masks = {a: sum(1 << b_pos[v.index] for v in g.neighbours(A(a))) for a in g.a_ids}
    for size in range(1, g.a_count - k + 1):
        for subset in combinations(g.a_ids, size):
            reach = 0
            for a in subset:
                reach |= masks[a]
            if bin(reach).count("1") < size + k:
                return frozenset(A(a) for a in subset)
    return None


def is_k_extendable(g: BipartiteGraph, k: int) -> Verdict:
    """
    Whether every matching of size k extends to a perfect matching.

    k ≤ 2 is decided by testing every k-set of disjoint edges directly; larger
    k falls back to the Hall surplus condition (witness is then the deficient
    set of A-vertices rather than a matching).

    Raises:
        TooSmall: if |V(g)| < 2k + 2
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if g.order < 2 * k + 2:
        raise TooSmall(f"{k}-extendability needs at least {2 * k + 2} vertices, graph has {g.order}")
    if g.a_count != g.b_count:
        return Verdict(False, "colour classes differ in size")
    if not is_connected(g):
        return Verdict(False, "disconnected", components(g))

    if k > 2:
        deficient = hall_surplus_violation(g, k)
        if deficient is None:
            return Verdict(True)
        return Verdict(False, "Hall surplus violated", deficient)

    for chosen in combinations(g.edge_list, k):
        a_side = {a for a, _ in chosen}
        b_side = {b for _, b in chosen}
        if len(a_side) < k or len(b_side) < k:
            continue
        removed = [A(a) for a in a_side] + [B(b) for b in b_side]
        if not has_perfect_matching(g, removed=removed):
            return Verdict(False, "matching does not extend", Matching(frozenset(chosen)))
    return Verdict(True)


def _resolve_engine(engine: Union[PorosityEngine, str, None], g: BipartiteGraph) -> PorosityEngine:
    config = get_config()
    if engine is None:
        engine = config.porosity_engine
    if isinstance(engine, str):
        engine = PorosityEngine(engine.lower())
    if engine == PorosityEngine.AUTO:
        engine = PorosityEngine.ENUMERATE if g.order <= config.porosity_oracle_cap else PorosityEngine.ASSIGNMENT
    return engine


def _porosity_by_assignment(g: BipartiteGraph, x: Shore) -> PorosityResult:
    if g.a_count != g.b_count:
        raise NoPerfectMatching(f"{g} has unequal colour classes")
    n = g.a_count
    row_pos = {a: r for r, a in enumerate(g.a_ids)}
    col_pos = {b: c for c, b in enumerate(g.b_ids)}
    # Non-edges cost more than any perfect matching can gain
    weights = np.full((n, n), -float(n + 1))
    for a, b in g.edges:
        weights[row_pos[a], col_pos[b]] = 1.0 if (A(a) in x) != (B(b) in x) else 0.0
    rows, cols = linear_sum_assignment(weights, maximize=True)
    total = weights[rows, cols].sum()
    if total < 0:
        raise NoPerfectMatching(f"{g} has no perfect matching")
    pairs = frozenset((g.a_ids[r], g.b_ids[c]) for r, c in zip(rows, cols))
    return PorosityResult(int(round(total)), Matching(pairs), PorosityEngine.ASSIGNMENT.value)


def _porosity_by_enumeration(g: BipartiteGraph, x: Shore) -> PorosityResult:
    best: Optional[Tuple[int, Matching]] = None
    for m in enumerate_perfect_matchings(g):
        crossing = sum(1 for a, b in m.pairs if (A(a) in x) != (B(b) in x))
        if best is None or crossing > best[0]:
            best = (crossing, m)
    if best is None:
        raise NoPerfectMatching(f"{g} has no perfect matching")
    return PorosityResult(best[0], best[1], PorosityEngine.ENUMERATE.value)


def matching_porosity_certificate(
    g: BipartiteGraph,
    x: Iterable[Vertex],
    engine: Union[PorosityEngine, str, None] = None,
) -> PorosityResult:
    """Porosity of ∂(X) together with a perfect matching attaining it."""
    x = check_shore(g, x)
    chosen = _resolve_engine(engine, g)
    key = cache.make_key(g, x, chosen.value)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if chosen == PorosityEngine.ENUMERATE:
        result = _porosity_by_enumeration(g, x)
    else:
        result = _porosity_by_assignment(g, x)
    cache.set(key, result)
    return result


def matching_porosity(
    g: BipartiteGraph,
    x: Iterable[Vertex],
    engine: Union[PorosityEngine, str, None] = None,
) -> int:
    """Maximum of |M ∩ ∂(X)| over all perfect matchings M of g."""
    return matching_porosity_certificate(g, x, engine).value


def is_conformal(g: BipartiteGraph, s: Iterable[Vertex], m: Optional[Matching] = None) -> bool:
    """
    Without m: g − S has a perfect matching. With m: no edge of m crosses ∂(S).
    """
    s = check_shore(g, s, proper=False)
    if m is None:
        return has_perfect_matching(g, removed=s)
    if not m.is_perfect(g):
        raise NotPerfect(f"{m} is not a perfect matching of {g}")
    return all((A(a) in s) == (B(b) in s) for a, b in m.pairs)


def restrict_matching(g: BipartiteGraph, m: Matching, s: Iterable[Vertex]) -> Matching:
    """M|S: the edges of m with both endpoints in S."""
    s = frozenset(s)
    return Matching(frozenset((a, b) for a, b in m.pairs if A(a) in s and B(b) in s))


def first_perfect_matching(g: BipartiteGraph) -> Matching:
    m = maximum_matching(g)
    if len(m) != g.a_count or g.a_count != g.b_count:
        raise NoPerfectMatching(f"{g} has no perfect matching")
    return m
