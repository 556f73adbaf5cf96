# core/width2.py

"""
Width-2 recognition for braces.

Matching elimination orderings and their width, the greedy ordering search
(claw start, then repeatedly take the first vertex that adds at most one
new neighbour), conversions between width-2 orderings and width-2
decompositions, bipartite ladders, and the exhaustive oracles used to
cross-check all of it on small graphs.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import permutations
from typing import Any, Callable, Dict, FrozenSet, Iterator, List, Optional, Tuple

from core.config import resolve_cap
from core.decomp_tree import (
    CubicTree,
    DecompositionTree,
    cherry_decomposition,
    classify_edges,
    width,
)
from core.errors import (
    CapExceeded,
    NoPerfectMatching,
    NotABrace,
    StructureViolation,
    ValidationError,
    WidthNotTwo,
)
from core.graph_core import (
    BipartiteGraph,
    Shore,
    Vertex,
    balance,
    enumerate_perfect_matchings,
    first_perfect_matching,
    is_matching_covered,
    A,
    B,
)
from core.tight_cuts import BraceClass, is_brace, small_brace_iso

logger = logging.getLogger(__name__)
oracle_logger = logging.getLogger("oracle")
cert_logger = logging.getLogger("certificates")


@dataclass(frozen=True)
class EliminationOrdering:
    """A linear order of one colour class of the host (class A by default)."""
    order: Tuple[Vertex, ...]
    host: BipartiteGraph
    colour: str = "a"

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        expected = set(self.host.vertices_of(self.colour))
        if set(self.order) != expected or len(self.order) != len(expected):
            raise ValidationError(f"ordering is not a permutation of colour class {self.colour.upper()}")

    def position(self, v: Vertex) -> int:
        """1-based position λ(v)."""
        return self.order.index(v) + 1

    def prec(self, v: Vertex) -> FrozenSet[Vertex]:
        return frozenset(self.order[: self.position(v)])

    def reach(self, v: Vertex) -> FrozenSet[Vertex]:
        return self.host.neighbourhood(self.prec(v))

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.order)


@dataclass(frozen=True)
class OrderingProfile:
    width: int
    rows: Tuple[Tuple[Vertex, int, int, int], ...]  # (vertex, |Reach|, |Prec|, surplus)


def ordering_width(ordering: EliminationOrdering) -> OrderingProfile:
    """max over the order of |Reach(a)| − |Prec(a)|, with the per-vertex profile."""
    rows = []
    reach = set()
    for position, v in enumerate(ordering.order, start=1):
        reach |= ordering.host.neighbours(v)
        rows.append((v, len(reach), position, len(reach) - position))
    return OrderingProfile(max(r[3] for r in rows), tuple(rows))


@dataclass(frozen=True)
class MewResult:
    value: int
    ordering: EliminationOrdering


def mew(g: BipartiteGraph, colour: str = "a", cap: Optional[int] = None) -> MewResult:
    """
    Exact matching elimination width over all orderings of one colour class.
    Prefix surplus only depends on the prefix as a set, so the search is
    memoised on prefix sets.

    Raises:
        CapExceeded: if the class is larger than the permutation cap
    """
    cap = resolve_cap(cap, "permutation_cap")
    vertices = g.vertices_of(colour)
    n = len(vertices)
    if n > cap:
        raise CapExceeded("matching elimination width", n, cap)
    other = g.vertices_of("b" if colour == "a" else "a")
    other_pos = {v: i for i, v in enumerate(other)}
    masks = [sum(1 << other_pos[u] for u in g.neighbours(v)) for v in vertices]

    def reach(subset: int) -> int:
        result = 0
        for i in range(n):
            if subset >> i & 1:
                result |= masks[i]
        return result

    @lru_cache(maxsize=None)
    def best(subset: int) -> int:
        surplus = bin(reach(subset)).count("1") - bin(subset).count("1")
        if subset & (subset - 1) == 0:
            return surplus
        inner = min(best(subset & ~(1 << i)) for i in range(n) if subset >> i & 1)
        return max(surplus, inner)

    full = (1 << n) - 1
    value = best(full)

    order = []
    subset = full
    while subset:
        choices = [i for i in range(n) if subset >> i & 1]
        if len(choices) == 1:
            order.append(choices[0])
            break
        last = min(choices, key=lambda i: (best(subset & ~(1 << i)), i))
        order.append(last)
        subset &= ~(1 << last)
    order.reverse()
    oracle_logger.info(f"mew of {g} (class {colour.upper()}) = {value}")
    return MewResult(value, EliminationOrdering(tuple(vertices[i] for i in order), g, colour))


@dataclass(frozen=True)
class OrderSearch:
    ordering: Optional[EliminationOrdering]
    starts: Tuple[Vertex, ...]
    furthest: int  # longest prefix any start reached


def search_width2_ordering(g: BipartiteGraph, colour: str = "a") -> OrderSearch:
    """The greedy search behind order(), with the data needed for refutations."""
    vertices = list(g.vertices_of(colour))
    n = len(vertices)
    starts = tuple(v for v in vertices if g.degree(v) == 3)
    furthest = 0
    for start in starts:
        prefix = [start]
        unused = [v for v in vertices if v != start]
        reach = set(g.neighbours(start))
        for _ in range(2, n + 1):
            pick = next((v for v in unused if len(g.neighbours(v) - reach) <= 1), None)
            if pick is None:
                break
            prefix.append(pick)
            unused.remove(pick)
            reach |= g.neighbours(pick)
        furthest = max(furthest, len(prefix))
        logger.debug(f"Start {start}: prefix {' '.join(map(str, prefix))}")
        if len(prefix) == n:
            return OrderSearch(EliminationOrdering(tuple(prefix), g, colour), starts, furthest)
    return OrderSearch(None, starts, furthest)


def order(g: BipartiteGraph, colour: str = "a") -> Optional[EliminationOrdering]:
    """
    A width-2 ordering of the given colour class of a brace, or None when
    the brace does not have perfect matching width 2.

    Raises:
        NotABrace: if g is not a brace
    """
    verdict = is_brace(g)
    if not verdict:
        raise NotABrace(f"{g} is not a brace ({verdict.reason})", witness=verdict.witness)
    return search_width2_ordering(g, colour).ordering


def _require_brace(g: BipartiteGraph):
    if g.order < 6 or not is_brace(g):
        raise WidthNotTwo(f"host must be a brace on at least six vertices: {g}")


def _shore_groups(ordering: EliminationOrdering) -> List[List[Vertex]]:
    """Vertex groups hung from the path: X1, the interior increments, and the rest."""
    g = ordering.host
    n = len(ordering.order)
    if n == 3:
        first = sorted({ordering.order[0]} | g.neighbours(ordering.order[0]))
        rest = sorted(g.vertex_set - set(first))
        return [first[:2], first[2:], rest]

    shores = []
    current = set()
    for v in ordering.order[: n - 3]:
        current |= {v} | g.neighbours(v)
        shores.append(frozenset(current))
    groups = [sorted(shores[0])]
    for before, after in zip(shores, shores[1:]):
        groups.append(sorted(after - before))
    groups.append(sorted(g.vertex_set - shores[-1]))
    sizes = [len(group) for group in groups]
    if sizes[0] != 4 or sizes[-1] != 4 or any(size != 2 for size in sizes[1:-1]):
        raise StructureViolation(f"ordering does not grow shores by one vertex per class: sizes {sizes}")
    return [groups[0][:2], groups[0][2:]] + groups[1:-1] + [groups[-1][:2], groups[-1][2:]]


def decomposition_from_ordering(ordering: EliminationOrdering) -> DecompositionTree:
    """
    Width-2 decomposition from a width-2 ordering: a path t1..t(n−2) with
    X1 = {a1} ∪ N(a1) hung as two cherries at t1, the final four vertices
    as two cherries at the other end, and each interior node carrying the
    two vertices its shore gains.

    Raises:
        WidthNotTwo: if the ordering does not have width 2 or the host is
            not a brace on at least six vertices
    """
    profile = ordering_width(ordering)
    if profile.width != 2:
        raise WidthNotTwo(f"ordering has width {profile.width}")
    _require_brace(ordering.host)
    groups = _shore_groups(ordering)
    decomposition = cherry_decomposition(ordering.host, [(group[0], group[1]) for group in groups])
    report = width(decomposition)
    if report.width != 2:
        raise StructureViolation(f"constructed decomposition has width {report.width}")
    cert_logger.info(f"Width-2 decomposition built from ordering {ordering}")
    return decomposition


def _spine_path(d: DecompositionTree) -> List[int]:
    """spine(spine(T)) as a node path; raises StructureViolation if it is not one."""
    classification = classify_edges(d.tree)
    if classification.odd_edges:
        raise StructureViolation(f"spine is not cubic: odd edges {classification.odd_edges}")
    nodes = set(classification.spine_of_spine_nodes)
    adjacency = {u: [v for v in d.tree.neighbours(u) if v in nodes] for u in nodes}
    if len(nodes) == 1:
        return list(nodes)
    ends = sorted(u for u, n in adjacency.items() if len(n) == 1)
    if len(ends) != 2 or any(len(n) > 2 for n in adjacency.values()):
        raise StructureViolation("spine(spine(T)) is not a path")
    path = [ends[0]]
    while len(path) < len(nodes):
        nxt = [v for v in adjacency[path[-1]] if v not in path]
        if not nxt:
            raise StructureViolation("spine(spine(T)) is not connected")
        path.append(nxt[0])
    return path


def path_shores(d: DecompositionTree, path: List[int]) -> List[Shore]:
    """Shores X_i of the path edges (t_i, t_i+1), each on t_1's side."""
    return [d.shore((path[i], path[i + 1]), path[i]) for i in range(len(path) - 1)]


def ordering_from_decomposition(d: DecompositionTree) -> EliminationOrdering:
    """
    Width-2 ordering of class A read off a width-2 decomposition of a brace,
    walking spine(spine(T)) from the end whose 4-vertex shore has a single
    A-vertex. The last three A-vertices are taken by ascending index.

    Raises:
        WidthNotTwo: if width(d) is not 2 or the host is not a brace
        StructureViolation: if the tree does not have the shape width 2 forces
    """
    report = width(d, strict=False)
    if report.width != 2:
        raise WidthNotTwo(f"decomposition has width {report.width}")
    g = d.host
    _require_brace(g)
    n = g.a_count
    path = _spine_path(d)

    if n == 3:
        return EliminationOrdering(g.a_vertices, g)
    if len(path) != n - 2:
        raise StructureViolation(f"spine path has {len(path)} nodes, expected {n - 2}")

    def a_part(x: Shore) -> List[Vertex]:
        return sorted(v for v in x if v.side == "a")

    shores = path_shores(d, path)
    if len(a_part(shores[0])) != 1:
        path.reverse()
        shores = path_shores(d, path)
        if len(a_part(shores[0])) != 1:
            raise StructureViolation("neither end of the spine path is a claw centred in A")

    sequence = a_part(shores[0])
    for before, after in zip(shores, shores[1:]):
        gained = a_part(after - before)
        if len(gained) != 1 or len(after - before) != 2:
            raise StructureViolation("consecutive shores do not grow by one vertex per class")
        sequence.extend(gained)
    sequence.extend(sorted(set(g.a_vertices) - set(sequence)))

    result = EliminationOrdering(tuple(sequence), g)
    profile = ordering_width(result)
    if profile.width != 2:
        raise StructureViolation(f"ordering read from the tree has width {profile.width}")
    return result


def ladder(n: int) -> BipartiteGraph:
    """The bipartite ladder L_n: a_i b_j for j ≤ i + 2."""
    if n < 1:
        raise ValidationError("ladder order must be at least 1")
    edges = {(i, j) for i in range(1, n + 1) for j in range(1, i + 1)}
    edges |= {(i, i + 1) for i in range(1, n)}
    edges |= {(i, i + 2) for i in range(1, n - 1)}
    return BipartiteGraph.from_counts(n, n, edges)


def ladder_labelling(ordering: EliminationOrdering) -> Optional[Tuple[Vertex, ...]]:
    """
    B-order induced by a width-2 ordering: N(a1) by index, then the one new
    vertex of each Reach(a_i). None if the reach sets do not grow that way.
    """
    g = ordering.host
    first = sorted(g.neighbours(ordering.order[0]))
    if len(first) != 3:
        return None
    labels = list(first)
    reach = set(first)
    for v in ordering.order[1:]:
        gained = sorted(g.neighbours(v) - reach)
        if len(gained) > 1:
            return None
        labels.extend(gained)
        reach |= set(gained)
    if len(labels) != g.b_count:
        return None
    return tuple(labels)


def fits_ladder(g: BipartiteGraph, a_order, b_order) -> bool:
    """Whether every edge a_i b_j satisfies j ≤ i + 2 under the given labelling."""
    a_pos = {v: i for i, v in enumerate(a_order, start=1)}
    b_pos = {v: j for j, v in enumerate(b_order, start=1)}
    return all(b_pos[B(b)] <= a_pos[A(a)] + 2 for a, b in g.edges)


def ladder_embedding(g: BipartiteGraph, cap: Optional[int] = None) -> Optional[Tuple[Tuple[Vertex, ...], Tuple[Vertex, ...]]]:
    """
    Exhaustive check that g is a spanning subgraph of L_n under some
    labelling. For each order of A, every b gets the deadline
    min{λ(a) + 2 : a ∈ N(b)} and earliest-deadline-first decides whether
    the B-labels can respect all deadlines.
    """
    cap = resolve_cap(cap, "permutation_cap")
    if g.a_count > cap:
        raise CapExceeded("ladder embedding", g.a_count, cap)
    if g.a_count != g.b_count:
        return None
    for a_order in permutations(g.a_vertices):
        position = {v: i for i, v in enumerate(a_order, start=1)}
        deadlines = sorted(
            (min((position[u] for u in g.neighbours(b)), default=g.a_count) + 2, b) for b in g.b_vertices
        )
        if all(deadline >= slot for slot, (deadline, _) in enumerate(deadlines, start=1)):
            return tuple(a_order), tuple(b for _, b in deadlines)
    return None


@dataclass(frozen=True)
class ShoreLaw:
    edge: Tuple[int, int]
    shore: Shore
    balance: int
    minority_closed: bool
    claw: Optional[bool]  # only for 4-vertex end shores


def _minority_closed(g: BipartiteGraph, x: Shore) -> bool:
    a_part = [v for v in x if v.side == "a"]
    minority = a_part if 2 * len(a_part) < len(x) else [v for v in x if v.side == "b"]
    return all(g.neighbours(v) <= x for v in minority)


def _is_internal_claw(g: BipartiteGraph, x: Shore) -> bool:
    a_part = [v for v in x if v.side == "a"]
    centres = a_part if len(a_part) == 1 else [v for v in x if v.side == "b"]
    if len(centres) != 1:
        return False
    centre = centres[0]
    leaves = x - {centre}
    induced = g.induced(x)
    return induced.neighbours(centre) == leaves and len(induced.edges) == 3 and g.neighbours(centre) <= x


def spine_shore_report(d: DecompositionTree) -> List[ShoreLaw]:
    """Shore laws along spine(spine(T)) of a width-2 decomposition of a brace."""
    path = _spine_path(d)
    laws = []
    for i in range(len(path) - 1):
        e = (path[i], path[i + 1])
        x = d.shore(e, path[i])
        end_shore = i in (0, len(path) - 2)
        claw = None
        if end_shore and len(x) == 4:
            claw = _is_internal_claw(d.host, x)
        elif end_shore and len(d.host.vertex_set - x) == 4:
            claw = _is_internal_claw(d.host, d.host.vertex_set - x)
        laws.append(ShoreLaw(e, x, balance(d.host, x), _minority_closed(d.host, x), claw))
    return laws


def shore_law_violations(d: DecompositionTree) -> List[str]:
    """Every broken shore law of a width-2 brace decomposition, as messages."""
    problems = []
    laws = spine_shore_report(d)
    for law in laws:
        if law.balance != 2:
            problems.append(f"edge {law.edge}: balance {law.balance}")
        if not law.minority_closed:
            problems.append(f"edge {law.edge}: minority has an outside neighbour")
        if law.claw is False:
            problems.append(f"edge {law.edge}: end shore is not an internally closed claw")
    for before, after in zip(laws, laws[1:]):
        gained = after.shore - before.shore
        sides = sorted(v.side for v in gained)
        if not before.shore <= after.shore or sides != ["a", "b"]:
            problems.append(f"edges {before.edge} -> {after.edge}: shores do not grow by one vertex per class")
    return problems


def add_reach_edge(ordering: EliminationOrdering, a: Vertex, b: Vertex) -> EliminationOrdering:
    """The same ordering on g + ab, for b ∈ Reach(a) \\ N(a)."""
    g = ordering.host
    if b not in ordering.reach(a) or b in g.neighbours(a):
        raise ValidationError(f"{b} is not in Reach({a}) \\ N({a})")
    return EliminationOrdering(ordering.order, g.with_edge(a.index, b.index), ordering.colour)


class RefutationTag(Enum):
    NO_DEGREE_3_START = "no-degree-3-start"
    STUCK = "stuck-at-step-k"
    NOT_A_BRACE = "not-a-brace"


@dataclass
class Width2Certificate:
    host: BipartiteGraph
    success: bool
    ordering: Optional[EliminationOrdering] = None
    decomposition: Optional[DecompositionTree] = None
    ladder_labelling: Optional[Tuple[Vertex, ...]] = None
    refutation: Optional[RefutationTag] = None
    witness: Dict[str, Any] = field(default_factory=dict)

    @property
    def tag(self) -> Optional[str]:
        if self.refutation == RefutationTag.STUCK:
            return f"stuck-at-step-{self.witness['step']}"
        return self.refutation.value if self.refutation else None


def pmw2_check(g: BipartiteGraph, reject_non_braces: bool = True) -> Width2Certificate:
    """
    Decide whether a brace has perfect matching width 2.

    On success the certificate holds an ordering and a decomposition, both
    re-validated, and the B-labelling under which g is a subgraph of the
    ladder L_n. On failure it holds the refutation tag.

    Raises:
        NotABrace: for non-braces, unless `reject_non_braces` is off
    """
    verdict = is_brace(g)
    if not verdict:
        if reject_non_braces:
            raise NotABrace(f"{g} is not a brace ({verdict.reason})", witness=verdict.witness)
        return Width2Certificate(g, False, refutation=RefutationTag.NOT_A_BRACE, witness={"reason": verdict.reason})

    if small_brace_iso(g) == BraceClass.C4:
        m = first_perfect_matching(g)
        decomposition = cherry_decomposition(g, [(A(a), B(b)) for a, b in m.edge_list], m)
        if width(decomposition).width != 2:
            raise StructureViolation("C4 cherry decomposition does not have width 2")
        return Width2Certificate(g, True, EliminationOrdering(g.a_vertices, g), decomposition, g.b_vertices)

    search = search_width2_ordering(g)
    if search.ordering is None:
        if not search.starts:
            cert_logger.info(f"{g}: no A-vertex of degree 3")
            return Width2Certificate(g, False, refutation=RefutationTag.NO_DEGREE_3_START)
        step = search.furthest + 1
        cert_logger.info(f"{g}: greedy ordering stuck at step {step}")
        return Width2Certificate(
            g, False, refutation=RefutationTag.STUCK,
            witness={"step": step, "starts": [str(v) for v in search.starts]},
        )

    ordering = search.ordering
    if ordering_width(ordering).width != 2:
        raise StructureViolation(f"greedy ordering {ordering} does not have width 2")
    decomposition = decomposition_from_ordering(ordering)
    labels = ladder_labelling(ordering)
    if labels is None or not fits_ladder(g, ordering.order, labels):
        raise StructureViolation(f"{g} does not embed in L_{g.a_count} under ordering {ordering}")
    cert_logger.info(f"{g}: width 2 certified by ordering {ordering}")
    return Width2Certificate(g, True, ordering, decomposition, labels)


LeafTree = Tuple[Tuple[Tuple[int, int], ...], Dict[int, int]]


def iter_leaf_labelled_trees(count: int) -> Iterator[LeafTree]:
    """
    Every cubic tree with leaves labelled 0..count-1, each exactly once,
    built by inserting leaf k on every edge of each tree on leaves 0..k-1.
    Leaf node ids equal their labels; inner nodes are numbered from count.
    Yields (edges, leaf_label_by_node).
    """
    if count < 2:
        raise ValidationError("a decomposition tree needs at least two leaves")
    labels = {i: i for i in range(count)}
    if count == 2:
        yield ((0, 1),), labels
        return

    def insert(edges: List[Tuple[int, int]], leaf: int, next_inner: int) -> Iterator[LeafTree]:
        if leaf == count:
            yield tuple(edges), labels
            return
        for position in range(len(edges)):
            u, v = edges[position]
            w = next_inner
            grown = edges[:position] + edges[position + 1:] + [(u, w), (w, v), (w, leaf)]
            yield from insert(grown, leaf + 1, next_inner + 1)

    centre = count
    yield from insert([(0, centre), (1, centre), (2, centre)], 3, count + 1)


def _subtree_masks(edges, count: int) -> List[Tuple[int, bool]]:
    """For every edge, the leaf bitmask away from leaf 0 and whether the edge is inner."""
    adjacency: Dict[int, List[int]] = {}
    for u, v in edges:
        adjacency.setdefault(u, []).append(v)
        adjacency.setdefault(v, []).append(u)
    result = []
    masks: Dict[int, int] = {}
    parent = {0: None}
    stack = [0]
    visit = []
    while stack:
        node = stack.pop()
        visit.append(node)
        for nxt in adjacency[node]:
            if nxt not in parent:
                parent[nxt] = node
                stack.append(nxt)
    for node in reversed(visit):
        mask = (1 << node) if node < count else 0
        for nxt in adjacency[node]:
            if parent.get(nxt) == node:
                mask |= masks[nxt]
        masks[node] = mask
        if parent[node] is not None:
            inner = node >= count and parent[node] >= count
            result.append((mask, inner))
    return result


def search_leaf_labelled_trees(
    count: int,
    cost: Callable[[int], int],
    floor: int = 0,
    admissible: Optional[Callable[[int, bool], bool]] = None,
) -> Tuple[Optional[int], Optional[LeafTree]]:
    """
    Minimum over all leaf-labelled cubic trees of the maximum edge cost.
    `cost(mask)` gets the leaf set on the side away from leaf 0. Trees with
    an edge rejected by `admissible(mask, inner)` are skipped. Stops early
    once `floor` is reached.
    """
    memo: Dict[int, int] = {}
    best_value = None
    best_tree = None
    examined = 0
    for tree in iter_leaf_labelled_trees(count):
        examined += 1
        value = 0
        feasible = True
        for mask, inner in _subtree_masks(tree[0], count):
            if admissible is not None and not admissible(mask, inner):
                feasible = False
                break
            if mask not in memo:
                memo[mask] = cost(mask)
            value = max(value, memo[mask])
            if best_value is not None and value >= best_value:
                break
        if not feasible:
            continue
        if best_value is None or value < best_value:
            best_value, best_tree = value, tree
            if best_value <= floor:
                break
    oracle_logger.debug(f"Examined {examined} leaf-labelled trees on {count} leaves, best {best_value}")
    return best_value, best_tree


def porosity_table(g: BipartiteGraph) -> Callable[[int], int]:
    """Porosity of every shore, as a function of its bitmask over g.vertices."""
    vertices = g.vertices
    position = {v: i for i, v in enumerate(vertices)}
    matchings = [
        [(position[A(a)], position[B(b)]) for a, b in m.edge_list]
        for m in enumerate_perfect_matchings(g)
    ]
    if not matchings:
        raise NoPerfectMatching(f"{g} has no perfect matching")

    def cost(mask: int) -> int:
        return max(sum(1 for i, j in pairs if (mask >> i & 1) != (mask >> j & 1)) for pairs in matchings)

    return cost


def tree_to_decomposition(g: BipartiteGraph, tree: LeafTree, anchor=None, vertices=None) -> DecompositionTree:
    edges, labels = tree
    vertices = vertices or g.vertices
    delta = {node: vertices[label] for node, label in labels.items()}
    return DecompositionTree(CubicTree.from_edges(edges), delta, g, anchor)


@dataclass(frozen=True)
class OracleResult:
    value: int
    decomposition: DecompositionTree


def brute_force_pmw(g: BipartiteGraph, cap: Optional[int] = None) -> OracleResult:
    """
    Exact perfect matching width by exhausting all leaf-labelled cubic trees.
    Each leaf-labelled tree is one tree shape with one leaf bijection up to
    the shape's automorphisms, so nothing is enumerated twice.

    Raises:
        CapExceeded: if |V(g)| is above the oracle cap
    """
    cap = resolve_cap(cap, "oracle_cap")
    if g.order > cap:
        raise CapExceeded("brute-force perfect matching width", g.order, cap)
    cost = porosity_table(g)
    floor = 1 if g.order == 2 else (2 if is_matching_covered(g) else 1)
    value, tree = search_leaf_labelled_trees(g.order, cost, floor)
    decomposition = tree_to_decomposition(g, tree)
    oracle_logger.info(f"pmw of {g} = {value}")
    return OracleResult(value, decomposition)
