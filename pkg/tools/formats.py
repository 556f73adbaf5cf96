# tools/formats.py

"""
Line-oriented text formats.

Every document has `c` comment lines, one `p <kind> <counts...>` header and
records whose first token names their type. Indices are 1-based.

    p bgraph <|A|> <|B|> <|E|>     e <a> <b>     [m <a> <b>]
    p digraph <|V|> <|arcs|>       a <u> <v>
    p matching <k>                 m <a> <b>
    p decomposition <nodes> <edges>  t <u> <v>   l <leaf> <vertex>   [m <a> <b>]
    p ordering <n>                 o <a>  (or o b<j> for B orderings)
    p tightcuts <cuts> <braces>    z <shore>     r <C4|K33|other>
    p dtd <nodes> <arcs>           r <root>      n <node> <bag>   g <parent> <child> <guard>

Shores and bags are comma-separated (`a1,b2` or `3,4`); `-` is the empty set.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple, Union

from core.decomp_tree import CubicTree, DecompositionTree
from core.errors import GraphValidationError, InvalidShore, ParseError, ValidationError
from core.graph_core import BipartiteGraph, Matching, Shore, Vertex, format_shore
from core.m_width_digraph import Digraph, DirectedTreeDecomposition
from core.tight_cuts import TightCutTree
from core.width2 import EliminationOrdering

logger = logging.getLogger(__name__)

KINDS = ("bgraph", "digraph", "matching", "decomposition", "ordering", "tightcuts", "dtd")


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int

    def integer(self, low: int = 1, high: Optional[int] = None) -> int:
        try:
            value = int(self.text)
        except ValueError:
            raise ParseError(f"expected an integer, found '{self.text}'", self.line, self.column)
        if value < low or (high is not None and value > high):
            bound = f"{low}..{high}" if high is not None else f">= {low}"
            raise ParseError(f"index {value} out of range ({bound})", self.line, self.column)
        return value

    def vertex(self) -> Vertex:
        try:
            return Vertex.parse(self.text)
        except (ValueError, InvalidShore, GraphValidationError):
            raise ParseError(f"expected a vertex like a3 or b7, found '{self.text}'", self.line, self.column)


@dataclass(frozen=True)
class Record:
    tag: str
    args: Tuple[Token, ...]
    line: int

    def expect(self, count: int):
        if len(self.args) != count:
            raise ParseError(f"'{self.tag}' record takes {count} fields, found {len(self.args)}", self.line, 1)


@dataclass(frozen=True)
class TightCutSummary:
    """The laminar family and brace classes of a tight cut decomposition."""
    cuts: Tuple[Shore, ...]
    brace_classes: Tuple[str, ...]


Document = Union[BipartiteGraph, Digraph, Matching, DecompositionTree, EliminationOrdering,
                 TightCutSummary, DirectedTreeDecomposition]


def _records(text: str) -> Iterator[Record]:
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = []
        column = 0
        for piece in raw.split():
            column = raw.index(piece, column) + 1
            tokens.append(Token(piece, number, column))
            column += len(piece) - 1
        if not tokens or tokens[0].text == "c":
            continue
        yield Record(tokens[0].text, tuple(tokens[1:]), number)


def _header(text: str) -> Tuple[Record, List[Record]]:
    records = list(_records(text))
    if not records:
        raise ParseError("empty document", 1, 1)
    header = records[0]
    if header.tag != "p":
        raise ParseError(f"expected 'p' header, found '{header.tag}'", header.line, 1)
    if not header.args or header.args[0].text not in KINDS:
        found = header.args[0].text if header.args else ""
        raise ParseError(f"unknown document kind '{found}'", header.line, 3)
    for record in records[1:]:
        if record.tag == "p":
            raise ParseError("second 'p' header", record.line, 1)
    return header, records[1:]


def _only(records: List[Record], allowed: str):
    for record in records:
        if record.tag not in allowed.split():
            raise ParseError(f"unexpected '{record.tag}' record", record.line, 1)


def _count_check(what: str, expected: int, found: int):
    if expected != found:
        raise ValidationError(f"header declares {expected} {what}, found {found}")


def _set_token(token: Token) -> List[str]:
    return [] if token.text == "-" else token.text.split(",")


def _matching_pairs(records: List[Record], a_count: int, b_count: int) -> List[Tuple[int, int]]:
    pairs = []
    for record in records:
        if record.tag == "m":
            record.expect(2)
            pairs.append((record.args[0].integer(1, a_count), record.args[1].integer(1, b_count)))
    return pairs


def parse_bgraph(text: str) -> Tuple[BipartiteGraph, Optional[Matching]]:
    header, records = _header(text)
    _kind(header, "bgraph", 3)
    a_count, b_count, e_count = (t.integer(0) for t in header.args[1:])
    _only(records, "e m")
    edges = []
    for record in records:
        if record.tag == "e":
            record.expect(2)
            edges.append((record.args[0].integer(1, a_count), record.args[1].integer(1, b_count)))
    if len(set(edges)) != len(edges):
        raise ValidationError("duplicate edge record")
    _count_check("edges", e_count, len(edges))
    g = BipartiteGraph.from_counts(a_count, b_count, edges)
    pairs = _matching_pairs(records, a_count, b_count)
    m = None
    if pairs:
        m = Matching.of(pairs)
        if not m.is_matching_of(g):
            raise ValidationError("matching record is not an edge of the graph")
    return g, m


def _kind(header: Record, kind: str, counts: int):
    if header.args[0].text != kind:
        raise ValidationError(f"expected a {kind} document, found {header.args[0].text}")
    if len(header.args) != counts + 1:
        raise ParseError(f"'p {kind}' header takes {counts} counts", header.line, 1)


def parse_digraph(text: str) -> Digraph:
    header, records = _header(text)
    _kind(header, "digraph", 2)
    n, arc_count = (t.integer(0) for t in header.args[1:])
    _only(records, "a")
    arcs = []
    for record in records:
        record.expect(2)
        u, v = record.args[0].integer(1, n), record.args[1].integer(1, n)
        if u == v:
            raise ValidationError(f"self-loop at line {record.line}")
        arcs.append((u, v))
    if len(set(arcs)) != len(arcs):
        raise ValidationError("duplicate arc record")
    _count_check("arcs", arc_count, len(arcs))
    return Digraph.from_count(n, arcs)


def parse_matching(text: str, g: Optional[BipartiteGraph] = None) -> Matching:
    """A `p matching` document, or the `m` records of a bgraph document."""
    header, records = _header(text)
    if header.args[0].text == "bgraph":
        _, m = parse_bgraph(text)
        if m is None:
            raise ValidationError("graph document has no matching records")
        return m
    _kind(header, "matching", 1)
    (k,) = (t.integer(0) for t in header.args[1:])
    _only(records, "m")
    high_a = g.max_index("a") if g is not None else None
    high_b = g.max_index("b") if g is not None else None
    pairs = []
    for record in records:
        record.expect(2)
        pairs.append((record.args[0].integer(1, high_a), record.args[1].integer(1, high_b)))
    _count_check("matching edges", k, len(pairs))
    m = Matching.of(pairs)
    if g is not None and not m.is_matching_of(g):
        raise ValidationError("matching uses an edge missing from the graph")
    return m


def parse_decomposition(text: str, host: BipartiteGraph) -> DecompositionTree:
    header, records = _header(text)
    _kind(header, "decomposition", 2)
    node_count, edge_count = (t.integer(0) for t in header.args[1:])
    _only(records, "t l m")
    edges, delta = [], {}
    for record in records:
        if record.tag == "t":
            record.expect(2)
            edges.append((record.args[0].integer(0, node_count - 1), record.args[1].integer(0, node_count - 1)))
        elif record.tag == "l":
            record.expect(2)
            leaf = record.args[0].integer(0, node_count - 1)
            if leaf in delta:
                raise ValidationError(f"leaf {leaf} mapped twice")
            delta[leaf] = record.args[1].vertex()
    _count_check("tree edges", edge_count, len(edges))
    pairs = _matching_pairs(records, host.max_index("a"), host.max_index("b"))
    tree = CubicTree.from_edges(edges)
    _count_check("tree nodes", node_count, len(tree.nodes))
    d = DecompositionTree(tree, delta, host, Matching.of(pairs) if pairs else None)
    d.validate()
    return d


def parse_ordering(text: str, host: BipartiteGraph) -> EliminationOrdering:
    header, records = _header(text)
    _kind(header, "ordering", 1)
    (n,) = (t.integer(0) for t in header.args[1:])
    _only(records, "o")
    order = []
    for record in records:
        record.expect(1)
        token = record.args[0]
        vertex = Vertex("a", token.integer(1, host.max_index("a"))) if token.text.isdigit() else token.vertex()
        if not host.has_vertex(vertex):
            raise ParseError(f"vertex {vertex} is not in the graph", record.line, token.column)
        order.append(vertex)
    _count_check("ordered vertices", n, len(order))
    return EliminationOrdering(tuple(order), host, order[0].side if order else "a")


def parse_tightcuts(text: str) -> TightCutSummary:
    header, records = _header(text)
    _kind(header, "tightcuts", 2)
    cut_count, brace_count = (t.integer(0) for t in header.args[1:])
    _only(records, "z r")
    cuts, classes = [], []
    for record in records:
        record.expect(1)
        if record.tag == "z":
            cuts.append(frozenset(Token(name, record.line, record.args[0].column).vertex()
                                  for name in _set_token(record.args[0])))
        else:
            if record.args[0].text not in ("C4", "K33", "other"):
                raise ParseError(f"unknown brace class '{record.args[0].text}'", record.line, record.args[0].column)
            classes.append(record.args[0].text)
    _count_check("cuts", cut_count, len(cuts))
    _count_check("braces", brace_count, len(classes))
    return TightCutSummary(tuple(cuts), tuple(sorted(classes)))


def parse_dtd(text: str, d: Digraph) -> DirectedTreeDecomposition:
    header, records = _header(text)
    _kind(header, "dtd", 2)
    node_count, arc_count = (t.integer(0) for t in header.args[1:])
    _only(records, "r n g")
    root = None
    bags: Dict[int, frozenset] = {}
    arcs, guards = [], {}

    def vertex_set(token: Token) -> frozenset:
        return frozenset(Token(name, token.line, token.column).integer(1, max(d.vertices, default=0))
                         for name in _set_token(token))

    for record in records:
        if record.tag == "r":
            record.expect(1)
            root = record.args[0].integer(0)
        elif record.tag == "n":
            record.expect(2)
            bags[record.args[0].integer(0)] = vertex_set(record.args[1])
        else:
            record.expect(3)
            arc = (record.args[0].integer(0), record.args[1].integer(0))
            arcs.append(arc)
            guards[arc] = vertex_set(record.args[2])
    if root is None:
        raise ValidationError("directed tree decomposition has no root record")
    _count_check("nodes", node_count, len(bags))
    _count_check("arcs", arc_count, len(arcs))
    return DirectedTreeDecomposition(d, root, arcs, bags, guards)


def _lines(header: str, body: List[str], comment: Optional[str]) -> str:
    lines = [f"c {line}" for line in comment.splitlines()] if comment else []
    return "\n".join(lines + [header] + body) + "\n"


def emit_bgraph(g: BipartiteGraph, m: Optional[Matching] = None, comment: Optional[str] = None) -> str:
    """Canonical text; indices must already be 1..n (see generators.compact)."""
    if g.a_ids != tuple(range(1, g.a_count + 1)) or g.b_ids != tuple(range(1, g.b_count + 1)):
        raise ValidationError("graph indices are not contiguous; compact the graph first")
    body = [f"e {a} {b}" for a, b in g.edge_list]
    if m is not None:
        body += [f"m {a} {b}" for a, b in m.edge_list]
    return _lines(f"p bgraph {g.a_count} {g.b_count} {len(g.edges)}", body, comment)


def emit_digraph(d: Digraph, comment: Optional[str] = None) -> str:
    if d.vertices != tuple(range(1, d.order + 1)):
        raise ValidationError("digraph vertices are not 1..n")
    return _lines(f"p digraph {d.order} {len(d.arcs)}", [f"a {u} {v}" for u, v in d.arc_list], comment)


def emit_matching(m: Matching, comment: Optional[str] = None) -> str:
    return _lines(f"p matching {len(m)}", [f"m {a} {b}" for a, b in m.edge_list], comment)


def emit_decomposition(d: DecompositionTree, comment: Optional[str] = None) -> str:
    body = [f"t {u} {v}" for u, v in d.tree.edge_list]
    body += [f"l {leaf} {d.delta[leaf]}" for leaf in sorted(d.delta)]
    if d.anchor is not None:
        body += [f"m {a} {b}" for a, b in d.anchor.edge_list]
    return _lines(f"p decomposition {len(d.tree.nodes)} {len(d.tree.edge_list)}", body, comment)


def emit_ordering(ordering: EliminationOrdering, comment: Optional[str] = None) -> str:
    return _lines(f"p ordering {len(ordering.order)}", [f"o {v.index if v.side == 'a' else v}" for v in ordering.order], comment)


def emit_tightcuts(tree: TightCutTree, comment: Optional[str] = None) -> str:
    cuts = tree.laminar_family()
    classes = tree.brace_classes()
    body = [f"z {format_shore(z) or '-'}" for z in cuts] + [f"r {c}" for c in classes]
    return _lines(f"p tightcuts {len(cuts)} {len(classes)}", body, comment)


def emit_dtd(dtd: DirectedTreeDecomposition, comment: Optional[str] = None) -> str:
    def as_set(vertices) -> str:
        return ",".join(str(v) for v in sorted(vertices)) or "-"

    body = [f"r {dtd.root}"] + [f"n {t} {as_set(dtd.bags[t])}" for t in dtd.nodes]
    body += [f"g {p} {c} {as_set(dtd.guards.get((p, c), ()))}" for p, c in dtd.arcs]
    return _lines(f"p dtd {len(dtd.nodes)} {len(dtd.arcs)}", body, comment)


def document_kind(text: str) -> str:
    header, _ = _header(text)
    return header.args[0].text


def read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e}")
