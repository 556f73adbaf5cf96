# tools/documents.py

"""
Structured (JSON) documents for every artifact the CLI produces.

One pydantic model per document kind, each carrying `schema_version` and
`kind`, plus converters from the domain objects and back for the kinds
that can be re-ingested.
"""

import json
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError as PydanticValidationError

from core.decomp_tree import CubicTree, DecompositionTree, WidthReport
from core.errors import ValidationError
from core.graph_core import BipartiteGraph, Matching, Vertex, format_shore
from core.m_width_digraph import CyclewidthVerdict, Digraph, DirectedTreeDecomposition
from core.tight_cuts import TightCutTree
from core.width2 import EliminationOrdering, Width2Certificate, ordering_width

SCHEMA_VERSION = 1


class Document(BaseModel):
    schema_version: int = SCHEMA_VERSION
    kind: str


class GraphDocument(Document):
    kind: str = "bgraph"
    a_ids: List[int]
    b_ids: List[int]
    edges: List[Tuple[int, int]]
    matching: Optional[List[Tuple[int, int]]] = None

    def to_graph(self) -> BipartiteGraph:
        return BipartiteGraph(tuple(self.a_ids), tuple(self.b_ids), frozenset(self.edges))

    def to_matching(self) -> Optional[Matching]:
        return Matching.of(self.matching) if self.matching is not None else None


class DigraphDocument(Document):
    kind: str = "digraph"
    vertices: List[int]
    arcs: List[Tuple[int, int]]

    def to_digraph(self) -> Digraph:
        return Digraph(tuple(self.vertices), frozenset(self.arcs))


class MatchingDocument(Document):
    kind: str = "matching"
    edges: List[Tuple[int, int]]


class EdgeRecord(BaseModel):
    edge: Tuple[int, int]
    shore: str
    porosity: int
    inner: bool


class DecompositionDocument(Document):
    kind: str = "decomposition"
    host: GraphDocument
    tree_edges: List[Tuple[int, int]]
    leaves: Dict[int, str]
    anchor: Optional[List[Tuple[int, int]]] = None
    width: Optional[int] = None
    edge_reports: List[EdgeRecord] = Field(default_factory=list)

    def to_decomposition(self) -> DecompositionTree:
        anchor = Matching.of(self.anchor) if self.anchor is not None else None
        delta = {int(leaf): Vertex.parse(name) for leaf, name in self.leaves.items()}
        d = DecompositionTree(CubicTree.from_edges(self.tree_edges), delta, self.host.to_graph(), anchor)
        d.validate()
        return d


class TightCutNodeRecord(BaseModel):
    node_id: int
    parent: Optional[int]
    graph: GraphDocument
    cut: Optional[str] = None
    host_cut: Optional[str] = None
    children: List[int] = Field(default_factory=list)
    brace_class: Optional[str] = None


class TightCutTreeDocument(Document):
    kind: str = "tightcuts"
    host: GraphDocument
    nodes: List[TightCutNodeRecord]
    laminar_family: List[str]
    brace_classes: List[str]


class OrderingDocument(Document):
    kind: str = "ordering"
    order: List[int]
    width: int
    profile: List[Tuple[str, int, int, int]]


class Width2CertificateDocument(Document):
    kind: str = "width2-certificate"
    host: GraphDocument
    success: bool
    ordering: Optional[OrderingDocument] = None
    decomposition: Optional[DecompositionDocument] = None
    ladder_labelling: Optional[List[str]] = None
    refutation: Optional[str] = None
    witness: Dict[str, Any] = Field(default_factory=dict)


class DirectedTreeDecompositionDocument(Document):
    kind: str = "dtd"
    digraph: DigraphDocument
    root: int
    arcs: List[Tuple[int, int]]
    bags: Dict[int, List[int]]
    guards: List[Tuple[int, int, List[int]]]
    width: int

    def to_dtd(self) -> DirectedTreeDecomposition:
        guards = {(p, c): frozenset(vs) for p, c, vs in self.guards}
        bags = {int(t): frozenset(vs) for t, vs in self.bags.items()}
        return DirectedTreeDecomposition(self.digraph.to_digraph(), self.root, list(self.arcs), bags, guards)


class CommandReport(Document):
    kind: str = "report"
    command: str
    exit_code: int
    message: str = ""
    result: Dict[str, Any] = Field(default_factory=dict)


def graph_document(g: BipartiteGraph, m: Optional[Matching] = None) -> GraphDocument:
    return GraphDocument(
        a_ids=list(g.a_ids), b_ids=list(g.b_ids), edges=g.edge_list,
        matching=m.edge_list if m is not None else None,
    )


def digraph_document(d: Digraph) -> DigraphDocument:
    return DigraphDocument(vertices=list(d.vertices), arcs=d.arc_list)


def matching_document(m: Matching) -> MatchingDocument:
    return MatchingDocument(edges=m.edge_list)


def decomposition_document(d: DecompositionTree, report: Optional[WidthReport] = None) -> DecompositionDocument:
    records = []
    if report is not None:
        records = [EdgeRecord(edge=r.edge, shore=format_shore(r.shore), porosity=r.porosity, inner=r.inner)
                   for r in report.edges]
    return DecompositionDocument(
        host=graph_document(d.host),
        tree_edges=d.tree.edge_list,
        leaves={leaf: str(v) for leaf, v in sorted(d.delta.items())},
        anchor=d.anchor.edge_list if d.anchor is not None else None,
        width=report.width if report is not None else None,
        edge_reports=records,
    )


def tight_cut_tree_document(tree: TightCutTree) -> TightCutTreeDocument:
    nodes = []
    for node_id in sorted(tree.nodes):
        node = tree.nodes[node_id]
        nodes.append(TightCutNodeRecord(
            node_id=node_id,
            parent=node.parent,
            graph=graph_document(node.graph),
            cut=format_shore(node.cut) if node.cut is not None else None,
            host_cut=format_shore(node.host_cut) if node.host_cut is not None else None,
            children=list(node.children),
            brace_class=node.brace_class.value if node.brace_class is not None else None,
        ))
    return TightCutTreeDocument(
        host=graph_document(tree.host),
        nodes=nodes,
        laminar_family=[format_shore(z) for z in tree.laminar_family()],
        brace_classes=tree.brace_classes(),
    )


def ordering_document(ordering: EliminationOrdering) -> OrderingDocument:
    profile = ordering_width(ordering)
    return OrderingDocument(
        order=[v.index for v in ordering.order],
        width=profile.width,
        profile=[(str(v), reach, prec, surplus) for v, reach, prec, surplus in profile.rows],
    )


def certificate_document(certificate: Width2Certificate) -> Width2CertificateDocument:
    return Width2CertificateDocument(
        host=graph_document(certificate.host),
        success=certificate.success,
        ordering=ordering_document(certificate.ordering) if certificate.ordering is not None else None,
        decomposition=(decomposition_document(certificate.decomposition)
                       if certificate.decomposition is not None else None),
        ladder_labelling=[str(v) for v in certificate.ladder_labelling] if certificate.ladder_labelling else None,
        refutation=certificate.tag,
        witness=certificate.witness,
    )


def dtd_document(dtd: DirectedTreeDecomposition) -> DirectedTreeDecompositionDocument:
    return DirectedTreeDecompositionDocument(
        digraph=digraph_document(dtd.digraph),
        root=dtd.root,
        arcs=list(dtd.arcs),
        bags={t: sorted(dtd.bags[t]) for t in dtd.nodes},
        guards=[(p, c, sorted(dtd.guards.get((p, c), ()))) for p, c in dtd.arcs],
        width=dtd.width,
    )


def cyclewidth_result(verdict: CyclewidthVerdict) -> Dict[str, Any]:
    witness = verdict.witness
    if isinstance(witness, Digraph):
        witness = digraph_document(witness).model_dump()
    elif isinstance(witness, BipartiteGraph):
        witness = graph_document(witness).model_dump()
    return {"status": verdict.status.value, "route": verdict.route.value, "witness": witness}


MODELS = {
    "bgraph": GraphDocument,
    "digraph": DigraphDocument,
    "matching": MatchingDocument,
    "decomposition": DecompositionDocument,
    "tightcuts": TightCutTreeDocument,
    "ordering": OrderingDocument,
    "width2-certificate": Width2CertificateDocument,
    "dtd": DirectedTreeDecompositionDocument,
    "report": CommandReport,
}


def load_document(text: str) -> Document:
    """Parse a structured document, dispatching on its `kind`."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"not a JSON document: {e.msg} at line {e.lineno}")
    if not isinstance(raw, dict):
        raise ValidationError("structured document must be a JSON object")
    if raw.get("schema_version") != SCHEMA_VERSION:
        raise ValidationError(f"unsupported schema version {raw.get('schema_version')!r}")
    model = MODELS.get(raw.get("kind"))
    if model is None:
        raise ValidationError(f"unknown document kind {raw.get('kind')!r}")
    try:
        return model.model_validate(raw)
    except PydanticValidationError as e:
        raise ValidationError(f"invalid {raw.get('kind')} document: {e.error_count()} errors")
