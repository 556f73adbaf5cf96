# tools/commands.py

"""
The subcommands behind main.py.

Each command takes the parsed argparse namespace and returns a
CommandResult holding its exit code and its output in all three formats
(text, DOT, structured). Errors propagate as PMWidthError subclasses; the
entry point maps them to exit codes.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel

from core.decomp_tree import width
from core.errors import EXIT_FALSE, EXIT_OK, ValidationError
from core.generators import compact
from core.graph_core import (
    BipartiteGraph,
    Matching,
    Vertex,
    first_perfect_matching,
    format_shore,
    is_k_extendable,
    is_matching_covered,
    matching_porosity_certificate,
    shore,
)
from core.m_width_digraph import (
    CyclewidthStatus,
    Digraph,
    Route,
    brute_force_cyclewidth,
    cyclewidth2_check,
    directed_tree_decomposition_w2,
    m_direction,
    mpmw2_check,
    split_graph,
)
from core.tight_cuts import bicontract, is_brace, tight_cut_decomposition
from core.width2 import brute_force_pmw, ladder, mew, pmw2_check
from tools import documents, dot_export, formats

logger = logging.getLogger(__name__)


@dataclass
class CommandResult:
    exit_code: int
    text: str
    document: Optional[BaseModel] = None
    dot: Optional[str] = None

    def render(self, output_format: str) -> str:
        if output_format == "structured" and self.document is not None:
            return self.document.model_dump_json(indent=2) + "\n"
        if output_format == "dot" and self.dot is not None:
            return self.dot
        return self.text


def _report(command: str, exit_code: int, message: str, **result) -> documents.CommandReport:
    return documents.CommandReport(command=command, exit_code=exit_code, message=message, result=result)


def load_graph(path: str) -> Tuple[BipartiteGraph, Optional[Matching]]:
    """Bipartite graph (and any matching records) from a text or structured file."""
    text = formats.read_text(path)
    if text.lstrip().startswith("{"):
        doc = documents.load_document(text)
        if not isinstance(doc, documents.GraphDocument):
            raise ValidationError(f"{path} is a {doc.kind} document, expected bgraph")
        return doc.to_graph(), doc.to_matching()
    return formats.parse_bgraph(text)


def load_digraph(path: str) -> Digraph:
    text = formats.read_text(path)
    if text.lstrip().startswith("{"):
        doc = documents.load_document(text)
        if not isinstance(doc, documents.DigraphDocument):
            raise ValidationError(f"{path} is a {doc.kind} document, expected digraph")
        return doc.to_digraph()
    return formats.parse_digraph(text)


def load_matching(path: str, g: BipartiteGraph) -> Matching:
    text = formats.read_text(path)
    if text.lstrip().startswith("{"):
        doc = documents.load_document(text)
        if isinstance(doc, documents.MatchingDocument):
            return Matching.of(doc.edges)
        if isinstance(doc, documents.GraphDocument) and doc.matching is not None:
            return Matching.of(doc.matching)
        raise ValidationError(f"{path} holds no matching")
    return formats.parse_matching(text, g)


def _graph_and_matching(args) -> Tuple[BipartiteGraph, Matching]:
    g, embedded = load_graph(args.graph)
    if getattr(args, "matching", None):
        return g, load_matching(args.matching, g)
    return g, embedded if embedded is not None else first_perfect_matching(g)


def _witness_text(witness) -> Optional[str]:
    if witness is None:
        return None
    if isinstance(witness, (set, frozenset)):
        return format_shore(witness)
    if isinstance(witness, list) and all(isinstance(part, (list, set, frozenset)) for part in witness):
        return " | ".join(format_shore(part) for part in witness)
    return str(witness)


def _verdict_result(command: str, verdict, what: str) -> CommandResult:
    code = EXIT_OK if verdict else EXIT_FALSE
    message = f"{what}: yes" if verdict else f"{what}: no ({verdict.reason})"
    witness = _witness_text(verdict.witness)
    return CommandResult(code, message + "\n", _report(command, code, message, ok=bool(verdict), witness=witness))


def cmd_porosity(args) -> CommandResult:
    g, _ = load_graph(args.graph)
    x = shore(args.shore)
    result = matching_porosity_certificate(g, x)
    text = formats.emit_matching(result.matching, comment=f"porosity {result.value}\nshore {format_shore(x)}")
    doc = _report("porosity", EXIT_OK, f"porosity {result.value}", porosity=result.value,
                  shore=format_shore(x), certificate=result.matching.edge_list, engine=result.engine)
    return CommandResult(EXIT_OK, text, doc, dot_export.bgraph_to_dot(g, result.matching))


def cmd_is_brace(args) -> CommandResult:
    g, _ = load_graph(args.graph)
    return _verdict_result("is-brace", is_brace(g), "brace")


def cmd_is_covered(args) -> CommandResult:
    g, _ = load_graph(args.graph)
    return _verdict_result("is-covered", is_matching_covered(g), "matching covered")


def cmd_extendable(args) -> CommandResult:
    g, _ = load_graph(args.graph)
    return _verdict_result("extendable", is_k_extendable(g, args.k), f"{args.k}-extendable")


def cmd_tightcuts(args) -> CommandResult:
    g, _ = load_graph(args.graph)
    tree = tight_cut_decomposition(g, rng=getattr(args, "rng", None))
    lines = [f"tight cuts {len(tree.laminar_family())}", f"braces {' '.join(tree.brace_classes())}"]
    for leaf in tree.leaves():
        lines.append(f"node {leaf.node_id}: {leaf.brace_class.value} {leaf.graph}")
    dot = "".join(dot_export.bgraph_to_dot(leaf.graph, name=f"brace{leaf.node_id}") for leaf in tree.leaves())
    return CommandResult(EXIT_OK, formats.emit_tightcuts(tree, comment="\n".join(lines)),
                         documents.tight_cut_tree_document(tree), dot)


def _certificate_text(certificate) -> str:
    if not certificate.success:
        return f"width 2: no ({certificate.tag})\n"
    comment = f"width 2: yes\nordering {certificate.ordering}"
    return formats.emit_decomposition(certificate.decomposition, comment=comment)


def cmd_pmw2(args) -> CommandResult:
    g, _ = load_graph(args.graph)
    if is_brace(g):
        certificate = pmw2_check(g)
        code = EXIT_OK if certificate.success else EXIT_FALSE
        dot = dot_export.decomposition_to_dot(certificate.decomposition) if certificate.success else None
        _write_dot(args, dot)
        return CommandResult(code, _certificate_text(certificate), documents.certificate_document(certificate), dot)

    # not a brace: report per brace of the tight cut decomposition
    tree = tight_cut_decomposition(g, rng=getattr(args, "rng", None))
    certificates = [(leaf.node_id, pmw2_check(leaf.graph, reject_non_braces=False)) for leaf in tree.leaves()]
    code = EXIT_OK if all(c.success for _, c in certificates) else EXIT_FALSE
    verdicts = [f"not a brace; {len(certificates)} braces"]
    for node_id, certificate in certificates:
        verdict = "yes" if certificate.success else f"no ({certificate.tag})"
        verdicts.append(f"brace {node_id}: width 2: {verdict}")
    doc = _report("pmw2", code, "per-brace width-2 checks",
                  braces=[{"node": node_id, "certificate": documents.certificate_document(c).model_dump()}
                          for node_id, c in certificates])
    dot = "".join(dot_export.decomposition_to_dot(c.decomposition, name=f"brace{node_id}")
                  for node_id, c in certificates if c.success)
    _write_dot(args, dot or None)
    return CommandResult(code, formats.emit_tightcuts(tree, comment="\n".join(verdicts)), doc, dot or None)


def _write_dot(args, dot: Optional[str]):
    path = getattr(args, "dot", None)
    if path and dot:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(dot)
        logger.info(f"Wrote DOT to {path}")


def cmd_mew(args) -> CommandResult:
    g, _ = load_graph(args.graph)
    result = mew(g, args.colour)
    text = formats.emit_ordering(result.ordering, comment=f"mew {result.value}")
    doc = _report("mew", EXIT_OK, f"mew {result.value}", mew=result.value, colour=args.colour,
                  ordering=[str(v) for v in result.ordering.order])
    return CommandResult(EXIT_OK, text, doc)


def cmd_brute_pmw(args) -> CommandResult:
    g, _ = load_graph(args.graph)
    result = brute_force_pmw(g)
    report = width(result.decomposition)
    text = formats.emit_decomposition(result.decomposition, comment=f"pmw {result.value}")
    return CommandResult(EXIT_OK, text, documents.decomposition_document(result.decomposition, report),
                         dot_export.decomposition_to_dot(result.decomposition, report))


def cmd_ladder(args) -> CommandResult:
    g = ladder(args.n)
    return CommandResult(EXIT_OK, formats.emit_bgraph(g, comment=f"bipartite ladder L_{args.n}"),
                         documents.graph_document(g), dot_export.bgraph_to_dot(g, name=f"L{args.n}"))


def cmd_mpmw2(args) -> CommandResult:
    g, m = _graph_and_matching(args)
    result = mpmw2_check(g, m)
    if not result:
        text = f"M-width 2: no (braces {' '.join(result.brace_classes)})\n"
        doc = _report("mpmw2", EXIT_FALSE, "a brace is neither C4 nor K3,3", brace_classes=result.brace_classes,
                      witness=documents.graph_document(result.witness).model_dump())
        return CommandResult(EXIT_FALSE, text, doc, dot_export.bgraph_to_dot(result.witness, name="witness"))
    report = width(result.decomposition)
    text = formats.emit_decomposition(result.decomposition, comment="M-width 2: yes")
    return CommandResult(EXIT_OK, text, documents.decomposition_document(result.decomposition, report),
                         dot_export.decomposition_to_dot(result.decomposition, report))


def cmd_mdirect(args) -> CommandResult:
    g, m = _graph_and_matching(args)
    direction = m_direction(g, m)
    d = direction.digraph
    return CommandResult(EXIT_OK, formats.emit_digraph(d, comment=f"M-direction for {m}"),
                         documents.digraph_document(d), dot_export.digraph_to_dot(d))


def cmd_split(args) -> CommandResult:
    d = load_digraph(args.digraph)
    g, m = split_graph(d)
    return CommandResult(EXIT_OK, formats.emit_bgraph(g, m), documents.graph_document(g, m),
                         dot_export.bgraph_to_dot(g, m))


def cmd_cyclewidth2(args) -> CommandResult:
    d = load_digraph(args.digraph)
    verdict = cyclewidth2_check(d, Route(args.via))
    code = EXIT_OK if verdict.status == CyclewidthStatus.WIDTH_TWO else EXIT_FALSE
    line = f"cyclewidth 2: {'yes' if code == EXIT_OK else 'no'} ({verdict.status.value}, via {verdict.route.value})"
    text = line + "\n"
    dot = None
    if isinstance(verdict.witness, Digraph):
        text = formats.emit_digraph(_compact_digraph(verdict.witness), comment=f"{line}\nwitness minor")
        dot = dot_export.digraph_to_dot(verdict.witness, name="witness")
    elif isinstance(verdict.witness, BipartiteGraph):
        text = formats.emit_bgraph(compact(verdict.witness), comment=f"{line}\nwitness brace")
        dot = dot_export.bgraph_to_dot(verdict.witness, name="witness")
    return CommandResult(code, text, _report("cyclewidth2", code, verdict.status.value,
                                             **documents.cyclewidth_result(verdict)), dot)


def _compact_digraph(d: Digraph) -> Digraph:
    index = {v: i for i, v in enumerate(d.vertices, start=1)}
    return Digraph.from_count(d.order, {(index[u], index[v]) for u, v in d.arcs})


def cmd_dtd2(args) -> CommandResult:
    d = load_digraph(args.digraph)
    dtd = directed_tree_decomposition_w2(d)
    return CommandResult(EXIT_OK, formats.emit_dtd(dtd), documents.dtd_document(dtd), dot_export.dtd_to_dot(dtd))


def cmd_bicontract(args) -> CommandResult:
    g, _ = load_graph(args.graph)
    contracted, record = bicontract(g, Vertex.parse(args.vertex))
    result = compact(contracted)
    comment = f"bicontraction of {{{format_shore(record.shore)}}} into {record.vertex}, renumbered"
    return CommandResult(EXIT_OK, formats.emit_bgraph(result, comment=comment),
                         documents.graph_document(result), dot_export.bgraph_to_dot(result))


def cmd_brute_cw(args) -> CommandResult:
    d = load_digraph(args.digraph)
    result = brute_force_cyclewidth(d)
    text = f"cyclewidth {result.width}\n"
    doc = _report("brute-cw", EXIT_OK, f"cyclewidth {result.width}", cyclewidth=result.width,
                  tree_edges=result.tree.edge_list if result.tree is not None else [],
                  leaves={str(k): v for k, v in result.delta.items()})
    return CommandResult(EXIT_OK, text, doc)


COMMANDS: Dict[str, Callable] = {
    "porosity": cmd_porosity,
    "is-brace": cmd_is_brace,
    "is-covered": cmd_is_covered,
    "extendable": cmd_extendable,
    "tightcuts": cmd_tightcuts,
    "pmw2": cmd_pmw2,
    "mew": cmd_mew,
    "brute-pmw": cmd_brute_pmw,
    "ladder": cmd_ladder,
    "mpmw2": cmd_mpmw2,
    "mdirect": cmd_mdirect,
    "split": cmd_split,
    "cyclewidth2": cmd_cyclewidth2,
    "dtd2": cmd_dtd2,
    "bicontract": cmd_bicontract,
    "brute-cw": cmd_brute_cw,
}


def command_names() -> List[str]:
    return list(COMMANDS)
