# tools/dot_export.py

"""
Graphviz DOT rendering through jinja2 templates.

A-vertices are drawn filled and B-vertices hollow; decomposition leaves
carry the name and colour of the host vertex they stand for.
"""

from typing import Optional

from jinja2 import Environment, StrictUndefined

from core.decomp_tree import DecompositionTree, WidthReport
from core.m_width_digraph import Digraph, DirectedTreeDecomposition
from core.graph_core import BipartiteGraph, Matching

_env = Environment(undefined=StrictUndefined, trim_blocks=True, lstrip_blocks=True, autoescape=False)

BGRAPH_TEMPLATE = _env.from_string("""\
graph {{ name }} {
  node [shape=circle, fontsize=10];
{% for v in vertices %}
  {{ v.name }} [style={{ 'filled' if v.side == 'a' else 'solid' }}, fillcolor=black, fontcolor={{ 'white' if v.side == 'a' else 'black' }}];
{% endfor %}
{% for a, b, matched in edges %}
  a{{ a }} -- b{{ b }}{% if matched %} [penwidth=3]{% endif %};
{% endfor %}
}
""")

DECOMPOSITION_TEMPLATE = _env.from_string("""\
graph {{ name }} {
  node [fontsize=10];
{% for node in inner %}
  t{{ node }} [shape=point];
{% endfor %}
{% for leaf, v in leaves %}
  t{{ leaf }} [label="{{ v.name }}", shape=circle, style={{ 'filled' if v.side == 'a' else 'solid' }}, fillcolor=black, fontcolor={{ 'white' if v.side == 'a' else 'black' }}];
{% endfor %}
{% for u, v, label in edges %}
  t{{ u }} -- t{{ v }}{% if label %} [label="{{ label }}"]{% endif %};
{% endfor %}
}
""")

DIGRAPH_TEMPLATE = _env.from_string("""\
digraph {{ name }} {
  node [shape=circle, fontsize=10];
{% for v in vertices %}
  v{{ v }} [label="{{ v }}"];
{% endfor %}
{% for u, v in arcs %}
  v{{ u }} -> v{{ v }};
{% endfor %}
}
""")

DTD_TEMPLATE = _env.from_string("""\
digraph {{ name }} {
  node [shape=box, fontsize=10];
{% for node, bag in bags %}
  t{{ node }} [label="t{{ node }}: {{ bag }}"{% if node == root %}, peripheries=2{% endif %}];
{% endfor %}
{% for p, c, guard in arcs %}
  t{{ p }} -> t{{ c }} [label="{{ guard }}"];
{% endfor %}
}
""")


class _V:
    def __init__(self, vertex):
        self.name = str(vertex)
        self.side = vertex.side


def bgraph_to_dot(g: BipartiteGraph, m: Optional[Matching] = None, name: str = "G") -> str:
    matched = m.pairs if m is not None else frozenset()
    return BGRAPH_TEMPLATE.render(
        name=name,
        vertices=[_V(v) for v in g.vertices],
        edges=[(a, b, (a, b) in matched) for a, b in g.edge_list],
    )


def decomposition_to_dot(d: DecompositionTree, report: Optional[WidthReport] = None, name: str = "T") -> str:
    """Tree edges are labelled with their porosity when a width report is given."""
    porosity = {r.edge: r.porosity for r in report.edges} if report is not None else {}
    return DECOMPOSITION_TEMPLATE.render(
        name=name,
        inner=d.tree.inner_nodes,
        leaves=[(leaf, _V(d.delta[leaf])) for leaf in sorted(d.delta)],
        edges=[(u, v, porosity.get((u, v), "")) for u, v in d.tree.edge_list],
    )


def digraph_to_dot(d: Digraph, name: str = "D") -> str:
    return DIGRAPH_TEMPLATE.render(name=name, vertices=list(d.vertices), arcs=d.arc_list)


def dtd_to_dot(dtd: DirectedTreeDecomposition, name: str = "DTD") -> str:
    def as_set(vertices) -> str:
        return "{" + ",".join(str(v) for v in sorted(vertices)) + "}"

    return DTD_TEMPLATE.render(
        name=name,
        root=dtd.root,
        bags=[(t, as_set(dtd.bags[t])) for t in dtd.nodes],
        arcs=[(p, c, as_set(dtd.guards.get((p, c), ()))) for p, c in dtd.arcs],
    )
