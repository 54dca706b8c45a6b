"""Graphviz DOT rendering of links and of the hypertree poset."""

from __future__ import annotations

from typing import Sequence

from .complex import LinkGraph, MMVertex
from .hypertree import Hypertree, classify4, hasse_edges

# Node styles per rank-4 class, echoing the usual drawings of these links.
NODE_STYLE = {
    "nuclear": 'shape=circle, style=filled, fillcolor=black, fontcolor=white',
    "omega": 'shape=diamond',
    "line": 'shape=box',
    "star": 'shape=star, style=filled, fillcolor=gold',
}


def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def _vertex_class(v: MMVertex) -> str:
    return classify4(v.tree).kind if v.tree.rank == 4 else "nuclear"


def link_to_dot(g: LinkGraph) -> str:
    lines = ["graph link {", f"  label={_quote('link of ' + str(g.center))};"]
    for k, v in enumerate(g.vertices):
        kind = _vertex_class(v)
        lines.append(f"  v{k} [label={_quote(str(v))}, class={kind}, {NODE_STYLE[kind]}];")
    for a, b, c in g.edges:
        lines.append(f"  v{a} -- v{b} [label={_quote(c.name)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_to_dot(trees: Sequence[Hypertree]) -> str:
    """Hasse diagram of the fold order, drawn bottom (nuclear) to top."""
    index = {t: k for k, t in enumerate(trees)}
    lines = ["digraph poset {", "  rankdir=BT;"]
    for t, k in index.items():
        name = classify4(t).name if t.rank == 4 else str(t)
        lines.append(f"  t{k} [label={_quote(name)}];")
    for lo, hi in hasse_edges(trees):
        lines.append(f"  t{index[lo]} -> t{index[hi]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
