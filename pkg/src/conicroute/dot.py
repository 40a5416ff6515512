"""Deterministic DOT rendering of a graph and its derived edges.

Original edges draw solid, shortcuts dashed, invented edges dotted; every
edge carries its weight as a label. Identical inputs yield byte-identical
text.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .contraction import Shortcut
from .graph import ConicGraph, NodeKind
from .invention import InventedEdge

_BARE_ID = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _dot_id(label: str) -> str:
    if _BARE_ID.match(label):
        return label
    return '"' + label.replace('"', '\\"') + '"'


def export_dot(graph: ConicGraph, overlay: Sequence[Shortcut] | None = None,
               invented: Iterable[InventedEdge] | None = None) -> str:
    """Render the graph (plus optional shortcuts and inventions) as DOT."""
    if graph.node_count == 0 and not overlay and not invented:
        return "digraph conic {}\n"
    lines = ["digraph conic {", "  rankdir=LR;"]
    label = {node.id: _dot_id(node.label) for node in graph.nodes}
    for node in graph.nodes:
        shape = "box" if node.kind is NodeKind.SOURCE else "ellipse"
        lines.append(f"  {label[node.id]} [shape={shape}];")
    for edge in graph.edges:
        style = {"original": "solid", "shortcut": "dashed", "invented": "dotted"}[
            edge.provenance.value
        ]
        suffix = "" if style == "solid" else f", style={style}"
        lines.append(
            f'  {label[edge.src]} -> {label[edge.dst]} [label="{edge.weight}"{suffix}];'
        )
    for shortcut in overlay or ():
        lines.append(
            f'  {label[shortcut.src]} -> {label[shortcut.dst]} '
            f'[label="{shortcut.weight}", style=dashed];'
        )
    for edge in invented or ():
        lines.append(
            f'  {label[edge.src]} -> {label[edge.dst]} '
            f'[label="{edge.weight}", style=dotted];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
