"""Hasse diagrams in Graphviz DOT."""

from __future__ import annotations


def _quote(text):
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(L, labels=None, name="L"):
    """DOT text for the Hasse diagram of L: one node per element in table
    order, one edge per covering pair, nodes of equal height on one rank."""
    labels = list(labels) if labels is not None else [str(x) for x in L.names]
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for a in L.elements:
        lines.append(f"  n{a} [label={_quote(labels[a])}];")
    heights = L.heights()
    for h in sorted(set(heights)):
        members = [a for a in L.elements if heights[a] == h]
        lines.append("  { rank=same; " + " ".join(f"n{a};" for a in members) + " }")
    for a, b in L.covers():
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
