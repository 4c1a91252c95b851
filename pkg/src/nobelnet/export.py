"""DOT and GraphML serialisation with stable, id-sorted output."""

from __future__ import annotations

from typing import Iterable
from xml.sax.saxutils import escape, quoteattr

from .core import GenealogyGraph

HIGHLIGHT_COLOR = "magenta"

_NODE_KEYS = [
    ("name", "string"),
    ("gender", "string"),
    ("laureate", "boolean"),
    ("prize_year", "int"),
    ("candidate", "boolean"),
    ("degree_year", "int"),
    ("degree_institution", "string"),
    ("highlight", "boolean"),
]
_EDGE_KEYS = [("kind", "string"), ("source", "string")]


def _dot_id(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(graph: GenealogyGraph, highlight: Iterable[str] = (), name: str = "genealogy") -> str:
    highlight = set(highlight)
    lines = [f"digraph {_dot_id(name)} {{"]
    for pid in sorted(graph.persons):
        p = graph[pid]
        attrs = [f"label={_dot_id(p.name or pid)}"]
        if pid in highlight:
            attrs += ["style=filled", f"fillcolor={HIGHLIGHT_COLOR}"]
        lines.append(f"  {_dot_id(pid)} [{', '.join(attrs)}];")
    for a, s in sorted(graph.pair_set):
        lines.append(f"  {_dot_id(a)} -> {_dot_id(s)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _gml_value(value) -> str | None:
    if value is None or value == "":
        return None
    if isinstance(value, bool):
        return "true" if value else "false"
    return escape(str(value))


def export_graphml(graph: GenealogyGraph, highlight: Iterable[str] = ()) -> str:
    highlight = set(highlight)
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">']
    for key, typ in _NODE_KEYS:
        out.append(f'  <key id="{key}" for="node" attr.name="{key}" attr.type="{typ}"/>')
    for key, typ in _EDGE_KEYS:
        out.append(f'  <key id="{key}" for="edge" attr.name="{key}" attr.type="{typ}"/>')
    out.append('  <graph id="genealogy" edgedefault="directed">')
    for pid in sorted(graph.persons):
        p = graph[pid]
        values = {
            "name": p.name, "gender": p.gender, "laureate": p.laureate,
            "prize_year": p.prize_year, "candidate": p.candidate,
            "degree_year": p.degree_year, "degree_institution": p.degree_institution,
            "highlight": pid in highlight,
        }
        out.append(f"    <node id={quoteattr(pid)}>")
        for key, _ in _NODE_KEYS:
            text = _gml_value(values[key])
            if text is not None:
                out.append(f'      <data key="{key}">{text}</data>')
        out.append("    </node>")
    for i, e in enumerate(sorted(e for e in graph.edges if e.pair in graph.pair_set)):
        out.append(f'    <edge id="e{i}" source={quoteattr(e.advisor_id)} target={quoteattr(e.student_id)}>')
        out.append(f'      <data key="kind">{escape(e.kind)}</data>')
        if e.source:
            out.append(f'      <data key="source">{escape(e.source)}</data>')
        out.append("    </edge>")
    out.append("  </graph>")
    out.append("</graphml>")
    return "\n".join(out) + "\n"
