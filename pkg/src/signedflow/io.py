"""Line-oriented text formats for graphs, orientations, flows and cover maps.

Graph:        ``v <id>`` (optional) and ``e <edge-id> <u> <v> <+|->``
Orientation:  ``o <edge-id> <slot0 +-1> <slot1 +-1>``
Flow:         ``f <edge-id> <integer>`` (omitted edges are 0)
Cover map:    ``<cover-edge-id> -> <base-edge-id> <level>``

Blank lines and lines starting with ``#`` are ignored everywhere.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .cover import CoverGraph, level
from .graph import GraphError, Orientation, SignedGraph

__all__ = [
    "ParseError",
    "parse_graph",
    "format_graph",
    "parse_orientation",
    "format_orientation",
    "parse_flow",
    "format_flow",
    "format_cover_map",
    "parse_cover_map",
]


class ParseError(ValueError):
    pass


def _records(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _sign_token(tok: str, lineno: int) -> int:
    if tok in ("+", "+1", "1"):
        return 1
    if tok in ("-", "-1"):
        return -1
    raise ParseError(f"line {lineno}: bad sign {tok!r}")


def parse_graph(text: str) -> SignedGraph:
    vertices: list[str] = []
    edges = []
    for lineno, tok in _records(text):
        if tok[0] == "v" and len(tok) == 2:
            vertices.append(tok[1])
        elif tok[0] == "e" and len(tok) == 5:
            edges.append((tok[1], tok[2], tok[3], _sign_token(tok[4], lineno)))
        else:
            raise ParseError(f"line {lineno}: expected 'v <id>' or 'e <id> <u> <v> <+|->'")
    # Endpoints not declared with a v line are added in order of appearance.
    declared = set(vertices)
    for _, u, v, _ in edges:
        for w in (u, v):
            if w not in declared:
                declared.add(w)
                vertices.append(w)
    try:
        return SignedGraph.build(edges, vertices=vertices)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def format_graph(graph: SignedGraph) -> str:
    lines = [f"v {name}" for name in graph.vertex_names]
    for ed in graph.edges:
        lines.append(
            f"e {graph.edge_names[ed.id]} {graph.vertex_names[ed.u]} {graph.vertex_names[ed.v]} {'+' if ed.sign > 0 else '-'}"
        )
    return "\n".join(lines) + "\n"


def _edge(graph: SignedGraph, name: str, lineno: int) -> int:
    try:
        return graph.edge_id(name)
    except (KeyError, GraphError):
        raise ParseError(f"line {lineno}: unknown edge {name!r}") from None


def parse_orientation(graph: SignedGraph, text: str) -> Orientation:
    """Edges without an ``o`` line get the default orientation."""
    values: list = list(Orientation.default(graph).values)
    seen: set[int] = set()
    for lineno, tok in _records(text):
        if tok[0] != "o" or len(tok) != 4:
            raise ParseError(f"line {lineno}: expected 'o <edge> <slot0> <slot1>'")
        e = _edge(graph, tok[1], lineno)
        if e in seen:
            raise ParseError(f"line {lineno}: edge {tok[1]} oriented twice")
        seen.add(e)
        a, b = _sign_token(tok[2], lineno), _sign_token(tok[3], lineno)
        if graph.sign(e) != -a * b:
            raise ParseError(f"line {lineno}: end values {a:+d},{b:+d} violate the sign of edge {tok[1]}")
        values[e] = (a, b)
    return Orientation(tuple(values))


def format_orientation(graph: SignedGraph, orientation: Orientation) -> str:
    lines = []
    for e, p in enumerate(orientation.values):
        if p is not None:
            lines.append(f"o {graph.edge_names[e]} {p[0]:+d} {p[1]:+d}")
    return "\n".join(lines) + "\n"


def parse_flow(graph: SignedGraph, text: str) -> tuple[int, ...]:
    f = [0] * graph.m
    seen: set[int] = set()
    for lineno, tok in _records(text):
        if tok[0] != "f" or len(tok) != 3:
            raise ParseError(f"line {lineno}: expected 'f <edge> <integer>'")
        e = _edge(graph, tok[1], lineno)
        if e in seen:
            raise ParseError(f"line {lineno}: edge {tok[1]} given twice")
        seen.add(e)
        try:
            f[e] = int(tok[2])
        except ValueError:
            raise ParseError(f"line {lineno}: bad integer {tok[2]!r}") from None
    return tuple(f)


def format_flow(graph: SignedGraph, f: Sequence[int], skip_zero: bool = True) -> str:
    lines = [f"f {graph.edge_names[e]} {x}" for e, x in enumerate(f) if x or not skip_zero]
    return "\n".join(lines) + ("\n" if lines else "")


def format_cover_map(cover: CoverGraph) -> str:
    g = cover.graph
    lines = [
        f"{g.edge_names[x]} -> {cover.base.edge_names[x >> 1]} {'+' if level(x) > 0 else '-'}"
        for x in range(g.m)
    ]
    return "\n".join(lines) + "\n"


def parse_cover_map(text: str) -> list[tuple[str, str, int]]:
    out = []
    for lineno, tok in _records(text):
        if len(tok) != 4 or tok[1] != "->":
            raise ParseError(f"line {lineno}: expected '<cover-edge> -> <base-edge> <level>'")
        out.append((tok[0], tok[2], _sign_token(tok[3], lineno)))
    return out
