"""Command-line front end (``signedflow``)."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from .cover import build_cover, lift_orientation
from .decompose import (
    ORACLE_MAX_SUPPORT,
    ORACLE_MAX_VALUE,
    OracleCapExceeded,
    conformal_decompose,
    double_circuit_decompose,
    half_integer_decompose,
    oracle_is_minimal,
)
from .flow import DEFAULT_WEIGHT_CAP, FlowError, absolute, boundary, orientation_of_flow, total_weight
from .graph import GraphError, Orientation, SignedGraph, WalkError, components, is_balanced
from .instances import random_flow, random_graph, random_orientation
from .io import ParseError, format_cover_map, format_flow, format_graph, format_orientation, parse_flow, parse_graph, parse_orientation
from .structure import DEFAULT_CIRCUIT_CAP, StructureError, classify_circuit, enumerate_circuits, recognize_circle_tree

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load(args) -> tuple[SignedGraph, Orientation, tuple[int, ...] | None]:
    graph = parse_graph(_read(args.graph))
    if getattr(args, "orientation", None):
        orientation = parse_orientation(graph, _read(args.orientation))
    else:
        orientation = Orientation.default(graph)
    flow = None
    if getattr(args, "flow", None):
        flow = parse_flow(graph, _read(args.flow))
        cap = args.weight_cap
        if total_weight(flow) > cap:
            raise FlowError(f"total weight {total_weight(flow)} exceeds the cap {cap}")
    return graph, orientation, flow


def _edge_values(graph: SignedGraph, f) -> dict[str, int]:
    return {graph.edge_names[e]: x for e, x in enumerate(f) if x}


def _fmt_values(graph: SignedGraph, f) -> str:
    return " ".join(f"{k}={v}" for k, v in _edge_values(graph, f).items())


def _emit(args, doc: dict, text: str) -> None:
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=False))
    else:
        sys.stdout.write(text)


def _require_flow(graph, orientation, flow) -> None:
    if flow is None:
        raise FlowError("this command needs --flow")
    bd = boundary(graph, orientation, flow)
    bad = [(graph.vertex_names[v], x) for v, x in enumerate(bd) if x]
    if bad:
        where = ", ".join(f"{v}:{x:+d}" for v, x in bad)
        raise FlowError(f"not a flow; boundary residual at {where}")


def _tree_kind(graph, tree) -> str:
    c = classify_circuit(graph, tree.edges)
    return f"circuit-{c.kind}" if c else f"circle-tree({len(tree.circles)} circles)"


def cmd_cover(args) -> int:
    graph, orientation, _ = _load(args)
    cover = build_cover(graph)
    lifted = lift_orientation(cover, orientation)
    # isolated cover vertices count as components too
    touched = cover.graph.vertices_of(range(cover.graph.m))
    n_comp = len(components(cover.graph, range(cover.graph.m))) + cover.graph.n - len(touched)
    texts = {
        "graph": format_graph(cover.graph),
        "map": format_cover_map(cover),
        "orientation": format_orientation(cover.graph, lifted),
    }
    if args.prefix:
        for key, body in texts.items():
            Path(f"{args.prefix}.{key}").write_text(body)
    doc = {
        "vertices": cover.graph.n,
        "edges": cover.graph.m,
        "components": n_comp,
        "base_balanced": bool(is_balanced(graph)),
        **texts,
    }
    text = (
        f"# cover: {cover.graph.n} vertices, {cover.graph.m} edges, {n_comp} components\n"
        + "# graph\n" + texts["graph"]
        + "# map\n" + texts["map"]
        + "# orientation\n" + texts["orientation"]
    )
    _emit(args, doc, text)
    return EXIT_OK


def cmd_check_flow(args) -> int:
    graph, orientation, flow = _load(args)
    if flow is None:
        raise FlowError("this command needs --flow")
    bd = boundary(graph, orientation, flow)
    bad = {graph.vertex_names[v]: x for v, x in enumerate(bd) if x}
    doc = {"is_flow": not bad, "boundary": bad, "total_weight": total_weight(flow)}
    if bad:
        text = "not a flow\n" + "".join(f"boundary {v} {x:+d}\n" for v, x in bad.items())
    else:
        text = f"flow ok, total weight {total_weight(flow)}\n"
    _emit(args, doc, text)
    return EXIT_OK if not bad else EXIT_INVALID


def cmd_decompose(args) -> int:
    graph, orientation, flow = _load(args)
    _require_flow(graph, orientation, flow)
    d = conformal_decompose(graph, orientation, flow)
    parts_doc = []
    lines = []
    for p in d.parts:
        kind = _tree_kind(graph, p.certificate.tree)
        entry = {"type": kind, "multiplicity": p.multiplicity, "values": _edge_values(graph, p.flow)}
        lines.append(f"part {kind} x{p.multiplicity} : {_fmt_values(graph, p.flow)}\n")
        if args.check_oracle:
            entry["oracle"] = _oracle_check(graph, orientation, p.flow, args)
            lines.append(f"  oracle {entry['oracle']}\n")
            if entry["oracle"] == "fail":
                raise AssertionError("oracle found a smaller flow below a part")
        if args.half:
            hd = half_integer_decompose(graph, p.certificate.tree, p.certificate.direction)
            entry["half"] = []
            for c in hd.circuits:
                names = sorted((graph.edge_names[e] for e in c.edges), key=graph.edge_id)
                entry["half"].append({"type": c.kind, "edges": names})
                lines.append(f"  half {c.kind} : {' '.join(names)}\n")
            if hd.trivial:
                lines.append("  (already a circuit)\n")
        parts_doc.append(entry)
    doc = {"flow": _edge_values(graph, flow), "parts": parts_doc}
    if args.double and any(flow):
        terms = double_circuit_decompose(graph, orientation, flow)
        doc["double"] = [
            {"type": t.circuit.kind, "coefficient": t.coefficient, "values": _edge_values(graph, t.flow)} for t in terms
        ]
        lines.append("# 2f as circuit flows\n")
        for t in terms:
            lines.append(f"circuit {t.circuit.kind} x{t.coefficient} : {_fmt_values(graph, t.flow)}\n")
    _emit(args, doc, "".join(lines) or "zero flow: no parts\n")
    return EXIT_OK


def _oracle_check(graph, orientation, part, args) -> str:
    try:
        ok = oracle_is_minimal(
            graph, orientation_of_flow(graph, orientation, part), absolute(part), args.oracle_support, args.oracle_value
        )
    except OracleCapExceeded:
        return "skipped"
    return "pass" if ok else "fail"


def _edge_subset(graph: SignedGraph, names: str | None) -> list[int]:
    if not names:
        return list(range(graph.m))
    return [graph.edge_id(tok) for tok in names.split(",") if tok]


def cmd_classify(args) -> int:
    graph, _, _ = _load(args)
    edges = _edge_subset(graph, args.edges)
    circuit = classify_circuit(graph, edges)
    tree = recognize_circle_tree(graph, edges)
    name = lambda es: sorted((graph.edge_names[e] for e in es), key=graph.edge_id)  # noqa: E731
    if not tree:
        doc = {"circle_tree": False, "condition": tree.condition, "reason": tree.reason}
        text = f"not a circle-tree: ({tree.condition}) {tree.reason}\n"
        _emit(args, doc, text)
        return EXIT_OK
    circles = []
    lines = []
    if circuit:
        lines.append(f"circuit type {circuit.kind}\n")
    for i, c in enumerate(tree.circles):
        entry = {
            "edges": name(c.edge_list()),
            "sign": tree.circle_signs[i],
            "cut_vertices": tree.cut_counts[i],
            "parity_ok": tree.circle_signs[i] == (-1) ** tree.cut_counts[i],
        }
        circles.append(entry)
        lines.append(
            f"circle {' '.join(entry['edges'])} sign {entry['sign']:+d} cut-vertices {entry['cut_vertices']}"
            f" parity {'ok' if entry['parity_ok'] else 'FAIL'}\n"
        )
    paths = []
    for p in tree.paths:
        names = [graph.edge_names[e] for e in p.edges]
        paths.append({"edges": names, "length": len(p)})
        lines.append(f"path {' '.join(names) if names else '(vertex ' + graph.vertex_names[p.vertices[0]] + ')'} length {len(p)}\n")
    lines.append(f"length {tree.length}\n")
    lines.append(f"sesqui-eulerian {'yes' if tree.sesqui_eulerian else 'no'}\n")
    doc = {
        "circle_tree": True,
        "circuit": circuit.kind if circuit else None,
        "circles": circles,
        "paths": paths,
        "cut_vertices": sorted(graph.vertex_names[v] for v in tree.cut_vertices),
        "length": tree.length,
        "sesqui_eulerian": tree.sesqui_eulerian,
    }
    _emit(args, doc, "".join(lines))
    return EXIT_OK


def cmd_circuits(args) -> int:
    graph, _, _ = _load(args)
    found = enumerate_circuits(graph, args.circuit_cap)
    doc = []
    lines = []
    for c in found:
        names = sorted((graph.edge_names[e] for e in c.edges), key=graph.edge_id)
        doc.append({"type": c.kind, "edges": names})
        lines.append(f"{c.kind} {' '.join(names)}\n")
    _emit(args, {"circuits": doc}, "".join(lines) or "no circuits\n")
    return EXIT_OK


def cmd_random(args) -> int:
    rng = random.Random(args.seed)
    graph = random_graph(rng, args.vertices, args.edges, min_edges=min(args.edges, 1))
    orientation = random_orientation(rng, graph)
    flow = random_flow(rng, graph, orientation)
    texts = {
        "graph": format_graph(graph),
        "orientation": format_orientation(graph, orientation),
        "flow": format_flow(graph, flow),
    }
    if args.prefix:
        for key, body in texts.items():
            Path(f"{args.prefix}.{key}").write_text(body)
    text = "".join(f"# {k}\n{v}" for k, v in texts.items())
    _emit(args, texts, text)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    results = run_selftest(args.count, args.seed, args.oracle_support, args.oracle_value)
    failed = [r for r in results if not r.ok]
    doc = {"checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]}
    text = "".join(f"{'PASS' if r.ok else 'FAIL'} {r.name}{': ' + r.detail if r.detail else ''}\n" for r in results)
    _emit(args, doc, text)
    return EXIT_OK if not failed else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="signedflow", description="Integral flows on signed graphs.")
    parser.add_argument("--json", action="store_true", help="structured output")
    parser.add_argument("--weight-cap", type=int, default=_env_int("SIGNEDFLOW_WEIGHT_CAP", DEFAULT_WEIGHT_CAP))
    parser.add_argument("--oracle-support", type=int, default=_env_int("SIGNEDFLOW_ORACLE_SUPPORT", ORACLE_MAX_SUPPORT))
    parser.add_argument("--oracle-value", type=int, default=_env_int("SIGNEDFLOW_ORACLE_VALUE", ORACLE_MAX_VALUE))
    parser.add_argument("--circuit-cap", type=int, default=_env_int("SIGNEDFLOW_CIRCUIT_CAP", DEFAULT_CIRCUIT_CAP))
    sub = parser.add_subparsers(dest="command", required=True)

    def instance(p, flow=False):
        p.add_argument("graph", help="graph file ('-' for stdin)")
        p.add_argument("-o", "--orientation", help="orientation file (default: slot 0 ends -1)")
        if flow:
            p.add_argument("-f", "--flow", help="flow file")

    p = sub.add_parser("cover", help="double covering graph, edge map and lifted orientation")
    instance(p)
    p.add_argument("--prefix", help="also write PREFIX.graph, PREFIX.map, PREFIX.orientation")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("check-flow", help="boundary check")
    instance(p, flow=True)
    p.set_defaults(func=cmd_check_flow)

    p = sub.add_parser("decompose", help="conformal decomposition into indecomposable flows")
    instance(p, flow=True)
    p.add_argument("--half", action="store_true", help="half-integral circuit decomposition of each part")
    p.add_argument("--double", action="store_true", help="2f as a positive combination of circuit flows")
    p.add_argument("--check-oracle", action="store_true", help="verify each part by exhaustive search")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("classify", help="circuit type or circle-tree report of an edge set")
    instance(p)
    p.add_argument("--edges", help="comma-separated edge ids (default: all)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("circuits", help="list all circuits")
    instance(p)
    p.set_defaults(func=cmd_circuits)

    p = sub.add_parser("random", help="random graph, orientation and flow")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vertices", type=int, default=5)
    p.add_argument("--edges", type=int, default=9)
    p.add_argument("--prefix", help="write PREFIX.graph, PREFIX.orientation, PREFIX.flow")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("selftest", help="run invariant checks on fixtures and seeded instances")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, GraphError, WalkError, FlowError, StructureError, OracleCapExceeded, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
