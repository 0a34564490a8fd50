"""Integral flows: boundary, walk <-> flow conversion and lifting to the cover.

Edge functions are plain tuples of ints indexed by edge id; the graph and the
orientation they refer to are passed alongside.
"""

from __future__ import annotations

import dataclasses
from typing import Sequence

from .cover import CoverGraph, build_cover, lift_directed_walk, lift_orientation
from .graph import (
    DirectedWalk,
    Orientation,
    SignedGraph,
    Walk,
    WalkStep,
    components,
    coupling,
    walk_sign,
)

__all__ = [
    "FlowError",
    "DEFAULT_WEIGHT_CAP",
    "boundary",
    "is_flow",
    "support",
    "total_weight",
    "flow_from_walk",
    "walk_from_flow",
    "orientation_of_flow",
    "absolute",
    "lift_flow",
    "LiftedFlow",
    "check_walk_boundary_lemma",
]

DEFAULT_WEIGHT_CAP = 10**6


class FlowError(ValueError):
    """Input is not a flow, or violates a precondition on its values."""


def _check_len(graph: SignedGraph, f: Sequence[int]) -> None:
    if len(f) != graph.m:
        raise FlowError(f"edge function has {len(f)} values, graph has {graph.m} edges")


def boundary(graph: SignedGraph, orientation: Orientation, f: Sequence[int]) -> tuple[int, ...]:
    _check_len(graph, f)
    out = [0] * graph.n
    for ed in graph.edges:
        val = f[ed.id]
        if val:
            out[ed.u] += orientation(ed.id, 0) * val
            out[ed.v] += orientation(ed.id, 1) * val
    return tuple(out)


def is_flow(graph: SignedGraph, orientation: Orientation, f: Sequence[int]) -> bool:
    return not any(boundary(graph, orientation, f))


def support(f: Sequence[int]) -> frozenset[int]:
    return frozenset(e for e, x in enumerate(f) if x)


def total_weight(f: Sequence[int]) -> int:
    return sum(abs(x) for x in f)


def flow_from_walk(graph: SignedGraph, orientation: Orientation, dw: DirectedWalk) -> tuple[int, ...]:
    """Sum over traversals of the coupling between ``orientation`` and the walk direction."""
    f = [0] * graph.m
    for i, st in enumerate(dw.walk.steps):
        f[st.edge] += orientation(st.edge, st.entry) * dw.values[i][0]
    return tuple(f)


def check_walk_boundary_lemma(graph: SignedGraph, orientation: Orientation, dw: DirectedWalk) -> bool:
    """Compare the boundary of the walk's function with the closed-form prediction."""
    n = len(dw.values)
    walk = dw.walk
    expected = [0] * graph.n
    first = dw.values[0][0]
    if walk.is_closed:
        if walk_sign(graph, walk) < 0:
            expected[walk.start] = 2 * first
    else:
        expected[walk.start] += first
        expected[walk.end] += dw.values[n - 1][1]
        if dw.values[n - 1][1] != -walk_sign(graph, walk) * first:
            return False
    return list(boundary(graph, orientation, flow_from_walk(graph, orientation, dw))) == expected


def orientation_of_flow(graph: SignedGraph, orientation: Orientation, f: Sequence[int]) -> Orientation:
    """Flip both ends of every edge carrying a negative value."""
    _check_len(graph, f)
    return Orientation(
        tuple(
            (-p[0], -p[1]) if (p is not None and f[e] < 0) else p
            for e, p in enumerate(orientation.values)
        )
    )


def absolute(f: Sequence[int]) -> tuple[int, ...]:
    return tuple(abs(x) for x in f)


def _require_flow(graph, orientation, f, cap):
    _check_len(graph, f)
    weight = total_weight(f)
    if cap is not None and weight > cap:
        raise FlowError(f"total weight {weight} exceeds the cap {cap}")
    bd = boundary(graph, orientation, f)
    for v, x in enumerate(bd):
        if x:
            raise FlowError(f"not a flow: boundary {x:+d} at vertex {graph.vertex_names[v]}")


def walk_from_flow(
    graph: SignedGraph,
    orientation: Orientation,
    f: Sequence[int],
    cap: int | None = DEFAULT_WEIGHT_CAP,
) -> DirectedWalk:
    """Closed positive walk directed by ``orientation`` whose flow is ``f``.

    ``f`` must be a nonnegative nonzero flow with connected support.  The
    walk is grown greedily (smallest edge id, then slot, at every extension)
    until it closes up positively; the leftover flow splits into components
    whose tours are spliced in where the main tour first meets them.
    """
    _require_flow(graph, orientation, f, cap)
    if any(x < 0 for x in f):
        raise FlowError("flow must be nonnegative")
    supp = support(f)
    if not supp:
        raise FlowError("flow is zero")
    if len(components(graph, supp)) > 1:
        raise FlowError("support of the flow is disconnected")
    return _tour(graph, orientation, tuple(f))


def _greedy_closed(graph: SignedGraph, orientation: Orientation, residual: list[int]) -> DirectedWalk:
    """Extend from the smallest live edge until the walk is closed and positive.

    Consumes the walk's traversals from ``residual``.
    """
    e0 = min(e for e, x in enumerate(residual) if x > 0)
    ed = graph.edge(e0)
    start = ed.u
    steps = [WalkStep(e0, 0, 1)]
    values = [(orientation(e0, 0), orientation(e0, 1))]
    residual[e0] -= 1
    at = ed.v
    while not (at == start and values[-1][1] + values[0][0] == 0):
        want = -values[-1][1]
        for e, slot in graph.ends_at[at]:
            if residual[e] > 0 and orientation(e, slot) == want:
                break
        else:  # pragma: no cover - excluded by conservation
            raise FlowError("greedy walk got stuck; input is not a nonnegative flow")
        residual[e] -= 1
        steps.append(WalkStep(e, slot, 1 - slot))
        values.append((orientation(e, slot), orientation(e, 1 - slot)))
        at = graph.edge(e).endpoint(1 - slot)
    return DirectedWalk(Walk.from_steps(graph, start, steps), tuple(values))


def _splice(main: DirectedWalk, subtours: list[DirectedWalk], comp_vertices: list[set[int]]) -> DirectedWalk:
    """Insert each subtour at the first vertex of ``main`` it shares."""
    pending = list(zip(comp_vertices, subtours))
    n = len(main.values)
    insert_at: dict[int, list[DirectedWalk]] = {}
    for pos in range(n):
        v = main.walk.vertices[pos]
        for item in list(pending):
            verts, sub = item
            if v in verts:
                insert_at.setdefault(pos, []).append(_rooted(sub, v, main, pos))
                pending.remove(item)
    assert not pending, "residual component does not meet the main tour"
    steps: list[WalkStep] = []
    values: list[tuple[int, int]] = []
    for pos in range(n):
        for sub in insert_at.get(pos, []):
            steps.extend(sub.walk.steps)
            values.extend(sub.values)
        steps.append(main.walk.steps[pos])
        values.append(main.values[pos])
    vertices = [main.walk.start]
    for pos in range(n):
        for sub in insert_at.get(pos, []):
            vertices.extend(sub.walk.vertices[1:])
        vertices.append(main.walk.vertices[pos + 1])
    return DirectedWalk(Walk(tuple(vertices), tuple(steps)), tuple(values))


def _rooted(sub: DirectedWalk, v: int, main: DirectedWalk, pos: int) -> DirectedWalk:
    """Rotate (and if needed reverse) a closed tour so it fits into ``main`` at ``pos``."""
    arrive = main.values[pos - 1][1]  # pos == 0 wraps to the closing step
    for cand in (sub, sub.inverse()):
        for i, x in enumerate(cand.walk.vertices[:-1]):
            if x == v and cand.values[i][0] == -arrive:
                return cand.rotate(i)
    raise AssertionError("no coherent splice point")


def _tour(graph: SignedGraph, orientation: Orientation, f: tuple[int, ...]) -> DirectedWalk:
    # Iterative post-order over (flow, main tour, residual components).
    root: dict = {"f": f}
    stack = [root]
    while stack:
        node = stack[-1]
        if "main" not in node:
            residual = list(node["f"])
            node["main"] = _greedy_closed(graph, orientation, residual)
            comps = components(graph, support(residual))
            node["children"] = [
                {"f": tuple(residual[e] if e in c else 0 for e in range(graph.m))} for c in comps
            ]
            node["verts"] = [graph.vertices_of(c) for c in comps]
            stack.extend(reversed(node["children"]))
            continue
        stack.pop()
        if node["children"]:
            node["tour"] = _splice(node["main"], [c["tour"] for c in node["children"]], node["verts"])
        else:
            node["tour"] = node["main"]
        for c in node["children"]:
            del c["tour"]
    return root["tour"]


@dataclasses.dataclass(frozen=True)
class LiftedFlow:
    cover: CoverGraph
    cover_orientation: Orientation
    values: tuple[int, ...]
    walks: tuple[DirectedWalk, ...]  # lifted generating walk per support component
    base_walks: tuple[DirectedWalk, ...]


def lift_flow(
    graph: SignedGraph,
    orientation: Orientation,
    f: Sequence[int],
    cover: CoverGraph | None = None,
    cap: int | None = DEFAULT_WEIGHT_CAP,
) -> LiftedFlow:
    """Lift ``f`` to the cover, one generating walk per support component.

    Each component's ``|f|`` is toured in ``(graph, w_f)``; the tour is lifted
    from level ``+`` at its first vertex and its flow in the lifted
    orientation is added up.
    """
    _require_flow(graph, orientation, f, cap)
    cover = cover or build_cover(graph)
    cover_or = lift_orientation(cover, orientation)
    w_f = orientation_of_flow(graph, orientation, f)
    values = [0] * cover.graph.m
    walks, base_walks = [], []
    for comp in components(graph, support(f)):
        part = tuple(abs(f[e]) if e in comp else 0 for e in range(graph.m))
        dw = _tour(graph, w_f, part)
        lifted = lift_directed_walk(cover, dw, 1)
        for x, val in enumerate(flow_from_walk(cover.graph, cover_or, lifted)):
            values[x] += val
        walks.append(lifted)
        base_walks.append(dw)
    return LiftedFlow(cover, cover_or, tuple(values), tuple(walks), tuple(base_walks))


def signed(c: Sequence[int], f: Sequence[int]) -> tuple[int, ...]:
    """Pointwise product, e.g. ``coupling(w, w_f) * |f|``."""
    return tuple(a * b for a, b in zip(c, f))


def relative_to(o_from: Orientation, o_to: Orientation, f: Sequence[int]) -> tuple[int, ...]:
    """Re-express ``f`` given on ``(graph, o_from)`` as a function on ``(graph, o_to)``."""
    return signed(coupling(o_from, o_to), f)
