"""Signed-graph circuits, circle-trees, their directions and minimal tours."""

from __future__ import annotations

import dataclasses
import itertools
from typing import Iterable, Sequence

from .cover import build_cover, lift_walk, project_directed_walk
from .graph import (
    DirectedWalk,
    Orientation,
    SignedGraph,
    Walk,
    WalkStep,
    blocks,
    components,
    coupling,
    walk_sign,
)

__all__ = [
    "StructureError",
    "DEFAULT_CIRCUIT_CAP",
    "BlockPath",
    "CircleTree",
    "CircleTreeFailure",
    "Circuit",
    "recognize_circle_tree",
    "classify_circuit",
    "circuit_flow",
    "enumerate_circuits",
    "is_direction",
    "direction_of",
    "indicator",
    "minimal_tour",
    "tour_count",
    "enumerate_minimal_tours",
]

DEFAULT_CIRCUIT_CAP = 16


class StructureError(ValueError):
    """Raised for parity violations and exceeded enumeration caps."""


@dataclasses.dataclass(frozen=True)
class BlockPath:
    """A path joining two circle blocks; a single vertex when it has length zero."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclasses.dataclass(frozen=True)
class CircleTree:
    edges: frozenset[int]
    circles: tuple[Walk, ...]  # closed walks, each starting on the block's smallest edge
    paths: tuple[BlockPath, ...]
    cut_vertices: frozenset[int]
    cut_counts: tuple[int, ...]  # cut-vertices of the tree on each circle
    circle_signs: tuple[int, ...]
    block_edges: tuple[frozenset[int], ...]
    vertex_blocks: dict[int, tuple[int, ...]]
    block_circle: dict[int, int]  # block index -> circle index, for circle blocks

    @property
    def sesqui_eulerian(self) -> bool:
        return all(s == (-1) ** p for s, p in zip(self.circle_signs, self.cut_counts))

    @property
    def parity_failures(self) -> tuple[int, ...]:
        return tuple(
            i for i, (s, p) in enumerate(zip(self.circle_signs, self.cut_counts)) if s != (-1) ** p
        )

    @property
    def length(self) -> int:
        return sum(len(c) for c in self.circles) + 2 * sum(len(p) for p in self.paths)

    @property
    def circle_edges(self) -> frozenset[int]:
        return frozenset(e for c in self.circles for e in c.edge_list())

    @property
    def path_edges(self) -> frozenset[int]:
        return frozenset(e for p in self.paths for e in p.edges)

    @property
    def end_circles(self) -> tuple[int, ...]:
        if len(self.circles) == 1:
            return ()
        return tuple(i for i, p in enumerate(self.cut_counts) if p == 1)


@dataclasses.dataclass(frozen=True)
class CircleTreeFailure:
    condition: str  # one of "a".."d", or "empty"
    reason: str
    witness: tuple = ()

    def __bool__(self) -> bool:
        return False


@dataclasses.dataclass(frozen=True)
class Circuit:
    kind: str  # "I", "II" or "III"
    circles: tuple[tuple[int, ...], ...]
    path: BlockPath | None
    tree: CircleTree

    @property
    def edges(self) -> frozenset[int]:
        return self.tree.edges


def _circle_walk(graph: SignedGraph, block: frozenset[int]) -> Walk:
    e0 = min(block)
    ed = graph.edge(e0)
    if ed.is_loop:
        return Walk.from_steps(graph, ed.u, [WalkStep(e0, 0, 1)])
    steps = [WalkStep(e0, 0, 1)]
    start, at, last = ed.u, ed.v, e0
    while at != start:
        for e, slot in graph.ends_at[at]:
            if e in block and e != last:
                break
        steps.append(WalkStep(e, slot, 1 - slot))
        at, last = graph.edge(e).endpoint(1 - slot), e
    return Walk.from_steps(graph, start, steps)


def recognize_circle_tree(graph: SignedGraph, edge_set: Iterable[int]) -> CircleTree | CircleTreeFailure:
    """Check the circle-tree conditions on the subgraph spanned by ``edge_set``.

    Parity is not a failure here; it is reported through
    :attr:`CircleTree.sesqui_eulerian`.
    """
    edge_set = frozenset(edge_set)
    if not edge_set:
        return CircleTreeFailure("empty", "edge set is empty")
    comps = components(graph, edge_set)
    if len(comps) > 1:
        return CircleTreeFailure("a", "not connected", tuple(sorted(min(c) for c in comps)))
    bd = blocks(graph, edge_set)
    is_circle = []
    for i, b in enumerate(bd.blocks):
        nverts = len(graph.vertices_of(b))
        if len(b) == nverts:
            is_circle.append(True)
        elif len(b) == 1:
            is_circle.append(False)
        else:
            return CircleTreeFailure("b", "block is neither a circle nor an edge", tuple(sorted(b)))
    for i, b in enumerate(bd.blocks):
        if not is_circle[i] and len(bd.adjacent(i)) <= 1:
            return CircleTreeFailure("c", "end block is an edge", tuple(sorted(b)))
    for c in sorted(bd.cut_vertices):
        if len(bd.vertex_blocks[c]) != 2:
            return CircleTreeFailure("d", "cut-vertex lies in more than two blocks", (c,))

    block_circle: dict[int, int] = {}
    circles = []
    for i, b in enumerate(bd.blocks):
        if is_circle[i]:
            block_circle[i] = len(circles)
            circles.append(_circle_walk(graph, b))

    def other_block(v: int, b: int) -> int:
        x, y = bd.vertex_blocks[v]
        return y if x == b else x

    paths: dict[frozenset, BlockPath] = {}
    for i, b in enumerate(bd.blocks):
        if not is_circle[i]:
            continue
        for c in sorted(graph.vertices_of(b) & bd.cut_vertices):
            nxt = other_block(c, i)
            if is_circle[nxt]:
                key = frozenset([("v", c)])
                paths.setdefault(key, BlockPath((c,), ()))
                continue
            verts, edges = [c], []
            at, cur = c, nxt
            while not is_circle[cur]:
                (e,) = bd.blocks[cur]
                edges.append(e)
                at = graph.edge(e).endpoint(1 if graph.edge(e).u == at else 0)
                verts.append(at)
                cur = other_block(at, cur)
            key = frozenset(edges)
            if key not in paths:
                if verts[0] > verts[-1]:
                    verts, edges = verts[::-1], edges[::-1]
                paths[key] = BlockPath(tuple(verts), tuple(edges))
    ordered_paths = tuple(sorted(paths.values(), key=lambda p: (min(p.edges) if p.edges else -1, p.vertices)))

    cut_counts = tuple(len(set(c.vertices) & bd.cut_vertices) for c in circles)
    signs = tuple(walk_sign(graph, c) for c in circles)
    return CircleTree(
        edges=edge_set,
        circles=tuple(circles),
        paths=ordered_paths,
        cut_vertices=bd.cut_vertices,
        cut_counts=cut_counts,
        circle_signs=signs,
        block_edges=bd.blocks,
        vertex_blocks=bd.vertex_blocks,
        block_circle=block_circle,
    )


def classify_circuit(graph: SignedGraph, edge_set: Iterable[int]) -> Circuit | None:
    tree = recognize_circle_tree(graph, edge_set)
    if not tree or not tree.sesqui_eulerian:
        return None
    circles = tuple(tuple(c.edge_list()) for c in tree.circles)
    if len(circles) == 1:
        return Circuit("I", circles, None, tree)
    if len(circles) == 2:
        (path,) = tree.paths
        return Circuit("II" if len(path) == 0 else "III", circles, path, tree)
    return None


def enumerate_circuits(graph: SignedGraph, cap: int = DEFAULT_CIRCUIT_CAP) -> list[Circuit]:
    """Every frame-matroid circuit, by exhaustive search over edge subsets."""
    if graph.m > cap:
        raise StructureError(f"graph has {graph.m} edges, circuit enumeration cap is {cap}")
    found = []
    # A circuit has at most one more edge than it has vertices.
    for k in range(1, min(graph.m, graph.n + 1) + 1):
        for subset in itertools.combinations(range(graph.m), k):
            if len(graph.vertices_of(subset)) not in (k, k - 1):
                continue
            c = classify_circuit(graph, subset)
            if c is not None:
                found.append(c)
    return found


def indicator(graph: SignedGraph, tree: CircleTree) -> tuple[int, ...]:
    f = [0] * graph.m
    for e in tree.circle_edges:
        f[e] = 1
    for e in tree.path_edges:
        f[e] = 2
    return tuple(f)


def is_direction(graph: SignedGraph, tree: CircleTree, orientation: Orientation) -> bool:
    """No sink or source anywhere on the tree, and a sink or source on every
    circle block at each of the tree's cut-vertices on it."""
    ends: dict[int, list[int]] = {}
    for e in tree.edges:
        p = orientation.values[e]
        if p is None:
            return False
        ed = graph.edge(e)
        ends.setdefault(ed.u, []).append(p[0])
        ends.setdefault(ed.v, []).append(p[1])
    for vals in ends.values():
        if all(x == 1 for x in vals) or all(x == -1 for x in vals):
            return False
    for circle in tree.circles:
        n = len(circle)
        for i in range(n):
            v = circle.vertices[i]
            arrive = orientation(circle.steps[i - 1].edge, circle.steps[i - 1].exit)
            leave = orientation(circle.steps[i].edge, circle.steps[i].entry)
            coherent = arrive + leave == 0
            if coherent == (v in tree.cut_vertices):
                return False
    return True


# ---------------------------------------------------------------- tours


def _tour_steps(graph: SignedGraph, tree: CircleTree) -> tuple[int, list[WalkStep]]:
    def other_block(v: int, b: int) -> int:
        x, y = tree.vertex_blocks[v]
        return y if x == b else x

    def block_index_of_circle(ci: int) -> int:
        for b, c in tree.block_circle.items():
            if c == ci:
                return b
        raise KeyError(ci)

    circle_block = {ci: block_index_of_circle(ci) for ci in range(len(tree.circles))}

    def detour(v: int, from_block: int) -> list[WalkStep]:
        b = other_block(v, from_block)
        if b in tree.block_circle:
            return around(tree.block_circle[b], v, is_root=False)
        (e,) = tree.block_edges[b]
        ed = graph.edge(e)
        slot = 0 if ed.u == v else 1
        there = WalkStep(e, slot, 1 - slot)
        return [there] + detour(ed.endpoint(1 - slot), b) + [there.reversed()]

    def around(ci: int, x: int, is_root: bool) -> list[WalkStep]:
        circle = tree.circles[ci]
        pos = circle.vertices.index(x)
        rot = circle.rotate(pos) if len(circle) > 1 else circle
        me = circle_block[ci]
        out: list[WalkStep] = []
        k = len(rot)
        for j, st in enumerate(rot.steps):
            out.append(st)
            u = rot.vertices[j + 1]
            if j + 1 < k and u in tree.cut_vertices:
                out.extend(detour(u, me))
        if is_root and x in tree.cut_vertices:
            out.extend(detour(x, me))
        return out

    start = tree.circles[0].start
    return start, around(0, start, is_root=True)


def direction_of(graph: SignedGraph, tree: CircleTree) -> Orientation:
    """The direction of a sesqui-Eulerian circle-tree, read off its resolving cover circle.

    Normalized so the smallest edge of the tree has value -1 at slot 0.
    """
    if not tree.sesqui_eulerian:
        raise StructureError(f"parity violation on circle block(s) {list(tree.parity_failures)}")
    start, steps = _tour_steps(graph, tree)
    walk = Walk.from_steps(graph, start, steps)
    cover = build_cover(graph)
    lifted = lift_walk(cover, walk, 1)
    if not lifted.is_closed or len(set(lifted.vertices[:-1])) != len(lifted):
        raise StructureError("lift of the tour is not a circle")  # pragma: no cover
    directed = DirectedWalk.direct(cover.graph, lifted, -1)
    omega = project_directed_walk(cover, directed).orientation(graph)
    e0 = min(tree.edges)
    if omega(e0, 0) != -1:
        omega = omega.negate()
    return omega


def minimal_tour(graph: SignedGraph, tree: CircleTree, direction: Orientation | None = None) -> DirectedWalk:
    """Closed walk covering circle edges once and path edges twice, directed by the tree direction."""
    if direction is None:
        direction = direction_of(graph, tree)
    start, steps = _tour_steps(graph, tree)
    return DirectedWalk.from_orientation(Walk.from_steps(graph, start, steps), direction)


def tour_count(tree: CircleTree) -> int:
    if not tree.sesqui_eulerian:
        raise StructureError("tour count needs a sesqui-Eulerian circle-tree")
    return 2 ** len(tree.circles)


def enumerate_minimal_tours(graph: SignedGraph, tree: CircleTree) -> list[Walk]:
    """All closed walks of length ``l(T)`` covering the tree, up to choice of start.

    Brute force; every tour uses the smallest circle edge exactly once, so
    tours are normalized to begin with it.
    """
    need = indicator(graph, tree)
    total = tree.length
    first = min(tree.circle_edges)
    found = []
    used = [0] * graph.m
    for slot in (0, 1):
        ed = graph.edge(first)
        start = ed.endpoint(slot)
        steps = [WalkStep(first, slot, 1 - slot)]
        used[first] += 1
        _extend(graph, tree, need, used, steps, ed.endpoint(1 - slot), start, total, found)
        used[first] -= 1
    return found


def _extend(graph, tree, need, used, steps, at, start, total, found):
    if len(steps) == total:
        if at == start and used == list(need):
            found.append(Walk.from_steps(graph, start, steps))
        return
    for e, slot in graph.ends_at[at]:
        if e not in tree.edges or used[e] >= need[e]:
            continue
        used[e] += 1
        steps.append(WalkStep(e, slot, 1 - slot))
        _extend(graph, tree, need, used, steps, graph.edge(e).endpoint(1 - slot), start, total, found)
        steps.pop()
        used[e] -= 1


def circuit_flow(graph: SignedGraph, orientation: Orientation, circuit: Circuit, sign: int = 1) -> tuple[int, ...]:
    """Circuit flow on ``(graph, orientation)``: +-1 on the circles, +-2 on the circuit path.

    ``sign`` picks which of the two directions of the circuit is used.
    """
    omega_t = direction_of(graph, circuit.tree)
    c = coupling(orientation, omega_t)
    return tuple(sign * x * y for x, y in zip(c, indicator(graph, circuit.tree)))


def characteristic_vector(graph: SignedGraph, orientation: Orientation, tree: CircleTree, direction: Orientation) -> tuple[int, ...]:
    return tuple(x * y for x, y in zip(coupling(orientation, direction), indicator(graph, tree)))


def all_orientations(graph: SignedGraph, edge_set: Sequence[int]) -> Iterable[Orientation]:
    """Every orientation of the subgraph on ``edge_set`` (2 per edge)."""
    edge_set = sorted(edge_set)
    for choice in itertools.product((1, -1), repeat=len(edge_set)):
        yield Orientation.from_slot0(graph, dict(zip(edge_set, choice)))
