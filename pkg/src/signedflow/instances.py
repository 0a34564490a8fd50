"""Seeded random instances: signed multigraphs, orientations, flows and circle-trees."""

from __future__ import annotations

import dataclasses
import random
from collections import deque

from .cover import build_cover, project_directed_walk
from .flow import flow_from_walk
from .graph import DirectedWalk, Orientation, SignedGraph, Walk, WalkStep

__all__ = ["Instance", "random_graph", "random_orientation", "random_flow", "random_instance", "random_circle_tree"]


@dataclasses.dataclass(frozen=True)
class Instance:
    graph: SignedGraph
    orientation: Orientation
    flow: tuple[int, ...]


def random_graph(
    rng: random.Random,
    max_vertices: int = 5,
    max_edges: int = 9,
    loop_prob: float = 0.15,
    neg_prob: float = 0.5,
    min_edges: int = 1,
) -> SignedGraph:
    n = rng.randint(1, max_vertices)
    m = rng.randint(min_edges, max_edges)
    recs = []
    for i in range(m):
        u = rng.randrange(n)
        v = u if (n == 1 or rng.random() < loop_prob) else rng.randrange(n)
        sign = -1 if rng.random() < neg_prob else 1
        recs.append((f"e{i}", f"v{u}", f"v{v}", sign))
    return SignedGraph.build(recs, vertices=[f"v{i}" for i in range(n)])


def random_orientation(rng: random.Random, graph: SignedGraph) -> Orientation:
    return Orientation.from_slot0(graph, [rng.choice((1, -1)) for _ in range(graph.m)])


def _closed_positive_walk(rng: random.Random, graph: SignedGraph, cover, steps: int) -> DirectedWalk | None:
    """Random closed walk in the cover through a lift of a random vertex, projected."""
    cg = cover.graph
    live = [v for v in graph.vertices if graph.ends_at[v]]
    if not live:
        return None
    start = 2 * rng.choice(live)
    at = start
    path: list[WalkStep] = []
    for _ in range(steps):
        e, slot = rng.choice(cg.ends_at[at])
        path.append(WalkStep(e, slot, 1 - slot))
        at = cg.edge(e).endpoint(1 - slot)
    if at != start or not path:
        prev: dict[int, tuple[int, WalkStep] | None] = {at: None}
        queue = deque([at])
        while queue and start not in prev:
            a = queue.popleft()
            for e, slot in cg.ends_at[a]:
                b = cg.edge(e).endpoint(1 - slot)
                if b not in prev:
                    prev[b] = (a, WalkStep(e, slot, 1 - slot))
                    queue.append(b)
        back = []
        b = start
        while prev[b] is not None:
            a, st = prev[b]
            back.append(st)
            b = a
        path.extend(reversed(back))
    if not path:
        return None
    walk = Walk.from_steps(cg, start, path)
    return project_directed_walk(cover, DirectedWalk.direct(cg, walk, rng.choice((1, -1))))


def random_flow(
    rng: random.Random,
    graph: SignedGraph,
    orientation: Orientation,
    walks: tuple[int, int] = (1, 4),
    max_steps: int = 6,
) -> tuple[int, ...]:
    """Sum of 1-4 flows of random closed positive walks; a flow by construction."""
    cover = build_cover(graph)
    f = [0] * graph.m
    for _ in range(rng.randint(*walks)):
        dw = _closed_positive_walk(rng, graph, cover, rng.randint(0, max_steps))
        if dw is None:
            continue
        for e, x in enumerate(flow_from_walk(graph, orientation, dw)):
            f[e] += x
    return tuple(f)


def random_instance(seed: int, max_vertices: int = 5, max_edges: int = 9, **kw) -> Instance:
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices, max_edges)
    o = random_orientation(rng, g)
    return Instance(g, o, random_flow(rng, g, o, **kw))


def random_circle_tree(rng: random.Random, max_circles: int = 4, max_circle_len: int = 3, max_path_len: int = 2) -> SignedGraph:
    """Random sesqui-Eulerian circle-tree; every edge of the result belongs to it.

    New circles hang off circle vertices that are not cut-vertices yet, either
    directly or through a path; circle signs are then fixed to satisfy
    ``sigma(C) = (-1)^p``.
    """
    edges: list[list] = []  # [u, v, sign]
    circles: list[list[int]] = []  # edge indices
    circle_vertices: list[list[int]] = []
    cut_count: dict[int, int] = {}
    nv = 0

    def add_circle(anchor: int | None) -> None:
        nonlocal nv
        length = rng.randint(1, max_circle_len)
        verts = [anchor if anchor is not None else nv]
        if anchor is None:
            nv += 1
        for _ in range(length - 1):
            verts.append(nv)
            nv += 1
        ids = []
        for i in range(length):
            ids.append(len(edges))
            edges.append([verts[i], verts[(i + 1) % length], rng.choice((1, -1))])
        circles.append(ids)
        circle_vertices.append(verts)

    add_circle(None)
    for _ in range(rng.randint(0, max_circles - 1)):
        free = [
            (ci, v)
            for ci, verts in enumerate(circle_vertices)
            for v in verts
            if cut_count.get(v, 0) == 0
        ]
        if not free:
            break
        ci, x = rng.choice(free)
        cut_count[x] = 1
        plen = rng.randint(0, max_path_len)
        at = x
        for _ in range(plen):
            edges.append([at, nv, rng.choice((1, -1))])
            at = nv
            nv += 1
        if plen:
            cut_count[at] = 1
        add_circle(at)
    # parity: p = number of cut-vertices on the circle
    cut = set(cut_count)
    for ci, ids in enumerate(circles):
        p = sum(1 for v in circle_vertices[ci] if v in cut)
        sign = 1
        for e in ids:
            sign *= edges[e][2]
        if sign != (-1) ** p:
            e = rng.choice(ids)
            edges[e][2] *= -1
    order = list(range(len(edges)))
    rng.shuffle(order)
    recs = [(f"e{i}", f"v{edges[k][0]}", f"v{edges[k][1]}", edges[k][2]) for i, k in enumerate(order)]
    return SignedGraph.build(recs, vertices=[f"v{i}" for i in range(nv)])
