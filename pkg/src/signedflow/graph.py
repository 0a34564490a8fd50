"""Signed multigraphs, edge ends, orientations and walks.

Vertices and edges carry dense integer ids ``0..n-1`` and ``0..m-1``; the
names read from a file (or passed to :meth:`SignedGraph.build`) are kept
alongside for output.  Every edge has two ends, ``(edge, 0)`` at ``edge.u``
and ``(edge, 1)`` at ``edge.v``, also when the edge is a loop.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from functools import cached_property
from typing import Iterable, Mapping, Sequence

__all__ = [
    "GraphError",
    "WalkError",
    "Edge",
    "SignedGraph",
    "Orientation",
    "WalkStep",
    "Walk",
    "DirectedWalk",
    "BlockDecomposition",
    "Balance",
    "parse_sign",
    "walk_sign",
    "is_coherent",
    "WalkSignCheck",
    "check_walk_sign_lemma",
    "reorient",
    "coupling",
    "is_balanced",
    "blocks",
    "components",
]


class GraphError(ValueError):
    """Invalid graph construction or an id that does not exist."""


class WalkError(ValueError):
    """A walk whose steps do not chain together."""


def parse_sign(token) -> int:
    if token in (1, "+", "+1", "1"):
        return 1
    if token in (-1, "-", "-1"):
        return -1
    raise GraphError(f"bad sign {token!r}")


@dataclasses.dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    sign: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def endpoint(self, slot: int) -> int:
        return self.u if slot == 0 else self.v

    def slots_at(self, vertex: int) -> tuple[int, ...]:
        return tuple(s for s in (0, 1) if self.endpoint(s) == vertex)


@dataclasses.dataclass(frozen=True)
class SignedGraph:
    edges: tuple[Edge, ...]
    vertex_names: tuple[str, ...]
    edge_names: tuple[str, ...]

    @classmethod
    def build(cls, records: Iterable[Sequence], vertices: Iterable | None = None) -> SignedGraph:
        """Build a graph from ``(name, u, v, sign)`` records.

        Vertex names are taken from ``vertices`` when given, otherwise in
        order of first appearance among the edge endpoints.
        """
        records = [tuple(r) for r in records]
        vnames: list[str] = []
        vindex: dict[str, int] = {}
        if vertices is not None:
            for name in vertices:
                name = str(name)
                if name in vindex:
                    raise GraphError(f"duplicate vertex id {name}")
                vindex[name] = len(vnames)
                vnames.append(name)
        enames: list[str] = []
        eindex: set[str] = set()
        edges: list[Edge] = []
        for rec in records:
            if len(rec) != 4:
                raise GraphError(f"edge record needs 4 fields, got {rec!r}")
            name, u, v, sign = (str(rec[0]), str(rec[1]), str(rec[2]), rec[3])
            if name in eindex:
                raise GraphError(f"duplicate edge id {name}")
            for w in (u, v):
                if w not in vindex:
                    if vertices is not None:
                        raise GraphError(f"edge {name}: unknown endpoint vertex {w}")
                    vindex[w] = len(vnames)
                    vnames.append(w)
            eindex.add(name)
            enames.append(name)
            edges.append(Edge(len(edges), vindex[u], vindex[v], parse_sign(sign)))
        return cls(tuple(edges), tuple(vnames), tuple(enames))

    @property
    def n(self) -> int:
        return len(self.vertex_names)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edge(self, e: int) -> Edge:
        if not 0 <= e < len(self.edges):
            raise GraphError(f"unknown edge id {e}")
        return self.edges[e]

    def sign(self, e: int) -> int:
        return self.edge(e).sign

    @cached_property
    def _vertex_ids(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.vertex_names)}

    @cached_property
    def _edge_ids(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.edge_names)}

    def vertex_id(self, name) -> int:
        try:
            return self._vertex_ids[str(name)]
        except KeyError:
            raise GraphError(f"unknown vertex {name}") from None

    def edge_id(self, name) -> int:
        try:
            return self._edge_ids[str(name)]
        except KeyError:
            raise GraphError(f"unknown edge {name}") from None

    @cached_property
    def ends_at(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the ends ``(edge, slot)`` at it, sorted by edge id then slot."""
        table: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for e in self.edges:
            table[e.u].append((e.id, 0))
            table[e.v].append((e.id, 1))
        return tuple(tuple(sorted(t)) for t in table)

    def ends(self) -> list[tuple[int, int]]:
        return [(e.id, s) for e in self.edges for s in (0, 1)]

    def vertices_of(self, edge_ids: Iterable[int]) -> set[int]:
        out: set[int] = set()
        for e in edge_ids:
            ed = self.edge(e)
            out.add(ed.u)
            out.add(ed.v)
        return out

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.m

    def indicator(self, edge_ids: Iterable[int], value: int = 1) -> tuple[int, ...]:
        f = [0] * self.m
        for e in edge_ids:
            f[e] = value
        return tuple(f)


@dataclasses.dataclass(frozen=True)
class Orientation:
    """End values in {+1, -1}, or ``None`` for edges outside the domain.

    ``values[e] = (omega(u, e), omega(v, e))`` in slot order.
    """

    values: tuple[tuple[int, int] | None, ...]

    def __call__(self, edge: int, slot: int) -> int:
        pair = self.values[edge]
        return 0 if pair is None else pair[slot]

    def domain(self) -> frozenset[int]:
        return frozenset(e for e, p in enumerate(self.values) if p is not None)

    @classmethod
    def default(cls, graph: SignedGraph) -> Orientation:
        """Slot 0 end points away from its vertex; a positive link runs u -> v."""
        return cls.from_slot0(graph, {e.id: -1 for e in graph.edges})

    @classmethod
    def from_slot0(cls, graph: SignedGraph, slot0: Mapping[int, int] | Sequence[int]) -> Orientation:
        """Fill in slot 1 from the sign constraint ``sigma(e) = -w(u,e) w(v,e)``."""
        items = slot0.items() if isinstance(slot0, Mapping) else enumerate(slot0)
        values: list[tuple[int, int] | None] = [None] * graph.m
        for e, a in items:
            values[e] = (a, -graph.sign(e) * a)
        return cls(tuple(values))

    def restrict(self, edge_ids: Iterable[int]) -> Orientation:
        keep = set(edge_ids)
        return Orientation(tuple(p if e in keep else None for e, p in enumerate(self.values)))

    def negate(self) -> Orientation:
        return Orientation(tuple(None if p is None else (-p[0], -p[1]) for p in self.values))

    def validate(self, graph: SignedGraph) -> None:
        if len(self.values) != graph.m:
            raise GraphError(f"orientation covers {len(self.values)} edges, graph has {graph.m}")
        for e, p in enumerate(self.values):
            if p is None:
                continue
            a, b = p
            if a not in (1, -1) or b not in (1, -1):
                raise GraphError(f"edge {graph.edge_names[e]}: end values must be +1 or -1")
            if graph.sign(e) != -a * b:
                raise GraphError(f"edge {graph.edge_names[e]}: end values {a:+d},{b:+d} violate its sign")


def reorient(graph: SignedGraph, orientation: Orientation, edge_set: Iterable[int]) -> Orientation:
    flip = set(edge_set)
    for e in flip:
        graph.edge(e)
    return Orientation(
        tuple(
            (-p[0], -p[1]) if (e in flip and p is not None) else p
            for e, p in enumerate(orientation.values)
        )
    )


def coupling(o1: Orientation, o2: Orientation, slot: int = 0) -> tuple[int, ...]:
    """``+1``/``-1`` where the two orientations agree/disagree, 0 off the common domain."""
    return tuple(
        0 if (p is None or q is None) else p[slot] * q[slot]
        for p, q in zip(o1.values, o2.values)
    )


# --------------------------------------------------------------------- walks


@dataclasses.dataclass(frozen=True)
class WalkStep:
    edge: int
    entry: int  # slot of the end at the vertex the step leaves
    exit: int  # slot of the end at the vertex the step arrives at

    def reversed(self) -> WalkStep:
        return WalkStep(self.edge, self.exit, self.entry)


@dataclasses.dataclass(frozen=True)
class Walk:
    vertices: tuple[int, ...]
    steps: tuple[WalkStep, ...]

    @classmethod
    def from_steps(cls, graph: SignedGraph, start: int, steps: Iterable[WalkStep | tuple]) -> Walk:
        steps = tuple(s if isinstance(s, WalkStep) else WalkStep(*s) for s in steps)
        vertices = [start]
        for i, st in enumerate(steps):
            ed = graph.edge(st.edge)
            if {st.entry, st.exit} != {0, 1}:
                raise WalkError(f"step {i}: entry and exit slots must be 0 and 1")
            if ed.endpoint(st.entry) != vertices[-1]:
                raise WalkError(
                    f"step {i}: edge {graph.edge_names[st.edge]} does not leave vertex "
                    f"{graph.vertex_names[vertices[-1]]}"
                )
            vertices.append(ed.endpoint(st.exit))
        return cls(tuple(vertices), steps)

    @classmethod
    def from_edges(cls, graph: SignedGraph, start: int, edges: Iterable[int], loop_slots: Sequence[int] = ()) -> Walk:
        """Walk along ``edges`` from ``start``.

        Link traversals are determined by the current vertex.  Loops are
        entered at slot 0 unless ``loop_slots`` gives the entry slot for each
        loop occurrence in order.
        """
        loop_entries = iter(loop_slots)
        at = start
        steps = []
        for e in edges:
            ed = graph.edge(e)
            if ed.is_loop:
                entry = next(loop_entries, 0)
            elif ed.u == at:
                entry = 0
            elif ed.v == at:
                entry = 1
            else:
                raise WalkError(f"edge {graph.edge_names[e]} is not incident with {graph.vertex_names[at]}")
            steps.append(WalkStep(e, entry, 1 - entry))
            at = ed.endpoint(1 - entry)
        return cls.from_steps(graph, start, steps)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def is_closed(self) -> bool:
        return len(self.steps) >= 1 and self.vertices[0] == self.vertices[-1]

    def edge_list(self) -> list[int]:
        return [s.edge for s in self.steps]

    def inverse(self) -> Walk:
        return Walk(self.vertices[::-1], tuple(s.reversed() for s in reversed(self.steps)))

    def subwalk(self, i: int, k: int) -> Walk:
        """The part ``v_i e_{i+1} ... e_k v_k``."""
        return Walk(self.vertices[i : k + 1], self.steps[i:k])

    def rotate(self, i: int) -> Walk:
        """Closed walk restarted at position ``i``."""
        if not self.is_closed:
            raise WalkError("only closed walks can be rotated")
        n = len(self.steps)
        i %= n
        steps = self.steps[i:] + self.steps[:i]
        verts = self.vertices[i:n] + self.vertices[:i] + (self.vertices[i],)
        return Walk(verts, steps)

    def concat(self, other: Walk) -> Walk:
        if self.end != other.start:
            raise WalkError("walks do not meet")
        return Walk(self.vertices + other.vertices[1:], self.steps + other.steps)


def walk_sign(graph: SignedGraph, walk: Walk) -> int:
    s = 1
    for st in walk.steps:
        s *= graph.sign(st.edge)
    return s


@dataclasses.dataclass(frozen=True)
class DirectedWalk:
    """A walk with end values per step: ``values[i] = (w(v_{i-1}, e_i), w(v_i, e_i))``.

    The values need not be coherent; :meth:`is_directed` tests that.
    """

    walk: Walk
    values: tuple[tuple[int, int], ...]

    @classmethod
    def direct(cls, graph: SignedGraph, walk: Walk, first: int = -1) -> DirectedWalk:
        """The direction of ``walk`` whose first end value is ``first``."""
        values = []
        a = first
        for st in walk.steps:
            b = -graph.sign(st.edge) * a
            values.append((a, b))
            a = -b
        return cls(walk, tuple(values))

    @classmethod
    def from_orientation(cls, walk: Walk, orientation: Orientation) -> DirectedWalk:
        return cls(walk, tuple((orientation(s.edge, s.entry), orientation(s.edge, s.exit)) for s in walk.steps))

    def __len__(self) -> int:
        return len(self.walk.steps)

    def end_value(self, i: int, slot: int) -> int:
        """Value at slot ``slot`` of the edge used by step ``i``."""
        st = self.walk.steps[i]
        a, b = self.values[i]
        return a if slot == st.entry else b

    def edge_orientation(self, i: int) -> tuple[int, int]:
        return (self.end_value(i, 0), self.end_value(i, 1))

    def is_directed(self) -> bool:
        n = len(self.values)
        if any(not is_coherent(self, i) for i in range(1, n)):
            return False
        return True

    def is_coherent_closed(self) -> bool:
        return self.walk.is_closed and self.is_directed() and is_coherent(self, 0)

    def inverse(self) -> DirectedWalk:
        return DirectedWalk(self.walk.inverse(), tuple((b, a) for a, b in reversed(self.values)))

    def rotate(self, i: int) -> DirectedWalk:
        n = len(self.values)
        i %= n
        return DirectedWalk(self.walk.rotate(i), self.values[i:] + self.values[:i])

    def concat(self, other: DirectedWalk) -> DirectedWalk:
        return DirectedWalk(self.walk.concat(other.walk), self.values + other.values)

    def orientation(self, graph: SignedGraph) -> Orientation:
        """The orientation the walk puts on its edges; raises if repeats disagree."""
        vals: list[tuple[int, int] | None] = [None] * graph.m
        for i, st in enumerate(self.walk.steps):
            pair = self.edge_orientation(i)
            if vals[st.edge] is not None and vals[st.edge] != pair:
                raise WalkError(f"edge {graph.edge_names[st.edge]} is traversed with two orientations")
            vals[st.edge] = pair
        return Orientation(tuple(vals))


def is_coherent(dw: DirectedWalk, position: int) -> bool:
    """Coherence at ``v_position``; position 0 (or n) means the base of a closed walk."""
    n = len(dw.values)
    if n == 0 or not 0 <= position <= n:
        raise WalkError(f"position {position} out of range for a walk of length {n}")
    if position in (0, n):
        if not dw.walk.is_closed:
            raise WalkError("coherence is undefined at the ends of an open walk")
        return dw.values[-1][1] + dw.values[0][0] == 0
    return dw.values[position - 1][1] + dw.values[position][0] == 0


@dataclasses.dataclass(frozen=True)
class WalkSignCheck:
    sign: int
    incoherent_internal: int
    predicted: int
    closed_incoherent: int | None = None
    closed_predicted: int | None = None

    @property
    def holds(self) -> bool:
        ok = self.sign == self.predicted
        if self.closed_predicted is not None:
            ok = ok and self.sign == self.closed_predicted
        return ok


def check_walk_sign_lemma(graph: SignedGraph, dw: DirectedWalk) -> WalkSignCheck:
    """Both sides of the walk-sign identity for arbitrary end values along ``dw``."""
    n = len(dw.values)
    if n == 0:
        raise WalkError("empty walk")
    sign = walk_sign(graph, dw.walk)
    ell = sum(1 for i in range(1, n) if not is_coherent(dw, i))
    predicted = (-1) ** (ell + 1) * dw.values[0][0] * dw.values[-1][1]
    if dw.walk.is_closed:
        k = ell + (0 if is_coherent(dw, 0) else 1)
        return WalkSignCheck(sign, ell, predicted, k, (-1) ** k)
    return WalkSignCheck(sign, ell, predicted)


# ------------------------------------------------------------------ structure


class _DSU:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def components(graph: SignedGraph, edge_ids: Iterable[int]) -> list[frozenset[int]]:
    """Edge sets of the connected components of the subgraph spanned by ``edge_ids``.

    Sorted by smallest vertex id.
    """
    edge_ids = sorted(set(edge_ids))
    dsu = _DSU()
    for e in edge_ids:
        ed = graph.edge(e)
        dsu.union(ed.u, ed.v)
    groups: dict[int, list[int]] = {}
    for e in edge_ids:
        groups.setdefault(dsu.find(graph.edge(e).u), []).append(e)
    return [frozenset(groups[r]) for r in sorted(groups)]


@dataclasses.dataclass(frozen=True)
class Balance:
    balanced: bool
    labels: dict[int, int] | None = None
    negative_circle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.balanced


def is_balanced(graph: SignedGraph, edge_ids: Iterable[int] | None = None) -> Balance:
    """Signed BFS labelling; on failure, a negative circle from the search tree."""
    edge_ids = set(range(graph.m)) if edge_ids is None else set(edge_ids)
    verts = sorted(graph.vertices_of(edge_ids)) if edge_ids else []
    label: dict[int, int] = {}
    parent: dict[int, tuple[int, int] | None] = {}
    depth: dict[int, int] = {}
    for root in verts:
        if root in label:
            continue
        label[root], parent[root], depth[root] = 1, None, 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e, slot in graph.ends_at[x]:
                if e not in edge_ids:
                    continue
                ed = graph.edge(e)
                y = ed.endpoint(1 - slot)
                if y not in label:
                    label[y] = label[x] * ed.sign
                    parent[y] = (x, e)
                    depth[y] = depth[x] + 1
                    queue.append(y)
                elif label[y] != label[x] * ed.sign:
                    return Balance(False, None, _tree_circle(parent, depth, x, y, e))
    return Balance(True, label, None)


def _tree_circle(parent, depth, x: int, y: int, closing: int) -> tuple[int, ...]:
    left, right = [], []
    while depth[x] > depth[y]:
        px, e = parent[x]
        left.append(e)
        x = px
    while depth[y] > depth[x]:
        py, e = parent[y]
        right.append(e)
        y = py
    while x != y:
        px, e = parent[x]
        left.append(e)
        x = px
        py, e = parent[y]
        right.append(e)
        y = py
    return tuple(left[::-1] + [closing] + right)


@dataclasses.dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    vertex_blocks: dict[int, tuple[int, ...]]

    def adjacent(self, b: int) -> set[int]:
        out: set[int] = set()
        for c in self.cut_vertices:
            bs = self.vertex_blocks[c]
            if b in bs:
                out.update(x for x in bs if x != b)
        return out


def blocks(graph: SignedGraph, edge_ids: Iterable[int] | None = None) -> BlockDecomposition:
    """Blocks (as edge sets) and cut-vertices of the subgraph spanned by ``edge_ids``.

    Every loop is a block of its own; a vertex lying in two or more blocks is
    a cut-vertex, which covers the "loop plus another edge" rule.
    """
    edge_ids = set(range(graph.m)) if edge_ids is None else set(edge_ids)
    found: list[frozenset[int]] = []
    links = {e for e in edge_ids if not graph.edge(e).is_loop}
    found.extend(frozenset([e]) for e in edge_ids if graph.edge(e).is_loop)

    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = 0
    for root in sorted(graph.vertices_of(links)):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        edge_stack: list[int] = []
        # frames: (vertex, edge used to reach it, iterator over ends)
        stack = [(root, -1, iter(graph.ends_at[root]))]
        while stack:
            x, via, it = stack[-1]
            advanced = False
            for e, slot in it:
                if e not in links or e == via:
                    continue
                y = graph.edge(e).endpoint(1 - slot)
                if y not in disc:
                    disc[y] = low[y] = counter
                    counter += 1
                    edge_stack.append(e)
                    stack.append((y, e, iter(graph.ends_at[y])))
                    advanced = True
                    break
                if disc[y] < disc[x]:
                    edge_stack.append(e)
                    low[x] = min(low[x], disc[y])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[x])
                if low[x] >= disc[p]:
                    comp = []
                    while True:
                        e = edge_stack.pop()
                        comp.append(e)
                        if e == via:
                            break
                    found.append(frozenset(comp))
    found.sort(key=min)
    vertex_blocks: dict[int, list[int]] = {}
    for i, b in enumerate(found):
        for v in graph.vertices_of(b):
            vertex_blocks.setdefault(v, []).append(i)
    cuts = frozenset(v for v, bs in vertex_blocks.items() if len(bs) >= 2)
    return BlockDecomposition(tuple(found), cuts, {v: tuple(bs) for v, bs in vertex_blocks.items()})
