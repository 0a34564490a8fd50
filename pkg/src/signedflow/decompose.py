"""Resolution and conformal decomposition of integral flows.

A nonzero flow is conformally indecomposable exactly when its support is a
sesqui-Eulerian circle-tree, its sign orientation directs that tree, and its
absolute values are the tree's indicator.  The decomposition lifts ``|f|`` to
the double cover, peels ordinary directed circles there, projects them back,
and refines any projected piece that still decomposes.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from typing import Iterator, Sequence

from .cover import CoverGraph, build_cover, lift_directed_walk, lift_orientation, project_directed_walk
from .flow import (
    FlowError,
    absolute,
    boundary,
    flow_from_walk,
    lift_flow,
    orientation_of_flow,
    support,
    total_weight,
    walk_from_flow,
    _tour,
    _splice,
)
from .graph import components, DirectedWalk, Orientation, SignedGraph, Walk, WalkStep, coupling, is_coherent
from .structure import (
    Circuit,
    CircleTree,
    classify_circuit,
    indicator,
    is_direction,
    minimal_tour,
    recognize_circle_tree,
)

__all__ = [
    "OracleCapExceeded",
    "Certificate",
    "Indecomposability",
    "Resolution",
    "Part",
    "Decomposition",
    "HalfDecomposition",
    "DoubleTerm",
    "is_indecomposable",
    "resolve",
    "conformal_decompose",
    "half_integer_decompose",
    "double_circuit_decompose",
    "oracle_minimal_flows",
    "oracle_is_minimal",
    "peel_cover_circles",
    "reroute",
]

ORACLE_MAX_SUPPORT = 10
ORACLE_MAX_VALUE = 4


class OracleCapExceeded(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class Certificate:
    tree: CircleTree
    direction: Orientation  # a direction of the tree, restricted to its edges


@dataclasses.dataclass(frozen=True)
class Indecomposability:
    indecomposable: bool
    certificate: Certificate | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.indecomposable


def _require_nonzero_flow(graph: SignedGraph, orientation: Orientation, f: Sequence[int]) -> None:
    if len(f) != graph.m:
        raise FlowError(f"edge function has {len(f)} values, graph has {graph.m} edges")
    bd = boundary(graph, orientation, f)
    for v, x in enumerate(bd):
        if x:
            raise FlowError(f"not a flow: boundary {x:+d} at vertex {graph.vertex_names[v]}")
    if not any(f):
        raise FlowError("flow is zero")


def is_indecomposable(graph: SignedGraph, orientation: Orientation, f: Sequence[int]) -> Indecomposability:
    _require_nonzero_flow(graph, orientation, f)
    return _classify(graph, orientation, f)


def _classify(graph: SignedGraph, orientation: Orientation, f: Sequence[int]) -> Indecomposability:
    supp = support(f)
    tree = recognize_circle_tree(graph, supp)
    if not tree:
        return Indecomposability(False, None, f"support is not a circle-tree: {tree.reason}")
    if not tree.sesqui_eulerian:
        return Indecomposability(False, None, "support fails the parity condition")
    omega_f = orientation_of_flow(graph, orientation, f).restrict(supp)
    if not is_direction(graph, tree, omega_f):
        return Indecomposability(False, None, "sign orientation is not a direction of the support")
    if absolute(f) != indicator(graph, tree):
        return Indecomposability(False, None, "values differ from the circle-tree indicator")
    return Indecomposability(True, Certificate(tree, omega_f), "")


# ---------------------------------------------------------------- resolution


@dataclasses.dataclass(frozen=True)
class Resolution:
    cover: CoverGraph
    walk: DirectedWalk | None  # generating walk in the base, directed by w_f
    cover_walk: DirectedWalk | None
    cover_flow: tuple[int, ...]
    is_circle: bool
    rerouted: bool = False


def _is_cover_circle(dw: DirectedWalk) -> bool:
    w = dw.walk
    return w.is_closed and len(set(w.vertices[:-1])) == len(w)


def reroute(graph: SignedGraph, dw: DirectedWalk) -> DirectedWalk | None:
    """Shorter closed positive walk inside ``dw`` when two closed halves of it cross.

    ``dw`` is a coherent closed walk visiting each vertex at most twice.  For
    a double vertex ``v`` splitting it into ``W1 W2`` that both pass through
    another vertex ``u``, the result follows ``W1`` from ``v`` to ``u`` and
    returns to ``v`` along ``W2`` backwards.  Smallest ``v``, then smallest
    ``u``.  Returns ``None`` when every double vertex separates its halves.
    """
    walk = dw.walk
    n = len(walk)
    seen: dict[int, list[int]] = {}
    for i, v in enumerate(walk.vertices[:-1]):
        seen.setdefault(v, []).append(i)
    for v in sorted(x for x, pos in seen.items() if len(pos) == 2):
        rot = dw.rotate(seen[v][0])
        verts = rot.walk.vertices
        m = seen[v][1] - seen[v][0]
        first = {verts[k]: k for k in range(1, m)}
        common = sorted(
            (verts[h], first[verts[h]], h) for h in range(m + 1, n) if verts[h] in first and verts[h] != v
        )
        if not common:
            continue
        _, k, h = common[0]
        head = DirectedWalk(rot.walk.subwalk(0, k), rot.values[:k])
        tail = DirectedWalk(rot.walk.subwalk(m, h), rot.values[m:h]).inverse()
        out = head.concat(tail)
        assert out.is_coherent_closed(), "rerouted walk is not coherent"
        return out
    return None


def _split_coherent(dw: DirectedWalk) -> tuple[DirectedWalk, DirectedWalk] | None:
    """Split at a repeated vertex where both closed halves are coherent."""
    walk = dw.walk
    n = len(walk)
    seen: dict[int, int] = {}
    for i, v in enumerate(walk.vertices[:-1]):
        if v in seen:
            rot = dw.rotate(seen[v])
            m = i - seen[v]
            w1 = DirectedWalk(rot.walk.subwalk(0, m), rot.values[:m])
            if is_coherent(w1, 0):
                w2 = DirectedWalk(rot.walk.subwalk(m, n), rot.values[m:])
                return w1, w2
        else:
            seen[v] = i
    return None


def resolve(graph: SignedGraph, orientation: Orientation, f: Sequence[int], cover: CoverGraph | None = None) -> Resolution:
    """Lift a generating walk of ``f`` to the cover and report whether it is a circle.

    When the first lift is a circle but the walk crosses itself at a vertex
    that is not a cut-vertex, the walk is rerouted and the pieces re-spliced;
    the resulting generating walk lifts to a closed walk with repeated
    vertices.  So the reported lift is a circle exactly when ``f`` is
    conformally indecomposable.
    """
    _require_nonzero_flow(graph, orientation, f)
    cover = cover or build_cover(graph)
    omega_f = orientation_of_flow(graph, orientation, f)
    cover_or = lift_orientation(cover, orientation)
    g = absolute(f)
    if len(components(graph, support(g))) > 1:
        lifted = lift_flow(graph, orientation, f, cover=cover)
        return Resolution(cover, None, None, lifted.values, False)
    dw = walk_from_flow(graph, omega_f, g)
    lifted = lift_directed_walk(cover, dw, 1)
    rerouted = False
    if _is_cover_circle(lifted):
        shorter = reroute(graph, dw)
        if shorter is not None:
            residual = [a - b for a, b in zip(g, flow_from_walk(graph, omega_f, shorter))]
            dw = _respliced(graph, omega_f, shorter, residual)
            lifted = lift_directed_walk(cover, dw, 1)
            rerouted = True
    cover_flow = flow_from_walk(cover.graph, cover_or, lifted)
    return Resolution(cover, dw, lifted, cover_flow, _is_cover_circle(lifted), rerouted)


def _respliced(graph: SignedGraph, omega: Orientation, main: DirectedWalk, residual: Sequence[int]) -> DirectedWalk:
    comps = components(graph, support(residual))
    subs = [_tour(graph, omega, tuple(residual[e] if e in c else 0 for e in range(graph.m))) for c in comps]
    return _splice(main, subs, [graph.vertices_of(c) for c in comps])


# ------------------------------------------------------------- decomposition


@dataclasses.dataclass(frozen=True)
class Part:
    flow: tuple[int, ...]
    certificate: Certificate
    multiplicity: int


@dataclasses.dataclass(frozen=True)
class Decomposition:
    flow: tuple[int, ...]
    parts: tuple[Part, ...]

    def total(self) -> tuple[int, ...]:
        out = [0] * len(self.flow)
        for p in self.parts:
            for e, x in enumerate(p.flow):
                out[e] += p.multiplicity * x
        return tuple(out)


def peel_cover_circles(cover: CoverGraph, cover_or: Orientation, values: Sequence[int]) -> list[tuple[DirectedWalk, int]]:
    """Classical circle peeling of a nonnegative flow on the (ordinary) cover.

    Always peels a directed circle through the smallest live cover edge,
    found by breadth-first search from its head back to its tail; the whole
    bottleneck value is removed at once.
    """
    g = cover.graph
    live = list(values)
    out: list[tuple[DirectedWalk, int]] = []

    def head_slot(x: int) -> int:
        return 0 if cover_or(x, 0) == 1 else 1

    while any(live):
        x0 = min(x for x, c in enumerate(live) if c > 0)
        hs = head_slot(x0)
        tail, head = g.edge(x0).endpoint(1 - hs), g.edge(x0).endpoint(hs)
        steps = [WalkStep(x0, 1 - hs, hs)]
        if head != tail:
            prev: dict[int, tuple[int, WalkStep] | None] = {head: None}
            queue = deque([head])
            while queue and tail not in prev:
                a = queue.popleft()
                for x, slot in g.ends_at[a]:
                    if live[x] > 0 and x != x0 and cover_or(x, slot) == -1:
                        b = g.edge(x).endpoint(1 - slot)
                        if b not in prev:
                            prev[b] = (a, WalkStep(x, slot, 1 - slot))
                            queue.append(b)
            if tail not in prev:
                raise AssertionError("cover function is not a nonnegative flow")
            back = []
            b = tail
            while prev[b] is not None:
                a, st = prev[b]
                back.append(st)
                b = a
            steps.extend(reversed(back))
        walk = Walk.from_steps(g, tail, steps)
        mult = min(live[s.edge] for s in steps)
        for s in steps:
            live[s.edge] -= mult
        out.append((DirectedWalk.from_orientation(walk, cover_or), mult))
    return out


def conformal_decompose(graph: SignedGraph, orientation: Orientation, f: Sequence[int]) -> Decomposition:
    """Write ``f`` as a sum of conformally indecomposable flows that conform to it."""
    f = tuple(f)
    if len(f) != graph.m:
        raise FlowError(f"edge function has {len(f)} values, graph has {graph.m} edges")
    if not any(f):
        return Decomposition(f, ())
    _require_nonzero_flow(graph, orientation, f)
    omega_f = orientation_of_flow(graph, orientation, f)
    back = coupling(orientation, omega_f)
    cover = build_cover(graph)
    cover_or = lift_orientation(cover, omega_f)

    merged: dict[tuple[int, ...], list] = {}
    work: list[tuple[DirectedWalk, int]] = []

    def lift_and_peel(g: tuple[int, ...], mult: int) -> list[tuple[DirectedWalk, int]]:
        lifted = lift_flow(graph, omega_f, g, cover=cover)
        return [
            (project_directed_walk(cover, circle), k * mult)
            for circle, k in peel_cover_circles(cover, cover_or, lifted.values)
        ]

    work.extend(lift_and_peel(absolute(f), 1))
    while work:
        dw, mult = work.pop(0)
        piece = flow_from_walk(graph, omega_f, dw)
        verdict = _classify(graph, omega_f, piece)
        if verdict:
            part = tuple(c * x for c, x in zip(back, piece))
            if part in merged:
                merged[part][1] += mult
            else:
                cert = Certificate(verdict.certificate.tree, orientation_of_flow(graph, orientation, part).restrict(support(part)))
                merged[part] = [cert, mult]
            continue
        halves = _split_coherent(dw)
        if halves is not None:
            work[:0] = [(halves[0], mult), (halves[1], mult)]
            continue
        shorter = reroute(graph, dw)
        if shorter is None:
            raise AssertionError("projected cover circle neither indecomposable nor reroutable")
        g1 = flow_from_walk(graph, omega_f, shorter)
        g2 = tuple(a - b for a, b in zip(piece, g1))
        work[:0] = lift_and_peel(g1, mult) + lift_and_peel(g2, mult)

    parts = tuple(Part(flow, cert, mult) for flow, (cert, mult) in merged.items())
    result = Decomposition(f, parts)
    _check_decomposition(graph, orientation, result)
    return result


def _check_decomposition(graph: SignedGraph, orientation: Orientation, d: Decomposition) -> None:
    if d.total() != d.flow:
        raise AssertionError("decomposition parts do not sum to the flow")
    for p in d.parts:
        if p.multiplicity <= 0:
            raise AssertionError("nonpositive multiplicity")
        if any(a * b < 0 or abs(a) > abs(b) for a, b in zip(p.flow, d.flow)):
            raise AssertionError("part does not conform to the flow")
        if any(boundary(graph, orientation, p.flow)):
            raise AssertionError("part is not a flow")


# ------------------------------------------------------------ half-integers


@dataclasses.dataclass(frozen=True)
class HalfDecomposition:
    tree: CircleTree
    direction: Orientation
    end_circles: tuple[int, ...]  # indices into tree.circles, in tour order
    circuits: tuple[Circuit, ...]
    trivial: bool

    def doubled_identity(self, graph: SignedGraph) -> tuple[int, ...]:
        """``2 I_T - sum I_{T_i}`` (all zeros when the identity holds)."""
        if self.trivial:
            return (0,) * graph.m
        out = [2 * x for x in indicator(graph, self.tree)]
        for c in self.circuits:
            for e, x in enumerate(indicator(graph, c.tree)):
                out[e] -= x
        return tuple(out)


def half_integer_decompose(graph: SignedGraph, tree: CircleTree, direction: Orientation | None = None) -> HalfDecomposition:
    """Split a sesqui-Eulerian circle-tree into circuits joining consecutive end blocks.

    With ``C_1..C_n`` the end blocks in the order a minimal tour meets them
    and ``P_{i+1}`` the stretch of the tour from ``C_i`` to ``C_{i+1}``, the
    circuits are ``C_i + P_{i+1} + C_{i+1}`` and twice the tree's indicator
    is the sum of theirs.
    """
    tour = minimal_tour(graph, tree, direction)
    if direction is None:
        direction = tour.orientation(graph).restrict(tree.edges)
    circuit = classify_circuit(graph, tree.edges)
    if circuit is not None:
        return HalfDecomposition(tree, direction, tuple(range(len(tree.circles))), (circuit,), True)

    owner: dict[int, int] = {}
    for ci in tree.end_circles:
        for e in tree.circles[ci].edge_list():
            owner[e] = ci
    steps = tour.walk.steps
    n = len(steps)
    # Start outside the end blocks so none of them wraps around.
    s0 = min(i for i, st in enumerate(steps) if st.edge not in owner)
    steps = steps[s0:] + steps[:s0]
    order: list[int] = []
    for st in steps:
        ci = owner.get(st.edge)
        if ci is not None and (not order or order[-1] != ci):
            order.append(ci)
    if len(order) != len(tree.end_circles) or len(set(order)) != len(order):
        raise AssertionError("end blocks are not traversed contiguously")

    # Rotate the tour so it starts right after the last end block.
    last = max(i for i, st in enumerate(steps) if owner.get(st.edge) == order[-1])
    rot = [steps[(last + 1 + i) % n] for i in range(n)]
    stretches: list[list[int]] = [[]]
    current = None
    for st in rot:
        ci = owner.get(st.edge)
        if ci is None:
            if current is not None:
                stretches.append([])
                current = None
            stretches[-1].append(st.edge)
        else:
            current = ci
    # stretches[i] leads into end block order[i]
    k = len(order)
    circuits = []
    for i in range(k):
        a, b = order[i], order[(i + 1) % k]
        path = stretches[(i + 1) % k]
        if len(set(path)) != len(path):
            raise AssertionError("connecting stretch repeats an edge")
        edges = set(tree.circles[a].edge_list()) | set(tree.circles[b].edge_list()) | set(path)
        c = classify_circuit(graph, edges)
        if c is None or not is_direction(graph, c.tree, direction):
            raise AssertionError("half-decomposition piece is not a directed circuit")
        circuits.append(c)
    hd = HalfDecomposition(tree, direction, tuple(order), tuple(circuits), False)
    if any(hd.doubled_identity(graph)):
        raise AssertionError("2 I_T differs from the sum of circuit indicators")
    return hd


@dataclasses.dataclass(frozen=True)
class DoubleTerm:
    circuit: Circuit
    coefficient: int
    flow: tuple[int, ...]  # the circuit flow in the input orientation


def double_circuit_decompose(graph: SignedGraph, orientation: Orientation, f: Sequence[int]) -> list[DoubleTerm]:
    """``2f`` as a conforming positive integral combination of circuit flows."""
    _require_nonzero_flow(graph, orientation, f)
    d = conformal_decompose(graph, orientation, f)
    merged: dict[tuple[int, ...], list] = {}

    def add(circuit: Circuit, direction: Orientation, coeff: int) -> None:
        c = coupling(orientation, direction)
        flow = tuple(x * y for x, y in zip(c, indicator(graph, circuit.tree)))
        if flow in merged:
            merged[flow][1] += coeff
        else:
            merged[flow] = [circuit, coeff]

    for part in d.parts:
        hd = half_integer_decompose(graph, part.certificate.tree, part.certificate.direction)
        if hd.trivial:
            add(hd.circuits[0], part.certificate.direction, 2 * part.multiplicity)
        else:
            for c in hd.circuits:
                add(c, part.certificate.direction, part.multiplicity)

    terms = [DoubleTerm(circ, coeff, flow) for flow, (circ, coeff) in merged.items()]
    total = [0] * graph.m
    for t in terms:
        for e, x in enumerate(t.flow):
            total[e] += t.coefficient * x
    if total != [2 * x for x in f]:
        raise AssertionError("circuit combination does not equal 2f")
    for t in terms:
        if any(a * b < 0 for a, b in zip(t.flow, f)):
            raise AssertionError("circuit flow does not conform to f")
    return terms


# ------------------------------------------------------------------- oracle


def _subflows(graph: SignedGraph, orientation: Orientation, f: Sequence[int], max_support: int, max_value: int) -> Iterator[tuple[int, ...]]:
    """Every nonzero flow ``g`` with ``0 <= g <= f``, by backtracking over the support."""
    supp = sorted(support(f))
    if any(x < 0 for x in f):
        raise FlowError("oracle needs a nonnegative function")
    if len(supp) > max_support or (supp and max(f) > max_value):
        raise OracleCapExceeded(
            f"support {len(supp)} (cap {max_support}), max value {max(f) if supp else 0} (cap {max_value})"
        )
    order = _elimination_order(graph, supp)
    # contribution of each edge to each endpoint, per unit of flow
    contrib = []
    for e in order:
        ed = graph.edge(e)
        c: dict[int, int] = {}
        c[ed.u] = c.get(ed.u, 0) + orientation(e, 0)
        c[ed.v] = c.get(ed.v, 0) + orientation(e, 1)
        contrib.append([(v, w) for v, w in c.items() if w])
    last_use: dict[int, int] = {}
    for i, e in enumerate(order):
        ed = graph.edge(e)
        last_use[ed.u] = i
        last_use[ed.v] = i
    closes = [[] for _ in order]
    for v, i in last_use.items():
        closes[i].append(v)
    # remaining reach: sum over later edges of |weight| * f(e), per vertex
    reach = [dict() for _ in range(len(order) + 1)]
    for i in range(len(order) - 1, -1, -1):
        r = dict(reach[i + 1])
        for v, w in contrib[i]:
            r[v] = r.get(v, 0) + abs(w) * f[order[i]]
        reach[i] = r

    bd = [0] * graph.n
    g = [0] * graph.m
    k = len(order)

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == k:
            if any(g):
                yield tuple(g)
            return
        e = order[i]
        for val in range(f[e] + 1):
            ok = True
            for v, w in contrib[i]:
                bd[v] += w * val
            for v, _ in contrib[i]:
                if abs(bd[v]) > reach[i + 1].get(v, 0):
                    ok = False
            if ok:
                for v in closes[i]:
                    if bd[v]:
                        ok = False
            if ok:
                g[e] = val
                yield from rec(i + 1)
                g[e] = 0
            for v, w in contrib[i]:
                bd[v] -= w * val

    yield from rec(0)


def _elimination_order(graph: SignedGraph, edge_ids: Sequence[int]) -> list[int]:
    """Edges grouped so vertices are finished early: BFS over vertices, edges once both ends are seen."""
    edge_set = set(edge_ids)
    order: list[int] = []
    placed: set[int] = set()
    seen: set[int] = set()
    for root in sorted(graph.vertices_of(edge_set)):
        if root in seen:
            continue
        queue = deque([root])
        seen.add(root)
        while queue:
            x = queue.popleft()
            for e, slot in graph.ends_at[x]:
                if e not in edge_set or e in placed:
                    continue
                y = graph.edge(e).endpoint(1 - slot)
                if y in seen:
                    placed.add(e)
                    order.append(e)
            for e, slot in graph.ends_at[x]:
                if e not in edge_set:
                    continue
                y = graph.edge(e).endpoint(1 - slot)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return order


def oracle_minimal_flows(
    graph: SignedGraph,
    orientation: Orientation,
    f: Sequence[int],
    max_support: int = ORACLE_MAX_SUPPORT,
    max_value: int = ORACLE_MAX_VALUE,
) -> list[tuple[int, ...]]:
    """Lattice-minimal nonzero flows below a nonnegative ``f``, by exhaustive enumeration."""
    subs = list(_subflows(graph, orientation, f, max_support, max_value))
    minimal = []
    for g in subs:
        if not any(h != g and all(a <= b for a, b in zip(h, g)) for h in subs):
            minimal.append(g)
    return sorted(minimal)


def oracle_is_minimal(
    graph: SignedGraph,
    orientation: Orientation,
    f: Sequence[int],
    max_support: int = ORACLE_MAX_SUPPORT,
    max_value: int = ORACLE_MAX_VALUE,
) -> bool:
    """Whether ``f`` itself is the only nonzero flow below it (same enumeration, early exit)."""
    f = tuple(f)
    if not any(f):
        return False
    for g in _subflows(graph, orientation, f, max_support, max_value):
        if g != f:
            return False
    return True
