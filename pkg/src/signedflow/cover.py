"""The double covering graph of a signed graph.

Cover vertex ``2*v + 0`` is ``v^+`` and ``2*v + 1`` is ``v^-``; cover edge
``2*e + 0`` is ``e^+`` and ``2*e + 1`` is ``e^-``.  The involution is
therefore ``x ^ 1`` on both vertex and edge ids, and projection is ``x >> 1``.

``e^+`` is the lift whose end on the smaller-id endpoint of ``e`` (slot 0 for
loops) sits on the positive level.  Cover edge ends keep the slot numbers of
the base edge.
"""

from __future__ import annotations

import dataclasses
from functools import cached_property
from typing import Sequence

from .graph import DirectedWalk, Orientation, SignedGraph, Walk, WalkStep

__all__ = [
    "CoverGraph",
    "build_cover",
    "lift_orientation",
    "lift_walk",
    "lift_directed_walk",
    "project_walk",
    "project_directed_walk",
    "project_function",
    "lift_vertex",
    "level",
]


def lift_vertex(v: int, alpha: int) -> int:
    return 2 * v + (0 if alpha > 0 else 1)


def level(x: int) -> int:
    """Level (+1 or -1) of a cover vertex or cover edge id."""
    return 1 if x % 2 == 0 else -1


@dataclasses.dataclass(frozen=True)
class CoverGraph:
    base: SignedGraph
    graph: SignedGraph
    end_levels: tuple[tuple[int, int], ...]  # per cover edge, level of the slot-0 and slot-1 ends

    @staticmethod
    def project_vertex(x: int) -> int:
        return x >> 1

    @staticmethod
    def project_edge(x: int) -> int:
        return x >> 1

    @staticmethod
    def involution(x: int) -> int:
        return x ^ 1

    def lift_edge_at(self, e: int, slot: int, alpha: int) -> int:
        """The lift of ``e`` whose ``slot`` end lies at level ``alpha``."""
        x = 2 * e
        return x if self.end_levels[x][slot] == alpha else x + 1

    @cached_property
    def levels_of_edges(self) -> tuple[int, ...]:
        return tuple(level(x) for x in range(self.graph.m))


def _plus_slot(edge) -> int:
    if edge.is_loop:
        return 0
    return 0 if edge.u < edge.v else 1


def build_cover(graph: SignedGraph) -> CoverGraph:
    names = graph.vertex_names
    vnames = [f"{names[v]}{'+' if a > 0 else '-'}" for v in graph.vertices for a in (1, -1)]
    records = []
    end_levels: list[tuple[int, int]] = []
    for ed in graph.edges:
        s = _plus_slot(ed)
        for beta in (1, -1):
            lv = [0, 0]
            lv[s] = beta
            lv[1 - s] = beta * ed.sign
            end_levels.append((lv[0], lv[1]))
            records.append(
                (
                    f"{graph.edge_names[ed.id]}{'+' if beta > 0 else '-'}",
                    vnames[lift_vertex(ed.u, lv[0])],
                    vnames[lift_vertex(ed.v, lv[1])],
                    1,
                )
            )
    cover = SignedGraph.build(records, vertices=vnames)
    return CoverGraph(graph, cover, tuple(end_levels))


def lift_orientation(cover: CoverGraph, orientation: Orientation) -> Orientation:
    """``w~(v^a, e^b) = a * w(v, e)`` on every lifted end."""
    values: list[tuple[int, int] | None] = []
    for x in range(cover.graph.m):
        p = orientation.values[x >> 1]
        if p is None:
            values.append(None)
            continue
        l0, l1 = cover.end_levels[x]
        values.append((l0 * p[0], l1 * p[1]))
    return Orientation(tuple(values))


def lift_walk(cover: CoverGraph, walk: Walk, alpha0: int = 1) -> Walk:
    """Lift starting at level ``alpha0``; levels follow ``a_i = a_{i-1} * sigma(e_i)``."""
    alpha = alpha0
    steps = []
    for st in walk.steps:
        x = cover.lift_edge_at(st.edge, st.entry, alpha)
        steps.append(WalkStep(x, st.entry, st.exit))
        alpha = cover.end_levels[x][st.exit]
    return Walk.from_steps(cover.graph, lift_vertex(walk.start, alpha0), steps)


def lift_directed_walk(cover: CoverGraph, dw: DirectedWalk, alpha0: int = 1) -> DirectedWalk:
    lifted = lift_walk(cover, dw.walk, alpha0)
    values = []
    for (a, b), st in zip(dw.values, lifted.steps):
        l = cover.end_levels[st.edge]
        values.append((l[st.entry] * a, l[st.exit] * b))
    return DirectedWalk(lifted, tuple(values))


def project_walk(cover: CoverGraph, walk: Walk) -> Walk:
    return Walk(
        tuple(x >> 1 for x in walk.vertices),
        tuple(WalkStep(s.edge >> 1, s.entry, s.exit) for s in walk.steps),
    )


def project_directed_walk(cover: CoverGraph, dw: DirectedWalk) -> DirectedWalk:
    """Projected end values are ``w(v, e) = a * w~(v^a, e^b)``."""
    values = []
    for (a, b), st in zip(dw.values, dw.walk.steps):
        l = cover.end_levels[st.edge]
        values.append((l[st.entry] * a, l[st.exit] * b))
    return DirectedWalk(project_walk(cover, dw.walk), tuple(values))


def project_function(cover: CoverGraph, fn: Sequence[int]) -> tuple[int, ...]:
    """``pi(f~)(e) = f~(e^+) + f~(e^-)``."""
    if len(fn) != cover.graph.m:
        raise ValueError(f"cover function has {len(fn)} values, cover has {cover.graph.m} edges")
    return tuple(fn[2 * e] + fn[2 * e + 1] for e in range(cover.base.m))
