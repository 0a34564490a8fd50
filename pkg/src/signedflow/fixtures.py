"""Small named signed graphs used in tests, examples and the self-test."""

from __future__ import annotations

from .graph import SignedGraph

__all__ = ["loop_negative", "d3", "triangle_positive", "digon_negative", "h2", "y3", "FIXTURES"]


def loop_negative() -> SignedGraph:
    """One negative loop."""
    return SignedGraph.build([("e1", "v1", "v1", -1)])


def d3() -> SignedGraph:
    """Two negative loops joined by a positive link (a Type III circuit)."""
    return SignedGraph.build(
        [("e1", "v1", "v1", -1), ("e2", "v2", "v2", -1), ("e3", "v1", "v2", 1)]
    )


def triangle_positive() -> SignedGraph:
    return SignedGraph.build([("a", "u", "v", 1), ("b", "v", "w", 1), ("c", "w", "u", 1)])


def digon_negative() -> SignedGraph:
    return SignedGraph.build([("a", "u", "v", 1), ("b", "u", "v", -1)])


def h2() -> SignedGraph:
    """Two negative loops at one vertex (a Type II circuit)."""
    return SignedGraph.build([("e1", "v1", "v1", -1), ("e2", "v1", "v1", -1)])


def y3() -> SignedGraph:
    """Negative triangle with a pendant negative loop hung off each corner."""
    recs = [
        ("t1", "c1", "c2", 1),
        ("t2", "c2", "c3", 1),
        ("t3", "c3", "c1", -1),
    ]
    for i in (1, 2, 3):
        recs.append((f"p{i}", f"c{i}", f"w{i}", 1))
    for i in (1, 2, 3):
        recs.append((f"l{i}", f"w{i}", f"w{i}", -1))
    return SignedGraph.build(recs)


FIXTURES = {
    "L-": loop_negative,
    "D3": d3,
    "C3+": triangle_positive,
    "C2-": digon_negative,
    "H2": h2,
    "Y3": y3,
}
