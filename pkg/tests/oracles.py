"""Brute-force reference implementations, written independently of the library code."""

from __future__ import annotations

import itertools


def incidence(graph, orientation):
    """m(v, e) as a dense list of rows, summing the end values of e at v."""
    rows = [[0] * graph.m for _ in range(graph.n)]
    for ed in graph.edges:
        rows[ed.u][ed.id] += orientation(ed.id, 0)
        rows[ed.v][ed.id] += orientation(ed.id, 1)
    return rows


def boundary_by_matrix(graph, orientation, f):
    return tuple(sum(r[e] * f[e] for e in range(graph.m)) for r in incidence(graph, orientation))


def flows_below(graph, orientation, f):
    """All nonzero flows g with 0 <= g <= f by plain enumeration (f >= 0)."""
    rows = incidence(graph, orientation)
    out = []
    for g in itertools.product(*(range(x + 1) for x in f)):
        if any(g) and all(sum(r[e] * g[e] for e in range(graph.m)) == 0 for r in rows):
            out.append(g)
    return out


def is_minimal_flow(graph, orientation, f):
    return flows_below(graph, orientation, f) == [tuple(f)]


def degree_in(graph, edges, v):
    return sum((graph.edge(e).u == v) + (graph.edge(e).v == v) for e in edges)


def connected(graph, edges):
    edges = list(edges)
    if not edges:
        return False
    verts = {graph.edge(edges[0]).u}
    changed = True
    while changed:
        changed = False
        for e in edges:
            ed = graph.edge(e)
            if (ed.u in verts) != (ed.v in verts):
                verts |= {ed.u, ed.v}
                changed = True
    return all(graph.edge(e).u in verts for e in edges)


def circles(graph):
    """Every edge set forming a circle: connected, all degrees 2."""
    out = []
    for k in range(1, graph.m + 1):
        for sub in itertools.combinations(range(graph.m), k):
            verts = {x for e in sub for x in (graph.edge(e).u, graph.edge(e).v)}
            if all(degree_in(graph, sub, v) == 2 for v in verts) and connected(graph, sub):
                out.append(frozenset(sub))
    return out


def circle_sign(graph, edges):
    s = 1
    for e in edges:
        s *= graph.sign(e)
    return s


def balanced_by_labels(graph):
    for labels in itertools.product((1, -1), repeat=graph.n):
        if all(graph.sign(ed.id) == labels[ed.u] * labels[ed.v] for ed in graph.edges):
            return True
    return False


def is_circuit_by_definition(graph, edges):
    """Frame-matroid circuit: positive circle, or a minimal connected union of two negative circles plus path."""
    edges = frozenset(edges)
    if not edges or not connected(graph, edges):
        return False
    cs = [c for c in circles(graph) if c <= edges]
    pos = [c for c in cs if circle_sign(graph, c) > 0]
    if pos:
        return len(cs) == 1 and cs[0] == edges
    neg = cs
    if len(neg) != 2:
        return False
    a, b = neg
    va = {x for e in a for x in (graph.edge(e).u, graph.edge(e).v)}
    vb = {x for e in b for x in (graph.edge(e).u, graph.edge(e).v)}
    if a & b:
        return False
    shared = va & vb
    rest = edges - a - b
    if shared:
        return len(shared) == 1 and not rest
    # rest must be a path from va to vb meeting them only at its ends
    if not rest:
        return False
    deg = {}
    for e in rest:
        ed = graph.edge(e)
        if ed.is_loop:
            return False
        for x in (ed.u, ed.v):
            deg[x] = deg.get(x, 0) + 1
    ends = [x for x, d in deg.items() if d == 1]
    if len(ends) != 2 or any(d > 2 for d in deg.values()):
        return False
    inner = set(deg) - set(ends)
    if inner & (va | vb):
        return False
    return len(set(ends) & va) == 1 and len(set(ends) & vb) == 1 and connected(graph, rest)
