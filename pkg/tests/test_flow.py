import random

import pytest

import oracles
from test_graph import random_walk

from signedflow.cover import project_function
from signedflow.fixtures import d3, digon_negative, loop_negative, triangle_positive
from signedflow.flow import (
    FlowError,
    absolute,
    boundary,
    check_walk_boundary_lemma,
    flow_from_walk,
    is_flow,
    lift_flow,
    orientation_of_flow,
    total_weight,
    walk_from_flow,
)
from signedflow.graph import (
    DirectedWalk,
    Orientation,
    SignedGraph,
    Walk,
    components,
    coupling,
    reorient,
    walk_sign,
)
from signedflow.instances import random_flow, random_graph, random_orientation

# D3 with both loops as sinks/sources pointing into the link's flow
D3_ORIENT = Orientation(((1, 1), (-1, -1), (-1, 1)))
D3_FLOW = (1, 1, 2)


def test_d3_fixture_flow():
    assert boundary(d3(), D3_ORIENT, D3_FLOW) == (0, 0)


def test_negative_loop_counts_twice():
    g = loop_negative()
    o = Orientation(((1, 1),))
    for c in (-3, 1, 5):
        assert boundary(g, o, (c,)) == (2 * c,)


def test_positive_loop_contributes_nothing():
    g = SignedGraph.build([("e", "v", "v", 1)])
    o = Orientation.default(g)
    assert boundary(g, o, (7,)) == (0,)


def test_boundary_matches_incidence_matrix():
    rng = random.Random(1)
    for _ in range(300):
        g = random_graph(rng, 5, 8)
        o = random_orientation(rng, g)
        rows = oracles.incidence(g, o)
        for ed in g.edges:
            col = [rows[v][ed.id] for v in g.vertices]
            if ed.is_loop:
                want = 0 if ed.sign > 0 else 2 * o(ed.id, 0)
                assert col[ed.u] == want
            else:
                assert abs(col[ed.u]) == abs(col[ed.v]) == 1
        f = [rng.randint(-3, 3) for _ in range(g.m)]
        assert boundary(g, o, f) == oracles.boundary_by_matrix(g, o, f)


def test_flow_from_tour_of_triangle():
    g = triangle_positive()
    o = Orientation.default(g)
    dw = DirectedWalk.from_orientation(Walk.from_edges(g, 0, [0, 1, 2]), o)
    assert flow_from_walk(g, o, dw) == (1, 1, 1)


def test_closed_negative_walk_boundary():
    g = digon_negative()
    o = Orientation.default(g)
    dw = DirectedWalk.direct(g, Walk.from_edges(g, 0, [0, 1]), 1)
    bd = boundary(g, o, flow_from_walk(g, o, dw))
    assert bd == (2 * dw.values[0][0], 0)


def test_d3_tour_flow():
    g = d3()
    dw = DirectedWalk.from_orientation(Walk.from_edges(g, 0, [0, 2, 1, 2]), D3_ORIENT)
    assert dw.is_coherent_closed()
    assert flow_from_walk(g, D3_ORIENT, dw) == D3_FLOW


def test_walk_boundary_lemma_random():
    rng = random.Random(2)
    kinds = set()
    for _ in range(1000):
        g = random_graph(rng, 4, 8)
        o = random_orientation(rng, g)
        w = random_walk(rng, g, rng.randint(1, 8))
        dw = DirectedWalk.direct(g, w, rng.choice((1, -1)))
        kinds.add("open" if not w.is_closed else ("pos" if walk_sign(g, w) > 0 else "neg"))
        assert check_walk_boundary_lemma(g, o, dw)
    assert kinds == {"open", "pos", "neg"}


def _independent_walk_boundary(g, o, dw):
    """The predicted boundary built by hand, compared to the matrix product."""
    f = flow_from_walk(g, o, dw)
    bd = oracles.boundary_by_matrix(g, o, f)
    expected = [0] * g.n
    w = dw.walk
    if not w.is_closed:
        expected[w.start] += dw.values[0][0]
        expected[w.end] += dw.values[-1][1]
    elif walk_sign(g, w) < 0:
        expected[w.start] += 2 * dw.values[0][0]
    return list(bd) == expected


def test_walk_boundary_by_matrix():
    rng = random.Random(12)
    for _ in range(300):
        g = random_graph(rng, 4, 8)
        o = random_orientation(rng, g)
        dw = DirectedWalk.direct(g, random_walk(rng, g, rng.randint(1, 8)), -1)
        assert _independent_walk_boundary(g, o, dw)


def test_walk_from_flow_triangle():
    g = triangle_positive()
    o = Orientation.default(g)
    dw = walk_from_flow(g, o, (1, 1, 1))
    assert dw.walk.edge_list() == [0, 1, 2]
    dw = walk_from_flow(g, o, (2, 2, 2))
    assert len(dw) == 6 and flow_from_walk(g, o, dw) == (2, 2, 2)


def test_walk_from_flow_d3_tour():
    g = d3()
    dw = walk_from_flow(g, D3_ORIENT, D3_FLOW)
    assert dw.walk.vertices == (0, 0, 1, 1, 0)
    assert dw.walk.edge_list() == [0, 2, 1, 2]
    assert dw.is_coherent_closed()


def test_walk_from_flow_errors():
    g = d3()
    with pytest.raises(FlowError):
        walk_from_flow(g, D3_ORIENT, (0, 0, 0))
    with pytest.raises(FlowError):
        walk_from_flow(g, D3_ORIENT.negate(), (-1, -1, -2))
    with pytest.raises(FlowError):
        walk_from_flow(g, D3_ORIENT, (1, 0, 0))
    two = SignedGraph.build([("a", "x", "x", 1), ("b", "y", "y", 1)])
    with pytest.raises(FlowError):
        walk_from_flow(two, Orientation.default(two), (1, 1))


def test_walk_from_flow_is_right_inverse():
    rng = random.Random(3)
    done = 0
    while done < 300:
        g = random_graph(rng, 5, 8)
        o = random_orientation(rng, g)
        f = random_flow(rng, g, o)
        if not any(f) or total_weight(f) > 20:
            continue
        wf = orientation_of_flow(g, o, f)
        g_abs = absolute(f)
        for comp in components(g, [e for e in range(g.m) if f[e]]):
            part = tuple(g_abs[e] if e in comp else 0 for e in range(g.m))
            dw = walk_from_flow(g, wf, part)
            assert dw.is_coherent_closed() and walk_sign(g, dw.walk) == 1
            assert flow_from_walk(g, wf, dw) == part
        done += 1


def test_walk_from_flow_weight_cap():
    g = triangle_positive()
    with pytest.raises(FlowError):
        walk_from_flow(g, Orientation.default(g), (5, 5, 5), cap=10)


def test_orientation_of_flow():
    rng = random.Random(4)
    for _ in range(500):
        g = random_graph(rng, 5, 8)
        o = random_orientation(rng, g)
        f = random_flow(rng, g, o)
        wf = orientation_of_flow(g, o, f)
        wf.validate(g)
        assert is_flow(g, wf, absolute(f))
        assert tuple(c * x for c, x in zip(coupling(o, wf), f)) == absolute(f)
        if all(x >= 0 for x in f):
            assert wf == o
    g = d3()
    assert orientation_of_flow(g, D3_ORIENT, (-1, -1, -1)) == reorient(g, D3_ORIENT, range(3))


def test_flows_form_a_lattice():
    rng = random.Random(5)
    for _ in range(100):
        g = random_graph(rng, 5, 8)
        o = random_orientation(rng, g)
        f1, f2 = random_flow(rng, g, o), random_flow(rng, g, o)
        assert is_flow(g, o, [a + b for a, b in zip(f1, f2)])
        assert is_flow(g, o, [-a for a in f1])


def test_lift_zero_flow():
    g = d3()
    lf = lift_flow(g, D3_ORIENT, (0, 0, 0))
    assert lf.values == (0,) * 6


def test_lift_d3_flow_is_one_cover_circle():
    g = d3()
    lf = lift_flow(g, D3_ORIENT, D3_FLOW)
    assert set(lf.values) == {0, 1}
    supp = [x for x, v in enumerate(lf.values) if v]
    assert len(supp) == 4
    # both lifts of the link are used once
    assert lf.values[4] == lf.values[5] == 1
    (w,) = lf.walks
    assert w.walk.is_closed and len(set(w.walk.vertices[:-1])) == 4


def test_lift_project_random():
    rng = random.Random(6)
    for _ in range(500):
        g = random_graph(rng, 5, 8)
        o = random_orientation(rng, g)
        f = random_flow(rng, g, o)
        lf = lift_flow(g, o, f)
        assert project_function(lf.cover, lf.values) == tuple(f)
        assert is_flow(lf.cover.graph, lf.cover_orientation, lf.values)
        if all(x >= 0 for x in f):
            assert all(x >= 0 for x in lf.values)


def test_lift_rejects_non_flow():
    with pytest.raises(FlowError):
        lift_flow(d3(), D3_ORIENT, (1, 0, 0))


def test_total_weight():
    assert total_weight((0, 0)) == 0
    assert total_weight(D3_FLOW) == 4
    assert total_weight((2, -2, 2)) == 6
