import pytest

from signedflow.cover import build_cover
from signedflow.fixtures import FIXTURES, d3
from signedflow.io import (
    ParseError,
    format_cover_map,
    format_flow,
    format_graph,
    format_orientation,
    parse_cover_map,
    parse_flow,
    parse_graph,
    parse_orientation,
)
from signedflow.instances import random_instance


def test_parse_graph_with_comments():
    text = "# D3\nv v1\nv v2\n\ne e1 v1 v1 -\ne e2 v2 v2 -\ne e3 v1 v2 +\n"
    g = parse_graph(text)
    assert g == d3()


def test_undeclared_vertices_are_added():
    g = parse_graph("e a x y +\n")
    assert g.vertex_names == ("x", "y")


def test_graph_parse_errors():
    with pytest.raises(ParseError):
        parse_graph("e a x y *\n")
    with pytest.raises(ParseError):
        parse_graph("e a x y +\ne a y z -\n")
    with pytest.raises(ParseError):
        parse_graph("edge a x y +\n")


def test_orientation_checks_sign():
    g = d3()
    with pytest.raises(ParseError):
        parse_orientation(g, "o e3 +1 +1\n")
    with pytest.raises(ParseError):
        parse_orientation(g, "o zz +1 -1\n")
    o = parse_orientation(g, "o e1 +1 +1\n")
    assert o.values[0] == (1, 1)


def test_flow_parse():
    g = d3()
    assert parse_flow(g, "f e3 2\n# x\nf e1 1\n") == (1, 0, 2)
    with pytest.raises(ParseError):
        parse_flow(g, "f e3 two\n")
    with pytest.raises(ParseError):
        parse_flow(g, "f e3 1\nf e3 1\n")


def test_round_trips():
    for make in FIXTURES.values():
        g = make()
        assert parse_graph(format_graph(g)) == g
    for seed in range(100):
        inst = random_instance(seed)
        g = parse_graph(format_graph(inst.graph))
        assert g == inst.graph
        assert parse_orientation(g, format_orientation(g, inst.orientation)) == inst.orientation
        assert parse_flow(g, format_flow(g, inst.flow)) == inst.flow
        assert format_graph(parse_graph(format_graph(g))) == format_graph(g)


def test_cover_map_round_trip():
    for seed in range(30):
        g = random_instance(seed).graph
        cover = build_cover(g)
        rows = parse_cover_map(format_cover_map(cover))
        assert len(rows) == cover.graph.m
        for x, (ce, be, lvl) in enumerate(rows):
            assert ce == cover.graph.edge_names[x]
            assert be == g.edge_names[x >> 1]
            assert lvl == (1 if x % 2 == 0 else -1)
        assert parse_graph(format_graph(cover.graph)) == cover.graph
