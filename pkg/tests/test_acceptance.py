"""The nine acceptance criteria, each at its stated size and tolerance."""

import random
import time

from conftest import ACCEPTANCE
from test_graph import random_walk

from signedflow.cover import build_cover
from signedflow.decompose import (
    conformal_decompose,
    double_circuit_decompose,
    half_integer_decompose,
    is_indecomposable,
    oracle_is_minimal,
    resolve,
)
from signedflow.fixtures import d3, h2, y3
from signedflow.flow import absolute, boundary, check_walk_boundary_lemma, is_flow, orientation_of_flow
from signedflow.graph import DirectedWalk, Orientation, check_walk_sign_lemma, components, is_balanced
from signedflow.instances import random_circle_tree, random_flow, random_graph, random_orientation
from signedflow.structure import (
    characteristic_vector,
    circuit_flow,
    classify_circuit,
    direction_of,
    enumerate_minimal_tours,
    indicator,
    is_direction,
    recognize_circle_tree,
    tour_count,
)

FLOWS_PER_GRAPH = 25


def record(n, ok, detail):
    ACCEPTANCE.append(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


def corpus():
    """200 seeded graphs (<= 9 edges) with flows valued in -2..2 and weight <= 12."""
    out = []
    graphs = 0
    seed = 0
    while graphs < 200:
        rng = random.Random(seed)
        seed += 1
        g = random_graph(rng, 5, 9)
        o = random_orientation(rng, g)
        flows = set()
        for _ in range(4 * FLOWS_PER_GRAPH):
            f = random_flow(rng, g, o)
            if any(f) and max(map(abs, f)) <= 2 and sum(map(abs, f)) <= 12:
                flows.add(f)
            if len(flows) == FLOWS_PER_GRAPH:
                break
        if flows:
            graphs += 1
            out.extend((g, o, f) for f in sorted(flows))
    return out


CORPUS = corpus()


def test_criterion_1_circuit_flows():
    t0 = time.perf_counter()
    ok = True
    for make, want in ((h2, (1, 1)), (d3, (1, 1, 2))):
        g = make()
        o = Orientation.default(g)
        c = classify_circuit(g, range(g.m))
        f = circuit_flow(g, o, c)
        ok &= tuple(map(abs, f)) == want and not any(boundary(g, o, f))
    elapsed = time.perf_counter() - t0
    record(1, ok and elapsed < 1.0, f"H2 and D3 circuit flows, {elapsed:.3f}s")


def test_criterion_2_classification_vs_oracle():
    t0 = time.perf_counter()
    disagree = 0
    for g, o, f in CORPUS:
        verdict = bool(is_indecomposable(g, o, f))
        minimal = oracle_is_minimal(g, orientation_of_flow(g, o, f), absolute(f))
        disagree += verdict != minimal
    elapsed = time.perf_counter() - t0
    record(2, disagree == 0 and elapsed < 60, f"{len(CORPUS)} flows on 200 graphs, {disagree} disagreements, {elapsed:.1f}s")


def test_criterion_3_resolution():
    disagree = 0
    for g, o, f in CORPUS:
        disagree += bool(is_indecomposable(g, o, f)) != resolve(g, o, f).is_circle
    record(3, disagree == 0, f"{len(CORPUS)} flows, {disagree} disagreements")


def decomposition_corpus():
    out = []
    for seed in range(500):
        rng = random.Random(10_000 + seed)
        g = random_graph(rng, 5, 9)
        o = random_orientation(rng, g)
        out.append((g, o, random_flow(rng, g, o, max_steps=14)))
    return out


DECOMPOSITIONS = decomposition_corpus()


def test_criterion_4_conformal_soundness():
    failures = 0
    for g, o, f in DECOMPOSITIONS:
        d = conformal_decompose(g, o, f)
        total = [0] * g.m
        for p in d.parts:
            for e, x in enumerate(p.flow):
                total[e] += p.multiplicity * x
                failures += x * f[e] < 0 or abs(x) > abs(f[e])
            t = p.certificate.tree
            certified = (
                recognize_circle_tree(g, t.edges)
                and t.sesqui_eulerian
                and is_direction(g, t, p.certificate.direction)
                and characteristic_vector(g, o, t, p.certificate.direction) == p.flow
            )
            failures += not certified
        failures += tuple(total) != tuple(f)
    record(4, failures == 0, f"500 flows, {failures} failures")


def test_criterion_5_half_integer():
    trees = {}
    for g, o, f in DECOMPOSITIONS:
        for p in conformal_decompose(g, o, f).parts:
            trees[(id(g), p.certificate.tree.edges)] = (g, p.certificate.tree)
    g = y3()
    trees["Y3"] = (g, recognize_circle_tree(g, range(g.m)))
    bad = 0
    nontrivial = 0
    for g, t in trees.values():
        hd = half_integer_decompose(g, t)
        bad += any(hd.doubled_identity(g))
        bad += any(classify_circuit(g, c.edges) is None for c in hd.circuits)
        nontrivial += not hd.trivial
    # one indecomposable flow on Y3 = 1/2 (three Type III circuit flows)
    g = y3()
    t = recognize_circle_tree(g, range(g.m))
    o = Orientation.default(g)
    d = direction_of(g, t)
    f = characteristic_vector(g, o, t, d)
    hd = half_integer_decompose(g, t)
    circuit_flows = [characteristic_vector(g, o, c.tree, d.restrict(c.edges)) for c in hd.circuits]
    y3_identity = (
        len(circuit_flows) == 3
        and all(c.kind == "III" for c in hd.circuits)
        and [sum(cf[e] for cf in circuit_flows) for e in range(g.m)] == [2 * x for x in f]
        and all(is_flow(g, o, cf) for cf in circuit_flows)
    )
    record(5, bad == 0 and y3_identity, f"{len(trees)} circle-trees ({nontrivial} non-circuits), {bad} failures, Y3 identity {y3_identity}")


def test_criterion_6_double():
    bad = 0
    count = 0
    for g, o, f in CORPUS + DECOMPOSITIONS:
        if not any(f):
            continue
        count += 1
        total = [0] * g.m
        for term in double_circuit_decompose(g, o, f):
            bad += term.coefficient <= 0 or classify_circuit(g, term.circuit.edges) is None
            bad += not is_flow(g, o, term.flow)
            for e, x in enumerate(term.flow):
                total[e] += term.coefficient * x
                bad += x * f[e] < 0
        bad += total != [2 * x for x in f]
    record(6, bad == 0, f"{count} flows, {bad} failures")


def test_criterion_7_cover_structure():
    rng = random.Random(7)
    bad = 0
    graphs = 0
    while graphs < 200:
        g = random_graph(rng, 5, 9)
        if len(components(g, range(g.m))) != 1 or len(g.vertices_of(range(g.m))) != g.n:
            continue
        graphs += 1
        c = build_cover(g)
        cg = c.graph
        bad += (cg.n, cg.m) != (2 * g.n, 2 * g.m)
        for ed in cg.edges:
            twin = cg.edge(ed.id ^ 1)
            bad += (twin.u, twin.v) != (ed.u ^ 1, ed.v ^ 1)
        bad += any(x == x ^ 1 for x in range(cg.n))
        connected = len(components(cg, range(cg.m))) == 1
        bad += connected != (not is_balanced(g).balanced)
    record(7, bad == 0, f"{graphs} graphs, {bad} failures")


def test_criterion_8_lemmas_and_tour_count():
    rng = random.Random(8)
    bad_sign = bad_boundary = 0
    for _ in range(1000):
        g = random_graph(rng, 4, 8)
        o = random_orientation(rng, g)
        w = random_walk(rng, g, rng.randint(1, 8))
        values = []
        for st in w.steps:
            a = rng.choice((1, -1))
            values.append((a, -g.sign(st.edge) * a))
        bad_sign += not check_walk_sign_lemma(g, DirectedWalk(w, tuple(values))).holds
    for _ in range(1000):
        g = random_graph(rng, 4, 8)
        o = random_orientation(rng, g)
        w = random_walk(rng, g, rng.randint(1, 8))
        bad_boundary += not check_walk_boundary_lemma(g, o, DirectedWalk.direct(g, w, rng.choice((1, -1))))
    bad_tours = 0
    by_q = {}
    for _ in range(200):
        g = random_circle_tree(rng, max_circles=4)
        t = recognize_circle_tree(g, range(g.m))
        by_q[len(t.circles)] = by_q.get(len(t.circles), 0) + 1
        bad_tours += tour_count(t) != len(enumerate_minimal_tours(g, t))
    ok = bad_sign == bad_boundary == bad_tours == 0 and set(by_q) == {1, 2, 3, 4}
    record(8, ok, f"sign {bad_sign}/1000, boundary {bad_boundary}/1000, tour counts {bad_tours}/200 over q={sorted(by_q)}")


def test_criterion_9_unsigned():
    rng = random.Random(9)
    bad = parts = 0
    for _ in range(300):
        g = random_graph(rng, 5, 9, neg_prob=0.0)
        o = random_orientation(rng, g)
        f = random_flow(rng, g, o)
        for p in conformal_decompose(g, o, f).parts:
            parts += 1
            supp = [e for e, x in enumerate(p.flow) if x]
            c = classify_circuit(g, supp)
            unit_circle = c is not None and c.kind == "I" and indicator(g, c.tree) == tuple(map(abs, p.flow))
            bad += not unit_circle
    record(9, bad == 0 and parts > 0, f"{parts} parts, {bad} not unit graph circles")
