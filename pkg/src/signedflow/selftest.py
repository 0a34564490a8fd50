"""Invariant checks over the fixtures and seeded random instances."""

from __future__ import annotations

import dataclasses
import traceback
from typing import Callable

from . import fixtures
from .cover import build_cover
from .decompose import (
    OracleCapExceeded,
    conformal_decompose,
    double_circuit_decompose,
    half_integer_decompose,
    is_indecomposable,
    oracle_is_minimal,
    resolve,
)
from .flow import absolute, is_flow, orientation_of_flow
from .graph import Orientation, components, is_balanced
from .instances import random_instance
from .structure import circuit_flow, classify_circuit, recognize_circle_tree


@dataclasses.dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _run(name: str, fn: Callable[[], str | None]) -> CheckResult:
    try:
        detail = fn()
    except AssertionError as exc:
        return CheckResult(name, False, str(exc) or "assertion failed")
    except Exception:  # report, do not crash the whole run
        return CheckResult(name, False, traceback.format_exc(limit=1).strip().splitlines()[-1])
    return CheckResult(name, True, detail or "")


def _circuit_fixtures() -> str:
    for make in (fixtures.h2, fixtures.d3, fixtures.triangle_positive):
        g = make()
        o = Orientation.default(g)
        c = classify_circuit(g, range(g.m))
        assert c is not None, f"{make.__name__} is not recognized as a circuit"
        f = circuit_flow(g, o, c)
        assert is_flow(g, o, f), f"{make.__name__}: circuit flow has nonzero boundary"
        want = [2 if e in c.tree.path_edges else 1 for e in range(g.m)]
        assert list(absolute(f)) == want, f"{make.__name__}: circuit flow values {f}"
    return None


def _y3_half() -> str:
    g = fixtures.y3()
    t = recognize_circle_tree(g, range(g.m))
    assert t and t.sesqui_eulerian, "Y3 is not a sesqui-Eulerian circle-tree"
    hd = half_integer_decompose(g, t)
    assert len(hd.circuits) == 3 and all(c.kind == "III" for c in hd.circuits), "expected three Type III circuits"
    assert not any(hd.doubled_identity(g)), "2 I_T differs from the circuit sum"
    return None


def _random_suite(count: int, seed: int, max_support: int, max_value: int) -> Callable[[], str]:
    def run() -> str:
        checked = skipped = 0
        for s in range(seed, seed + count):
            inst = random_instance(s)
            g, o, f = inst.graph, inst.orientation, inst.flow
            assert is_flow(g, o, f), f"seed {s}: generator produced a non-flow"
            conformal_decompose(g, o, f)  # asserts soundness itself
            if not any(f):
                continue
            double_circuit_decompose(g, o, f)
            verdict = bool(is_indecomposable(g, o, f))
            assert verdict == resolve(g, o, f).is_circle, f"seed {s}: resolution disagrees"
            try:
                minimal = oracle_is_minimal(g, orientation_of_flow(g, o, f), absolute(f), max_support, max_value)
            except OracleCapExceeded:
                skipped += 1
                continue
            assert verdict == minimal, f"seed {s}: classification disagrees with the oracle"
            checked += 1
        return f"{checked} oracle checks, {skipped} over caps"

    return run


def _cover_suite(count: int, seed: int) -> Callable[[], None]:
    def run() -> None:
        for s in range(seed, seed + count):
            g = random_instance(s).graph
            cover = build_cover(g)
            cg = cover.graph
            assert cg.n == 2 * g.n and cg.m == 2 * g.m, f"seed {s}: cover size"
            assert all(ed.sign > 0 for ed in cg.edges), f"seed {s}: negative cover edge"
            for ed in cg.edges:
                twin = cg.edge(ed.id ^ 1)
                assert {twin.u, twin.v} == {ed.u ^ 1, ed.v ^ 1}, f"seed {s}: involution breaks adjacency"
            if len(components(g, range(g.m))) == 1 and g.vertices_of(range(g.m)) == set(g.vertices):
                connected = len(components(cg, range(cg.m))) == 1
                assert connected == (not is_balanced(g).balanced), f"seed {s}: cover connectivity"

    return run


def run_selftest(count: int = 200, seed: int = 0, max_support: int = 10, max_value: int = 4) -> list[CheckResult]:
    return [
        _run("circuit flows on fixtures", _circuit_fixtures),
        _run("half-integral decomposition of Y3", _y3_half),
        _run("cover structure", _cover_suite(count, seed)),
        _run("decomposition vs oracle", _random_suite(count, seed, max_support, max_value)),
    ]
