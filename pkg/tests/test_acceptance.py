"""Acceptance criteria 1-13, one test each.

Every test records a PASS/FAIL line; the lines are echoed in the pytest
terminal summary and printed directly when this file is run as a script.
"""

import math
import random
import time
from fractions import Fraction
from itertools import combinations

import numpy as np

from turan.constructions import (
    HB_DENSITY,
    HD_DENSITY,
    K3BB_DENSITY,
    K3BBB_DENSITY,
    ONE,
    PATTERN_NAMES,
    STAR_DENSITY,
    chain,
    graph,
    partial_suspension_T,
    product,
    product_vertex,
)
from turan.core import RGraph, complete, edge_type_set, lubell
from turan.extremal import (
    brute_force_pi_n,
    classify_pi_13,
    exact_pi_n,
    is_degenerate_13,
    nontrivial_degenerate_witness,
)
from turan.errors import InvalidR
from turan.homomorphism import (
    EDGE_INJECTIVE,
    VertexMap,
    blowup_colorable,
    canonical_form,
    find_homomorphism,
    verify_map,
)
from turan.lagrangian import evaluate, gradient, grid_oracle, kkt_residual, lagrangian, polynomial_form
from turan.surd import QSqrt3

SQ3 = math.sqrt(3)
RESULTS = []


def record(criterion, ok, detail):
    line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    assert ok, line


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


# pattern: (value, coordinate index, coordinate value); HB has no pinned coordinate
LAGRANGIANS = {
    "HA": (K3BB_DENSITY, 0, 0.5 - SQ3 / 6),
    "HB": (HB_DENSITY, 0, (1 + SQ3) / 6),
    "HC": (K3BBB_DENSITY, 0, SQ3 / 3),
    "HE": (STAR_DENSITY, 0, (3 + SQ3) / 6),
    "HD": (HD_DENSITY, 0, 2 / 3),
    "HF": (STAR_DENSITY, 0, (3 - SQ3) / 6),
}


def test_criterion_01_lagrangian_constants():
    worst, slowest = 0.0, 0.0
    for name, (value, i, coord) in LAGRANGIANS.items():
        with Timer() as t:
            r = lagrangian(graph(name))
        slowest = max(slowest, t.seconds)
        worst = max(worst, abs(r.value - float(value)), abs(r.maximizer.weights[i] - coord))
        if name == "HF":
            worst = max(worst, abs(r.maximizer.weights[1] - coord))
    record(1, worst <= 1e-9 and slowest < 1.0,
           f"max |computed - closed form| = {worst:.2e} (tol 1e-9), slowest {slowest:.2f}s")


def test_criterion_02_kkt_and_oracle():
    worst_kkt, worst_gap, slowest = 0.0, 0.0, 0.0
    for name in PATTERN_NAMES:
        r = lagrangian(graph(name), check_oracle=False)
        p = polynomial_form(graph(name))
        worst_kkt = max(worst_kkt, kkt_residual(p, r.maximizer.as_array(), [v - 1 for v in r.support]))
        with Timer() as t:
            oracle, _ = grid_oracle(p, 600 if p.num_vars <= 3 else 120)
        slowest = max(slowest, t.seconds)
        worst_gap = max(worst_gap, abs(r.value - float(oracle)))
    record(2, worst_kkt <= 1e-9 and worst_gap <= 1e-4 and slowest < 30,
           f"kkt {worst_kkt:.1e} (tol 1e-9), oracle gap {worst_gap:.1e} (tol 1e-4), oracle {slowest:.1f}s")


def test_criterion_03_product_example():
    ax, bx, cx = (product_vertex(1, j, 3) for j in (1, 2, 3))
    ay, by, cy = (product_vertex(2, j, 3) for j in (1, 2, 3))
    example = RGraph(6, ((ax,), (bx,), (cy, bx, ay), (cy, ay, by), (cy, by, ax), (cx, ay, by)))
    with Timer() as t:
        P = product(graph("HA"), graph("HB"))
        same = canonical_form(P) == canonical_form(example)
    record(3, same and P.n == 6 and len(P) == 6 and t.seconds < 1,
           f"product(HA, HB) isomorphic to the 6-edge example: {same}, {t.seconds:.3f}s")


def test_criterion_04_product_map():
    with Timer() as t:
        P = product(graph("HA"), graph("HB"))
        # xa=1 xb=2 xc=3 ya=4 yb=5 yc=6
        m = VertexMap(6, 5, (3, 2, 1, 4, 5, 1), EDGE_INJECTIVE)
        verified = verify_map(P, graph("H5_13"), m)
        found = find_homomorphism(P, graph("H5_13"))
    record(4, verified and found is not None and t.seconds < 1,
           f"map verifies: {verified}, search witness: {found}, {t.seconds:.3f}s")


def test_criterion_05_degeneracy():
    expected = {"H5_13": True, "C13": True, "K3_bb": False, "G4_b": False, "H5_star": False}
    with Timer() as t:
        got = {name: bool(is_degenerate_13(graph(name))) for name in expected}
    record(5, got == expected and t.seconds < 1, f"{got}, {t.seconds:.3f}s")


def test_criterion_06_non_embeddability():
    with Timer() as t:
        a = blowup_colorable(graph("K3_bb"), graph("HA"))
        b = blowup_colorable(graph("G4_b"), graph("HB"))
    record(6, a is None and b is None and t.seconds < 1,
           f"K3_bb into HA: {a}, G4_b into HB: {b}, {t.seconds:.3f}s")


def test_criterion_07_exact_finite_densities():
    with Timer():
        p1 = brute_force_pi_n(["C13"], 4).value
        p2 = brute_force_pi_n(["K3_bb"], 4).value
    with Timer() as t5:
        p3 = brute_force_pi_n(["K3_bb"], 5).value
    agree = all(exact_pi_n(fam, n).value == brute_force_pi_n(fam, n).value
                for fam in (["C13"], ["K3_bb"], ["K3_bb", "G4_b"]) for n in (3, 4))
    with Timer() as t6:
        for fam in (["C13"], ["K3_bb"], ["K3_bb", "G4_b"]):
            exact_pi_n(fam, 6)
    ok = (p1, p2, p3) == (1, Fraction(5, 4), Fraction(6, 5)) and agree and t5.seconds <= 10 and t6.seconds <= 600
    record(7, ok, f"pi_4(C13)={p1}, pi_4(K3_bb)={p2}, pi_5(K3_bb)={p3}, bnb==unpruned: {agree}, "
                  f"n=5 {t5.seconds:.1f}s, n=6 {t6.seconds:.1f}s")


def test_criterion_08_convergence_direction():
    ok, parts = True, []
    for fam, limit in ((["K3_bb"], K3BB_DENSITY), (["K3_bb", "G4_b"], ONE), (["C13"], ONE)):
        values = [exact_pi_n(fam, n).value for n in (4, 5, 6)]
        ok &= values[0] >= values[1] >= values[2] and float(values[2]) >= float(limit)
        parts.append("+".join(fam) + ": " + ", ".join(map(str, values)) + f" >= {limit}")
    record(8, ok, "; ".join(parts))


def test_criterion_09_classifier():
    expected = {"H5_13": ONE, "K3_bb": K3BB_DENSITY, "K3_bbb": K3BBB_DENSITY,
                "H5_star": STAR_DENSITY, "H6_star": STAR_DENSITY}
    with Timer() as t:
        ok = True
        for name, value in expected.items():
            c = classify_pi_13(graph(name))
            ok &= c.kind == "Exact" and c.value == value and c.replay(graph(name))
        c = classify_pi_13(graph("H6_13"))
        ok &= (c.kind == "Interval" and c.lb == HD_DENSITY and c.ub == QSqrt3(2)
               and bool(c.conjecture_note))
    record(9, ok and t.seconds < 5, f"5 exact values with replayed evidence, H6_13 in [{c.lb}, {c.ub}], "
                                    f"{t.seconds:.2f}s")


def _random_13(rng, n):
    pool = [(v,) for v in range(1, n + 1)] + list(combinations(range(1, n + 1), 3))
    return RGraph(n, tuple(rng.sample(pool, rng.randint(1, len(pool)))))


def test_criterion_10_product_colorability():
    rng = random.Random(10)
    trials = failures = 0
    with Timer() as t:
        while trials < 200:
            G, H1, H2 = (_random_13(rng, rng.randint(1, 4)) for _ in range(3))
            f1, f2 = find_homomorphism(G, H1), find_homomorphism(G, H2)
            if f1 is None or f2 is None:
                continue
            trials += 1
            paired = VertexMap(G.n, H1.n * H2.n,
                               tuple(product_vertex(f1(v), f2(v), H2.n) for v in G.vertices))
            failures += not verify_map(G, product(H1, H2), paired)
    record(10, failures == 0 and t.seconds < 60, f"{trials} triples, {failures} failures, {t.seconds:.1f}s")


def test_criterion_11_partial_suspension():
    ok, parts = True, []
    for name in ("C13", "K3_bb"):
        H = graph(name)
        for n in (5, 6):
            lhs = exact_pi_n([partial_suspension_T(H)], n).value
            rhs = exact_pi_n([H], n - 1).value
            ok &= lhs <= rhs
            parts.append(f"T({name}) n={n}: {lhs} <= {rhs}")
    record(11, ok, "; ".join(parts))


def test_criterion_12_witnesses():
    ok, parts = True, []
    with Timer() as t:
        for R in ((1, 3), (2, 3), (2, 4), (3, 4), (1, 4), (1, 2, 3), (2, 3, 4)):
            W = nontrivial_degenerate_witness(R)
            good = edge_type_set(W) == R and blowup_colorable(W, chain(R)) is None
            if R == (1, 3):
                good &= bool(is_degenerate_13(W))
            ok &= good
            parts.append(f"{set(R)}: {W}")
        try:
            nontrivial_degenerate_witness((1, 2))
            ok = False
        except InvalidR:
            parts.append("{1, 2}: rejected")
    record(12, ok and t.seconds < 10, "; ".join(parts) + f"; {t.seconds:.2f}s")


def test_criterion_13_gradient_and_normalization():
    rng = np.random.default_rng(13)
    worst, h = 0.0, 1e-6
    for name in PATTERN_NAMES:
        p = polynomial_form(graph(name))
        for _ in range(20):
            x = rng.dirichlet(np.ones(p.num_vars))
            g = gradient(p, x)
            for i in range(p.num_vars):
                up, dn = x.copy(), x.copy()
                up[i] += h
                dn[i] -= h
                fd = (evaluate(p, list(up)) - evaluate(p, list(dn))) / (2 * h)
                worst = max(worst, abs(fd - g[i]) / max(1.0, abs(g[i])))
    lub = [lubell(complete((1, 3), n), n) for n in range(4, 9)]
    record(13, worst <= 1e-6 and all(v == 2 for v in lub),
           f"gradient rel. error {worst:.1e} (tol 1e-6), lubell(K_n^{{1,3}}) = {[str(v) for v in lub]}")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    print("\n".join(RESULTS))
    sys.exit(1 if failed else 0)
