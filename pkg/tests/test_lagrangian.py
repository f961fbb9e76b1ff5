import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import rgraphs
from turan.constructions import CATALOG, PATTERN_NAMES, graph
from turan.core import RGraph
from turan.errors import BudgetExceeded, DimensionMismatch, InvariantViolation, TooLarge
from turan.lagrangian import (
    SimplexPoint,
    default_resolution,
    edge_coefficient,
    evaluate,
    gradient,
    grid_oracle,
    hessian,
    kkt_residual,
    lagrangian,
    polynomial_form,
)

SQ3 = math.sqrt(3)


@lru_cache(maxsize=None)
def solved(name):
    return lagrangian(graph(name))


def test_polynomial_forms():
    assert polynomial_form(graph("HA")).terms == ((1, (1, 0)), (3, (1, 2)), (1, (0, 3)))
    assert polynomial_form(graph("HB")).terms == ((1, (1, 0, 0)), (1, (0, 1, 0)), (6, (1, 1, 1)))
    assert polynomial_form(graph("HC")).terms == ((1, (1, 0)), (3, (2, 1)), (3, (1, 2)), (1, (0, 3)))
    assert str(polynomial_form(graph("HA"))) == "x1 + 3*x1*x2^2 + x2^3"


def test_edge_coefficient():
    assert edge_coefficient((1, 2, 2)) == 3
    assert edge_coefficient((1, 2, 3)) == 6
    assert edge_coefficient((2, 2, 2)) == 1
    assert edge_coefficient((1, 1, 2, 2)) == 6


def test_evaluate_examples():
    pa = polynomial_form(graph("HA"))
    assert evaluate(pa, (0, 1)) == 1
    assert abs(evaluate(pa, (0.5 - SQ3 / 6, 0.5 + SQ3 / 6)) - (1 + SQ3 / 18)) < 1e-12
    pb = polynomial_form(graph("HB"))
    a = (1 + SQ3) / 6
    assert abs(evaluate(pb, (a, a, (2 - SQ3) / 3)) - (4 / 9 + SQ3 / 3)) < 1e-12
    assert evaluate(pa, (Fraction(1, 2), Fraction(1, 2))) == 1  # 1/2 + 3/8 + 1/8
    with pytest.raises(DimensionMismatch):
        evaluate(pa, (1, 0, 0))


def test_simplex_point_validation():
    SimplexPoint((Fraction(1, 3), Fraction(2, 3)))
    with pytest.raises(InvariantViolation):
        SimplexPoint((Fraction(1, 3), Fraction(1, 3)))
    with pytest.raises(InvariantViolation):
        SimplexPoint((1.2, -0.2))


@pytest.mark.parametrize("name,value,coord", [
    ("HA", 1 + SQ3 / 18, (0, 0.5 - SQ3 / 6)),
    ("HB", 4 / 9 + SQ3 / 3, (0, (1 + SQ3) / 6)),
    ("HC", 1 + 2 * SQ3 / 9, (0, SQ3 / 3)),
    ("HD", 4 / 3, (0, 2 / 3)),
    ("HE", 1 + SQ3 / 9, (0, (3 + SQ3) / 6)),
    ("HF", 1 + SQ3 / 9, (1, (3 - SQ3) / 6)),
])
def test_known_lagrangians(name, value, coord):
    r = solved(name)
    assert abs(r.value - value) <= 1e-9
    i, x = coord
    assert abs(r.maximizer.weights[i] - x) <= 1e-9
    assert abs(r.value - float(CATALOG[name].known_density)) <= 1e-9


@pytest.mark.parametrize("name", PATTERN_NAMES)
def test_kkt_and_oracle(name):
    r = solved(name)
    p = polynomial_form(graph(name))
    S = [v - 1 for v in r.support]
    assert kkt_residual(p, r.maximizer.as_array(), S) <= 1e-9
    g = gradient(p, r.maximizer.as_array())
    off = [g[i] for i in range(p.num_vars) if i not in S]
    assert all(x <= max(g[S]) + 1e-9 for x in off)
    assert abs(r.value - evaluate(p, r.maximizer.weights)) <= 1e-12
    assert r.value >= float(r.oracle_value) - 1e-12
    assert abs(r.value - float(r.oracle_value)) <= 1e-4


@pytest.mark.parametrize("name", PATTERN_NAMES)
def test_optimizer_beats_oracle_600(name):
    p = polynomial_form(graph(name))
    if p.num_vars > 3:
        pytest.skip("resolution 600 is only feasible up to 3 variables")
    value, point = grid_oracle(p, 600)
    assert solved(name).value >= float(value) - 1e-12
    assert evaluate(p, point.weights) == value


def test_closed_forms():
    x = solved("HA").maximizer.weights[0]
    assert abs(x * (1 - x) - 1 / 6) <= 1e-10
    assert abs(solved("HE").maximizer.weights[0] - (3 + SQ3) / 6) <= 1e-9
    hf = solved("HF").maximizer.weights
    assert abs(hf[0] - (3 - SQ3) / 6) <= 1e-9 and abs(hf[1] - (3 - SQ3) / 6) <= 1e-9


def test_grid_oracle_examples():
    pa = polynomial_form(graph("HA"))
    value, _ = grid_oracle(pa, 1000)
    assert abs(float(value) - (1 + SQ3 / 18)) <= 2e-5
    pb = polynomial_form(graph("HB"))
    assert abs(float(grid_oracle(pb, 600)[0]) - (4 / 9 + SQ3 / 3)) <= 1e-4
    # resolution 1 visits the unit vectors only
    assert grid_oracle(pa, 1)[0] == 1
    assert grid_oracle(pb, 1)[0] == 1
    with pytest.raises(BudgetExceeded):
        grid_oracle(polynomial_form(graph("HF")), 1000, budget=1000)


def test_default_resolution():
    assert default_resolution(2) == 600
    assert default_resolution(3) == 600
    assert default_resolution(6) <= 120


def test_size_cap():
    with pytest.raises(TooLarge):
        lagrangian(RGraph(13, ((1,),)))


@pytest.mark.parametrize("name", PATTERN_NAMES)
def test_gradient_matches_finite_differences(name):
    p = polynomial_form(graph(name))
    rng = np.random.default_rng(7)
    h = 1e-6
    for _ in range(20):
        x = rng.dirichlet(np.ones(p.num_vars))
        g = gradient(p, x)
        for i in range(p.num_vars):
            up, dn = x.copy(), x.copy()
            up[i] += h
            dn[i] -= h
            fd = (evaluate(p, list(up)) - evaluate(p, list(dn))) / (2 * h)
            assert abs(fd - g[i]) <= 1e-6 * max(1.0, abs(g[i]))


@pytest.mark.parametrize("name", PATTERN_NAMES)
def test_hessian_matches_gradient_differences(name):
    p = polynomial_form(graph(name))
    x = np.full(p.num_vars, 1 / p.num_vars)
    H = hessian(p, x)
    h = 1e-6
    for j in range(p.num_vars):
        up, dn = x.copy(), x.copy()
        up[j] += h
        dn[j] -= h
        col = (gradient(p, up) - gradient(p, dn)) / (2 * h)
        assert np.allclose(col, H[:, j], atol=1e-5)


@settings(max_examples=25)
@given(rgraphs(max_n=4, types=(1, 2, 3)))
def test_barycenter_bound(G):
    if not len(G):
        return
    r = lagrangian(G, check_oracle=False)
    p = polynomial_form(G)
    uniform = [Fraction(1, G.n)] * G.n
    assert float(evaluate(p, uniform)) <= r.value + 1e-12
    assert r.value >= max(float(evaluate(p, [Fraction(int(i == j)) for j in range(G.n)]))
                          for i in range(G.n)) - 1e-12


@settings(max_examples=25)
@given(rgraphs(max_n=4, types=(1, 3)), st.integers(1, 12))
def test_optimizer_not_below_lattice(G, m):
    if not len(G):
        return
    p = polynomial_form(G)
    assert lagrangian(G, check_oracle=False).value >= float(grid_oracle(p, m)[0]) - 1e-12


@pytest.mark.parametrize("name", PATTERN_NAMES)
def test_vectorized_oracle_matches_loop(name):
    from turan.lagrangian import _compositions

    p = polynomial_form(graph(name))
    value, point = grid_oracle(p, 24)
    exact = max(evaluate(p, [Fraction(k, 24) for k in ks]) for ks in _compositions(24, p.num_vars))
    assert value == exact == evaluate(p, list(point.weights))
