"""Polynomial forms of (loop) R-graphs and their maximum over the simplex.

The maximum is found by enumerating every support set, solving the interior
stationarity system on it with damped Newton from a fixed set of seeds, and
keeping the best point that satisfies the KKT conditions on the whole simplex.
An exact lattice search (:func:`grid_oracle`) is run alongside as an
independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod

import numpy as np
from scipy.stats import qmc

from .core import RGraph, multiplicities
from .errors import BudgetExceeded, ConvergenceFailure, DimensionMismatch, InvariantViolation, TooLarge

MAX_VARS = 12
DEFAULT_TOL = 1e-9
ORACLE_BUDGET = 300_000
SEED_EPS = 1e-3


@dataclass(frozen=True)
class PolynomialForm:
    num_vars: int
    terms: tuple  # (coefficient, exponent tuple), one per edge

    @property
    def degree(self):
        return max((sum(ex) for _, ex in self.terms), default=0)

    def __str__(self):
        names = [f"x{i + 1}" for i in range(self.num_vars)]
        out = []
        for c, ex in self.terms:
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, ex) if k)
            out.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(out) or "0"


@dataclass(frozen=True)
class SimplexPoint:
    weights: tuple

    def __post_init__(self):
        w = tuple(self.weights)
        object.__setattr__(self, "weights", w)
        if any(x < 0 for x in w):
            raise InvariantViolation("simplex weights must be nonnegative")
        total = sum(w)
        exact = all(isinstance(x, (int, Fraction)) for x in w)
        if (total != 1) if exact else abs(total - 1) > 1e-12:
            raise InvariantViolation(f"simplex weights sum to {total}, not 1")

    def __len__(self):
        return len(self.weights)

    def as_array(self):
        return np.array([float(x) for x in self.weights])


@dataclass(frozen=True)
class LagrangianResult:
    value: float
    maximizer: SimplexPoint
    support: tuple
    kkt_residual: float
    oracle_value: Fraction = None
    oracle_resolution: int = 0


def edge_coefficient(e) -> int:
    """Multinomial coefficient |e|! / prod(m_i!) of a loop edge."""
    return factorial(len(e)) // prod(factorial(m) for m in multiplicities(e).values())


def polynomial_form(H: RGraph) -> PolynomialForm:
    terms = []
    for e in H.edges:
        ex = [0] * H.n
        for v, m in multiplicities(e).items():
            ex[v - 1] = m
        terms.append((edge_coefficient(e), tuple(ex)))
    return PolynomialForm(H.n, tuple(terms))


def _coords(p, x):
    if isinstance(x, SimplexPoint):
        x = x.weights
    if len(x) != p.num_vars:
        raise DimensionMismatch(f"point has {len(x)} coordinates, polynomial has {p.num_vars}")
    return x


def evaluate(p: PolynomialForm, x):
    """Value at x; exact when x holds Fractions."""
    x = _coords(p, x)
    return sum(c * prod(xi ** k for xi, k in zip(x, ex) if k) for c, ex in p.terms)


def gradient(p: PolynomialForm, x) -> np.ndarray:
    x = np.asarray(_coords(p, x), dtype=float)
    g = np.zeros(p.num_vars)
    for c, ex in p.terms:
        for i, k in enumerate(ex):
            if k:
                rest = prod(x[j] ** ex[j] for j in range(p.num_vars) if j != i and ex[j])
                g[i] += c * k * x[i] ** (k - 1) * rest
    return g


def hessian(p: PolynomialForm, x) -> np.ndarray:
    x = np.asarray(_coords(p, x), dtype=float)
    n = p.num_vars
    h = np.zeros((n, n))
    for c, ex in p.terms:
        nz = [i for i in range(n) if ex[i]]
        for i in nz:
            for j in nz:
                d = list(ex)
                coef = c * d[i]
                d[i] -= 1
                coef *= d[j]
                if coef == 0:
                    continue
                d[j] -= 1
                h[i, j] += coef * prod(x[t] ** d[t] for t in range(n) if d[t])
    return h


def kkt_residual(p: PolynomialForm, x, support) -> float:
    """Spread of support partials plus any off-support partial above their maximum."""
    g = gradient(p, x)
    on = g[list(support)]
    off = np.delete(g, list(support))
    spread = float(on.max() - on.min())
    excess = float(max(0.0, off.max() - on.max())) if off.size else 0.0
    return max(spread, excess)


# -- exact lattice oracle ---------------------------------------------------

def _compositions(m, n):
    if n == 1:
        yield (m,)
        return
    for first in range(m, -1, -1):
        for rest in _compositions(m - first, n - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _lattice(m, n):
    """Same points and order as _compositions, as an int64 array."""
    if n == 1:
        return np.array([[m]], dtype=np.int64)
    if n == 2:
        first = np.arange(m, -1, -1, dtype=np.int64)
        return np.column_stack([first, m - first])
    firsts = range(m, -1, -1)
    rests = [_lattice(m - f, n - 1) for f in firsts]
    col = np.repeat(np.fromiter(firsts, dtype=np.int64), [len(r) for r in rests])
    return np.column_stack([col, np.vstack(rests)])


def default_resolution(n, budget=ORACLE_BUDGET):
    cap = 600 if n <= 3 else 120
    m = cap
    while m > 1 and comb(m + n - 1, n - 1) > budget:
        m -= 1
    return m


def grid_oracle(p: PolynomialForm, resolution: int, budget: int = ORACLE_BUDGET):
    """Exact maximum over the lattice points k/m of the simplex, m = resolution."""
    if resolution < 1:
        raise InvariantViolation("resolution must be >= 1")
    n, m = p.num_vars, resolution
    if n == 0:
        raise InvariantViolation("polynomial has no variables")
    count = comb(m + n - 1, n - 1)
    if count > budget:
        raise BudgetExceeded(f"lattice has {count} points, budget is {budget}")
    D = p.degree
    # integer value of p(k/m) * m^D
    terms = [(c * m ** (D - sum(ex)), [(i, e) for i, e in enumerate(ex) if e]) for c, ex in p.terms]
    if sum(c for c, _ in p.terms) * m ** D < 2 ** 62:
        k = _lattice(m, n)
        vals = np.zeros(len(k), dtype=np.int64)
        for c, factors in terms:
            t = np.full(len(k), c, dtype=np.int64)
            for i, e in factors:
                t *= k[:, i] ** e
            vals += t
        j = int(np.argmax(vals))
        best, arg = int(vals[j]), tuple(int(v) for v in k[j])
    else:
        best, arg = None, None
        for k in _compositions(m, n):
            val = 0
            for c, factors in terms:
                t = c
                for i, e in factors:
                    t *= k[i] ** e
                    if not t:
                        break
                val += t
            if best is None or val > best:
                best, arg = val, k
    value = Fraction(best, m ** D)
    return value, SimplexPoint(tuple(Fraction(ki, m) for ki in arg))


# -- support enumeration + Newton ------------------------------------------

def _seeds(k):
    pts = [np.full(k, 1.0 / k)]
    if k == 1:
        return pts
    for i in range(k):
        v = np.full(k, SEED_EPS / k)
        v[i] += 1.0 - SEED_EPS
        pts.append(v)
    extra = max(8, 16 - len(pts))
    halton = qmc.Halton(d=k, scramble=False).random(extra + 1)[1:]
    for u in halton:
        u = np.clip(u, 1e-6, None)
        pts.append(u / u.sum())
    return pts


def _newton(p, support, x0, iters=100):
    n = p.num_vars
    S = list(support)
    k = len(S)
    x = np.zeros(n)
    x[S] = x0
    mu = float(np.mean(gradient(p, x)[S]))
    for _ in range(iters):
        g = gradient(p, x)
        F = np.concatenate([g[S] - mu, [x[S].sum() - 1.0]])
        if np.max(np.abs(F)) < 1e-15:
            break
        J = np.zeros((k + 1, k + 1))
        J[:k, :k] = hessian(p, x)[np.ix_(S, S)]
        J[:k, k] = -1.0
        J[k, :k] = 1.0
        step = np.linalg.lstsq(J, -F, rcond=None)[0]
        t = 1.0
        for _ in range(60):
            trial = x[S] + t * step[:k]
            if np.all(trial > 0):
                break
            t *= 0.5
        else:
            return None
        x[S] = x[S] + t * step[:k]
        mu += t * step[k]
    g = gradient(p, x)
    F = np.concatenate([g[S] - mu, [x[S].sum() - 1.0]])
    if np.max(np.abs(F)) > 1e-11:
        return None
    x[S] /= x[S].sum()
    return x


def _better(a, b, tie=1e-12):
    """Order candidates: larger value, then smaller support, then lexicographic support."""
    (va, sa), (vb, sb) = a, b
    if va > vb + tie:
        return True
    if vb > va + tie:
        return False
    return (len(sa), sa) < (len(sb), sb)


def lagrangian(H, tol: float = DEFAULT_TOL, oracle_res: int = None, check_oracle: bool = True) -> LagrangianResult:
    p = H if isinstance(H, PolynomialForm) else polynomial_form(H)
    n = p.num_vars
    if n < 1:
        raise InvariantViolation("the Lagrangian needs at least one vertex")
    if n > MAX_VARS:
        raise TooLarge(f"support enumeration is capped at {MAX_VARS} vertices")
    best = None
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            for seed in _seeds(size):
                x = _newton(p, S, seed)
                if x is None:
                    continue
                if kkt_residual(p, x, S) > tol:
                    continue
                cand = (float(evaluate(p, x)), S, x)
                if best is None or _better(cand[:2], best[:2]):
                    best = cand
    oracle_value = None
    if check_oracle:
        res = oracle_res or default_resolution(n)
        oracle_value, oracle_point = grid_oracle(p, res)
        if best is None or best[0] < float(oracle_value) - 10 * tol:
            got = None if best is None else best[0]
            raise ConvergenceFailure(
                f"optimizer value {got} is below the lattice value {float(oracle_value)} "
                f"(bracket [{float(oracle_value)}, ?])")
    if best is None:
        raise ConvergenceFailure("no KKT point found on any support")
    value, S, x = best
    return LagrangianResult(value, SimplexPoint(tuple(float(t) for t in x)), tuple(v + 1 for v in S),
                            kkt_residual(p, x, S), oracle_value, res if check_oracle else 0)
