"""The ``reproduce`` harness and π_n trend tables."""

from __future__ import annotations

import csv
import io
import math
import platform
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import __version__
from .constructions import (
    CATALOG,
    HB_DENSITY,
    HD_DENSITY,
    K3BB_DENSITY,
    K3BBB_DENSITY,
    ONE,
    STAR_DENSITY,
    chain,
    graph,
    partial_suspension_T,
    product,
    product_vertex,
)
from .core import RGraph, complete, edge_type_set, lubell
from .errors import InvalidR, UnknownName
from .extremal import (
    brute_force_pi_n,
    classify_pi_13,
    exact_pi_n,
    is_degenerate_13,
    nontrivial_degenerate_witness,
)
from .homomorphism import (
    EDGE_INJECTIVE,
    VertexMap,
    blowup_colorable,
    canonical_form,
    find_homomorphism,
    verify_map,
)
from .lagrangian import evaluate, gradient, lagrangian, polynomial_form

SEED = 0
SQ3 = math.sqrt(3)


@dataclass(frozen=True)
class Row:
    claim: str
    expected: object
    computed: object
    delta: float
    tol: float

    @property
    def passed(self):
        return self.delta <= self.tol

    @property
    def status(self):
        return "PASS" if self.passed else "FAIL"

    def to_json(self):
        return {"claim": self.claim, "expected": _show(self.expected), "computed": _show(self.computed),
                "delta": self.delta, "tol": self.tol, "status": self.status}


@dataclass
class ReproduceReport:
    rows: list = field(default_factory=list)
    environment: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(r.passed for r in self.rows)

    @property
    def exit_code(self):
        return 0 if self.passed else 1

    def table(self):
        lines = [f"{'claim':28} {'expected':>22} {'computed':>24} {'delta':>9}  status"]
        for r in self.rows:
            lines.append(f"{r.claim:28} {_show(r.expected):>22} {_show(r.computed):>24} "
                         f"{r.delta:9.2e}  {r.status}")
        n_fail = sum(not r.passed for r in self.rows)
        lines.append(f"{len(self.rows)} claims, {n_fail} failed")
        return "\n".join(lines)

    def to_json(self):
        return {"environment": self.environment, "passed": self.passed,
                "rows": [r.to_json() for r in self.rows]}


def _show(x):
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _value(claim, expected, computed, tol):
    return Row(claim, expected, computed, abs(float(expected) - float(computed)), tol)


def _check(claim, ok, computed=None):
    return Row(claim, True, ok if computed is None else computed, 0.0 if ok else 1.0, 0.0)


# -- Lagrangian claims --------------------------------------------------------

# pattern: (value, index of a pinned maximizer coordinate, its value)
LAGRANGIAN_CLAIMS = {
    "HA": (K3BB_DENSITY, 0, 0.5 - SQ3 / 6),
    "HB": (HB_DENSITY, 0, (1 + SQ3) / 6),
    "HC": (K3BBB_DENSITY, 0, SQ3 / 3),
    "HD": (HD_DENSITY, 0, 2 / 3),
    "HE": (STAR_DENSITY, 0, (3 + SQ3) / 6),
    "HF": (STAR_DENSITY, 0, (3 - SQ3) / 6),
}


@lru_cache(maxsize=None)
def _solved(name):
    return lagrangian(graph(name))


def _lag_value(name):
    return _value(f"lagrangian-{name}", LAGRANGIAN_CLAIMS[name][0], _solved(name).value, 1e-9)


def _lag_argmax(name, idx=None):
    _, i, coord = LAGRANGIAN_CLAIMS[name]
    suffix = "" if idx is None else "-y"
    i = i if idx is None else idx
    return _value(f"argmax-{name}{suffix}", coord, _solved(name).maximizer.weights[i], 1e-9)


def _lag_kkt(name):
    r = _solved(name)
    return Row(f"kkt-{name}", 0.0, r.kkt_residual, r.kkt_residual, 1e-9)


def _lag_oracle(name):
    r = _solved(name)
    return Row(f"oracle-{name}", r.oracle_value, r.value, abs(r.value - float(r.oracle_value)), 1e-4)


def _gradient(name):
    """Worst relative gap between analytic partials and central differences."""
    p = polynomial_form(graph(name))
    rng = np.random.default_rng(SEED)
    worst, h = 0.0, 1e-6
    for _ in range(20):
        x = rng.dirichlet(np.ones(p.num_vars))
        g = gradient(p, x)
        for i in range(p.num_vars):
            up, dn = x.copy(), x.copy()
            up[i] += h
            dn[i] -= h
            fd = (evaluate(p, list(up)) - evaluate(p, list(dn))) / (2 * h)
            worst = max(worst, abs(fd - g[i]) / max(1.0, abs(g[i])))
    return Row(f"gradient-{name}", 0.0, worst, worst, 1e-6)


# -- combinatorial claims -----------------------------------------------------

def _product_example():
    # ax=1 bx=2 cx=3 ay=4 by=5 cy=6
    example = RGraph(6, ((1,), (2,), (2, 4, 6), (4, 5, 6), (1, 5, 6), (3, 4, 5)))
    P = product(graph("HA"), graph("HB"))
    return _check("product-HA-HB", canonical_form(P) == canonical_form(example))


def _product_map():
    P = product(graph("HA"), graph("HB"))
    # row-major ids: xa=1 xb=2 xc=3 ya=4 yb=5 yc=6
    m = VertexMap(6, 5, (3, 2, 1, 4, 5, 1), EDGE_INJECTIVE)
    return _check("product-map-H5_13", verify_map(P, graph("H5_13"), m))


def _product_search():
    found = find_homomorphism(product(graph("HA"), graph("HB")), graph("H5_13"))
    return _check("product-search-H5_13", found is not None, str(found))


def _random_13(rng, n):
    pool = [(v,) for v in range(1, n + 1)] + list(combinations(range(1, n + 1), 3))
    return RGraph(n, tuple(rng.sample(pool, rng.randint(1, len(pool)))))


def _product_pairing(trials=200):
    """Paired colorings G -> H1, G -> H2 verify into H1 x H2."""
    rng = random.Random(SEED)
    done = failures = 0
    while done < trials:
        G, H1, H2 = (_random_13(rng, rng.randint(1, 4)) for _ in range(3))
        f1, f2 = find_homomorphism(G, H1), find_homomorphism(G, H2)
        if f1 is None or f2 is None:
            continue
        done += 1
        paired = VertexMap(G.n, H1.n * H2.n, tuple(product_vertex(f1(v), f2(v), H2.n) for v in G.vertices))
        failures += not verify_map(G, product(H1, H2), paired)
    return Row("product-colorability", 0, failures, float(failures), 0.0)


DEGENERATE_EXPECTED = {"H5_13": True, "C13": True, "K3_bb": False, "G4_b": False, "H5_star": False}


def _degenerate(name):
    got = bool(is_degenerate_13(graph(name)))
    want = DEGENERATE_EXPECTED[name]
    return Row(f"degenerate13-{name}", want, got, 0.0 if got == want else 1.0, 0.0)


def _noembed(name, pattern):
    return _check(f"noembed-{name}-{pattern}", blowup_colorable(graph(name), graph(pattern)) is None)


PI_CLAIMS = {
    "pi4-C13": (("C13",), 4, Fraction(1)),
    "pi4-K3_bb": (("K3_bb",), 4, Fraction(5, 4)),
    "pi5-K3_bb": (("K3_bb",), 5, Fraction(6, 5)),
}


def _pi(claim):
    fam, n, value = PI_CLAIMS[claim]
    got = brute_force_pi_n(list(fam), n).value
    return Row(claim, value, got, float(abs(got - value)), 0.0)


def _bnb_agrees():
    worst = Fraction(0)
    for fam in (["C13"], ["K3_bb"], ["K3_bb", "G4_b"], ["H5_13"]):
        for n in (3, 4):
            worst = max(worst, abs(exact_pi_n(fam, n).value - brute_force_pi_n(fam, n).value))
    return Row("bnb-vs-bruteforce", 0, worst, float(worst), 0.0)


TREND_LIMITS = {"K3_bb": K3BB_DENSITY, "K3_bb+G4_b": ONE, "C13": ONE}


def _trend(label):
    fam = label.split("+")
    values = [exact_pi_n(fam, n).value for n in (4, 5, 6)]
    limit = TREND_LIMITS[label]
    ok = all(a >= b for a, b in zip(values, values[1:])) and float(values[-1]) >= float(limit)
    return Row(f"trend-{label}", f">= {limit}", ", ".join(map(str, values)), 0.0 if ok else 1.0, 0.0)


CLASSIFY_EXPECTED = {"H5_13": ONE, "K3_bb": K3BB_DENSITY, "K3_bbb": K3BBB_DENSITY,
                     "H5_star": STAR_DENSITY, "H6_star": STAR_DENSITY}


def _classify(name):
    c = classify_pi_13(graph(name))
    want = CLASSIFY_EXPECTED[name]
    if c.kind != "Exact" or not c.replay(graph(name)):
        return Row(f"classify-{name}", want, f"{c.kind} [{c.lb}, {c.ub}]", 1.0, 1e-12)
    return Row(f"classify-{name}", want, c.lb, abs(float(c.lb) - float(want)), 1e-12)


def _classify_open():
    c = classify_pi_13(graph("H6_13"))
    ok = (c.kind == "Interval" and c.lb == HD_DENSITY and float(c.ub) == 2.0
          and bool(c.conjecture_note) and c.replay(graph("H6_13")))
    return Row("classify-H6_13", "[4/3, 2]", f"[{c.lb}, {c.ub}]", 0.0 if ok else 1.0, 0.0)


def _tsuspend(name, n):
    H = graph(name)
    lhs = exact_pi_n([partial_suspension_T(H)], n).value
    rhs = exact_pi_n([H], n - 1).value
    return Row(f"tsuspend-{name}-n{n}", f"<= {rhs}", lhs, float(max(Fraction(0), lhs - rhs)), 0.0)


WITNESS_RS = ((1, 3), (2, 3), (2, 4), (3, 4), (1, 4), (1, 2, 3), (2, 3, 4))


def _witness(R):
    W = nontrivial_degenerate_witness(R)
    ok = edge_type_set(W) == R and blowup_colorable(W, chain(R)) is None
    if R == (1, 3):
        ok = ok and bool(is_degenerate_13(W))
    return _check("witness-" + "".join(map(str, R)), ok, str(W))


def _witness_rejects():
    try:
        nontrivial_degenerate_witness((1, 2))
    except InvalidR:
        return _check("witness-12-rejected", True)
    return _check("witness-12-rejected", False)


def _lubell_complete(n):
    got = lubell(complete((1, 3), n), n)
    return Row(f"lubell-complete13-n{n}", 2, got, float(abs(got - 2)), 0.0)


def _registry():
    reg = {}
    for name in LAGRANGIAN_CLAIMS:
        reg[f"lagrangian-{name}"] = lambda name=name: _lag_value(name)
        reg[f"argmax-{name}"] = lambda name=name: _lag_argmax(name)
        reg[f"kkt-{name}"] = lambda name=name: _lag_kkt(name)
        reg[f"oracle-{name}"] = lambda name=name: _lag_oracle(name)
        reg[f"gradient-{name}"] = lambda name=name: _gradient(name)
    reg["argmax-HF-y"] = lambda: _lag_argmax("HF", 1)
    reg["product-HA-HB"] = _product_example
    reg["product-map-H5_13"] = _product_map
    reg["product-search-H5_13"] = _product_search
    reg["product-colorability"] = _product_pairing
    for name in DEGENERATE_EXPECTED:
        reg[f"degenerate13-{name}"] = lambda name=name: _degenerate(name)
    reg["noembed-K3_bb-HA"] = lambda: _noembed("K3_bb", "HA")
    reg["noembed-G4_b-HB"] = lambda: _noembed("G4_b", "HB")
    for claim in PI_CLAIMS:
        reg[claim] = lambda claim=claim: _pi(claim)
    reg["bnb-vs-bruteforce"] = _bnb_agrees
    for label in TREND_LIMITS:
        reg[f"trend-{label}"] = lambda label=label: _trend(label)
    for name in CLASSIFY_EXPECTED:
        reg[f"classify-{name}"] = lambda name=name: _classify(name)
    reg["classify-H6_13"] = _classify_open
    for name in ("C13", "K3_bb"):
        for n in (5, 6):
            reg[f"tsuspend-{name}-n{n}"] = lambda name=name, n=n: _tsuspend(name, n)
    for R in WITNESS_RS:
        reg["witness-" + "".join(map(str, R))] = lambda R=R: _witness(R)
    reg["witness-12-rejected"] = _witness_rejects
    for n in range(4, 9):
        reg[f"lubell-complete13-n{n}"] = lambda n=n: _lubell_complete(n)
    return reg


CLAIMS = _registry()


def claim_ids():
    return tuple(sorted(CLAIMS))


def _run(claim):
    try:
        return CLAIMS[claim]()
    except Exception as exc:  # a crashing claim is a failed row
        return Row(claim, "-", f"error: {type(exc).__name__}: {exc}", math.inf, 0.0)


def reproduce(selection=None, workers: int = 4) -> ReproduceReport:
    """Run the selected claims (all when ``selection`` is None); rows sorted by id.

    An entry that is not a claim id but prefixes some (``"classify"``,
    ``"witness"``) selects that whole group.  Anything else raises
    :class:`UnknownName`.
    """
    env = {"version": __version__, "seed": SEED, "python": platform.python_version()}
    if selection is None:
        chosen = set(CLAIMS)
    else:
        chosen = set()
        for sid in selection:
            if sid in CLAIMS:
                chosen.add(sid)
                continue
            group = [c for c in CLAIMS if c.startswith(sid + "-")]
            if not group:
                raise UnknownName(f"unknown claim id {sid!r}")
            chosen.update(group)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        rows = list(pool.map(_run, sorted(chosen)))
    return ReproduceReport(rows, env)


# -- trends -------------------------------------------------------------------

FAMILY_LIMITS = {
    frozenset({"C13"}): ONE,
    frozenset({"H5_13"}): ONE,
    frozenset({"K3_bb"}): K3BB_DENSITY,
    frozenset({"K3_bb", "G4_b"}): ONE,
    frozenset({"K3_bbb"}): K3BBB_DENSITY,
    frozenset({"H5_star"}): STAR_DENSITY,
    frozenset({"H6_star"}): STAR_DENSITY,
    frozenset({"H_star"}): STAR_DENSITY,
    frozenset({"K3_bbb", "H4_bb"}): STAR_DENSITY,
    frozenset({"K3_bbb", "H4_bbb"}): STAR_DENSITY,
}

TREND_COLUMNS = ("family", "n", "pi_n", "pi_n_decimal", "limit", "gap")


def catalog_name(G):
    """Name of the catalog graph isomorphic to G, if any."""
    if G.loops or G.n > 10:
        return None
    key = canonical_form(G)
    for name, entry in CATALOG.items():
        if not entry.is_pattern and entry.graph.n == G.n and canonical_form(entry.graph) == key:
            return name
    return None


def family_limit(members):
    names = {catalog_name(G) for G in members}
    if None in names:
        return None
    return FAMILY_LIMITS.get(frozenset(names))


def trend_csv(families, n_range) -> str:
    """One row per (family, n); a family is a list of catalog names or graphs."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TREND_COLUMNS)
    for family in families:
        members = [graph(g) if isinstance(g, str) else g for g in family]
        limit = family_limit(members)
        label = "+".join(catalog_name(G) or str(G) for G in members)
        for n in n_range:
            value = exact_pi_n(members, n).value
            gap = "" if limit is None else f"{float(value) - float(limit):.12f}"
            writer.writerow([label, n, str(value), f"{float(value):.12f}",
                             "" if limit is None else str(limit), gap])
    return out.getvalue()
