"""Finite Turán densities, density bounds, the {1,3} classifier and degenerate witnesses.

Search space for ``exact_pi_n``: an R-graph with R a subset of {1, t} on n
labelled vertices is a black set S (its 1-edges) plus a set of t-edges.  For a
fixed S, each copy of a forbidden graph that sends its 1-edges into S forbids
one set of t-edges from appearing together, so the inner problem is a maximum
independent set in that "conflict" hypergraph, solved by branch and bound.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Optional

from .constructions import (
    CATALOG,
    CONJECTURES,
    K3BB_DENSITY,
    K3BBB_DENSITY,
    ONE,
    PATTERN_NAMES,
    STAR_DENSITY,
    chain,
    graph,
    partial_suspension_T,
    suspension,
)
from .core import RGraph, disjoint_union, edge_type_set, lubell, shift_types
from .homomorphism import (
    EDGE_INJECTIVE,
    VertexMap,
    blowup_colorable,
    canonical_form,
    contains_subgraph,
    find_homomorphism,
    verify_map,
)
from .errors import InvalidR, InvariantViolation, TooLarge, UnsupportedTypes
from .surd import QSqrt3

EXACT_MAX_N = 6
EXHAUSTIVE_MAX_N = 5


@dataclass(frozen=True)
class ForbiddenFamily:
    members: tuple
    R: tuple = ()

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise InvariantViolation("a forbidden family needs at least one member")
        for H in members:
            if H.has_loop_edges:
                raise InvariantViolation("forbidden graphs must be simple")
        types = set()
        for H in members:
            types.update(edge_type_set(H))
        R = tuple(sorted(set(self.R))) if self.R else tuple(sorted(types))
        if not types <= set(R):
            raise InvariantViolation(f"member edge types {sorted(types)} exceed R={list(R)}")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "R", R)

    @classmethod
    def of(cls, *graphs, R=()):
        return cls(tuple(graph(g) if isinstance(g, str) else g for g in graphs), tuple(R))


@dataclass(frozen=True)
class ExtremalResult:
    n: int
    value: Fraction
    witness: RGraph
    configurations_explored: int
    exact: bool = True
    method: str = "branch-and-bound"


def _family(family):
    if isinstance(family, ForbiddenFamily):
        return family
    if isinstance(family, RGraph):
        return ForbiddenFamily((family,))
    return ForbiddenFamily.of(*family)


def _levels(R):
    """(has_ones, t) for R a subset of {1, t}."""
    R = set(R)
    rest = sorted(R - {1})
    if len(rest) > 1 or not R:
        raise UnsupportedTypes(f"exact search handles R within {{1, t}}, got {sorted(R)}")
    t = rest[0] if rest else None
    return 1 in R, t


def is_free(G: RGraph, family) -> bool:
    return all(contains_subgraph(G, H) is None for H in _family(family).members)


def _copy_maps(H, n, S):
    """All injective maps V(H) -> [n] sending black vertices into S (non-isolated vertices only)."""
    used = sorted({v for e in H.edges for v in e})
    blacks = set(H.black_vertices())
    Sset = set(S)
    for image in permutations(range(1, n + 1), len(used)):
        if all(w in Sset for v, w in zip(used, image) if v in blacks):
            yield dict(zip(used, image))


def _conflicts(family, n, S, t, index):
    """Minimal forbidden t-edge masks for black set S; None if S alone is forbidden."""
    masks = set()
    for H in family.members:
        if H.n > n or any(len(e) not in (1, t) for e in H.edges):
            continue
        tedges = [e for e in H.edges if len(e) != 1]
        for f in _copy_maps(H, n, S):
            mask = 0
            for e in tedges:
                mask |= 1 << index[tuple(sorted(f[v] for v in e))]
            if mask == 0:
                return None
            masks.add(mask)
    minimal = []
    for m in sorted(masks, key=lambda m: bin(m).count("1")):
        if not any(k & m == k for k in minimal):
            minimal.append(m)
    return minimal


class _MaxIndependent:
    """Largest set of candidate edges containing no conflict mask, by branch and bound."""

    def __init__(self, candidates, masks, floor):
        self.cands = candidates          # list of bit positions
        self.masks_at = {b: [m for m in masks if m >> b & 1] for b in candidates}
        self.best_count = floor          # must strictly beat this
        self.best_mask = None
        self.explored = 0

    def run(self):
        self._go(0, 0, 0)
        return self.best_mask

    def _go(self, i, chosen, count):
        self.explored += 1
        if count + len(self.cands) - i <= self.best_count:
            return
        if i == len(self.cands):
            self.best_count, self.best_mask = count, chosen
            return
        b = self.cands[i]
        new = chosen | (1 << b)
        if all(new & m != m for m in self.masks_at[b]):
            self._go(i + 1, new, count + 1)
        self._go(i + 1, chosen, count)


def _black_sets(n, has_ones):
    if not has_ones:
        yield ()
        return
    for k in range(n + 1):
        yield from combinations(range(1, n + 1), k)


def exact_pi_n(family, n: int) -> ExtremalResult:
    """Exact max Lubell density of a family-free R-graph on n vertices, R within {1, t}."""
    family = _family(family)
    has_ones, t = _levels(family.R)
    if n > EXACT_MAX_N:
        raise TooLarge(f"exact mode is capped at n={EXACT_MAX_N}")
    if n < 1 or (t is not None and t > n):
        raise InvariantViolation(f"n={n} too small for edge types {list(family.R)}")
    tsets = list(combinations(range(1, n + 1), t)) if t else []
    index = {e: i for i, e in enumerate(tsets)}
    total_t = len(tsets)
    best_value, best_graph = Fraction(-1), None
    explored = 0
    memo = set()
    for S in _black_sets(n, has_ones):
        black_graph = RGraph(n, tuple((v,) for v in S))
        key = canonical_form(black_graph)
        if key in memo:
            continue
        memo.add(key)
        explored += 1
        masks = _conflicts(family, n, S, t, index)
        if masks is None:
            continue
        base = Fraction(len(S), n)
        blocked = 0
        for m in masks:
            if m & (m - 1) == 0:
                blocked |= m
        cands = [i for i in range(total_t) if not blocked >> i & 1]
        if total_t:
            optimistic = base + Fraction(len(cands), total_t)
        else:
            optimistic = base
        if optimistic <= best_value:
            continue
        if total_t:
            # strictly beat the incumbent: count > (best - base) * C(n, t)
            floor = max(-1, math.floor((best_value - base) * total_t))
            solver = _MaxIndependent(cands, [m for m in masks if m & (m - 1)], floor)
            mask = solver.run()
            explored += solver.explored
            if mask is None:
                continue
            chosen = [tsets[i] for i in range(total_t) if mask >> i & 1]
        else:
            chosen = []
        G = RGraph(n, tuple((v,) for v in S) + tuple(chosen))
        value = lubell(G, n)
        if value > best_value:
            best_value, best_graph = value, G
    _check_witness(best_graph, family, n, best_value)
    return ExtremalResult(n, best_value, best_graph, explored, True, "branch-and-bound")


def _check_witness(G, family, n, value):
    if G is None:
        raise InvariantViolation("no family-free graph found")
    for H in family.members:
        if contains_subgraph(G, H) is not None:
            raise InvariantViolation("search returned a witness containing a forbidden graph")
    if lubell(G, n) != value:
        raise InvariantViolation("witness density disagrees with the reported value")


def brute_force_pi_n(family, n: int) -> ExtremalResult:
    """Unpruned enumeration of every R-graph on n vertices (R within {1, t}).

    Freeness is decided by trying every injective vertex map, independently of
    the backtracking engine used elsewhere.
    """
    family = _family(family)
    has_ones, t = _levels(family.R)
    if n > EXHAUSTIVE_MAX_N:
        raise TooLarge(f"unpruned enumeration is capped at n={EXHAUSTIVE_MAX_N}")
    tsets = list(combinations(range(1, n + 1), t)) if t else []
    maps = [[(H.edges, p) for p in permutations(range(1, n + 1), H.n)]
            for H in family.members if H.n <= n]
    best_value, best_graph, explored = Fraction(-1), None, 0
    blacks = [S for S in _black_sets(n, has_ones)]
    for S in blacks:
        for bits in range(1 << len(tsets)):
            explored += 1
            edges = {(v,) for v in S} | {tsets[i] for i in range(len(tsets)) if bits >> i & 1}
            bad = False
            for member in maps:
                for H_edges, p in member:
                    if all(tuple(sorted(p[v - 1] for v in e)) in edges for e in H_edges):
                        bad = True
                        break
                if bad:
                    break
            if bad:
                continue
            value = Fraction(len(S), n) + (Fraction(len(edges) - len(S), len(tsets)) if tsets else 0)
            if value > best_value:
                best_value = value
                best_graph = RGraph(n, tuple(edges))
    return ExtremalResult(n, best_value, best_graph, explored, True, "exhaustive")


# -- heuristic lower bounds -------------------------------------------------

def _rooted_copy(edges, H, new_edge, n):
    """Is there a copy of H inside ``edges`` that uses ``new_edge``?"""
    if H.n > n:
        return False
    hedges = [e for e in H.edges if len(e) == len(new_edge)]
    for root in hedges:
        for perm in permutations(new_edge):
            f = dict(zip(root, perm))
            todo = [v for v in H.vertices if v not in f]
            if _extend_copy(H, edges, f, todo, n):
                return True
    return False


def _extend_copy(H, edges, f, todo, n):
    for e in H.edges:
        if all(v in f for v in e) and tuple(sorted(f[v] for v in e)) not in edges:
            return False
    if not todo:
        return True
    v = todo[0]
    used = set(f.values())
    for w in range(1, n + 1):
        if w in used:
            continue
        f[v] = w
        if _extend_copy(H, edges, f, todo[1:], n):
            del f[v]
            return True
        del f[v]
    return False


def heuristic_pi_n(family, n: int, budget: int = 200, seed: int = 0) -> ExtremalResult:
    """Local search lower bound: black toggles and edge removals, each followed by greedy saturation."""
    family = _family(family)
    has_ones, t = _levels(family.R)
    rng = random.Random(seed)
    ones = [(v,) for v in range(1, n + 1)] if has_ones else []
    tsets = list(combinations(range(1, n + 1), t)) if t else []
    candidates = ones + tsets

    def ok_to_add(edges, e):
        trial = edges | {e}
        return not any(_rooted_copy(trial, H, e, n) for H in family.members)

    def saturate(edges, order):
        for e in order:
            if e not in edges and ok_to_add(edges, e):
                edges = edges | {e}
        return edges

    def density(edges):
        return lubell(RGraph(n, tuple(edges)), n)

    state = saturate(frozenset(), tsets + ones)
    value = density(state)
    best_state, best_value = state, value
    explored = 1
    for step in range(budget):
        explored += 1
        if step and step % max(1, budget // 4) == 0:
            order = candidates[:]
            rng.shuffle(order)
            state = saturate(frozenset(), order)
            value = density(state)
        move = rng.random()
        current = set(state)
        if has_ones and move < 0.5:
            v = rng.randrange(1, n + 1)
            if (v,) in current:
                current.discard((v,))
            else:
                # make room for the new black vertex, then add it
                current = {e for e in current if len(e) == 1 or v not in e or rng.random() < 0.5}
                if ok_to_add(frozenset(current), (v,)):
                    current.add((v,))
                else:
                    current = {e for e in current if len(e) == 1 or v not in e}
                    if ok_to_add(frozenset(current), (v,)):
                        current.add((v,))
        else:
            present = [e for e in current if len(e) != 1]
            for e in rng.sample(present, min(len(present), rng.randint(1, 2))):
                current.discard(e)
        order = tsets[:]
        rng.shuffle(order)
        extra = ones[:]
        rng.shuffle(extra)
        new = saturate(frozenset(current), order + extra)
        new_value = density(new)
        if new_value >= value:
            state, value = new, new_value
            if value > best_value:
                best_state, best_value = state, value
    witness = RGraph(n, tuple(best_state))
    _check_witness(witness, family, n, best_value)
    return ExtremalResult(n, best_value, witness, explored, False, "heuristic")


# -- bounds from patterns and colorings -------------------------------------

@dataclass(frozen=True)
class Evidence:
    rule: str
    target: str
    witness: Optional[VertexMap] = None
    note: str = ""

    def replay(self, H: RGraph) -> bool:
        """Re-check this piece of evidence against H from scratch."""
        T = graph(self.target)
        if self.rule.startswith("coloring"):
            return self.witness is not None and verify_map(H, T, self.witness)
        if self.rule.startswith("contains"):
            return self.witness is not None and verify_map(T, H, self.witness)
        if self.rule.startswith("not-embeddable"):
            return blowup_colorable(H, T) is None
        raise InvariantViolation(f"unknown evidence rule {self.rule!r}")

    def to_json(self):
        return {"rule": self.rule, "target": self.target, "note": self.note,
                "map": None if self.witness is None else self.witness.as_dict()}


@dataclass(frozen=True)
class Bound:
    value: object  # QSqrt3 for catalog patterns/targets, float otherwise
    source: str
    evidence: tuple = ()


def _pattern_name(P):
    if isinstance(P, str):
        return P, graph(P)
    for name in PATTERN_NAMES:
        if CATALOG[name].graph == P:
            return name, P
    return None, P


def lower_bound_via_pattern(H: RGraph, P) -> Optional[Bound]:
    """lambda(P) when H does not embed in any blow-up of P, else None."""
    name, pattern = _pattern_name(P)
    if blowup_colorable(H, pattern) is not None:
        return None
    if name is not None and CATALOG[name].known_density is not None:
        value = CATALOG[name].known_density
    else:
        from .lagrangian import lagrangian
        value = lagrangian(pattern).value
    ev = Evidence("not-embeddable", name or "<pattern>", None, "exhaustive multiset search found no map")
    return Bound(value, name or "<pattern>", (ev,))


# forbidden families with known density; H coloring into all of one caps pi(H)
UPPER_TARGETS = (
    (("H5_13",), ONE),
    (("K3_bb",), K3BB_DENSITY),
    (("K3_bbb",), K3BBB_DENSITY),
    (("H5_star",), STAR_DENSITY),
    (("H6_star",), STAR_DENSITY),
    (("K3_bbb", "H4_bb"), STAR_DENSITY),
    (("K3_bbb", "H4_bbb"), STAR_DENSITY),
)

# graphs whose density is known exactly; containing one gives a matching lower bound
LOWER_GRAPHS = ("K3_bb", "K3_bbb", "H5_star", "H6_star", "H_star")


def _matching_lower(H, value):
    """Evidence that pi(H) >= value, or None."""
    R = edge_type_set(H)
    if value == len(R) - 1:
        return (Evidence("trivial-lower", "C13", None, "pi(H) >= |R(H)| - 1"),)
    for name in LOWER_GRAPHS:
        if CATALOG[name].known_density == value:
            m = contains_subgraph(H, graph(name))
            if m is not None:
                return (Evidence("contains", name, m),)
    for name in PATTERN_NAMES:
        if CATALOG[name].known_density == value:
            b = lower_bound_via_pattern(H, name)
            if b is not None:
                return b.evidence
    return None


def upper_bound_via_coloring(H: RGraph, certified: bool = True) -> Optional[Bound]:
    """Smallest known density among targets H colors into.

    With ``certified`` (the default) a target only counts when a matching lower
    bound is also found, so the returned value is pi(H) itself.  With
    ``certified=False`` any successful coloring counts and the result is just
    an upper bound.
    """
    found = []
    for names, value in UPPER_TARGETS:
        maps = [find_homomorphism(H, graph(nm), EDGE_INJECTIVE) for nm in names]
        if any(m is None for m in maps):
            continue
        evidence = tuple(Evidence("coloring", nm, m) for nm, m in zip(names, maps))
        if certified:
            lower = _matching_lower(H, value)
            if lower is None:
                continue
            evidence += lower
        found.append(Bound(value, "+".join(names), evidence))
    if not found:
        return None
    return min(found, key=lambda b: b.value)


# -- {1,3} degeneracy and classification -------------------------------------

@dataclass(frozen=True)
class Degeneracy:
    degenerate: bool
    witness: Optional[VertexMap]

    def __bool__(self):
        return self.degenerate


def _require_13(H):
    R = edge_type_set(H)
    if not R or not set(R) <= {1, 3}:
        raise UnsupportedTypes(f"need a nonempty {{1,3}}-graph, got edge types {list(R)}")
    return R


def is_degenerate_13(H: RGraph) -> Degeneracy:
    _require_13(H)
    m = find_homomorphism(H, graph("H5_13"), EDGE_INJECTIVE)
    return Degeneracy(m is not None, m)


@dataclass(frozen=True)
class PiClassification:
    kind: str  # "Exact" or "Interval"
    lb: QSqrt3
    ub: QSqrt3
    evidence: tuple = ()
    rule: str = ""
    conjecture_note: str = ""

    @property
    def value(self):
        return self.lb if self.kind == "Exact" else None

    def replay(self, H):
        return all(ev.replay(H) for ev in self.evidence if ev.rule != "trivial-lower")

    def to_json(self):
        d = {"kind": self.kind, "rule": self.rule,
             "evidence": [ev.to_json() for ev in self.evidence]}
        if self.kind == "Exact":
            d["value"] = str(self.lb)
            d["value_float"] = float(self.lb)
        else:
            d["lb"], d["ub"] = str(self.lb), str(self.ub)
            d["lb_float"], d["ub_float"] = float(self.lb), float(self.ub)
        if self.conjecture_note:
            d["conjecture_note"] = self.conjecture_note
        return d


def _exact(value, rule, evidence):
    return PiClassification("Exact", QSqrt3(value) if not isinstance(value, QSqrt3) else value,
                            QSqrt3(value) if not isinstance(value, QSqrt3) else value,
                            tuple(evidence), rule)


def _conjecture(H):
    for name, value in CONJECTURES.items():
        G = graph(name)
        if G.n == H.n and len(G) == len(H) and canonical_form(G) == canonical_form(H):
            return f"conjectured pi({name}) = {value} (blow-ups of HD)"
    return ""


def classify_pi_13(H: RGraph) -> PiClassification:
    R = _require_13(H)
    trivial = QSqrt3(len(R) - 1)
    deg = is_degenerate_13(H)
    if deg:
        return _exact(trivial, "degenerate: H5_13-colorable", [Evidence("coloring", "H5_13", deg.witness)])
    if tuple(R) != (1, 3):
        return PiClassification("Interval", trivial, QSqrt3(len(R)), (), "no rule applies")

    def color(name):
        return find_homomorphism(H, graph(name), EDGE_INJECTIVE)

    def contains(name):
        return contains_subgraph(H, graph(name))

    m = color("K3_bb")
    if m is not None:
        c = contains("K3_bb")
        if c is not None:
            return _exact(K3BB_DENSITY, "K3_bb-colorable and contains K3_bb",
                          [Evidence("coloring", "K3_bb", m), Evidence("contains", "K3_bb", c)])
    m3 = color("K3_bbb")
    if m3 is not None:
        c = contains("K3_bbb")
        if c is not None:
            return _exact(K3BBB_DENSITY, "3-partite and contains K3_bbb",
                          [Evidence("coloring", "K3_bbb", m3), Evidence("contains", "K3_bbb", c)])
        upper = [(nm, color(nm)) for nm in ("H5_star", "H6_star")]
        upper = [(nm, mm) for nm, mm in upper if mm is not None]
        if upper:
            for nm in ("H5_star", "H_star", "H6_star"):
                c = contains(nm)
                if c is not None:
                    un, um = upper[0]
                    return _exact(STAR_DENSITY, f"K3_bbb-free, {un}-colorable and contains {nm}",
                                  [Evidence("coloring", "K3_bbb", m3), Evidence("coloring", un, um),
                                   Evidence("contains", nm, c)])
    # no exact rule: certified interval
    lb, lb_ev = trivial, ()
    for name in PATTERN_NAMES:
        b = lower_bound_via_pattern(H, name)
        if b is not None and b.value > lb:
            lb, lb_ev = b.value, b.evidence
    ub_bound = upper_bound_via_coloring(H)
    ub, ub_ev = (ub_bound.value, ub_bound.evidence) if ub_bound else (QSqrt3(len(R)), ())
    if lb > ub:
        raise InvariantViolation(f"lower bound {lb} exceeds upper bound {ub}")
    return PiClassification("Interval", lb, ub, lb_ev + ub_ev, "bounds only", _conjecture(H))


# -- nontrivial degenerate witnesses ------------------------------------------

def _iterate(f, G, k):
    for _ in range(k):
        G = f(G)
    return G


def _witness(R):
    R = tuple(sorted(set(R)))
    if len(R) < 2 or R == (1, 2) or R[0] < 1:
        raise InvalidR(f"no nontrivial degenerate R-graph is constructed for R={set(R)}")
    h5 = graph("H5_13")
    if len(R) == 2:
        a, b = R
        if a == 1:
            return _iterate(partial_suspension_T, h5, b - 3)
        d = b - a
        if d == 1:
            return suspension(graph("H4_23"), a - 2)
        if d == 2:
            return suspension(h5, a - 1)
        return suspension(_iterate(partial_suspension_T, h5, d - 2), a - 1)
    if R[0] == 1:
        return disjoint_union(_witness(R[1:]), RGraph(1, ((1,),)))
    m = R[0]
    return suspension(_witness(shift_types(R, -(m - 1))), m - 1)


def nontrivial_degenerate_witness(R) -> RGraph:
    """A degenerate R-graph that does not embed in any blow-up of the chain C^R."""
    R = tuple(sorted(set(R)))
    if len(R) < 2 or R == (1, 2):
        raise InvalidR(f"R={set(R)}: need |R| >= 2 and R != {{1, 2}}")
    W = _witness(R)
    if edge_type_set(W) != R:
        raise InvariantViolation(f"witness has edge types {edge_type_set(W)}, expected {R}")
    if blowup_colorable(W, chain(R)) is not None:
        raise InvariantViolation("witness embeds in a blow-up of the chain")
    return W
