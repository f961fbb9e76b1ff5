"""Homomorphism, blow-up embeddability, subgraph containment and canonical forms.

Map flavors (what a vertex map f: V(G) -> V(H) must do to each edge e of G):

* ``lax``: the set {f(v) : v in e} is an edge of H.
* ``edge-injective``: as lax, and f is injective on e.
* ``multiset``: the multiset image of e equals an edge of H, counting
  multiplicities.  For a loop pattern P this is exactly "G is a subgraph of
  a blow-up of P"; on simple targets it coincides with edge-injective.
* ``subgraph``: f is injective on all of V(G) and every edge image is an
  edge of H (returned by :func:`contains_subgraph`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .core import RGraph, edge_key
from .errors import DomainMismatch, InvariantViolation, TooLarge

LAX = "lax"
EDGE_INJECTIVE = "edge-injective"
MULTISET = "multiset"
SUBGRAPH = "subgraph"
FLAVORS = (LAX, EDGE_INJECTIVE, MULTISET, SUBGRAPH)

CANONICAL_CAP = 10


@dataclass(frozen=True)
class VertexMap:
    source_n: int
    target_n: int
    assignment: tuple  # assignment[v-1] = image of source vertex v
    flavor: str = EDGE_INJECTIVE

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if self.flavor not in FLAVORS:
            raise InvariantViolation(f"unknown flavor {self.flavor!r}")
        if len(self.assignment) != self.source_n:
            raise InvariantViolation("assignment must be total on 1..source_n")
        if any(not 1 <= t <= self.target_n for t in self.assignment):
            raise InvariantViolation("assignment leaves 1..target_n")

    def __call__(self, v):
        return self.assignment[v - 1]

    def compose(self, other: "VertexMap") -> "VertexMap":
        """other after self: v -> other(self(v))."""
        if other.source_n != self.target_n:
            raise DomainMismatch("maps do not compose")
        return VertexMap(self.source_n, other.target_n,
                         tuple(other(t) for t in self.assignment), self.flavor)

    def as_dict(self):
        return {str(v): t for v, t in enumerate(self.assignment, 1)}

    def __str__(self):
        return " ".join(f"{v}->{t}" for v, t in enumerate(self.assignment, 1))


def _image_ok(image, flavor, target_multisets, target_sets):
    if flavor == LAX:
        return frozenset(image) in target_sets
    key = tuple(sorted(image))
    if flavor != MULTISET and len(set(key)) != len(key):
        return False
    return key in target_multisets


def verify_map(G: RGraph, H: RGraph, m: VertexMap) -> bool:
    if m.source_n != G.n or m.target_n != H.n:
        raise DomainMismatch(f"map is {m.source_n}->{m.target_n}, graphs are {G.n}->{H.n}")
    if m.flavor == SUBGRAPH and len(set(m.assignment)) != len(m.assignment):
        return False
    target_multisets = H.edge_set()
    target_sets = frozenset(frozenset(e) for e in H.edges)
    return all(_image_ok([m(v) for v in e], m.flavor, target_multisets, target_sets)
               for e in G.edges)


class _Search:
    """Backtracking over vertex assignments with partial-edge propagation."""

    def __init__(self, G: RGraph, H: RGraph, flavor: str):
        self.G, self.H, self.flavor = G, H, flavor
        self.targets = H.edge_set()
        self.target_sets = frozenset(frozenset(e) for e in H.edges)
        # every partial image a consistent edge may have, keyed by source edge size
        self.partial = {}
        for size in {len(e) for e in G.edges}:
            allowed = set()
            for f in H.edges:
                if flavor == LAX:
                    if len(set(f)) <= size:
                        fs = sorted(set(f))
                        for k in range(1, len(fs) + 1):
                            allowed.update(frozenset(c) for c in combinations(fs, k))
                elif len(f) == size:
                    for k in range(1, size + 1):
                        allowed.update(combinations(f, k))
            self.partial[size] = allowed
        self.order = sorted(G.vertices, key=lambda v: (-G.degree(v), v))
        self.incident = {v: [e for e in G.edges if v in e] for v in G.vertices}
        self.assign = {}
        self.used = set()
        self.injective = flavor == SUBGRAPH

    def _consistent(self, v):
        for e in self.incident[v]:
            image = [self.assign[u] for u in e if u in self.assign]
            if len(image) == len(e):
                if not _image_ok(image, self.flavor, self.targets, self.target_sets):
                    return False
                continue
            if self.flavor == LAX:
                key = frozenset(image)
            else:
                key = tuple(sorted(image))
                if self.flavor != MULTISET and len(set(key)) != len(key):
                    return False
            if key not in self.partial[len(e)]:
                return False
        return True

    def run(self) -> Optional[tuple]:
        if self.G.n and not self.H.n:
            return None
        if self._extend(0):
            return tuple(self.assign[v] for v in self.G.vertices)
        return None

    def _extend(self, i):
        if i == len(self.order):
            return True
        v = self.order[i]
        for t in self.H.vertices:
            if self.injective and t in self.used:
                continue
            self.assign[v] = t
            if self._consistent(v):
                self.used.add(t)
                if self._extend(i + 1):
                    return True
                self.used.discard(t)
            del self.assign[v]
        return False


def find_homomorphism(G: RGraph, H: RGraph, flavor: str = EDGE_INJECTIVE) -> Optional[VertexMap]:
    if flavor not in FLAVORS:
        raise InvariantViolation(f"unknown flavor {flavor!r}")
    if G.has_loop_edges:
        raise InvariantViolation("the source graph must be simple")
    if H.has_loop_edges and flavor not in (MULTISET, LAX):
        raise InvariantViolation("loop targets need the multiset flavor")
    found = _Search(G, H, flavor).run()
    if found is None:
        return None
    m = VertexMap(G.n, H.n, found, flavor)
    assert verify_map(G, H, m)
    return m


def blowup_colorable(G: RGraph, P: RGraph) -> Optional[VertexMap]:
    """A witness that G is a subgraph of some blow-up of the (loop) pattern P."""
    return find_homomorphism(G, P, MULTISET)


def contains_subgraph(G: RGraph, H: RGraph) -> Optional[VertexMap]:
    """An injective map V(H) -> V(G) carrying edges of H to edges of G."""
    if G.has_loop_edges or H.has_loop_edges:
        raise InvariantViolation("containment is defined for simple graphs")
    if H.n > G.n:
        return None
    return find_homomorphism(H, G, SUBGRAPH)


# -- canonical forms --------------------------------------------------------

def _rank(signatures):
    order = {s: i for i, s in enumerate(sorted(set(signatures.values())))}
    return {v: order[s] for v, s in signatures.items()}


def _refine(G, incident, colors):
    while True:
        sig = {}
        for v in G.vertices:
            parts = []
            for e in incident[v]:
                others = list(e)
                others.remove(v)
                parts.append((len(e), e.count(v), tuple(sorted(colors[u] for u in others))))
            sig[v] = (colors[v], tuple(sorted(parts)))
        new = _rank(sig)
        if len(set(new.values())) == len(set(colors.values())):
            return new
        colors = new


def _twin_classes(G):
    """Vertices u, w such that swapping them is an automorphism of G."""
    edges = G.edge_set()
    rep = {v: v for v in G.vertices}
    for u, w in combinations(G.vertices, 2):
        if rep[w] != w:
            continue
        swap = {u: w, w: u}
        image = {tuple(sorted(swap.get(x, x) for x in e)) for e in edges}
        if image == edges:
            rep[w] = rep[u]
    return rep


def canonical_form(G: RGraph, cap: int = CANONICAL_CAP) -> bytes:
    """Isomorphism-invariant byte string: the least relabeled edge list."""
    if G.n > cap:
        raise TooLarge(f"canonical form is capped at n={cap}, got {G.n}")
    incident = {v: [e for e in G.edges if v in e] for v in G.vertices}
    twins = _twin_classes(G)
    best = [None]

    def leaf(colors):
        label = {v: colors[v] + 1 for v in G.vertices}
        cert = sorted((tuple(sorted(label[v] for v in e)) for e in G.edges), key=edge_key)
        if best[0] is None or cert < best[0]:
            best[0] = cert

    def search(colors):
        colors = _refine(G, incident, colors)
        cells = {}
        for v in G.vertices:
            cells.setdefault(colors[v], []).append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            leaf(colors)
            return
        seen_reps = set()
        for v in cells[target]:
            if twins[v] in seen_reps:
                continue
            seen_reps.add(twins[v])
            split = {u: 2 * c + (1 if c > target or (c == target and u != v) else 0)
                     for u, c in colors.items()}
            search(_rank(split))

    search({v: 0 for v in G.vertices})
    cert = best[0] if best[0] is not None else []
    doc = {"n": G.n, "loops": G.loops, "edges": [list(e) for e in cert]}
    return json.dumps(doc, separators=(",", ":")).encode()


def is_isomorphic(G: RGraph, H: RGraph) -> bool:
    return G.n == H.n and len(G) == len(H) and canonical_form(G) == canonical_form(H)


def isomorphism(G: RGraph, H: RGraph) -> Optional[VertexMap]:
    """An explicit bijection V(G) -> V(H) carrying E(G) onto E(H), if one exists."""
    if G.n != H.n or len(G) != len(H):
        return None
    m = contains_subgraph(H, G)
    return m
