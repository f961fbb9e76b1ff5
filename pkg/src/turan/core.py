"""R-graph data model, Lubell function and the JSON document format.

An ``RGraph`` is a hypergraph on vertices ``1..n`` whose edges may have mixed
cardinalities.  Edges are stored as sorted tuples of vertex ids; with
``loops=True`` an edge may repeat a vertex (a multiset edge such as ``xyy``).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import (
    CardinalityExceedsN,
    InvariantViolation,
    LoopsNotAllowed,
    ParseError,
)

Edge = tuple  # sorted tuple of vertex ids, repeats allowed only in loop graphs


def edge_key(e):
    return (len(e), e)


def make_edge(entries: Iterable[int]) -> Edge:
    e = tuple(sorted(int(v) for v in entries))
    if not e:
        raise InvariantViolation("edges must have cardinality >= 1")
    return e


def multiplicities(e: Edge) -> dict:
    """Vertex -> multiplicity for a (possibly loop) edge."""
    return dict(Counter(e))


@dataclass(frozen=True)
class RGraph:
    n: int
    edges: tuple = field(default=())
    loops: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise InvariantViolation(f"vertex count must be >= 0, got {self.n}")
        canon = set()
        for raw in self.edges:
            e = make_edge(raw)
            if e[0] < 1 or e[-1] > self.n:
                raise InvariantViolation(f"edge {list(e)} has a vertex outside 1..{self.n}")
            if not self.loops and len(set(e)) != len(e):
                raise InvariantViolation(f"edge {list(e)} repeats a vertex but loops are off")
            if e in canon:
                raise InvariantViolation(f"duplicate edge {list(e)}")
            canon.add(e)
        object.__setattr__(self, "edges", tuple(sorted(canon, key=edge_key)))

    @classmethod
    def build(cls, n, edges, loops=False, dedupe=False):
        edges = [make_edge(e) for e in edges]
        if dedupe:
            edges = list(dict.fromkeys(edges))
        return cls(n, tuple(edges), loops)

    @property
    def vertices(self):
        return range(1, self.n + 1)

    @property
    def has_loop_edges(self):
        return any(len(set(e)) != len(e) for e in self.edges)

    def edge_set(self):
        return frozenset(self.edges)

    def black_vertices(self):
        return tuple(e[0] for e in self.edges if len(e) == 1)

    def degree(self, v):
        return sum(1 for e in self.edges if v in e)

    def relabel(self, perm: Sequence[int], target_n=None) -> "RGraph":
        """Image under ``v -> perm[v-1]``; perm must be injective."""
        m = self.n if target_n is None else target_n
        return RGraph(m, tuple(tuple(perm[v - 1] for v in e) for e in self.edges), self.loops)

    def __len__(self):
        return len(self.edges)

    def __str__(self):
        return shorthand(self)


def edge_type_set(G: RGraph) -> tuple:
    return tuple(sorted({len(e) for e in G.edges}))


def shift_types(R: Iterable[int], t: int) -> tuple:
    """The set R + t."""
    return tuple(sorted(r + t for r in R))


def level_graph(G: RGraph, r: int) -> RGraph:
    return RGraph(G.n, tuple(e for e in G.edges if len(e) == r), G.loops)


def lubell(G: RGraph, n: int) -> Fraction:
    """h_n(G) = sum over edges of 1 / C(n, |e|), exactly."""
    if G.has_loop_edges:
        raise LoopsNotAllowed("the Lubell function is defined for simple graphs only")
    counts = Counter(len(e) for e in G.edges)
    if counts and max(counts) > n:
        raise CardinalityExceedsN(f"edge of size {max(counts)} exceeds n={n}")
    if n < 1 or G.n > n:
        raise InvariantViolation(f"ambient n={n} must be >= G.n={G.n} and positive")
    return sum((Fraction(cnt, comb(n, r)) for r, cnt in counts.items()), Fraction(0))


def complete(R: Iterable[int], n: int) -> RGraph:
    R = sorted(set(R))
    if R and R[-1] > n:
        raise CardinalityExceedsN(f"edge type {R[-1]} exceeds n={n}")
    edges = [e for r in R for e in combinations(range(1, n + 1), r)]
    return RGraph(n, tuple(edges))


def disjoint_union(G: RGraph, H: RGraph) -> RGraph:
    """H's vertices are renumbered to follow G's."""
    edges = list(G.edges) + [tuple(v + G.n for v in e) for e in H.edges]
    return RGraph(G.n + H.n, tuple(edges), G.loops or H.loops)


# -- serialization ----------------------------------------------------------

def to_dict(G: RGraph) -> dict:
    d = {"n": G.n, "edges": [list(e) for e in G.edges]}
    if G.loops:
        d["loops"] = True
    return d


def serialize(G: RGraph) -> str:
    return json.dumps(to_dict(G), separators=(",", ":"))


def from_dict(d) -> RGraph:
    if not isinstance(d, dict):
        raise ParseError("document must be a JSON object")
    if "n" not in d or "edges" not in d:
        raise ParseError("document needs 'n' and 'edges' keys")
    n, edges, loops = d["n"], d["edges"], d.get("loops", False)
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError("'n' must be an integer")
    if not isinstance(loops, bool):
        raise ParseError("'loops' must be a boolean")
    if not isinstance(edges, list):
        raise ParseError("'edges' must be a list")
    for i, e in enumerate(edges):
        if not isinstance(e, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in e):
            raise ParseError(f"edge #{i} must be a list of integers")
    return RGraph(n, tuple(tuple(e) for e in edges), loops)


def parse(document: str) -> RGraph:
    try:
        d = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return from_dict(d)


def parse_shorthand(text: str, n=None, loops=False) -> RGraph:
    """Parse ``"2;3;124;135;145"`` (single-digit vertex ids, ';'-separated)."""
    edges = []
    pos = 0
    for chunk in text.split(";"):
        token = chunk.strip()
        if not token or not token.isdigit() or "0" in token:
            raise ParseError(f"bad edge token {chunk!r}", 1, pos + 1)
        edges.append(tuple(int(c) for c in token))
        pos += len(chunk) + 1
    top = max((max(e) for e in edges), default=0)
    return RGraph(top if n is None else n, tuple(edges), loops)


def shorthand(G: RGraph) -> str:
    if G.n > 9:
        return serialize(G)
    return ";".join("".join(str(v) for v in e) for e in G.edges)
