"""Graph-building operators and the catalog of named graphs and patterns."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product as cartesian
from typing import Optional

from .core import RGraph, edge_type_set, multiplicities
from .errors import (
    InvariantViolation,
    MultiplicityExceedsPart,
    SpecMismatch,
    UnknownName,
    WrongEdgeTypes,
)
from .surd import QSqrt3


@dataclass(frozen=True)
class BlowupSpec:
    part_sizes: tuple

    def __post_init__(self):
        object.__setattr__(self, "part_sizes", tuple(int(s) for s in self.part_sizes))
        if any(s < 1 for s in self.part_sizes):
            raise InvariantViolation("blow-up part sizes must be positive")

    def parts(self):
        """Vertex ids of each part, numbered consecutively part by part."""
        out, start = [], 1
        for s in self.part_sizes:
            out.append(tuple(range(start, start + s)))
            start += s
        return out


def blow_up(H: RGraph, spec) -> RGraph:
    """H(s_1, ..., s_n); a vertex of multiplicity m in an edge picks m distinct copies."""
    if not isinstance(spec, BlowupSpec):
        spec = BlowupSpec(tuple(spec))
    if len(spec.part_sizes) != H.n:
        raise SpecMismatch(f"{len(spec.part_sizes)} part sizes for a graph on {H.n} vertices")
    parts = spec.parts()
    edges = []
    for e in H.edges:
        mult = multiplicities(e)
        choices = []
        for v, m in sorted(mult.items()):
            if m > spec.part_sizes[v - 1]:
                raise MultiplicityExceedsPart(
                    f"vertex {v} has multiplicity {m} but part size {spec.part_sizes[v - 1]}")
            choices.append(list(combinations(parts[v - 1], m)))
        for pick in cartesian(*choices):
            edges.append(tuple(u for block in pick for u in block))
    return RGraph(sum(spec.part_sizes), tuple(edges))


def product_vertex(i, j, n2):
    """Row-major id of the product vertex (i, j)."""
    return (i - 1) * n2 + j


def product(H1: RGraph, H2: RGraph) -> RGraph:
    """H1 x H2 on V1 x V2, vertex (i, j) numbered (i-1)*n2 + j."""
    by_size = {}
    for f in H2.edges:
        by_size.setdefault(len(f), []).append(f)
    edges = set()
    for e in H1.edges:
        for f in by_size.get(len(e), ()):
            for sigma in set(permutations(f)):
                edges.add(tuple(sorted(product_vertex(v, u, H2.n) for v, u in zip(e, sigma))))
    loops = any(len(set(e)) != len(e) for e in edges)
    return RGraph(H1.n * H2.n, tuple(edges), loops)


def suspension(H: RGraph, t: int = 1) -> RGraph:
    """S^t(H): add t apex vertices to every edge."""
    if t < 0:
        raise InvariantViolation("suspension count must be nonnegative")
    if H.has_loop_edges:
        raise InvariantViolation("suspension is defined on simple graphs")
    apex = tuple(range(H.n + 1, H.n + t + 1))
    return RGraph(H.n + t, tuple(e + apex for e in H.edges))


def partial_suspension_T(H: RGraph) -> RGraph:
    """Map a {1,t}-graph to a {1,t+1}-graph by suspending only its t-edges."""
    R = edge_type_set(H)
    if len(R) != 2 or R[0] != 1 or R[1] < 2:
        raise WrongEdgeTypes(f"T needs edge types {{1, t}} with t >= 2, got {set(R)}")
    v = H.n + 1
    edges = tuple(e if len(e) == 1 else e + (v,) for e in H.edges)
    return RGraph(H.n + 1, edges)


def chain(R) -> RGraph:
    R = sorted(set(R))
    if not R or R[0] < 1:
        raise InvariantViolation("chain needs a nonempty set of positive sizes")
    return RGraph(R[-1], tuple(tuple(range(1, k + 1)) for k in R))


# -- catalog ----------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: RGraph
    known_density: Optional[QSqrt3] = None
    density_tag: str = ""
    notes: str = ""

    @property
    def is_pattern(self):
        return self.graph.loops


def _g(text, n=None):
    edges = tuple(tuple(int(c) for c in tok) for tok in text.split(";"))
    return RGraph(n or max(max(e) for e in edges), edges)


def _pattern(n, *edges):
    return RGraph(n, tuple(edges), loops=True)


ONE = QSqrt3(1)
K3BB_DENSITY = QSqrt3(1, Fraction(1, 18))
K3BBB_DENSITY = QSqrt3(1, Fraction(2, 9))
STAR_DENSITY = QSqrt3(1, Fraction(1, 9))
HB_DENSITY = QSqrt3(Fraction(4, 9), Fraction(1, 3))
HD_DENSITY = QSqrt3(Fraction(4, 3))

_ENTRIES = [
    CatalogEntry("C13", _g("1;123"), ONE, "chain; every R-flag is degenerate",
                 "the chain C^{1,3}"),
    CatalogEntry("H5_13", _g("2;3;124;135;145"), ONE, "degenerate",
                 "five vertices"),
    CatalogEntry("K3_bb", _g("1;2;123"), K3BB_DENSITY, "blow-ups of HA"),
    CatalogEntry("G4_b", _g("1;123;134;234"), None, "", "non-degenerate: not contained in blow-ups of HB"),
    CatalogEntry("K3_bbb", _g("1;2;3;123"), K3BBB_DENSITY, "blow-ups of HC"),
    CatalogEntry("H6_13", _g("1;2;3;124;145;135;236;246;356;456"), None, "",
                 "open; conjectured density 4/3 (blow-ups of HD)"),
    CatalogEntry("H5_star", _g("1;2;3;124;145;135"), STAR_DENSITY, "blow-ups of HE"),
    CatalogEntry("H6_star", _g("1;2;3;124;135;236"), STAR_DENSITY, "blow-ups of HE"),
    CatalogEntry("H_star", _g("1;2;3;124;356;456"), STAR_DENSITY, "blow-ups of HE",
                 "triangles 124, 356, 456"),
    CatalogEntry("H4_bb", _g("1;2;123;124;134"), None, "",
                 "pi({K3_bbb, H4_bb}) = 1 + sqrt(3)/9"),
    CatalogEntry("H4_bbb", _g("1;2;3;124;134;234"), None, "",
                 "pi({K3_bbb, H4_bbb}) = 1 + sqrt(3)/9"),
    CatalogEntry("H4_23", _g("12;13;234"), ONE, "nontrivial degenerate {2,3}-graph"),
    CatalogEntry("H6_a", _g("1;2;3;124;145;135;246;356;236"), None, "",
                 "open"),
    CatalogEntry("H6_b", _g("1;2;3;124;145;135;246;236;456"), None, "",
                 "open; conjectured density 4/3"),
    CatalogEntry("H6_c", _g("1;2;3;124;145;135;236;246"), None, "",
                 "open"),
    CatalogEntry("H6_d", _g("1;2;3;124;145;135;456;236"), None, "",
                 "open"),
    CatalogEntry("H6_e", _g("1;2;3;124;135;456;236"), None, "",
                 "open"),
    # loop patterns: known_density is the Lagrangian
    CatalogEntry("HA", _pattern(2, (1,), (1, 2, 2), (2, 2, 2)), K3BB_DENSITY,
                 "Lagrangian", "x=1, y=2"),
    CatalogEntry("HB", _pattern(3, (1,), (2,), (1, 2, 3)), HB_DENSITY,
                 "Lagrangian", "a=1, b=2, c=3"),
    CatalogEntry("HC", _pattern(2, (1,), (1, 1, 2), (1, 2, 2), (2, 2, 2)), K3BBB_DENSITY,
                 "Lagrangian", "x=1, y=2"),
    CatalogEntry("HD", _pattern(2, (1,), (1, 1, 2), (1, 2, 2)), HD_DENSITY,
                 "Lagrangian",
                 "x=1, y=2; maximizer x=2/3"),
    CatalogEntry("HE", _pattern(2, (1,), (1, 1, 2), (2, 2, 2)), STAR_DENSITY,
                 "Lagrangian", "x=1, y=2"),
    CatalogEntry("HF", _pattern(3, (1,), (2,), (1, 3, 3), (2, 3, 3), (1, 2, 3), (3, 3, 3)),
                 STAR_DENSITY, "Lagrangian", "x=1, y=2, z=3"),
]

CATALOG = {e.name: e for e in _ENTRIES}
PATTERN_NAMES = tuple(e.name for e in _ENTRIES if e.is_pattern)

# conjectured value recorded as metadata only
CONJECTURES = {"H6_13": HD_DENSITY, "H6_b": HD_DENSITY}


def catalog(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownName(f"unknown catalog name {name!r}; valid names: {', '.join(CATALOG)}") from None


def graph(name: str) -> RGraph:
    return catalog(name).graph
