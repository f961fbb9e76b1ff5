"""Non-uniform hypergraph Turán densities: R-graphs, Lagrangians, finite π_n and the {1,3} classifier."""

__version__ = "0.1.0"

from .core import (
    RGraph,
    complete,
    disjoint_union,
    edge_type_set,
    from_dict,
    level_graph,
    lubell,
    parse,
    parse_shorthand,
    serialize,
    shift_types,
    shorthand,
    to_dict,
)
from .surd import QSqrt3
from .constructions import (
    CATALOG,
    BlowupSpec,
    CatalogEntry,
    blow_up,
    catalog,
    chain,
    graph,
    partial_suspension_T,
    product,
    suspension,
)
from .homomorphism import (
    VertexMap,
    blowup_colorable,
    canonical_form,
    contains_subgraph,
    find_homomorphism,
    is_isomorphic,
    verify_map,
)
from .lagrangian import (
    LagrangianResult,
    PolynomialForm,
    SimplexPoint,
    evaluate,
    gradient,
    grid_oracle,
    kkt_residual,
    lagrangian,
    polynomial_form,
)
from .extremal import (
    ExtremalResult,
    ForbiddenFamily,
    PiClassification,
    brute_force_pi_n,
    classify_pi_13,
    exact_pi_n,
    heuristic_pi_n,
    is_degenerate_13,
    lower_bound_via_pattern,
    nontrivial_degenerate_witness,
    upper_bound_via_coloring,
)
from .report import ReproduceReport, reproduce, trend_csv

__all__ = [name for name in dir() if not name.startswith("_")]
