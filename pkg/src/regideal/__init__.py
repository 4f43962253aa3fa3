"""Regular digraph of ideals of finite commutative Artinian rings."""

from .closed_form import (
    DistanceValue,
    EccentricityValue,
    FormulaError,
    VertexClass,
    classify_vertex,
    formula_center,
    formula_diameter,
    formula_distance,
    formula_eccentricity,
    formula_radius,
    reduced_distance,
)
from .grammar import ParseError, format_ideal, format_ring, parse_ideal, parse_ring
from .graph_metrics import MetricReport, all_pairs_distances, is_connected_predicate
from .regular_graph import (
    RegularDigraph,
    UnderlyingGraph,
    arc_fast,
    build_digraph,
    c_minus,
    c_plus,
    contains_regular_element,
    is_regular_on,
    underlying,
)
from .ring_core import (
    Ideal,
    LocalRing,
    LocalSpec,
    ProductRing,
    RingElement,
    RingError,
    annihilator,
    canonicalize_arrangement,
    complement,
    enumerate_ideals,
    make_local_ring,
    make_product,
    nilradical,
)
from .verify import FamilyConfig, cross_check, generate_family, run_family

__all__ = [name for name in dir() if not name.startswith("_")]
