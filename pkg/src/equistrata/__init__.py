"""Boundary strata of the dihedral pyramidal locus.

Exact tooling for dihedral group actions on surfaces: the D_n group core,
stable weighted multigraphs and their four boundary-stratum families, the
coset-counting dual-graph engine for covering data, a zero-twist
Dehn-Thurston strand tracer, and the end-to-end realization of the
G4(n, m, d) strata.
"""

from .dihedral import (
    Coset,
    DihedralGroup,
    GroupElement,
    Subgroup,
    Word,
    element_order,
    evaluate_word,
    left_cosets,
    multiply,
    parse_element,
    quotient_coset_order,
    subgroup_generated,
)
from .errors import ConsistencyError
from .stable_graphs import (
    StabilityReport,
    StableGraph,
    canonical_form,
    genus,
    invariant_key,
    is_connected,
    is_isomorphic,
    validate_stability,
)
from .families import (
    CatalogEntry,
    FamilyTag,
    enumerate_boundary,
    g4_structure,
    make_family,
    make_g1,
    make_g2,
    make_g3,
    make_g4,
)
from .covering import (
    CoveringData,
    CoveringDataError,
    CurveData,
    Interior,
    PieceData,
    Separating,
    dual_graph,
    riemann_hurwitz_genus,
    validate,
)
from .pants import (
    Component,
    CurveSystem,
    DTCoordinates,
    PantsDecomposition,
    PRESETS,
    check_admissible,
    component_summary,
    five_holed_sphere,
    four_holed_sphere,
    standard_model_in_pants,
    trace_components,
)
from .pyramidal import (
    ArcModel,
    CurveModel,
    PyramidalAction,
    RealizationWitness,
    arc_for_m,
    arc_for_x,
    build_covering_data,
    curve_for_d,
    d_of_pair,
    empty_multicurve_data,
    m_of_arc,
    phi_z,
    pyramidal_epimorphism,
    realize_g4,
    solve_x0,
)

__version__ = "0.1.0"

__all__ = [
    "ArcModel",
    "CatalogEntry",
    "Component",
    "ConsistencyError",
    "Coset",
    "CoveringData",
    "CoveringDataError",
    "CurveData",
    "CurveModel",
    "CurveSystem",
    "DTCoordinates",
    "DihedralGroup",
    "FamilyTag",
    "GroupElement",
    "Interior",
    "PantsDecomposition",
    "PieceData",
    "PyramidalAction",
    "PRESETS",
    "RealizationWitness",
    "Separating",
    "StabilityReport",
    "StableGraph",
    "Subgroup",
    "Word",
    "arc_for_m",
    "arc_for_x",
    "build_covering_data",
    "canonical_form",
    "check_admissible",
    "component_summary",
    "curve_for_d",
    "d_of_pair",
    "dual_graph",
    "element_order",
    "empty_multicurve_data",
    "enumerate_boundary",
    "evaluate_word",
    "five_holed_sphere",
    "four_holed_sphere",
    "g4_structure",
    "genus",
    "invariant_key",
    "is_connected",
    "is_isomorphic",
    "left_cosets",
    "m_of_arc",
    "make_family",
    "make_g1",
    "make_g2",
    "make_g3",
    "make_g4",
    "multiply",
    "parse_element",
    "phi_z",
    "pyramidal_epimorphism",
    "quotient_coset_order",
    "realize_g4",
    "riemann_hurwitz_genus",
    "solve_x0",
    "standard_model_in_pants",
    "subgroup_generated",
    "trace_components",
    "validate",
    "validate_stability",
]
