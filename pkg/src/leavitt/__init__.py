"""Leavitt path algebras over exact coefficient rings: graded ideal
lattices, prime/primitive classification, derived graph constructions, and
an exact symbolic engine with confluent normal forms."""

from .errors import (
    EngineError,
    ExprError,
    GraphError,
    LeavittError,
    PairError,
    RingError,
)
from .graphs import (
    Edge,
    Graph,
    PathCount,
    breaking_vertices,
    breaking_vertices_for,
    count_closed_simple_paths,
    graph_to_doc,
    induced_subgraph,
    is_hereditary,
    is_saturated,
    line_points,
    make_graph,
    maximal_tails,
    omega,
    paths_up_to,
    reaches,
    satisfies_condition_k,
    satisfies_condition_l,
    satisfies_mt3,
    saturated_hereditary_sets,
    saturation,
    tree,
    validate_graph,
)
from .lattice import (
    AdmissiblePair,
    ClassificationReport,
    IdealGraphConstruction,
    QuotientConstruction,
    admissible_pair,
    algebra_is_prime,
    algebra_is_primitive,
    algebra_is_simple_hint,
    all_basic_ideals_graded,
    check_pair,
    classify,
    enumerate_admissible_pairs,
    hasse_edges,
    ideal_from_hereditary,
    ideal_graph,
    ideal_is_prime,
    intersect,
    pair_leq,
    prime_graded_basic_ideals,
    primitive_graded_ideals,
    quotient_construction,
    quotient_graph,
    report_to_doc,
    report_to_text,
    subalgebra_graph,
    tail_subgraph,
    tails_with_condition_l,
    vertex_generates_minimal_left_ideal,
)
from .engine import (
    Element,
    LeavittAlgebra,
    Monomial,
    Path,
    ideal_family_images,
    in_graded_basic_ideal,
    quotient_family_in_source,
    quotient_image,
    quotient_map,
    verify_leavitt_family,
)
from .exprs import parse_element
from .laurent import verify_cycle_laurent_model
from .membership import membership_oracle, span_membership, spanning_elements
from .rings import (
    RingElement,
    RingSpec,
    integers,
    integers_mod,
    parse_ring,
    prime_field,
    rationals,
)

__version__ = "0.1.0"
