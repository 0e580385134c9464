"""Top-level package exports for the BAB graph calculus."""

from .bab import (
    BABStructure,
    GeneratorParams,
    assemble_bab,
    fast_critical_sets,
    flower_decomposition,
    generate_random_bab,
    is_r_disjoint,
    reach_set,
    recognize_bab,
)
from .gallai_edmonds import GEDecomposition, gallai_edmonds, is_factor_critical, validate_ge
from .graph import FIXTURES, Graph, parse_edge_list, read_graph, serialize_edge_list, write_graph
from .independence import alpha, core_corona, critical_profile, ker_hall_check, max_tight_set
from .matching import (
    Matching,
    all_maximum_matchings,
    is_koenig_egervary,
    maximum_matching,
    sterboul_certificate,
)
from .spectral import (
    adjacency_determinant,
    check_det_factorization,
    enumerate_sachs,
    has_sachs_subgraph,
    sachs_expansion,
    sachs_weighted_sum,
)
from .theorems import theorem_suite

__all__ = [
    "BABStructure",
    "GeneratorParams",
    "assemble_bab",
    "fast_critical_sets",
    "flower_decomposition",
    "generate_random_bab",
    "is_r_disjoint",
    "reach_set",
    "recognize_bab",
    "GEDecomposition",
    "gallai_edmonds",
    "is_factor_critical",
    "validate_ge",
    "FIXTURES",
    "Graph",
    "parse_edge_list",
    "read_graph",
    "serialize_edge_list",
    "write_graph",
    "alpha",
    "core_corona",
    "critical_profile",
    "ker_hall_check",
    "max_tight_set",
    "Matching",
    "all_maximum_matchings",
    "is_koenig_egervary",
    "maximum_matching",
    "sterboul_certificate",
    "adjacency_determinant",
    "check_det_factorization",
    "enumerate_sachs",
    "has_sachs_subgraph",
    "sachs_expansion",
    "sachs_weighted_sum",
    "theorem_suite",
]
