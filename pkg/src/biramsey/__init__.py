"""Exact engine for m-bipartite Ramsey arrowing of (K_{2,2}, K_{t,t}).

Verifies good colorings, decides arrowing by pruned exhaustive search,
computes small values by scanning n, and exports instances as DIMACS CNF
for external SAT solvers.
"""

from .core import (
    BicliqueSpec,
    BipartiteGraph,
    CoverageReport,
    UsageError,
    complement,
    contains_biclique,
    degree,
    find_biclique,
    induced_rows,
    is_c4_free,
    max_row_degree,
    pair_budget,
    row_intersection_size,
    transpose,
    union_coverage,
)
from .witnesses import (
    KnownValueRecord,
    VerificationReport,
    WitnessCertificate,
    WitnessParseError,
    parse_witness,
    serialize_witness,
    star_witness,
    verify_good_coloring,
    witness_6x39,
    witness_8x29,
)
from .search import (
    ARROWS,
    BUDGET_EXHAUSTED,
    NOT_ARROWS,
    PRUNE_RULES,
    ArrowingInstance,
    SearchConfig,
    SearchOutcome,
    SearchStats,
    arrows,
    canonical_extension_ok,
    degree_cap,
    find_br_m,
    is_canonical_assignment,
    nonexistence_criterion,
)
from .cnf import (
    CnfInstance,
    EncodingIntegrityError,
    decode_model,
    encode_cnf,
    graph_from_model,
    model_from_graph,
    satisfies,
    solve_with_toy_dpll,
    write_dimacs,
)

__all__ = [
    "ARROWS",
    "BUDGET_EXHAUSTED",
    "NOT_ARROWS",
    "PRUNE_RULES",
    "ArrowingInstance",
    "BicliqueSpec",
    "BipartiteGraph",
    "CnfInstance",
    "CoverageReport",
    "EncodingIntegrityError",
    "KnownValueRecord",
    "SearchConfig",
    "SearchOutcome",
    "SearchStats",
    "UsageError",
    "VerificationReport",
    "WitnessCertificate",
    "WitnessParseError",
    "arrows",
    "canonical_extension_ok",
    "complement",
    "contains_biclique",
    "decode_model",
    "degree",
    "degree_cap",
    "encode_cnf",
    "find_biclique",
    "find_br_m",
    "graph_from_model",
    "induced_rows",
    "is_c4_free",
    "is_canonical_assignment",
    "max_row_degree",
    "model_from_graph",
    "nonexistence_criterion",
    "pair_budget",
    "parse_witness",
    "row_intersection_size",
    "satisfies",
    "serialize_witness",
    "solve_with_toy_dpll",
    "star_witness",
    "transpose",
    "union_coverage",
    "verify_good_coloring",
    "witness_6x39",
    "witness_8x29",
    "write_dimacs",
]

__version__ = "0.1.0"
