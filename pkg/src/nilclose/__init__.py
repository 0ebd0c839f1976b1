"""Closure analysis of nilpotent matrix sets defined by admitted Jordan
cell sizes, with exact arithmetic over Q and GF(p^k), constructive
counterexamples and a brute-force verification oracle."""

from .criterion import (
    CriterionResult,
    QSet,
    RejectReason,
    all_qsets,
    anchor_candidates,
    check_criterion,
    enumerate_valid_q,
    is_char_power,
    member_full,
    member_mq,
    member_ms,
)
from .errors import NilcloseError
from .field import (
    FieldSpec,
    Poly,
    Scalar,
    extension_for_roots,
    field_arithmetic,
    galois,
    geometric_sum,
    parse_field,
    rationals,
    roots_of_unity,
    surrogate_prime,
)
from .jordan import (
    GSet,
    Partition,
    g_set,
    is_semisimple,
    jordan_chevalley,
    jordan_matrix,
    jordan_partition,
    nilpotency_index,
    predicted_poly_partition,
    squarefree_part,
)
from .matrices import (
    ExactMatrix,
    centralizer_basis,
    defect,
    dump_matrix,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
    minimal_polynomial,
    nullspace,
    poly_eval,
    rank,
)
from .oracle import (
    CrossValidationReport,
    OracleReport,
    admissible_partitions,
    centralizer_dimension,
    cross_validate,
    exhaustive_check,
    sampled_check,
)
from .witness import (
    Witness,
    build_coupled_cells,
    falsify,
    verify_witness,
    witness_gap,
    witness_neighbor,
    witness_power,
)

__all__ = [
    "CriterionResult", "QSet", "RejectReason", "all_qsets",
    "anchor_candidates", "check_criterion", "enumerate_valid_q",
    "is_char_power", "member_full", "member_mq", "member_ms",
    "NilcloseError",
    "FieldSpec", "Poly", "Scalar", "extension_for_roots",
    "field_arithmetic", "galois", "geometric_sum", "parse_field",
    "rationals", "roots_of_unity", "surrogate_prime",
    "GSet", "Partition", "g_set", "is_semisimple", "jordan_chevalley",
    "jordan_matrix", "jordan_partition", "nilpotency_index",
    "predicted_poly_partition", "squarefree_part",
    "ExactMatrix", "centralizer_basis", "defect", "dump_matrix",
    "load_matrix", "matrix_from_json", "matrix_to_json",
    "minimal_polynomial", "nullspace", "poly_eval", "rank",
    "CrossValidationReport", "OracleReport", "admissible_partitions",
    "centralizer_dimension", "cross_validate", "exhaustive_check",
    "sampled_check",
    "Witness", "build_coupled_cells", "falsify", "verify_witness",
    "witness_gap", "witness_neighbor", "witness_power",
]

__version__ = "0.1.0"
