"""Exact solver and enumerator for bilayer quantum Hall (Halperin)
K-matrices: given a positive rational filling fraction and an integer
charge vector, construct, enumerate, classify and certify the integer
matrices [[m, l], [l, n]] realizing it."""

from .constructors import (
    ObstructionReport,
    ObstructionStatus,
    amplify_t10,
    bosonic_construct,
    construct,
    construct_integer_general,
    construct_nu1_t11,
    construct_t10,
    construct_t11,
    construct_unity_general,
    fermionic_obstruction,
    scale_to_rational,
)
from .enumerator import (
    BoundCertificate,
    FixedLOutcome,
    OutcomeKind,
    enumerate_solutions,
    max_filling_fixed_l,
    solve_fixed_l,
    union_gap_check,
)
from .kmatrix import (
    ChargeVector,
    ConstructionTrace,
    KMatrix,
    ParityClass,
    Solution,
    determinant,
    diophantine_residual,
    filling_fraction,
    format_filling,
    is_valid_state,
    parse_filling,
    parity_class,
    verify_solution,
)

__all__ = [
    "BoundCertificate",
    "ChargeVector",
    "ConstructionTrace",
    "FixedLOutcome",
    "KMatrix",
    "ObstructionReport",
    "ObstructionStatus",
    "OutcomeKind",
    "ParityClass",
    "Solution",
    "amplify_t10",
    "bosonic_construct",
    "construct",
    "construct_integer_general",
    "construct_nu1_t11",
    "construct_t10",
    "construct_t11",
    "construct_unity_general",
    "determinant",
    "diophantine_residual",
    "enumerate_solutions",
    "fermionic_obstruction",
    "filling_fraction",
    "format_filling",
    "is_valid_state",
    "max_filling_fixed_l",
    "parity_class",
    "parse_filling",
    "scale_to_rational",
    "solve_fixed_l",
    "union_gap_check",
    "verify_solution",
]

__version__ = "0.1.0"
