"""Extremal independence for exponent measures with atoms on faces.

Indices are 0-based in Python; the command-line tool uses 1-based coordinates.
"""

from ._core import (
    RNG_ALGORITHM,
    ConditionalLaw,
    ExponentMeasure,
    InvalidMeasure,
    ParseError,
    build_conditional,
    build_graph,
    certify_partition_bruteforce,
    check,
    chi_empirical,
    chi_exact,
    crosscheck,
    exponent_function,
    factorization_test,
    finest_partition,
    generate_random_measure,
    joint_exceedance_mass,
    load_measure,
    marginalize,
    margins,
    parse_measure,
    sample_conditional,
    sample_max_stable,
    standardize,
    structural_new_notion,
    validate,
)

__all__ = [
    "RNG_ALGORITHM",
    "ConditionalLaw",
    "ExponentMeasure",
    "InvalidMeasure",
    "ParseError",
    "build_conditional",
    "build_graph",
    "certify_partition_bruteforce",
    "check",
    "chi_empirical",
    "chi_exact",
    "crosscheck",
    "exponent_function",
    "factorization_test",
    "finest_partition",
    "generate_random_measure",
    "joint_exceedance_mass",
    "load_measure",
    "marginalize",
    "margins",
    "parse_measure",
    "sample_conditional",
    "sample_max_stable",
    "standardize",
    "structural_new_notion",
    "validate",
]
