"""Algorithmic core: residues, exact linear algebra, certificates and oracles."""

from .bounds import (
    bound_report,
    construct_conjecture,
    construct_keven,
    construct_kodd,
    ep_r3_base,
    exact_size,
    lin_wolf_bound,
)
from .constraints import ConstraintSystem, PairScheme, build_system
from .feasex import (
    Method,
    check_admissible,
    decide_cone,
    expand_witness,
    verify_expanded_witness,
)
from .oracle import bounded_integer_kernel, find_ap_direct, materialize_s
from .ratlin import RatMatrix, is_invertible, mat_mul, rref
from .reduce import reduce, verify_trace
from .zmod import enumerate_progressions, is_affine_image, least_prime_factor

__all__ = [
    "ConstraintSystem",
    "Method",
    "PairScheme",
    "RatMatrix",
    "bound_report",
    "bounded_integer_kernel",
    "build_system",
    "check_admissible",
    "construct_conjecture",
    "construct_keven",
    "construct_kodd",
    "decide_cone",
    "enumerate_progressions",
    "ep_r3_base",
    "exact_size",
    "expand_witness",
    "find_ap_direct",
    "is_affine_image",
    "is_invertible",
    "least_prime_factor",
    "lin_wolf_bound",
    "mat_mul",
    "materialize_s",
    "reduce",
    "rref",
    "verify_expanded_witness",
    "verify_trace",
]
