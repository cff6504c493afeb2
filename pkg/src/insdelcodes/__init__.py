"""Insertion/deletion distance tools for linear codes over finite fields."""

from .gf import FieldElement, FieldSpec, find_primitive, make_field
from .insdel import DistanceReport, check_bounds, insdel_distance, lcs_length, min_insdel_exhaustive, witness_pair
from .kernels import BACKEND
from .lincode import LinearCode, encode, rs_code
from .rs2opt import build_rs2, min_insdel_normalized, verify_case6_all, verify_theorem_b

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DistanceReport",
    "FieldElement",
    "FieldSpec",
    "LinearCode",
    "build_rs2",
    "check_bounds",
    "encode",
    "find_primitive",
    "insdel_distance",
    "lcs_length",
    "make_field",
    "min_insdel_exhaustive",
    "min_insdel_normalized",
    "rs_code",
    "verify_case6_all",
    "verify_theorem_b",
    "witness_pair",
]
