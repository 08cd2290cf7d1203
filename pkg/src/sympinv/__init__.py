"""Exact classification of involutions of the symplectic group Sp(2n,k)."""

from .field import (FVal, FieldCtx, SquareClass, square_class, sqrt_in_base,
                    sum_of_two_squares)
from .involution import (ClassCountTable, InvolutionError, InvolutionReport,
                         IsoDecision, classify, commutant_generator_family,
                         count_formulas, decide_isomorphic, invariance_check,
                         is_scalar_automorphism, representative, verify_report)
from .linalg import Mat, inverse, kernel_basis, rref
from .symplectic import SympSpace, form_on, is_symplectic, skew_normalize

__all__ = [
    "FVal", "FieldCtx", "SquareClass", "square_class", "sqrt_in_base",
    "sum_of_two_squares", "Mat", "inverse", "kernel_basis", "rref",
    "SympSpace", "form_on", "is_symplectic", "skew_normalize",
    "ClassCountTable", "InvolutionError", "InvolutionReport", "IsoDecision",
    "classify", "commutant_generator_family", "count_formulas",
    "decide_isomorphic", "invariance_check", "is_scalar_automorphism",
    "representative", "verify_report",
]

__version__ = "0.1.0"
