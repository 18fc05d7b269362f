"""Exact decision and certification of matrices of the form alpha*P + beta*Q
with P, Q idempotent, over the rationals and prime fields."""

from .canonical import (
    JordanType,
    SpectralSplit,
    WeyrSequence,
    frobenius_form,
    invariant_factors,
    jordan_type,
    minimal_polynomial,
    spectral_split,
    weyr_sequence,
)
from .composite import (
    Certificate,
    Decision,
    InternalInconsistency,
    NotComposite,
    construct,
    decide,
    intertwined,
    verify,
)
from .fields import GF, QQ, Field, Scalar, characteristic, field_arith, parse_scalar
from .matrix import Matrix, block_diag, companion, conjugate, jordan_block, phi
from .poly import Polynomial, compose_in_Y, is_poly_in_Y, y_decompose

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "Decision",
    "Field",
    "GF",
    "InternalInconsistency",
    "JordanType",
    "Matrix",
    "NotComposite",
    "Polynomial",
    "QQ",
    "Scalar",
    "SpectralSplit",
    "WeyrSequence",
    "block_diag",
    "characteristic",
    "companion",
    "compose_in_Y",
    "conjugate",
    "construct",
    "decide",
    "field_arith",
    "frobenius_form",
    "intertwined",
    "invariant_factors",
    "is_poly_in_Y",
    "jordan_block",
    "jordan_type",
    "minimal_polynomial",
    "parse_scalar",
    "phi",
    "spectral_split",
    "verify",
    "weyr_sequence",
    "y_decompose",
]
