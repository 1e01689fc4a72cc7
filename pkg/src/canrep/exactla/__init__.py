"""Exact scalar fields and the dense linear-algebra kernels built on them."""

from .fields import (
    FunctionField,
    PrimeField,
    RatFunc,
    RationalField,
    field_from_spec,
    poly_add,
    poly_divmod,
    poly_eval,
    poly_gcd_monic,
    poly_is_monic,
    poly_mul,
    poly_neg,
    poly_parse,
    poly_scale,
    poly_to_str,
    poly_trim,
)
from .matrix import Matrix, companion_matrix

__all__ = [
    "FunctionField",
    "Matrix",
    "PrimeField",
    "RatFunc",
    "RationalField",
    "companion_matrix",
    "field_from_spec",
    "poly_add",
    "poly_divmod",
    "poly_eval",
    "poly_gcd_monic",
    "poly_is_monic",
    "poly_mul",
    "poly_neg",
    "poly_parse",
    "poly_scale",
    "poly_to_str",
    "poly_trim",
]
