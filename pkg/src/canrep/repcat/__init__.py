"""Finite-dimensional representations and their category-level operations."""

from .core import (
    DirectSum,
    Morphism,
    Presentation,
    ProjSum,
    Representation,
    cokernel,
    coordinates_in_hom_basis,
    direct_sum,
    dualize,
    factor_through_injection,
    factor_through_surjection,
    hom_basis,
    hom_dim,
    image,
    injective_at,
    kernel,
    minimal_projective_presentation,
    morphism_from_flat,
    morphism_from_projective,
    morphism_from_projective_sum,
    projective_at,
    projective_cover,
    projective_sum,
    radical,
    simple_at,
    top,
    zero_representation,
)
from .decomp import (
    Decomposition,
    decompose,
    end_algebra_structure,
    endo_minimal_polynomial,
    factor_poly,
    find_injective_morphism,
    indecomposable_summands,
    is_brick,
    is_indecomposable,
    is_irreducible_poly,
    is_isomorphic,
)

__all__ = [
    "Decomposition",
    "DirectSum",
    "Morphism",
    "Presentation",
    "ProjSum",
    "Representation",
    "cokernel",
    "coordinates_in_hom_basis",
    "decompose",
    "direct_sum",
    "dualize",
    "end_algebra_structure",
    "endo_minimal_polynomial",
    "factor_poly",
    "factor_through_injection",
    "find_injective_morphism",
    "factor_through_surjection",
    "hom_basis",
    "hom_dim",
    "image",
    "indecomposable_summands",
    "injective_at",
    "is_brick",
    "is_indecomposable",
    "is_irreducible_poly",
    "is_isomorphic",
    "kernel",
    "minimal_projective_presentation",
    "morphism_from_flat",
    "morphism_from_projective",
    "morphism_from_projective_sum",
    "projective_at",
    "projective_cover",
    "projective_sum",
    "radical",
    "simple_at",
    "top",
    "zero_representation",
]
