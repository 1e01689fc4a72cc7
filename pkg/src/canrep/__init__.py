"""canrep: exact computation with modules over canonical algebras.

Defect-based trisection, tube machinery with uniserial towers, Auslander-
Reiten translates, truncated omega-approximations, the Kronecker generic
module over a function field, and tubular slopes, all over pluggable exact
fields (Q, F_p, rational functions).
"""

from .approx import (
    TruncationParams,
    endolength,
    kronecker_generic,
    left_omega_approx,
    peg_hom_growth,
    prufer_chain,
    right_omega_approx,
)
from .exactla import FunctionField, Matrix, PrimeField, RationalField
from .homology import (
    ExtSpace,
    ShortExactSequence,
    ext1_basis,
    pullback,
    pushout,
    tau,
    tau_inverse,
    universal_extension,
)
from .quiver_algebra import CanonicalAlgebra, algebra_from_spec, canonical_algebra
from .repcat import (
    Morphism,
    Representation,
    decompose,
    direct_sum,
    hom_basis,
    injective_at,
    is_brick,
    is_isomorphic,
    minimal_projective_presentation,
    projective_at,
    simple_at,
)
from .trisection import (
    TubeId,
    classify,
    partition_by_tubes,
    pegs,
    regular_simples,
    s_bracket,
    split_trisect,
    tau_period,
    torsion_part,
)
from .tubular_slopes import Slope, TubularAlgebra, chain_toward_slope, slope

__version__ = "0.1.0"
