"""Indecomposable decomposition, isomorphism testing, and brick detection.

The splitter computes End(m), picks elements (basis first, then seeded random
combinations), and splits m along the primary decomposition of the element's
minimal polynomial.  A module is certified indecomposable when End is local:
dim End = 1, or every candidate has a primary minimal polynomial (hence is a
unit or nilpotent) with an exhaustive idempotent search as the tiny-field
fallback.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..errors import DecompositionError
from ..exactla import (
    FunctionField,
    Matrix,
    PrimeField,
    RationalField,
    poly_divmod,
    poly_mul,
    poly_scale,
    poly_trim,
)
from .core import (
    Morphism,
    Representation,
    coordinates_in_hom_basis,
    direct_sum,
    hom_basis,
    image,
    kernel,
)

_DEFAULT_TRIALS = 64


# ---------------------------------------------------------------------------
# minimal polynomials and factorization
# ---------------------------------------------------------------------------

def endo_minimal_polynomial(phi: Morphism):
    """Ascending coefficients of the minimal polynomial of an endomorphism."""
    F = phi.source.field
    n = phi.source.total_dim
    flats = []
    power = Morphism.identity(phi.source)
    for k in range(n + 1):
        flat = power.flatten()
        if not flat:
            return (F.zero, F.one)  # zero module: minpoly of 0 map, conventionally x
        if flats:
            cols = Matrix(F, len(flat), len(flats), [list(r) for r in zip(*flats)])
            sol = cols.solve(Matrix.column(F, flat))
            if sol is not None:
                coeffs = [F.neg(sol.data[i][0]) for i in range(sol.rows)]
                coeffs.append(F.one)
                return tuple(coeffs)
        flats.append(flat)
        power = phi.after(power)
    raise DecompositionError("minimal polynomial search exceeded the dimension bound")


def _sympy_mod():
    import sympy

    return sympy


def factor_poly(field, coeffs):
    """Factor a polynomial over the field into [(monic_factor, multiplicity)]."""
    coeffs = poly_trim(field, coeffs)
    if len(coeffs) <= 1:
        raise DecompositionError("cannot factor a constant polynomial")
    if len(coeffs) == 2:
        return [(poly_scale(field, coeffs, field.inv(coeffs[-1])), 1)]
    if isinstance(field, RationalField):
        return _factor_rational(field, coeffs)
    if isinstance(field, PrimeField):
        return _factor_prime(field, coeffs)
    if isinstance(field, FunctionField):
        return _factor_function_field(field, coeffs)
    raise DecompositionError(f"no factorization backend for {field!r}")


def _factor_rational(field, coeffs):
    sympy = _sympy_mod()
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c) for c in reversed(coeffs)], x, domain="QQ")
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        cs = [Fraction(str(c)) for c in fac.all_coeffs()]
        lead = cs[0]
        monic = tuple(c / lead for c in reversed(cs))
        out.append((monic, int(mult)))
    return out


def _factor_prime(field, coeffs):
    sympy = _sympy_mod()
    x = sympy.Symbol("x")
    poly = sympy.Poly([int(c) for c in reversed(coeffs)], x, modulus=field.p)
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        cs = [int(c) % field.p for c in fac.all_coeffs()]
        lead_inv = field.inv(cs[0])
        monic = tuple(field.mul(c, lead_inv) for c in reversed(cs))
        out.append((poly_trim(field, monic), int(mult)))
    return out


def _factor_function_field(field, coeffs):
    sympy = _sympy_mod()
    B = field.base
    x, t = sympy.Symbol("x"), sympy.Symbol("t")
    # clear denominators: multiply by the lcm of all coefficient denominators
    common = (B.one,)
    for c in coeffs:
        g = poly_trim(B, c.den)
        from ..exactla import poly_gcd_monic

        gc = poly_gcd_monic(B, common, g)
        quo, _ = poly_divmod(B, g, gc)
        common = poly_mul(B, common, quo)

    def base_to_sympy(val):
        return sympy.Rational(val) if B.kind == "Q" else sympy.Integer(val)

    expr = sympy.Integer(0)
    for i, c in enumerate(coeffs):
        num = poly_mul(B, c.num, poly_divmod(B, common, c.den)[0])
        for j, cv in enumerate(num):
            if cv != B.zero:
                expr += base_to_sympy(cv) * t**j * x**i
    if B.kind == "Q":
        _, factors = sympy.factor_list(expr, x, t)
    else:
        _, factors = sympy.factor_list(expr, x, t, modulus=B.p)
    out = []
    deg_seen = 0
    for fac, mult in factors:
        pf = sympy.Poly(fac, x)
        if pf.degree() < 1:
            continue
        comps = []
        for c_expr in reversed(pf.all_coeffs()):
            ct = sympy.Poly(c_expr, t)
            raw = list(reversed(ct.all_coeffs())) if not ct.is_zero else []
            if B.kind == "Q":
                num = tuple(Fraction(str(v)) for v in raw)
            else:
                num = tuple(int(v) % B.p for v in raw)
            comps.append(field.make(num))
        lead_inv = field.inv(comps[-1])
        monic = tuple(field.mul(c, lead_inv) for c in comps)
        out.append((monic, int(mult)))
        deg_seen += (len(monic) - 1) * int(mult)
    if deg_seen != len(coeffs) - 1:
        raise DecompositionError("function-field factorization dropped degree")
    return out


def is_irreducible_poly(field, coeffs) -> bool:
    coeffs = poly_trim(field, coeffs)
    if len(coeffs) <= 1:
        return False
    factors = factor_poly(field, coeffs)
    return len(factors) == 1 and factors[0][1] == 1


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

@dataclass
class Decomposition:
    """Indecomposable summands with multiplicities and a certified isomorphism."""

    summands: list            # [(Representation, multiplicity)]
    sum_rep: Representation   # canonical direct sum in summand order
    iso: Morphism             # sum_rep -> original, invertible
    iso_inverse: Morphism

    def multiset_dims(self):
        return sorted((r.dims_tuple(), k) for r, k in self.summands)


def _morphism_power(f: Morphism, n: int) -> Morphism:
    out = Morphism.identity(f.source)
    base = f
    while n > 0:
        if n & 1:
            out = out.after(base)
        n >>= 1
        if n:
            base = base.after(base)
    return out


def _eval_poly_on_endo(phi: Morphism, coeffs) -> Morphism:
    F = phi.source.field
    out = Morphism.zero(phi.source, phi.source)
    ident = Morphism.identity(phi.source)
    power = ident
    for c in coeffs:
        if c != F.zero:
            out = out + power.scale(c)
        power = phi.after(power)
    return out


def _primary_split(m: Representation, phi: Morphism):
    """Split m along the primary decomposition of phi, or None."""
    minpoly = endo_minimal_polynomial(phi)
    try:
        factors = factor_poly(m.field, minpoly)
    except DecompositionError:
        return None
    if len(factors) < 2:
        return None
    n = m.total_dim
    pieces = []
    for fac, _ in factors:
        g = _morphism_power(_eval_poly_on_endo(phi, fac), n)
        piece, incl = kernel(g)
        pieces.append((piece, incl))
    if sum(p.total_dim for p, _ in pieces) != n:
        raise DecompositionError("primary decomposition does not fill the module")
    return pieces


def _candidate_endos(basis, rng, trials):
    for b in basis:
        yield b
    F = basis[0].source.field
    for _ in range(trials):
        f = Morphism.zero(basis[0].source, basis[0].source)
        for b in basis:
            f = f + b.scale(F.random(rng))
        if not f.is_zero():
            yield f


def _idempotent_fallback(m, basis, rng):
    """Exhaustive idempotent search in End(m), tiny fields and dim <= 6 only."""
    F = m.field
    if not isinstance(F, PrimeField) or F.p > 3 or len(basis) > 6:
        return None
    ident = Morphism.identity(m)
    import itertools

    for coeffs in itertools.product(range(F.p), repeat=len(basis)):
        f = Morphism.zero(m, m)
        for c, b in zip(coeffs, basis):
            if c:
                f = f + b.scale(c)
        if f.is_zero() or f == ident:
            continue
        if f.after(f) == f:
            ker_rep, ker_incl = kernel(f)
            img_rep, img_incl, _ = image(f)
            return [(img_rep, img_incl), (ker_rep, ker_incl)]
    return None


def _split_leaves(m: Representation, incl: Morphism, rng, trials, leaves):
    if m.is_zero():
        return
    basis = hom_basis(m, m)
    if len(basis) == 1:
        leaves.append((m, incl))
        return
    for phi in _candidate_endos(basis, rng, trials):
        pieces = _primary_split(m, phi)
        if pieces:
            for piece, piece_incl in pieces:
                _split_leaves(piece, incl.after(piece_incl), rng, trials, leaves)
            return
    pieces = _idempotent_fallback(m, basis, rng)
    if pieces:
        for piece, piece_incl in pieces:
            _split_leaves(piece, incl.after(piece_incl), rng, trials, leaves)
        return
    # certified local: every candidate had a primary minimal polynomial
    leaves.append((m, incl))


def indecomposable_summands(m: Representation, rng=None, trials=_DEFAULT_TRIALS):
    """[(leaf, inclusion into m)]; the stacked inclusions are an isomorphism."""
    rng = rng if rng is not None else random.Random(0)
    leaves = []
    _split_leaves(m, Morphism.identity(m), rng, trials, leaves)
    return leaves


def decompose(m: Representation, rng=None, trials=_DEFAULT_TRIALS) -> Decomposition:
    rng = rng if rng is not None else random.Random(0)
    leaves = indecomposable_summands(m, rng, trials)
    groups = []
    for leaf, incl in leaves:
        placed = False
        for grp in groups:
            f = is_isomorphic(grp["rep"], leaf, rng)
            if f is not None:
                grp["members"].append(incl.after(f))
                placed = True
                break
        if not placed:
            groups.append({"rep": leaf, "members": [incl]})
    parts, columns = [], []
    for grp in groups:
        parts.append((grp["rep"], len(grp["members"])))
        columns.extend(grp["members"])
    ds = direct_sum([grp["rep"] for grp in groups for _ in grp["members"]], m.algebra)
    iso = Morphism.zero(ds.rep, m)
    for col, proj in zip(columns, ds.projections):
        iso = iso + col.after(proj)
    inv = iso.inverse()
    if inv is None:
        raise DecompositionError("decomposition certificate is not invertible")
    ident_src = Morphism.identity(ds.rep)
    ident_tgt = Morphism.identity(m)
    if inv.after(iso) != ident_src or iso.after(inv) != ident_tgt:
        raise DecompositionError("decomposition certificate failed verification")
    return Decomposition(parts, ds.rep, iso, inv)


def is_indecomposable(m: Representation, rng=None) -> bool:
    if m.is_zero():
        return False
    return len(indecomposable_summands(m, rng)) == 1


# ---------------------------------------------------------------------------
# isomorphism testing
# ---------------------------------------------------------------------------

def _grid_values(field, bound):
    if isinstance(field, PrimeField):
        return [field.coerce(v) for v in range(min(field.p, bound + 1))]
    return [field.from_int(v) for v in range(bound + 1)]


def find_injective_morphism(m: Representation, n: Representation,
                            rng=None) -> Morphism | None:
    """Some monomorphism m -> n, or None (seeded search plus small grids)."""
    rng = rng if rng is not None else random.Random(0)
    basis = hom_basis(m, n)
    if not basis:
        return None
    F = m.field
    for b in basis:
        if b.is_injective():
            return b
    for _ in range(_DEFAULT_TRIALS):
        f = Morphism.zero(m, n)
        for b in basis:
            f = f + b.scale(F.random(rng))
        if f.is_injective():
            return f
    if len(basis) <= 3:
        import itertools

        values = _grid_values(F, m.total_dim + n.total_dim)
        for coeffs in itertools.product(values, repeat=len(basis)):
            f = Morphism.zero(m, n)
            for c, b in zip(coeffs, basis):
                if c != F.zero:
                    f = f + b.scale(c)
            if f.is_injective():
                return f
    return None


def is_isomorphic(m: Representation, n: Representation, rng=None) -> Morphism | None:
    """An invertible morphism m -> n, or None.

    Random linear combinations of a hom basis (seeded), with a deterministic
    grid fallback for hom dimension <= 3.
    """
    rng = rng if rng is not None else random.Random(0)
    if not m.algebra.same_as(n.algebra):
        return None
    if m.dims != n.dims:
        return None
    if m.is_zero() and n.is_zero():
        return Morphism.zero(m, n)
    basis = hom_basis(m, n)
    if not basis:
        return None
    F = m.field
    for b in basis:
        inv = b.inverse()
        if inv is not None:
            return b
    for _ in range(_DEFAULT_TRIALS):
        f = Morphism.zero(m, n)
        for b in basis:
            f = f + b.scale(F.random(rng))
        if f.inverse() is not None:
            return f
    if len(basis) <= 3:
        import itertools

        values = _grid_values(F, m.total_dim)
        for coeffs in itertools.product(values, repeat=len(basis)):
            f = Morphism.zero(m, n)
            for c, b in zip(coeffs, basis):
                if c != F.zero:
                    f = f + b.scale(c)
            if f.inverse() is not None:
                return f
    return None


# ---------------------------------------------------------------------------
# endomorphism structure
# ---------------------------------------------------------------------------

def end_algebra_structure(m: Representation):
    """(basis, table) with table[i][j] = coordinates of basis_i o basis_j."""
    basis = hom_basis(m, m)
    table = []
    for bi in basis:
        row = []
        for bj in basis:
            coords = coordinates_in_hom_basis(bi.after(bj), basis)
            if coords is None:
                raise DecompositionError("End is not closed under composition")
            row.append(coords)
        table.append(row)
    return basis, table


def is_brick(m: Representation, rng=None, probes: int = 32) -> bool:
    """True iff End(m) is a division algebra.

    dim End = 1 is immediate; otherwise every basis element and a batch of
    seeded probes must have an irreducible minimal polynomial (no nilpotents,
    no idempotents).
    """
    if m.is_zero():
        return False
    rng = rng if rng is not None else random.Random(0)
    basis = hom_basis(m, m)
    if len(basis) == 1:
        return True
    F = m.field
    candidates = list(basis)
    for _ in range(probes):
        f = Morphism.zero(m, m)
        for b in basis:
            f = f + b.scale(F.random(rng))
        if not f.is_zero():
            candidates.append(f)
    for phi in candidates:
        minpoly = endo_minimal_polynomial(phi)
        if len(minpoly) == 2:
            continue
        if not is_irreducible_poly(F, minpoly):
            return False
    return True
