"""Ext^1 with explicit cocycles, extension realization, and the AR translate.

Ext^1(N, M) is computed once and for all relative to the minimal projective
presentation of N as coker(Hom(P0, M) -> Hom(Omega, M)); realizations,
connecting classes, pushforwards and pullbacks all use that identification,
so "the class of a sequence" is well-defined across the package.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AlgebraError, DimensionMismatch
from .exactla import Matrix
from .repcat import (
    Morphism,
    Presentation,
    ProjSum,
    Representation,
    cokernel,
    direct_sum,
    dualize,
    factor_through_injection,
    factor_through_surjection,
    hom_basis,
    is_isomorphic,
    kernel,
    minimal_projective_presentation,
    morphism_from_projective_sum,
    projective_sum,
    zero_representation,
)


@dataclass
class ShortExactSequence:
    """0 -> sub -> middle -> quotient -> 0 with exactness certificates."""

    sub: Representation
    middle: Representation
    quotient: Representation
    inclusion: Morphism
    projection: Morphism

    def verify(self):
        if not self.inclusion.is_injective():
            raise AlgebraError("inclusion is not injective")
        if not self.projection.is_surjective():
            raise AlgebraError("projection is not surjective")
        if not self.projection.after(self.inclusion).is_zero():
            raise AlgebraError("composite is not zero")
        for v in self.sub.algebra.vertices:
            if self.sub.dims[v] + self.quotient.dims[v] != self.middle.dims[v]:
                raise AlgebraError("dimensions are not additive; sequence not exact")
        return self


def split_sequence(m: Representation, n: Representation) -> ShortExactSequence:
    ds = direct_sum([m, n])
    return ShortExactSequence(m, ds.rep, n, ds.injections[0], ds.projections[1]).verify()


# ---------------------------------------------------------------------------
# Ext^1 spaces
# ---------------------------------------------------------------------------

@dataclass
class ExtClass:
    """An element of Ext^1(N, M): a cocycle Omega(N) -> M plus coordinates."""

    space: "ExtSpace"
    cocycle: Morphism
    coords: tuple

    def is_zero(self) -> bool:
        F = self.space.field
        return all(c == F.zero for c in self.coords)

    def realize(self) -> ShortExactSequence:
        return self.space.realize(self)


class ExtSpace:
    """Ext^1(N, M) = coker(Hom(P0, M) -> Hom(Omega, M)), with a chosen basis."""

    def __init__(self, n: Representation, m: Representation, pres: Presentation = None):
        if not n.algebra.same_as(m.algebra):
            raise AlgebraError("Ext between representations over different algebras")
        self.source = n
        self.target = m
        self.field = n.field
        self.pres = pres if pres is not None else minimal_projective_presentation(n)
        self._hom_omega = hom_basis(self.pres.omega, m)
        restricted = [f.after(self.pres.omega_incl) for f in hom_basis(self.pres.p0.rep, m)]
        F = self.field
        flat_len = len(self._hom_omega[0].flatten()) if self._hom_omega else 0
        img_cols = [f.flatten() for f in restricted if not f.is_zero()]
        basis_cols = [f.flatten() for f in self._hom_omega]
        all_cols = img_cols + basis_cols
        if flat_len and all_cols:
            stack = Matrix(F, flat_len, len(all_cols), [list(r) for r in zip(*all_cols)])
            _, pivots = stack.rref()
        else:
            stack, pivots = None, ()
        self._img_cols = img_cols
        self._rep_indices = [p - len(img_cols) for p in pivots if p >= len(img_cols)]
        self._solver = None

    @property
    def dim(self) -> int:
        return len(self._rep_indices)

    def basis(self) -> list[ExtClass]:
        F = self.field
        out = []
        for k, idx in enumerate(self._rep_indices):
            coords = tuple(F.one if i == k else F.zero for i in range(self.dim))
            out.append(ExtClass(self, self._hom_omega[idx], coords))
        return out

    def _coord_solver(self):
        if self._solver is None:
            F = self.field
            rep_cols = [self._hom_omega[i].flatten() for i in self._rep_indices]
            cols = self._img_cols + rep_cols
            if cols:
                self._solver = Matrix(F, len(cols[0]), len(cols),
                                      [list(r) for r in zip(*cols)])
            else:
                self._solver = Matrix.zeros(F, 0, 0)
        return self._solver

    def class_coords(self, cocycle: Morphism) -> tuple:
        """Coordinates of a cocycle's class over the chosen quotient basis."""
        F = self.field
        if self.dim == 0 and not self._img_cols:
            return ()
        flat = cocycle.flatten()
        solver = self._coord_solver()
        sol = solver.solve(Matrix.column(F, flat))
        if sol is None:
            raise AlgebraError("cocycle outside Hom(Omega, M) span (internal error)")
        n_img = len(self._img_cols)
        return tuple(sol.data[n_img + i][0] for i in range(self.dim))

    def class_of_cocycle(self, cocycle: Morphism) -> ExtClass:
        return ExtClass(self, cocycle, self.class_coords(cocycle))

    def zero_class(self) -> ExtClass:
        F = self.field
        return ExtClass(self, Morphism.zero(self.pres.omega, self.target),
                        tuple(F.zero for _ in range(self.dim)))

    def combination(self, coeffs) -> ExtClass:
        F = self.field
        cocycle = Morphism.zero(self.pres.omega, self.target)
        for c, cls in zip(coeffs, self.basis()):
            if c != F.zero:
                cocycle = cocycle + cls.cocycle.scale(c)
        return ExtClass(self, cocycle, tuple(coeffs))

    # -- realization ---------------------------------------------------------

    def realize(self, cls: ExtClass) -> ShortExactSequence:
        return realize_from_cocycle(self.pres, self.target, cls.cocycle)

    def class_of_sequence(self, ses: ShortExactSequence) -> ExtClass:
        """Connecting class of 0 -> M -> B -> N -> 0 under this identification."""
        lam = lift_through_surjection(self.pres.p0.rep, ses.projection, self.pres.cover)
        into_sub = factor_through_injection(ses.inclusion,
                                            lam.after(self.pres.omega_incl))
        if into_sub is None:
            raise AlgebraError("connecting construction failed (not exact?)")
        return self.class_of_cocycle(into_sub)

def ext1_basis(n: Representation, m: Representation) -> list[ExtClass]:
    return ExtSpace(n, m).basis()


def ext1_dim(n: Representation, m: Representation) -> int:
    return ExtSpace(n, m).dim


def ext2_dim(n: Representation, m: Representation) -> int:
    """dim Ext^2 via dimension shift along the first syzygy."""
    pres = minimal_projective_presentation(n)
    if pres.omega.is_zero():
        return 0
    return ExtSpace(pres.omega, m).dim


def euler_ext_check(n: Representation, m: Representation) -> bool:
    alg = n.algebra
    total = len(hom_basis(n, m)) - ext1_dim(n, m) + ext2_dim(n, m)
    return total == alg.euler_form(n.dims, m.dims)


def lift_through_surjection(source_proj: Representation, p: Morphism,
                            f: Morphism) -> Morphism:
    """lambda with p o lambda = f, source_proj projective, p surjective."""
    hom = hom_basis(source_proj, p.source)
    F = source_proj.field
    if not hom:
        if f.is_zero():
            return Morphism.zero(source_proj, p.source)
        raise AlgebraError("no lift exists (source not projective?)")
    cols = [p.after(h).flatten() for h in hom]
    mat = Matrix(F, len(cols[0]), len(cols), [list(r) for r in zip(*cols)])
    sol = mat.solve(Matrix.column(F, f.flatten()))
    if sol is None:
        raise AlgebraError("projective lifting failed (internal error)")
    lam = Morphism.zero(source_proj, p.source)
    for i, h in enumerate(hom):
        c = sol.data[i][0]
        if c != F.zero:
            lam = lam + h.scale(c)
    return lam


def realize_from_cocycle(pres: Presentation, m: Representation,
                         cocycle: Morphism) -> ShortExactSequence:
    """Middle term of the extension with the given cocycle Omega -> M."""
    n = pres.module
    ds = direct_sum([m, pres.p0.rep])
    glue = ds.injections[0].after(cocycle) - ds.injections[1].after(pres.omega_incl)
    middle, quot = cokernel(glue)
    incl = quot.after(ds.injections[0])
    onto_n = pres.cover.after(ds.projections[1])
    proj = factor_through_surjection(quot, onto_n)
    if proj is None:
        raise AlgebraError("extension projection failed (internal error)")
    return ShortExactSequence(m, middle, n, incl, proj).verify()


# ---------------------------------------------------------------------------
# pushout / pullback
# ---------------------------------------------------------------------------

def pushout(f: Morphism, ses: ShortExactSequence) -> ShortExactSequence:
    """Induced sequence along f: sub -> M'; also returns nothing else (verified)."""
    if f.source.dims != ses.sub.dims:
        raise DimensionMismatch("pushout map must start at the subobject")
    ds = direct_sum([f.target, ses.middle])
    glue = ds.injections[0].after(f) - ds.injections[1].after(ses.inclusion)
    middle, quot = cokernel(glue)
    incl = quot.after(ds.injections[0])
    onto_q = ses.projection.after(ds.projections[1])
    proj = factor_through_surjection(quot, onto_q)
    if proj is None:
        raise AlgebraError("pushout projection failed")
    return ShortExactSequence(f.target, middle, ses.quotient, incl, proj).verify()


def pullback(g: Morphism, ses: ShortExactSequence) -> ShortExactSequence:
    """Induced sequence along g: N' -> quotient."""
    if g.target.dims != ses.quotient.dims:
        raise DimensionMismatch("pullback map must end at the quotient")
    ds = direct_sum([ses.middle, g.source])
    mixed = ses.projection.after(ds.projections[0]) - g.after(ds.projections[1])
    middle, incl_total = kernel(mixed)
    into_pair = ds.injections[0].after(ses.inclusion)
    incl = factor_through_injection(incl_total, into_pair)
    if incl is None:
        raise AlgebraError("pullback inclusion failed")
    proj = ds.projections[1].after(incl_total)
    return ShortExactSequence(ses.sub, middle, g.source, incl, proj).verify()


# ---------------------------------------------------------------------------
# universal extensions
# ---------------------------------------------------------------------------

@dataclass
class UniversalExtension:
    sequence: ShortExactSequence
    simples: list            # deduplicated simple objects actually used
    multiplicities: list     # d_S per simple (dim over End(S))


def _end_action_on_syzygy(pres: Presentation, g: Morphism) -> Morphism:
    """Restrict a lift of g in End(N) to the syzygy Omega -> Omega."""
    lam = lift_through_surjection(pres.p0.rep, pres.cover, g.after(pres.cover))
    restricted = lam.after(pres.omega_incl)
    back = factor_through_injection(pres.omega_incl, restricted)
    if back is None:
        raise AlgebraError("syzygy action failed (internal error)")
    return back


def _sum_presentation(parts: list[Presentation], algebra) -> Presentation:
    """Presentation of a direct sum assembled from presentations of the parts."""
    module = direct_sum([p.module for p in parts], algebra)
    p0_verts = [v for p in parts for v in p.p0.summand_vertices]
    p1_verts = [v for p in parts for v in p.p1.summand_vertices]
    omega = direct_sum([p.omega for p in parts], algebra)

    def stack_block(big_src, big_tgt, blocks, src_sums, tgt_injs):
        total = Morphism.zero(big_src, big_tgt)
        for blk, proj, inj in zip(blocks, src_sums, tgt_injs):
            total = total + inj.after(blk).after(proj)
        return total

    p0_parts = direct_sum([p.p0.rep for p in parts], algebra)
    p1_parts = direct_sum([p.p1.rep for p in parts], algebra)
    # the assembled projective sums equal the block sums component by component
    cover = stack_block(p0_parts.rep, module.rep,
                        [p.cover for p in parts], p0_parts.projections,
                        module.injections)
    omega_incl = stack_block(omega.rep, p0_parts.rep,
                             [p.omega_incl for p in parts], omega.projections,
                             p0_parts.injections)
    p1_cover = stack_block(p1_parts.rep, omega.rep,
                           [p.p1_cover for p in parts], p1_parts.projections,
                           omega.injections)
    d = omega_incl.after(p1_cover)
    p0 = ProjSum(p0_parts.rep, p0_verts, _sum_offsets(parts, algebra, "p0"))
    p1 = ProjSum(p1_parts.rep, p1_verts, _sum_offsets(parts, algebra, "p1"))
    return Presentation(module.rep, p0, cover, omega.rep, omega_incl, p1, p1_cover, d)


def _sum_offsets(parts, algebra, which):
    offsets = []
    acc = {v: 0 for v in algebra.vertices}
    for p in parts:
        ps = getattr(p, which)
        for off in ps.offsets:
            offsets.append({v: acc[v] + off[v] for v in algebra.vertices})
        for v in algebra.vertices:
            acc[v] += ps.rep.dims[v]
    return offsets


def universal_extension(m: Representation, simples: list) -> UniversalExtension:
    """0 -> m -> X -> (+) S^{d_S} -> 0 killing every Ext^1(S, m) class.

    d_S = dim Ext^1(S, m) over End(S); after the construction the induced map
    Ext^1(S, m) -> Ext^1(S, X) is verified to be zero on a basis of cocycles.
    """
    alg, F = m.algebra, m.field
    used = []
    for s in simples:
        if not any(is_isomorphic(s, t) is not None for t in used):
            used.append(s)
    chosen = []          # (simple, pres, selected cocycles)
    mults = []
    for s in used:
        space = ExtSpace(s, m)
        if space.dim == 0:
            mults.append(0)
            chosen.append((s, space, []))
            continue
        end_s = hom_basis(s, s)
        e = len(end_s)
        if space.dim % e:
            raise AlgebraError("Ext^1(S, m) is not free over End(S)?")
        actions = [_end_action_on_syzygy(space.pres, g) for g in end_s]
        selected = []
        span_rows = []
        span_rank = 0
        for cls in space.basis():
            coords = cls.coords
            probe = Matrix(F, len(span_rows) + 1, space.dim,
                           span_rows + [list(coords)])
            if probe.rank() == span_rank:
                continue
            selected.append(cls.cocycle)
            for act in actions:
                moved = cls.cocycle.after(act)
                span_rows.append(list(space.class_coords(moved)))
            span_rank = Matrix(F, len(span_rows), space.dim, span_rows).rank()
            if span_rank == space.dim:
                break
        if len(selected) != space.dim // e:
            raise AlgebraError("End(S)-basis selection failed")
        mults.append(len(selected))
        chosen.append((s, space, selected))

    blocks = []
    for s, space, selected in chosen:
        blocks.extend((space.pres, theta) for theta in selected)
    if not blocks:
        ident = Morphism.identity(m)
        seq = ShortExactSequence(m, m, zero_representation(alg), ident,
                                 Morphism.zero(m, zero_representation(alg)))
        return UniversalExtension(seq, used, mults)

    total_pres = _sum_presentation([pres for pres, _ in blocks], alg)
    omega_sum = direct_sum([pres.omega for pres, _ in blocks], alg)
    cocycle = Morphism.zero(total_pres.omega, m)
    for proj, (pres, theta) in zip(omega_sum.projections, blocks):
        comp = theta.after(proj)
        cocycle = cocycle + Morphism(total_pres.omega, m, comp.maps, check=False)
    seq = realize_from_cocycle(total_pres, m, cocycle)

    # contract: pushing any Ext^1(S, m) basis cocycle into X gives zero
    for s, space, _ in chosen:
        target_space = ExtSpace(s, seq.middle, space.pres)
        for cls in space.basis():
            pushed = seq.inclusion.after(cls.cocycle)
            if not target_space.class_of_cocycle(pushed).is_zero():
                raise AlgebraError("universal extension failed to kill a class")
    return UniversalExtension(seq, used, mults)


# ---------------------------------------------------------------------------
# Auslander-Reiten translate
# ---------------------------------------------------------------------------

def _presentation_path_matrix(pres: Presentation):
    """Entries of P1 -> P0 as path-space coefficient vectors."""
    alg = pres.module.algebra
    entries = {}
    for j, wj in enumerate(pres.p1.summand_vertices):
        gcol = pres.p1.generator_coordinate(j)
        col = pres.d.maps[wj].col(gcol)
        for i, vi in enumerate(pres.p0.summand_vertices):
            plist, basis, _ = alg.path_space(vi, wj)
            off = pres.p0.offsets[i][wj]
            entries[(i, j)] = [(col[off + k], plist[bidx])
                               for k, bidx in enumerate(basis)]
    return entries


def transpose_module(m: Representation) -> Representation:
    """Tr m over the opposite algebra, via the transposed presentation."""
    alg = m.algebra
    opp = alg.opposite()
    pres = minimal_projective_presentation(m)
    entries = _presentation_path_matrix(pres)
    q_from = projective_sum(opp, list(pres.p0.summand_vertices))
    q_to = projective_sum(opp, list(pres.p1.summand_vertices))
    F = alg.field
    gen_vectors = []
    for i, vi in enumerate(pres.p0.summand_vertices):
        vec = [F.zero] * q_to.rep.dims[vi]
        for j, wj in enumerate(pres.p1.summand_vertices):
            _, basis_b, _ = opp.path_space(wj, vi)
            off = q_to.offsets[j][vi]
            for coeff, path in entries[(i, j)]:
                if coeff == F.zero:
                    continue
                red = opp.reduce_path(wj, vi, tuple(reversed(path)))
                for k, c in enumerate(red):
                    if c != F.zero:
                        vec[off + k] = F.add(vec[off + k], F.mul(coeff, c))
        gen_vectors.append(Matrix.column(F, vec))
    dual_map = morphism_from_projective_sum(q_from, q_to.rep, gen_vectors)
    tr, _ = cokernel(dual_map)
    return tr


def tau(m: Representation) -> Representation:
    """Auslander-Reiten translate (projective summands die silently)."""
    if m.is_zero():
        return m
    return dualize(transpose_module(m), m.algebra)


def tau_inverse(m: Representation) -> Representation:
    if m.is_zero():
        return m
    return transpose_module(dualize(m, m.algebra.opposite()))


@dataclass
class TranslateReport:
    result: Representation
    dropped_summands: bool


def tau_with_report(m: Representation) -> TranslateReport:
    out = tau(m)
    back = tau_inverse(out)
    return TranslateReport(out, back.dims != m.dims)


def tau_inverse_with_report(m: Representation) -> TranslateReport:
    out = tau_inverse(m)
    back = tau(out)
    return TranslateReport(out, back.dims != m.dims)
