"""Truncated omega-approximations and the function-field generic module.

The left approximation pushes a universal extension into finite uniserial
towers S[r]; the right approximation covers a positive-defect module by
tower tops and makes the kernel torsionfree.  Minimality is not claimed at
truncation; the contracts are the Ext-killing and torsionfree-kernel
certificates, which are verified on every call.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ApproximationError
from .exactla import FunctionField, Matrix, PrimeField, RationalField
from .homology import (
    ExtSpace,
    ShortExactSequence,
    lift_through_surjection,
    realize_from_cocycle,
    universal_extension,
)
from .quiver_algebra import CanonicalAlgebra
from .repcat import (
    Morphism,
    Representation,
    cokernel,
    direct_sum,
    factor_through_injection,
    factor_through_surjection,
    find_injective_morphism,
    hom_basis,
    hom_dim,
    kernel,
    minimal_projective_presentation,
    zero_representation,
)
from .trisection import (
    TrisectLabel,
    TubeId,
    regular_simples,
    split_trisect,
    torsion_part,
    uniserial_tower,
    validate_tube,
)


@dataclass(frozen=True)
class TruncationParams:
    """Finite tube set plus a uniserial depth; finitizes the tower machinery."""

    tubes: tuple
    depth: int

    def __post_init__(self):
        if self.depth < 1:
            raise ApproximationError("depth must be >= 1")
        if not self.tubes:
            raise ApproximationError("tube set must be nonempty")


def mouth_modules(alg: CanonicalAlgebra, params: TruncationParams, rng=None):
    """[(tube, socle index, mouth rep)] across the chosen tubes."""
    out = []
    for tube in params.tubes:
        validate_tube(alg, tube)
        for idx, s in enumerate(regular_simples(alg, tube, rng)):
            out.append((tube, idx, s))
    return out


# ---------------------------------------------------------------------------
# Prüfer truncations
# ---------------------------------------------------------------------------

@dataclass
class PruferTruncation:
    socle: Representation
    depth: int
    layers: list
    inclusions: list
    cokernels: list   # quotient of each inclusion, = tau^{-j}(socle)


def prufer_chain(s: Representation, depth: int, rng=None) -> PruferTruncation:
    """S[1] -> S[2] -> ... -> S[depth] with verified layer quotients."""
    from .trisection import tube_of, regular_simples as _rs

    rng = rng if rng is not None else random.Random(0)
    tube = tube_of(s, rng)
    alg = s.algebra
    orbit = _rs(alg, tube, rng)
    from .repcat import is_isomorphic

    socle_idx = next(i for i, cand in enumerate(orbit)
                     if is_isomorphic(cand, s, rng) is not None)
    tower = uniserial_tower(alg, tube, socle_idx, depth, rng)
    return PruferTruncation(tower.layers[0], depth, tower.layers,
                            tower.inclusions, tower.tops)


# ---------------------------------------------------------------------------
# left approximation
# ---------------------------------------------------------------------------

@dataclass
class LeftApproximation:
    sequence: ShortExactSequence      # 0 -> kept -> X -> T -> 0
    kept: Representation
    stripped: Representation          # the removed positive-defect part
    params: TruncationParams
    blocks: list                      # [(tube, socle index)] per tower block
    multiplicities: dict              # (tube key) -> [d_S per socle]
    certificates: dict

    @property
    def middle(self) -> Representation:
        return self.sequence.middle


def _tube_key(tube: TubeId):
    return (tube.kind, tube.arm, tube.poly)


def left_omega_approx(m: Representation, params: TruncationParams,
                      rng=None) -> LeftApproximation:
    """Truncated minimal left omega-approximation of m.

    Positive-defect summands are stripped (reported in the result); the
    middle kills every Ext^1(S, m) class for mouths S of the chosen tubes,
    and torsionfree inputs stay torsionfree (checked when applicable).
    """
    rng = rng if rng is not None else random.Random(0)
    alg = m.algebra
    tri = split_trisect(m, rng)
    stripped = tri.q_part
    if stripped.is_zero():
        kept = m
    else:
        kept = direct_sum([tri.p_part, tri.t_part], alg).rep
    mouths = mouth_modules(alg, params, rng)
    ue = universal_extension(kept, [s for _, _, s in mouths])
    # ue.simples preserves mouth order; pair multiplicities back to tubes
    mult_by_tube: dict = {}
    blocks = []
    towers = []
    for (tube, idx, s), d in zip(mouths, ue.multiplicities):
        mult_by_tube.setdefault(_tube_key(tube), []).append(d)
        for _ in range(d):
            blocks.append((tube, idx))
            towers.append(uniserial_tower(alg, tube, idx, params.depth, rng))

    if not towers:
        seq = ShortExactSequence(kept, kept, zero_representation(alg),
                                 Morphism.identity(kept),
                                 Morphism.zero(kept, zero_representation(alg)))
        certs = _left_certificates(seq, mouths)
        return LeftApproximation(seq, kept, stripped, params, blocks,
                                 mult_by_tube, certs)

    t_small = ue.sequence.quotient
    sum_small = direct_sum([tw.layers[0] for tw in towers], alg)
    sum_big = direct_sum([tw.top_module for tw in towers], alg)
    u = Morphism.zero(sum_small.rep, sum_big.rep)
    for inj, tw, proj in zip(sum_big.injections, towers, sum_small.projections):
        u = u + inj.after(tw.socle_inclusion()).after(proj)
    # rebind: the universal-extension quotient is the same block sum
    u = Morphism(t_small, sum_big.rep, u.maps, check=False)

    space_small = ExtSpace(t_small, kept)
    theta_small = space_small.class_of_sequence(ue.sequence).cocycle
    pres_big = minimal_projective_presentation(sum_big.rep)

    lam = lift_through_surjection(space_small.pres.p0.rep, pres_big.cover,
                                  u.after(space_small.pres.cover))
    omega_u = factor_through_injection(pres_big.omega_incl,
                                       lam.after(space_small.pres.omega_incl))
    if omega_u is None:
        raise ApproximationError("syzygy comparison failed")
    hom_big = hom_basis(pres_big.omega, kept)
    corrections = [g.after(space_small.pres.omega_incl)
                   for g in hom_basis(space_small.pres.p0.rep, kept)]
    cols = [h.after(omega_u).flatten() for h in hom_big]
    cols += [g.flatten() for g in corrections]
    F = alg.field
    if not cols:
        raise ApproximationError("empty cocycle space at this truncation")
    system = Matrix(F, len(cols[0]), len(cols), [list(r) for r in zip(*cols)])
    rhs = Matrix.column(F, theta_small.flatten())
    sol = system.solve(rhs)
    if sol is None:
        raise ApproximationError("no compatible class at this depth",
                                 {"depth": params.depth})
    theta_big = Morphism.zero(pres_big.omega, kept)
    for i, h in enumerate(hom_big):
        c = sol.data[i][0]
        if c != F.zero:
            theta_big = theta_big + h.scale(c)
    seq = realize_from_cocycle(pres_big, kept, theta_big)
    certs = _left_certificates(seq, mouths)
    if not certs["ext_killed"]:
        raise ApproximationError("universal-extension contract failed")
    return LeftApproximation(seq, kept, stripped, params, blocks,
                             mult_by_tube, certs)


def _left_certificates(seq: ShortExactSequence, mouths):
    """Push every Ext^1(S, sub) basis cocycle into the middle; all must die."""
    certs = {"ext_killed": True, "source_torsionfree": True,
             "middle_torsionfree": True}
    for _, _, s in mouths:
        space = ExtSpace(s, seq.sub)
        if space.dim:
            target = ExtSpace(s, seq.middle, space.pres)
            for cls in space.basis():
                pushed = seq.inclusion.after(cls.cocycle)
                if not target.class_of_cocycle(pushed).is_zero():
                    certs["ext_killed"] = False
        if hom_dim(s, seq.sub):
            certs["source_torsionfree"] = False
        if hom_dim(s, seq.middle):
            certs["middle_torsionfree"] = False
    certs["f_preserved"] = (not certs["source_torsionfree"]) or \
        certs["middle_torsionfree"]
    return certs


def extend_left_approx(approx: LeftApproximation, new_depth: int, rng=None):
    """Deeper truncation plus a compatible monomorphism between the middles."""
    if new_depth <= approx.params.depth:
        raise ApproximationError("new depth must exceed the old one")
    rng = rng if rng is not None else random.Random(0)
    new_params = TruncationParams(approx.params.tubes, new_depth)
    deeper = left_omega_approx(approx.kept, new_params, rng)
    # block-diagonal inclusion of the old quotient towers into the new ones
    alg = approx.kept.algebra
    old_tw = [uniserial_tower(alg, tube, idx, approx.params.depth, rng)
              for tube, idx in approx.blocks]
    new_tw = [uniserial_tower(alg, tube, idx, new_depth, rng)
              for tube, idx in deeper.blocks]
    if len(old_tw) != len(new_tw):
        raise ApproximationError("block mismatch between depths")
    old_sum = direct_sum([tw.top_module for tw in old_tw], alg)
    new_sum = direct_sum([tw.top_module for tw in new_tw], alg)
    u = Morphism.zero(old_sum.rep, new_sum.rep)
    for inj, tw, proj in zip(new_sum.injections, new_tw, old_sum.projections):
        step = Morphism.identity(tw.layers[approx.params.depth - 1])
        for k in range(approx.params.depth - 1, new_depth - 1):
            step = tw.inclusions[k].after(step)
        u = u + inj.after(step).after(proj)
    u = Morphism(approx.sequence.quotient, deeper.sequence.quotient,
                 u.maps, check=False)
    # solve for h: X_r -> X_{r'} with h o mu = mu' and pi' o h = u o pi
    hb = hom_basis(approx.middle, deeper.middle)
    F = alg.field
    cols = [(h.after(approx.sequence.inclusion).flatten()
             + deeper.sequence.projection.after(h).flatten()) for h in hb]
    rhs_vec = (deeper.sequence.inclusion.flatten()
               + u.after(approx.sequence.projection).flatten())
    if not cols:
        raise ApproximationError("no maps between truncation levels")
    system = Matrix(F, len(cols[0]), len(cols), [list(r) for r in zip(*cols)])
    sol = system.solve(Matrix.column(F, rhs_vec))
    if sol is None:
        raise ApproximationError("no compatible monomorphism between depths")
    h = Morphism.zero(approx.middle, deeper.middle)
    for i, b in enumerate(hb):
        c = sol.data[i][0]
        if c != F.zero:
            h = h + b.scale(c)
    if not h.is_injective():
        raise ApproximationError("compatible map is not injective")
    return deeper, h


# ---------------------------------------------------------------------------
# right approximation
# ---------------------------------------------------------------------------

@dataclass
class RightApproximation:
    sequence: ShortExactSequence      # 0 -> K -> N -> m -> 0
    params: TruncationParams
    cover_blocks: list                # [(tube, socle index, basis index)] kept
    dropped_blocks: int
    certificates: dict


def right_omega_approx(m: Representation, params: TruncationParams,
                       rng=None) -> RightApproximation:
    """Truncated minimal right omega-approximation of a positive-defect module.

    The cover is assembled from Hom(S[depth], m) bases over the chosen tubes
    and greedily reduced; the kernel is made torsionfree by factoring out its
    tube-generated part.
    """
    rng = rng if rng is not None else random.Random(0)
    alg = m.algebra
    tri = split_trisect(m, rng)
    if not (tri.p_part.is_zero() and tri.t_part.is_zero()):
        raise ApproximationError(
            "right approximation needs all summands of positive defect",
            {"p_dims": tri.p_part.dims, "t_dims": tri.t_part.dims})

    candidates = []   # (tube, socle, basis index, tower top, morphism)
    for tube in params.tubes:
        validate_tube(alg, tube)
        orbit = regular_simples(alg, tube, rng)
        for idx in range(len(orbit)):
            tower = uniserial_tower(alg, tube, idx, params.depth, rng)
            for bi, f in enumerate(hom_basis(tower.top_module, m)):
                candidates.append((tube, idx, bi, tower.top_module, f))

    def surjective(subset):
        for v in alg.vertices:
            if m.dims[v] == 0:
                continue
            stacked = None
            for _, _, _, _, f in subset:
                stacked = f.maps[v] if stacked is None else stacked.hstack(f.maps[v])
            if stacked is None or stacked.rank() < m.dims[v]:
                return False
        return True

    if not surjective(candidates):
        missing = _missing_tops(m, candidates, rng)
        raise ApproximationError(
            "tube set too poor to cover the module; enlarge tubes or depth",
            {"missing_simple_tops": missing})
    kept = list(candidates)
    for cand in list(candidates):
        trial = [c for c in kept if c is not cand]
        if surjective(trial):
            kept = trial
    ds = direct_sum([c[3] for c in kept], alg)
    g = Morphism.zero(ds.rep, m)
    for (tube, idx, bi, topm, f), proj in zip(kept, ds.projections):
        g = g + f.after(proj)
    ker_rep, ker_incl = kernel(g)
    torsion = torsion_part(ker_rep, rng)
    if torsion.module.is_zero():
        final = ShortExactSequence(ker_rep, ds.rep, m, ker_incl, g).verify()
    else:
        inside = ker_incl.after(torsion.inclusion)
        n_quot, n_proj = cokernel(inside)
        g2 = factor_through_surjection(n_proj, g)
        if g2 is None:
            raise ApproximationError("quotient cover construction failed")
        k2, k2_incl = kernel(g2)
        final = ShortExactSequence(k2, n_quot, m, k2_incl, g2).verify()

    certs = {"kernel_torsionfree": True, "kernel_labels": []}
    for tube in params.tubes:
        for s in regular_simples(alg, tube, rng):
            if hom_dim(s, final.sub):
                certs["kernel_torsionfree"] = False
    ktri = split_trisect(final.sub, rng)
    certs["kernel_labels"] = sorted(
        {lab.value for lab, part in ((TrisectLabel.P, ktri.p_part),
                                     (TrisectLabel.T, ktri.t_part),
                                     (TrisectLabel.Q, ktri.q_part))
         if not part.is_zero()})
    if not certs["kernel_torsionfree"]:
        raise ApproximationError("kernel failed the torsionfree certificate")
    return RightApproximation(final, params,
                              [(t, i, b) for t, i, b, _, _ in kept],
                              len(candidates) - len(kept), certs)


def _missing_tops(m, candidates, rng):
    alg = m.algebra
    stacked = {v: None for v in alg.vertices}
    for _, _, _, _, f in candidates:
        for v in alg.vertices:
            mat = f.maps[v]
            stacked[v] = mat if stacked[v] is None else stacked[v].hstack(mat)
    missing = []
    for v in alg.vertices:
        have = stacked[v].rank() if stacked[v] is not None else 0
        if have < m.dims[v]:
            missing.append(v)
    return missing


def factor_through_left_approx(h: Morphism, approx: LeftApproximation):
    """g with g o inclusion = h, when the connecting obstruction vanishes."""
    hb = hom_basis(approx.middle, h.target)
    F = h.source.field
    if not hb:
        return None
    cols = [b.after(approx.sequence.inclusion).flatten() for b in hb]
    system = Matrix(F, len(cols[0]), len(cols), [list(r) for r in zip(*cols)])
    sol = system.solve(Matrix.column(F, h.flatten()))
    if sol is None:
        return None
    g = Morphism.zero(approx.middle, h.target)
    for i, b in enumerate(hb):
        c = sol.data[i][0]
        if c != F.zero:
            g = g + b.scale(c)
    return g


# ---------------------------------------------------------------------------
# the generic module over the function field
# ---------------------------------------------------------------------------

@dataclass
class GenericModule:
    module: Representation
    algebra: CanonicalAlgebra        # the Kronecker algebra over k(t)
    base_algebra: CanonicalAlgebra


def kronecker_generic(alg: CanonicalAlgebra) -> GenericModule:
    """The rank-one function-field representation (1, t) of the Kronecker quiver."""
    if alg.weights:
        raise ApproximationError(
            "the generic module is realized for the Kronecker case only")
    if not isinstance(alg.field, (RationalField, PrimeField)):
        raise ApproximationError("base field must be Q or F_p")
    K = FunctionField(alg.field)
    alg_k = CanonicalAlgebra(K, [], [])
    one = Matrix.identity(K, 1)
    gen = Matrix(K, 1, 1, [[K.gen]])
    module = Representation(alg_k, {"0": 1, "c": 1}, {"x1": one, "x2": gen})
    return GenericModule(module, alg_k, alg)


def endolength(gm: GenericModule) -> int:
    """Length over the endomorphism ring: total function-field dimension."""
    end_dim = hom_dim(gm.module, gm.module)
    if end_dim != 1:
        raise ApproximationError("endomorphism ring is not a division ring")
    return gm.module.total_dim


@dataclass
class PegGrowth:
    dims: list
    witnesses: list   # monomorphism per level (or None)


def peg_hom_growth(peg: Representation, s: Representation, rmax: int,
                   rng=None) -> PegGrowth:
    """dim Hom(peg, S[r]) for r = 1..rmax, with monomorphism witnesses."""
    rng = rng if rng is not None else random.Random(0)
    alg = peg.algebra
    if alg.defect_form()(peg.dims) != -1:
        raise ApproximationError("peg must have defect -1")
    from .trisection import tube_of
    from .repcat import is_isomorphic

    tube = tube_of(s, rng)
    orbit = regular_simples(alg, tube, rng)
    socle = next(i for i, cand in enumerate(orbit)
                 if is_isomorphic(cand, s, rng) is not None)
    tower = uniserial_tower(alg, tube, socle, rmax, rng)
    dims, witnesses = [], []
    for layer in tower.layers:
        dims.append(hom_dim(peg, layer))
        witnesses.append(find_injective_morphism(peg, layer, rng))
    return PegGrowth(dims, witnesses)
