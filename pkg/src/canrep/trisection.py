"""Defect classification, split trisection, and the tube toolkit.

Tube identifiers: "arm:i" for the rank-p_i tubes attached to the arms, and
"pt:<monic irreducible>" (or "pt:∞" on the Kronecker quiver) for the
homogeneous tubes.  With the relation convention arm_i = arm_2 - l_i*arm_1,
the arm tubes occupy the points ∞ (arm 1), 0 (arm 2) and l_i (arm i >= 3);
degree-one homogeneous labels exclude exactly those values, and every tube
construction is certified by the predicate: defect zero, brick, and a cyclic
tau-orbit of the full rank.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass

from .errors import TubeError
from .exactla import (
    Matrix,
    companion_matrix,
    poly_parse,
    poly_to_str,
    poly_trim,
)
from .homology import ExtSpace, tau_inverse
from .quiver_algebra import SINK, SOURCE, CanonicalAlgebra, arm_vertex
from .repcat import (
    Morphism,
    Representation,
    direct_sum,
    hom_basis,
    hom_dim,
    indecomposable_summands,
    is_brick,
    is_irreducible_poly,
    is_isomorphic,
    projective_at,
)


class TrisectLabel(enum.Enum):
    P = "P"
    T = "T"
    Q = "Q"


def label_of_defect(value: int) -> TrisectLabel:
    if value < 0:
        return TrisectLabel.P
    if value > 0:
        return TrisectLabel.Q
    return TrisectLabel.T


INFINITY_POINT = "∞"


@dataclass(frozen=True)
class TubeId:
    """Either arm(i) or a homogeneous point (monic irreducible or ∞)."""

    kind: str                 # "arm" | "point"
    arm: int | None = None
    poly: tuple | None = None  # ascending monic coefficients; None means ∞

    @classmethod
    def for_arm(cls, i: int) -> "TubeId":
        return cls("arm", arm=i)

    @classmethod
    def for_point(cls, poly) -> "TubeId":
        return cls("point", poly=tuple(poly) if poly is not None else None)

    @property
    def is_infinity(self) -> bool:
        return self.kind == "point" and self.poly is None

    def to_str(self, field) -> str:
        if self.kind == "arm":
            return f"arm:{self.arm}"
        if self.is_infinity:
            return f"pt:{INFINITY_POINT}"
        return f"pt:{poly_to_str(field, self.poly)}"

    @classmethod
    def parse(cls, field, text: str) -> "TubeId":
        text = text.strip()
        if text.startswith("arm:"):
            return cls.for_arm(int(text[4:]))
        if text.startswith("pt:"):
            body = text[3:].strip()
            if body in (INFINITY_POINT, "inf", "infty"):
                return cls.for_point(None)
            return cls.for_point(poly_parse(field, body))
        raise TubeError(f"bad tube id {text!r}")


def validate_tube(alg: CanonicalAlgebra, tube: TubeId):
    t = alg.arm_count
    if tube.kind == "arm":
        if not 1 <= (tube.arm or 0) <= t:
            raise TubeError(f"no arm {tube.arm} on this algebra")
        return
    if t == 1:
        raise TubeError("single-arm algebras carry no supported point tubes")
    if tube.is_infinity:
        if t >= 1:
            raise TubeError("∞ is the arm-1 point on weighted algebras")
        return
    poly = poly_trim(alg.field, tube.poly)
    if len(poly) < 2:
        raise TubeError("point polynomial must be non-constant")
    if poly[-1] != alg.field.one:
        raise TubeError("point polynomial must be monic")
    if len(poly) == 2:
        a = alg.field.neg(poly[0])
        specials = []
        if t >= 2:
            specials.append(alg.field.zero)
        specials.extend(alg.params)
        if a in specials:
            raise TubeError("degree-one point collides with an arm tube")
    elif not is_irreducible_poly(alg.field, poly):
        raise TubeError("point polynomial must be irreducible")


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def classify(m: Representation, rng=None, certified: bool = False) -> TrisectLabel:
    """Defect-sign label of an indecomposable; decomposable input is rejected."""
    if m.is_zero():
        raise TubeError("zero module has no trisection label")
    if not certified:
        rng = rng if rng is not None else random.Random(0)
        if len(indecomposable_summands(m, rng)) != 1:
            raise TubeError("classify needs an indecomposable module")
    return label_of_defect(m.algebra.defect_form()(m.dims))


def pegs(alg: CanonicalAlgebra) -> list[Representation]:
    """Indecomposable projectives of defect -1; never empty."""
    delta = alg.defect_form()
    out = []
    for v in alg.vertices:
        p = projective_at(alg, v)
        if delta(p.dims) == -1:
            out.append(p)
    if not out:
        raise TubeError("no peg found (unsupported algebra?)")
    return out


@dataclass
class Trisection:
    p_part: Representation
    t_part: Representation
    q_part: Representation
    iso: Morphism          # p (+) t (+) q -> original
    iso_inverse: Morphism
    p_summands: list
    t_summands: list
    q_summands: list


def split_trisect(m: Representation, rng=None) -> Trisection:
    """m as p-part (+) t-part (+) q-part with an invertible certificate."""
    rng = rng if rng is not None else random.Random(0)
    alg = m.algebra
    delta = alg.defect_form()
    groups = {TrisectLabel.P: [], TrisectLabel.T: [], TrisectLabel.Q: []}
    for leaf, incl in indecomposable_summands(m, rng):
        groups[label_of_defect(delta(leaf.dims))].append((leaf, incl))
    sums = {}
    for lab, members in groups.items():
        sums[lab] = direct_sum([r for r, _ in members], alg)
    order = [TrisectLabel.P, TrisectLabel.T, TrisectLabel.Q]
    total = direct_sum([sums[lab].rep for lab in order], alg)
    iso = Morphism.zero(total.rep, m)
    for block, lab in enumerate(order):
        for (leaf, incl), proj in zip(groups[lab], sums[lab].projections):
            iso = iso + incl.after(proj).after(total.projections[block])
    inv = iso.inverse()
    if inv is None:
        raise TubeError("trisection certificate is not invertible")
    return Trisection(
        sums[TrisectLabel.P].rep, sums[TrisectLabel.T].rep, sums[TrisectLabel.Q].rep,
        iso, inv,
        [r for r, _ in groups[TrisectLabel.P]],
        [r for r, _ in groups[TrisectLabel.T]],
        [r for r, _ in groups[TrisectLabel.Q]],
    )


# ---------------------------------------------------------------------------
# regular simples
# ---------------------------------------------------------------------------

def _point_simple(alg: CanonicalAlgebra, tube: TubeId) -> Representation:
    F = alg.field
    t = alg.arm_count
    if tube.is_infinity:
        dims = {SOURCE: 1, SINK: 1}
        zero = Matrix.zeros(F, 1, 1)
        one = Matrix.identity(F, 1)
        return Representation(alg, dims, {"x1": zero, "x2": one})
    poly = poly_trim(F, tube.poly)
    d = len(poly) - 1
    comp = companion_matrix(F, poly)
    ident = Matrix.identity(F, d)
    dims = {v: d for v in alg.vertices}
    if t == 0:
        return Representation(alg, dims, {"x1": ident, "x2": comp})
    arrows = {}
    for i in range(1, t + 1):
        if i == 1:
            first = ident
        elif i == 2:
            first = comp
        else:
            lam = alg.params[i - 3]
            first = comp - ident.scale(lam)
        labels = alg.arm_composite(i)
        arrows[labels[0]] = first
        for lbl in labels[1:]:
            arrows[lbl] = ident
    return Representation(alg, dims, arrows)


def _arm_connecting_module(alg: CanonicalAlgebra, i: int) -> Representation:
    """The mouth module supported off arm i (dims 1 everywhere else)."""
    F = alg.field
    t = alg.arm_count
    dims = {v: 1 for v in alg.vertices}
    for v in alg.arm_vertices(i):
        dims[v] = 0
    if i == 1:
        beta = {j: F.one for j in range(1, t + 1)}
    elif i == 2:
        beta = {1: F.one}
        for j in range(3, t + 1):
            beta[j] = F.neg(alg.params[j - 3])
    else:
        lam_i = alg.params[i - 3]
        beta = {1: F.one, 2: lam_i}
        for j in range(3, t + 1):
            if j != i:
                beta[j] = F.sub(lam_i, alg.params[j - 3])
    arrows = {}
    for j in range(1, t + 1):
        labels = alg.arm_composite(j)
        if j == i:
            continue  # zero-dimensional middles force zero matrices
        arrows[labels[0]] = Matrix(F, 1, 1, [[beta[j]]])
        for lbl in labels[1:]:
            arrows[lbl] = Matrix.identity(F, 1)
    return Representation(alg, dims, arrows)


def _tube_cache(alg):
    cache = getattr(alg, "_canrep_tube_cache", None)
    if cache is None:
        cache = {}
        alg._canrep_tube_cache = cache
    return cache


def regular_simples(alg: CanonicalAlgebra, tube: TubeId, rng=None) -> list[Representation]:
    """The tau-orbit of mouth modules, ordered so entry k+1 = tau^{-1}(entry k)."""
    validate_tube(alg, tube)
    cache = _tube_cache(alg)
    key = (tube.kind, tube.arm, tube.poly)
    if key in cache:
        return cache[key]
    rng = rng if rng is not None else random.Random(0)
    delta = alg.defect_form()
    if tube.kind == "point":
        s = _point_simple(alg, tube)
        _verify_mouth(s, delta, rng)
        back = tau_inverse(s)
        if is_isomorphic(back, s, rng) is None:
            raise TubeError("homogeneous mouth is not tau-stable")
        cache[key] = [s]
        return cache[key]
    i = tube.arm
    candidates = [_arm_connecting_module(alg, i)]
    candidates += [
        Representation(alg, {arm_vertex(i, j): 1}, {}, check=False)
        for j in range(1, alg.weights[i - 1])
    ]
    for c in candidates:
        _verify_mouth(c, delta, rng)
    orbit = [candidates[1] if len(candidates) > 1 else candidates[0]]
    remaining = [c for c in candidates if c is not orbit[0]]
    cur = orbit[0]
    while remaining:
        nxt = tau_inverse(cur)
        match = None
        for c in remaining:
            if c.dims == nxt.dims and is_isomorphic(c, nxt, rng) is not None:
                match = c
                break
        if match is None:
            raise TubeError("tau walk left the candidate mouth set")
        orbit.append(match)
        remaining.remove(match)
        cur = match
    closing = tau_inverse(cur)
    if is_isomorphic(closing, orbit[0], rng) is None:
        raise TubeError("tau orbit does not close up")
    cache[key] = orbit
    return orbit


def _verify_mouth(s, delta, rng):
    if delta(s.dims) != 0:
        raise TubeError("mouth candidate has nonzero defect")
    if not is_brick(s, rng):
        raise TubeError("mouth candidate is not a brick")


def tau_period(s: Representation, rng=None) -> int:
    """Least r >= 1 with tau^r(s) isomorphic to s, for a regular simple."""
    rng = rng if rng is not None else random.Random(0)
    delta = s.algebra.defect_form()
    _verify_mouth(s, delta, rng)
    bound = sum(s.algebra.weights) + 2 if s.algebra.weights else 2
    cur = s
    for r in range(1, bound + 1):
        cur = tau_inverse(cur)
        if is_isomorphic(cur, s, rng) is not None:
            return r
    raise TubeError("tau period exceeded the weight bound; not a regular simple?")


# ---------------------------------------------------------------------------
# tube membership
# ---------------------------------------------------------------------------

def _composites(m: Representation):
    alg = m.algebra
    t = alg.arm_count
    idx = range(1, t + 1) if t else (1, 2)
    return {i: m.eval_path(alg.arm_composite(i), SOURCE) for i in idx}


def tube_of(m: Representation, rng=None) -> TubeId:
    """Tube of an indecomposable regular module via the Hom-membership predicate."""
    alg = m.algebra
    rng = rng if rng is not None else random.Random(0)
    if alg.defect_form()(m.dims) != 0:
        raise TubeError("module has nonzero defect")
    t = alg.arm_count
    if t == 1:
        raise TubeError("single-arm algebras are unsupported by tube machinery")
    for i in range(1, t + 1):
        tube = TubeId.for_arm(i)
        if any(hom_dim(s, m) > 0 for s in regular_simples(alg, tube, rng)):
            return tube
    comps = _composites(m)
    x1 = comps[1]
    if x1.rows != x1.cols or x1.inverse() is None:
        if t == 0:
            tube = TubeId.for_point(None)
            if hom_dim(regular_simples(alg, tube, rng)[0], m) > 0:
                return tube
        raise TubeError("module is not supported in a single tube")
    op = x1.inverse() * comps[2]
    coeffs = _matrix_minpoly(op)
    from .repcat import factor_poly

    factors = factor_poly(alg.field, coeffs)
    if len(factors) != 1:
        raise TubeError("module spans several homogeneous tubes")
    tube = TubeId.for_point(factors[0][0])
    validate_tube(alg, tube)
    if hom_dim(regular_simples(alg, tube, rng)[0], m) == 0:
        raise TubeError("membership verification failed")
    return tube


def _matrix_minpoly(mat: Matrix):
    F = mat.field
    flats = []
    power = Matrix.identity(F, mat.rows)
    for _ in range(mat.rows + 1):
        flat = list(power.entries_flat())
        if flats:
            cols = Matrix(F, len(flat), len(flats), [list(r) for r in zip(*flats)])
            sol = cols.solve(Matrix.column(F, flat))
            if sol is not None:
                coeffs = [F.neg(sol.data[i][0]) for i in range(sol.rows)]
                coeffs.append(F.one)
                return tuple(coeffs)
        flats.append(flat)
        power = power * mat
    raise TubeError("minimal polynomial bound exceeded")


# ---------------------------------------------------------------------------
# uniserial towers S[1] c S[2] c ... c S[r]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TubePosition:
    tube: TubeId
    socle: int
    rlen: int


@dataclass
class UniserialTower:
    position: TubePosition
    layers: list          # [S[1], ..., S[r]]
    inclusions: list      # S[j] -> S[j+1]
    tops: list            # cokernel witnesses: tops[j] ~ tau^{-j}(socle)

    @property
    def top_module(self) -> Representation:
        return self.layers[-1]

    def socle_inclusion(self) -> Morphism:
        incl = Morphism.identity(self.layers[0])
        for step in self.inclusions:
            incl = step.after(incl)
        return incl


def uniserial_tower(alg: CanonicalAlgebra, tube: TubeId, socle_index: int,
                    rlen: int, rng=None) -> UniserialTower:
    if rlen < 1:
        raise TubeError("regular length must be >= 1")
    rng = rng if rng is not None else random.Random(0)
    orbit = regular_simples(alg, tube, rng)
    n = len(orbit)
    if not 0 <= socle_index < n:
        raise TubeError(f"socle index out of range 0..{n - 1}")
    layers = [orbit[socle_index]]
    inclusions, tops = [], []
    for j in range(1, rlen):
        top = orbit[(socle_index + j) % n]
        space = ExtSpace(top, layers[-1])
        basis = space.basis()
        if not basis:
            raise TubeError("missing extension while stacking the tube")
        ses = basis[0].realize()
        layers.append(ses.middle)
        inclusions.append(ses.inclusion)
        tops.append(ses.quotient)
    return UniserialTower(TubePosition(tube, socle_index, rlen), layers, inclusions, tops)


def s_bracket(s: Representation, rlen: int, rng=None):
    """S[r] for a regular simple s; returns (representation, TubePosition)."""
    rng = rng if rng is not None else random.Random(0)
    alg = s.algebra
    tube = tube_of(s, rng)
    orbit = regular_simples(alg, tube, rng)
    socle = next(i for i, cand in enumerate(orbit)
                 if is_isomorphic(cand, s, rng) is not None)
    tower = uniserial_tower(alg, tube, socle, rlen, rng)
    return tower.top_module, tower.position


# ---------------------------------------------------------------------------
# regular series, partitions, torsion part
# ---------------------------------------------------------------------------

def regular_series(m: Representation, rng=None):
    """[(summand, [socle-first regular composition factors])] for m in add t."""
    rng = rng if rng is not None else random.Random(0)
    alg = m.algebra
    delta = alg.defect_form()
    out = []
    for leaf, _ in indecomposable_summands(m, rng):
        if delta(leaf.dims) != 0:
            raise TubeError("regular series needs a defect-zero module")
        factors = []
        current = leaf
        guard = leaf.total_dim + 1
        while not current.is_zero():
            guard -= 1
            if guard < 0:
                raise TubeError("socle peeling did not terminate")
            tube = tube_of(current, rng)
            orbit = regular_simples(alg, tube, rng)
            socle = None
            for cand in orbit:
                maps = hom_basis(cand, current)
                if maps:
                    socle = (cand, maps[0])
                    break
            if socle is None:
                raise TubeError("no mouth maps into a regular module")
            cand, f = socle
            if not f.is_injective():
                raise TubeError("mouth map is not injective (not regular?)")
            from .repcat import cokernel

            current, _ = cokernel(f)
            factors.append(cand)
        out.append((leaf, factors))
    return out


@dataclass
class TubePartition:
    inside: Representation
    outside: Representation
    iso: Morphism
    iso_inverse: Morphism
    inside_summands: list
    outside_summands: list


def partition_by_tubes(m: Representation, tubes, rng=None) -> TubePartition:
    """Split m in add t by tube support (inside the given set vs outside)."""
    rng = rng if rng is not None else random.Random(0)
    alg = m.algebra
    chosen = set()
    for tube in tubes:
        validate_tube(alg, tube)
        chosen.add((tube.kind, tube.arm, tube.poly))
    delta = alg.defect_form()
    ins, outs = [], []
    for leaf, incl in indecomposable_summands(m, rng):
        if delta(leaf.dims) != 0:
            raise TubeError("partition needs a module in add t")
        tube = tube_of(leaf, rng)
        (ins if (tube.kind, tube.arm, tube.poly) in chosen else outs).append((leaf, incl))
    sum_in = direct_sum([r for r, _ in ins], alg)
    sum_out = direct_sum([r for r, _ in outs], alg)
    total = direct_sum([sum_in.rep, sum_out.rep], alg)
    iso = Morphism.zero(total.rep, m)
    for block, members in enumerate((ins, outs)):
        inner = (sum_in, sum_out)[block]
        for (leaf, incl), proj in zip(members, inner.projections):
            iso = iso + incl.after(proj).after(total.projections[block])
    inv = iso.inverse()
    if inv is None:
        raise TubeError("tube partition certificate is not invertible")
    return TubePartition(sum_in.rep, sum_out.rep, iso, inv,
                         [r for r, _ in ins], [r for r, _ in outs])


@dataclass
class TorsionPart:
    module: Representation       # tM
    inclusion: Morphism          # tM -> m
    quotient: Representation     # m / tM
    projection: Morphism


def torsion_part(m: Representation, rng=None) -> TorsionPart:
    """Maximal submodule generated by the tubes: the t- and q-parts of m.

    Hom(t, p) = 0 kills any trace in the p-part, the t-part is trivially
    generated, and every q-summand is generated by any single tube (maps from
    S[r] extend along the tower since Ext^1 from the tubes into q vanishes).
    """
    rng = rng if rng is not None else random.Random(0)
    tri = split_trisect(m, rng)
    alg = m.algebra
    tq = direct_sum([tri.t_part, tri.q_part], alg)
    # embed t (+) q through the trisection certificate
    three = direct_sum([tri.p_part, tri.t_part, tri.q_part], alg)
    incl = tri.iso.after(
        three.injections[1].after(tq.projections[0])
        + three.injections[2].after(tq.projections[1]))
    from .repcat import cokernel

    quotient, proj = cokernel(incl)
    return TorsionPart(tq.rep, incl, quotient, proj)
