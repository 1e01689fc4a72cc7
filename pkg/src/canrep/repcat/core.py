"""Representations of a quiver algebra and their category-level operations.

Hom spaces, kernels/cokernels/images, direct sums, simples, projectives,
injectives, radicals and minimal projective presentations.  Everything is
exact; every constructed value re-verifies its defining constraints.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import AlgebraError, DimensionMismatch
from ..exactla import Matrix
from ..quiver_algebra import QuiverAlgebra


class Representation:
    """Per-vertex dimensions plus one matrix per arrow (target x source)."""

    def __init__(self, algebra: QuiverAlgebra, dims: dict, arrow_matrices: dict,
                 check: bool = True):
        self.algebra = algebra
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        if any(d < 0 for d in self.dims.values()):
            raise DimensionMismatch("negative dimension")
        self.arrows = {}
        for a in algebra.arrows:
            mat = arrow_matrices.get(a.label)
            if mat is None:
                mat = Matrix.zeros(algebra.field, self.dims[a.target], self.dims[a.source])
            if mat.rows != self.dims[a.target] or mat.cols != self.dims[a.source]:
                raise DimensionMismatch(
                    f"arrow {a.label}: expected {self.dims[a.target]}x{self.dims[a.source]}")
            self.arrows[a.label] = mat
        if check:
            self.verify_relations()

    @property
    def field(self):
        return self.algebra.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def eval_path(self, path, at_vertex=None) -> Matrix:
        """Composite matrix of a path (traversal order); empty path needs a vertex."""
        if not path:
            if at_vertex is None:
                raise AlgebraError("empty path needs an explicit vertex")
            return Matrix.identity(self.field, self.dims[at_vertex])
        out = self.arrows[path[0]]
        for lbl in path[1:]:
            out = self.arrows[lbl] * out
        return out

    def verify_relations(self):
        for rel in self.algebra.relations:
            src, tgt = self.algebra.path_endpoints(rel.terms[0][1])
            acc = Matrix.zeros(self.field, self.dims[tgt], self.dims[src])
            for coeff, path in rel.terms:
                acc = acc + self.eval_path(path, src).scale(coeff)
            if not acc.is_zero():
                raise AlgebraError("representation violates a relation")

    def dims_tuple(self):
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def __repr__(self):
        body = ", ".join(f"{v}:{self.dims[v]}" for v in self.algebra.vertices)
        return f"Rep({body})"


def zero_representation(algebra) -> Representation:
    return Representation(algebra, {}, {}, check=False)


class Morphism:
    """A per-vertex matrix tuple with exact commuting squares."""

    def __init__(self, source: Representation, target: Representation, maps: dict,
                 check: bool = True):
        if not source.algebra.same_as(target.algebra):
            raise AlgebraError("morphism endpoints live over different algebras")
        self.source = source
        self.target = target
        self.maps = {}
        for v in source.algebra.vertices:
            mat = maps.get(v)
            if mat is None:
                mat = Matrix.zeros(source.field, target.dims[v], source.dims[v])
            if mat.rows != target.dims[v] or mat.cols != source.dims[v]:
                raise DimensionMismatch(f"component at {v} has wrong shape")
            self.maps[v] = mat
        if check:
            self.verify()

    def verify(self):
        for a in self.source.algebra.arrows:
            left = self.maps[a.target] * self.source.arrows[a.label]
            right = self.target.arrows[a.label] * self.maps[a.source]
            if left != right:
                raise AlgebraError(f"square at arrow {a.label} does not commute")

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, {}, check=False)

    @classmethod
    def identity(cls, rep):
        maps = {v: Matrix.identity(rep.field, rep.dims[v]) for v in rep.algebra.vertices}
        return cls(rep, rep, maps, check=False)

    def after(self, other: "Morphism") -> "Morphism":
        """self composed after other (self o other)."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise DimensionMismatch("composition mismatch")
        maps = {v: self.maps[v] * other.maps[v] for v in self.maps}
        return Morphism(other.source, self.target, maps, check=False)

    def __add__(self, other):
        maps = {v: self.maps[v] + other.maps[v] for v in self.maps}
        return Morphism(self.source, self.target, maps, check=False)

    def __sub__(self, other):
        maps = {v: self.maps[v] - other.maps[v] for v in self.maps}
        return Morphism(self.source, self.target, maps, check=False)

    def scale(self, s):
        return Morphism(self.source, self.target,
                        {v: m.scale(s) for v, m in self.maps.items()}, check=False)

    def __eq__(self, other):
        return (isinstance(other, Morphism)
                and self.source.dims == other.source.dims
                and self.target.dims == other.target.dims
                and self.maps == other.maps)

    def __hash__(self):
        return hash(tuple(sorted((v, m) for v, m in self.maps.items())))

    def is_zero(self):
        return all(m.is_zero() for m in self.maps.values())

    def is_injective(self):
        return all(m.is_injective() for m in self.maps.values())

    def is_surjective(self):
        return all(m.is_surjective() for m in self.maps.values())

    def inverse(self) -> "Morphism | None":
        invs = {}
        for v, m in self.maps.items():
            mi = m.inverse()
            if mi is None:
                return None
            invs[v] = mi
        return Morphism(self.target, self.source, invs, check=False)

    def flatten(self):
        """Concatenated row-major entries in algebra vertex order."""
        out = []
        for v in self.source.algebra.vertices:
            out.extend(self.maps[v].entries_flat())
        return out

    def __repr__(self):
        return f"Morphism({self.source!r} -> {self.target!r})"


def morphism_from_flat(source, target, flat) -> Morphism:
    maps = {}
    pos = 0
    F = source.field
    for v in source.algebra.vertices:
        r, c = target.dims[v], source.dims[v]
        maps[v] = Matrix(F, r, c, [flat[pos + i * c: pos + (i + 1) * c] for i in range(r)])
        pos += r * c
    return Morphism(source, target, maps, check=False)


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------

def hom_basis(m: Representation, n: Representation) -> list[Morphism]:
    """Basis of Hom(m, n) by solving all commuting-square systems at once."""
    if not m.algebra.same_as(n.algebra):
        raise AlgebraError("hom between representations over different algebras")
    alg, F = m.algebra, m.field
    offsets = {}
    pos = 0
    for v in alg.vertices:
        offsets[v] = pos
        pos += n.dims[v] * m.dims[v]
    total = pos
    rows = []
    zero = F.zero
    for a in alg.arrows:
        s, t = a.source, a.target
        ma, na = m.arrows[a.label], n.arrows[a.label]
        et, ds = n.dims[t], m.dims[s]
        for i in range(et):
            for j in range(ds):
                row = [zero] * total
                # (f_t * ma)[i, j]
                base_t = offsets[t]
                dt_cols = m.dims[t]
                for k in range(dt_cols):
                    c = ma.data[k][j]
                    if c != zero:
                        row[base_t + i * dt_cols + k] = F.add(
                            row[base_t + i * dt_cols + k], c)
                # -(na * f_s)[i, j]
                base_s = offsets[s]
                ds_cols = m.dims[s]
                for k in range(n.dims[s]):
                    c = na.data[i][k]
                    if c != zero:
                        idx = base_s + k * ds_cols + j
                        row[idx] = F.sub(row[idx], c)
                rows.append(row)
    if not rows:
        system = Matrix.zeros(F, 0, total)
    else:
        system = Matrix(F, len(rows), total, rows)
    ker = system.kernel_basis()
    basis = []
    for j in range(ker.cols):
        flat = [ker.data[i][j] for i in range(ker.rows)]
        basis.append(morphism_from_flat(m, n, flat))
    return basis


def hom_dim(m, n) -> int:
    return len(hom_basis(m, n))


def coordinates_in_hom_basis(f: Morphism, basis: list[Morphism]):
    """Coefficients of f over a hom-space basis, or None if outside the span."""
    F = f.source.field
    if not basis:
        return [] if f.is_zero() else None
    cols = [b.flatten() for b in basis]
    mat = Matrix(F, len(cols[0]), len(cols), [list(r) for r in zip(*cols)])
    rhs = Matrix.column(F, f.flatten())
    sol = mat.solve(rhs)
    if sol is None:
        return None
    return [sol.data[i][0] for i in range(sol.rows)]


# ---------------------------------------------------------------------------
# direct sums
# ---------------------------------------------------------------------------

@dataclass
class DirectSum:
    rep: Representation
    injections: list
    projections: list


def direct_sum(parts: list[Representation], algebra=None) -> DirectSum:
    """Block-diagonal sum with injections/projections satisfying biproduct laws."""
    if not parts:
        if algebra is None:
            raise AlgebraError("empty direct sum needs an explicit algebra")
        return DirectSum(zero_representation(algebra), [], [])
    alg = parts[0].algebra
    F = parts[0].field
    dims = {v: sum(p.dims[v] for p in parts) for v in alg.vertices}
    arrows = {}
    for a in alg.arrows:
        arrows[a.label] = Matrix.block_diag(F, [p.arrows[a.label] for p in parts])
    total = Representation(alg, dims, arrows, check=False)
    injections, projections = [], []
    offs = {v: 0 for v in alg.vertices}
    for p in parts:
        inj, proj = {}, {}
        for v in alg.vertices:
            o, d, D = offs[v], p.dims[v], dims[v]
            zi = Matrix.zeros(F, D, d)
            zp = Matrix.zeros(F, d, D)
            di = [list(r) for r in zi.data]
            dp = [list(r) for r in zp.data]
            for i in range(d):
                di[o + i][i] = F.one
                dp[i][o + i] = F.one
            inj[v] = Matrix(F, D, d, di)
            proj[v] = Matrix(F, d, D, dp)
            offs[v] = o + d
        injections.append(Morphism(p, total, inj, check=False))
        projections.append(Morphism(total, p, proj, check=False))
    return DirectSum(total, injections, projections)


# ---------------------------------------------------------------------------
# kernels, cokernels, images
# ---------------------------------------------------------------------------

def kernel(f: Morphism):
    """(sub-representation, inclusion) of ker f."""
    alg, F = f.source.algebra, f.source.field
    bases = {v: f.maps[v].kernel_basis() for v in alg.vertices}
    dims = {v: bases[v].cols for v in alg.vertices}
    arrows = {}
    for a in alg.arrows:
        image = f.source.arrows[a.label] * bases[a.source]
        sol = bases[a.target].solve(image)
        if sol is None:
            raise AlgebraError("kernel is not arrow-stable (internal error)")
        arrows[a.label] = sol
    ker = Representation(alg, dims, arrows, check=False)
    incl = Morphism(ker, f.source, {v: bases[v] for v in alg.vertices}, check=False)
    return ker, incl


def image(f: Morphism):
    """(sub-representation of target, inclusion, epi from source)."""
    alg, F = f.source.algebra, f.source.field
    bases = {v: f.maps[v].column_space_basis() for v in alg.vertices}
    dims = {v: bases[v].cols for v in alg.vertices}
    arrows = {}
    for a in alg.arrows:
        sol = bases[a.target].solve(f.target.arrows[a.label] * bases[a.source])
        if sol is None:
            raise AlgebraError("image is not arrow-stable (internal error)")
        arrows[a.label] = sol
    img = Representation(alg, dims, arrows, check=False)
    incl = Morphism(img, f.target, bases, check=False)
    epis = {v: bases[v].solve(f.maps[v]) for v in alg.vertices}
    if any(e is None for e in epis.values()):
        raise AlgebraError("image factorization failed (internal error)")
    epi = Morphism(f.source, img, epis, check=False)
    return img, incl, epi


def cokernel(f: Morphism):
    """(quotient representation, projection) of coker f."""
    alg, F = f.target.algebra, f.target.field
    projs, lifts = {}, {}
    for v in alg.vertices:
        col = f.maps[v].column_space_basis()
        n = f.target.dims[v]
        aug = col.hstack(Matrix.identity(F, n))
        _, pivots = aug.rref()
        comp_cols = [j - col.cols for j in pivots if j >= col.cols]
        basis = col
        comp = Matrix(F, n, len(comp_cols),
                      [[F.one if i == j else F.zero for j in comp_cols] for i in range(n)])
        full = basis.hstack(comp)
        inv = full.inverse()
        if inv is None:
            raise AlgebraError("cokernel basis completion failed (internal error)")
        projs[v] = inv.submatrix(range(col.cols, n), range(n))
        lifts[v] = comp
    dims = {v: projs[v].rows for v in alg.vertices}
    arrows = {}
    for a in alg.arrows:
        arrows[a.label] = projs[a.target] * f.target.arrows[a.label] * lifts[a.source]
    cok = Representation(alg, dims, arrows, check=False)
    proj = Morphism(f.target, cok, projs, check=False)
    return cok, proj


def factor_through_surjection(p: Morphism, f: Morphism) -> Morphism | None:
    """g with g o p = f, for p a split-free surjection (vertexwise solve)."""
    maps = {}
    for v in p.source.algebra.vertices:
        sol = p.maps[v].transpose().solve(f.maps[v].transpose())
        if sol is None:
            return None
        maps[v] = sol.transpose()
    g = Morphism(p.target, f.target, maps, check=False)
    return g if g.after(p) == f else None


def factor_through_injection(i: Morphism, f: Morphism) -> Morphism | None:
    """g with i o g = f, when f lands inside the image of the inclusion i."""
    maps = {}
    for v in i.source.algebra.vertices:
        sol = i.maps[v].solve(f.maps[v])
        if sol is None:
            return None
        maps[v] = sol
    g = Morphism(f.source, i.source, maps, check=False)
    return g if i.after(g) == f else None


# ---------------------------------------------------------------------------
# simples, projectives, injectives
# ---------------------------------------------------------------------------

def simple_at(algebra, v) -> Representation:
    if v not in algebra.vertex_index:
        raise AlgebraError(f"no vertex {v}")
    return Representation(algebra, {v: 1}, {}, check=False)


def projective_at(algebra, w) -> Representation:
    """P(w): path spaces from w, arrows act by path extension."""
    if w not in algebra.vertex_index:
        raise AlgebraError(f"no vertex {w}")
    F = algebra.field
    dims = {v: algebra.path_space_dim(w, v) for v in algebra.vertices}
    arrows = {}
    for a in algebra.arrows:
        plist, basis, _ = algebra.path_space(w, a.source)
        cols = []
        for bidx in basis:
            path = plist[bidx]
            cols.append(algebra.reduce_path(w, a.target, path + (a.label,)))
        if cols:
            mat = Matrix(F, dims[a.target], len(cols), [list(r) for r in zip(*cols)])
        else:
            mat = Matrix.zeros(F, dims[a.target], 0)
        arrows[a.label] = mat
    return Representation(algebra, dims, arrows)


def injective_at(algebra, v) -> Representation:
    """I(v): dual of the opposite projective at v."""
    opp = algebra.opposite()
    return dualize(projective_at(opp, v), algebra)


def dualize(rep: Representation, into_algebra) -> Representation:
    """Vector-space dual: a module over the opposite algebra."""
    if not rep.algebra.opposite().same_as(into_algebra):
        raise AlgebraError("dualize target must be the opposite algebra")
    arrows = {}
    for a in into_algebra.arrows:
        arrows[a.label] = rep.arrows[a.label].transpose()
    return Representation(into_algebra, dict(rep.dims), arrows)


# ---------------------------------------------------------------------------
# radical, top, projective presentations
# ---------------------------------------------------------------------------

def radical(m: Representation):
    """(rad m, inclusion): the sum of all arrow images."""
    alg, F = m.algebra, m.field
    bases = {}
    for v in alg.vertices:
        stacked = None
        for a in alg.arrows:
            if a.target != v:
                continue
            mat = m.arrows[a.label]
            stacked = mat if stacked is None else stacked.hstack(mat)
        if stacked is None:
            stacked = Matrix.zeros(F, m.dims[v], 0)
        bases[v] = stacked.column_space_basis()
    dims = {v: bases[v].cols for v in alg.vertices}
    arrows = {}
    for a in alg.arrows:
        sol = bases[a.target].solve(m.arrows[a.label] * bases[a.source])
        if sol is None:
            raise AlgebraError("radical is not arrow-stable (internal error)")
        arrows[a.label] = sol
    rad = Representation(alg, dims, arrows, check=False)
    return rad, Morphism(rad, m, bases, check=False)


def top(m: Representation):
    """(m / rad m, projection)."""
    _, incl = radical(m)
    return cokernel(incl)


@dataclass
class ProjSum:
    """Direct sum of indecomposable projectives with summand bookkeeping."""

    rep: Representation
    summand_vertices: list
    offsets: list  # offsets[i][v] = start of summand i inside the v-component

    def generator_coordinate(self, i: int) -> int:
        v = self.summand_vertices[i]
        # the trivial path is the first basis element of the (v, v) path space
        return self.offsets[i][v]


def projective_sum(algebra, vertices) -> ProjSum:
    parts = [projective_at(algebra, v) for v in vertices]
    if not parts:
        return ProjSum(zero_representation(algebra), [], [])
    ds = direct_sum(parts, algebra)
    offsets = []
    acc = {v: 0 for v in algebra.vertices}
    for p in parts:
        offsets.append(dict(acc))
        for v in algebra.vertices:
            acc[v] += p.dims[v]
    return ProjSum(ds.rep, list(vertices), offsets)


def morphism_from_projective(algebra, w, target: Representation, gen_vector) -> Morphism:
    """P(w) -> target sending the trivial-path generator to gen_vector."""
    F = algebra.field
    proj = projective_at(algebra, w)
    maps = {}
    for v in algebra.vertices:
        plist, basis, _ = algebra.path_space(w, v)
        cols = []
        for bidx in basis:
            comp = target.eval_path(plist[bidx], w)
            col = comp * gen_vector
            cols.append([col.data[i][0] for i in range(col.rows)])
        if cols:
            maps[v] = Matrix(F, target.dims[v], len(cols), [list(r) for r in zip(*cols)])
        else:
            maps[v] = Matrix.zeros(F, target.dims[v], 0)
    return Morphism(proj, target, maps, check=False)


def morphism_from_projective_sum(ps: ProjSum, target: Representation,
                                 gen_vectors) -> Morphism:
    """Stack of generator-image morphisms out of each summand."""
    alg, F = ps.rep.algebra, ps.rep.field
    comps = [morphism_from_projective(alg, v, target, g)
             for v, g in zip(ps.summand_vertices, gen_vectors)]
    maps = {}
    for v in alg.vertices:
        mats = [c.maps[v] for c in comps]
        if mats:
            acc = mats[0]
            for mat in mats[1:]:
                acc = acc.hstack(mat)
            maps[v] = acc
        else:
            maps[v] = Matrix.zeros(F, target.dims[v], 0)
    return Morphism(ps.rep, target, maps, check=False)


def projective_cover(m: Representation):
    """(ProjSum P0, cover morphism P0 -> m); kernel lies in rad P0."""
    alg, F = m.algebra, m.field
    rad, incl = radical(m)
    verts, gens = [], []
    for v in alg.vertices:
        n = m.dims[v]
        if n == 0:
            continue
        aug = incl.maps[v].hstack(Matrix.identity(F, n))
        _, pivots = aug.rref()
        for j in pivots:
            if j >= incl.maps[v].cols:
                idx = j - incl.maps[v].cols
                col = [F.one if i == idx else F.zero for i in range(n)]
                verts.append(v)
                gens.append(Matrix.column(F, col))
    ps = projective_sum(alg, verts)
    cover = morphism_from_projective_sum(ps, m, gens)
    if not cover.is_surjective():
        raise AlgebraError("projective cover is not surjective (internal error)")
    return ps, cover


@dataclass
class Presentation:
    """Minimal projective presentation P1 -> P0 -> m -> 0 with its syzygy."""

    module: Representation
    p0: ProjSum
    cover: Morphism          # p0.rep -> module
    omega: Representation    # kernel of the cover
    omega_incl: Morphism     # omega -> p0.rep
    p1: ProjSum
    p1_cover: Morphism       # p1.rep -> omega
    d: Morphism              # p1.rep -> p0.rep


def minimal_projective_presentation(m: Representation) -> Presentation:
    p0, cover = projective_cover(m)
    omega, omega_incl = kernel(cover)
    p1, p1_cover = projective_cover(omega)
    d = omega_incl.after(p1_cover)
    # minimality certificate: the syzygy sits inside rad P0
    rad0, rad_incl = radical(p0.rep)
    for v in m.algebra.vertices:
        stack = rad_incl.maps[v].hstack(omega_incl.maps[v])
        if stack.rank() != rad_incl.maps[v].rank():
            raise AlgebraError("projective cover not minimal (internal error)")
    return Presentation(m, p0, cover, omega, omega_incl, p1, p1_cover, d)
