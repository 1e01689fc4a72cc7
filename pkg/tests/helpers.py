"""Shared construction helpers for the test suite."""

from canrep.exactla import Matrix, PrimeField, RationalField
from canrep.quiver_algebra import canonical_algebra
from canrep.repcat import Representation

QQ = RationalField()
F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)


def kron(field=QQ):
    return canonical_algebra(field, [], [])


def mk_rep(alg, dims, arrows):
    F = alg.field
    mats = {}
    for label, rows in arrows.items():
        a = alg.arrow_by_label[label]
        mats[label] = Matrix(F, dims.get(a.target, 0), dims.get(a.source, 0),
                             [[F.coerce(x) for x in r] for r in rows])
    return Representation(alg, dims, mats)


def kron_point(alg, a):
    """Degree-one regular simple (1, a) on the Kronecker quiver."""
    F = alg.field
    return mk_rep(alg, {"0": 1, "c": 1}, {"x1": [[F.one]], "x2": [[F.coerce(a)]]})


def kron_jordan(alg, a, r):
    """Uniserial Jordan model of regular length r at the point a."""
    F = alg.field
    ident = Matrix.identity(F, r)
    jordan = [[F.coerce(a) if i == j else (F.one if j == i + 1 else F.zero)
               for j in range(r)] for i in range(r)]
    return Representation(alg, {"0": r, "c": r},
                          {"x1": ident, "x2": Matrix(F, r, r, jordan)})


def random_invertible(field, n, rng):
    while True:
        m = Matrix(field, n, n,
                   [[field.random(rng) for _ in range(n)] for _ in range(n)])
        if m.inverse() is not None:
            return m


def conjugate(rep, rng):
    """Random basis change of a representation (an isomorphic copy)."""
    alg, F = rep.algebra, rep.field
    g = {v: random_invertible(F, rep.dims[v], rng) for v in alg.vertices}
    arrows = {}
    for a in alg.arrows:
        arrows[a.label] = g[a.target] * rep.arrows[a.label] * g[a.source].inverse()
    return Representation(alg, dict(rep.dims), arrows)


def brute_force_hom_dim(m, n):
    """Count all commuting vertex-map tuples over a finite field; log_p gives dim."""
    import itertools

    alg, F = m.algebra, m.field
    shapes = [(v, n.dims[v], m.dims[v]) for v in alg.vertices]
    total_entries = sum(r * c for _, r, c in shapes)
    count = 0
    for flat in itertools.product(range(F.p), repeat=total_entries):
        maps = {}
        pos = 0
        for v, r, c in shapes:
            maps[v] = Matrix(F, r, c,
                             [list(flat[pos + i * c: pos + (i + 1) * c]) for i in range(r)])
            pos += r * c
        ok = True
        for a in alg.arrows:
            if maps[a.target] * m.arrows[a.label] != n.arrows[a.label] * maps[a.source]:
                ok = False
                break
        if ok:
            count += 1
    dim = 0
    while F.p ** dim < count:
        dim += 1
    assert F.p ** dim == count, "solution set is not a subspace?"
    return dim
