"""Command-line front end: classification, decomposition, approximation, slopes.

Every command reads JSON specs, runs the corresponding pipeline, and prints
one machine-readable report (JSON, or TSV where noted).  All randomized
behavior flows from --seed; identical inputs and seed give byte-identical
output.  Exit codes: 0 success, 1 domain error (structured JSON on stdout),
2 parse errors.
"""

from __future__ import annotations

import argparse
import random
import sys

from .approx import (
    TruncationParams,
    endolength,
    kronecker_generic,
    left_omega_approx,
    peg_hom_growth,
    right_omega_approx,
)
from .errors import CanrepError, ParseError
from .homology import ext1_basis, tau_inverse_with_report, tau_with_report
from .repcat import decompose, hom_basis, projective_at
from .serialize import (
    dumps,
    load_algebra,
    load_representation,
    morphism_to_json,
    rep_to_json,
    ses_to_json,
)
from .trisection import (
    TubeId,
    classify,
    partition_by_tubes,
    pegs,
    regular_simples,
    split_trisect,
    uniserial_tower,
)
from .tubular_slopes import (
    Slope,
    TubularAlgebra,
    chain_toward_slope,
    slope_order_check,
)

SEED_REQUIRED = {"decompose", "split-trisect", "partition-tubes", "omega-right",
                 "slope-check", "chain"}


def _load_rep(args):
    algebra = load_algebra(args.algebra) if getattr(args, "algebra", None) else None
    return load_representation(args.rep, algebra)


def _rng(args):
    return random.Random(args.seed if args.seed is not None else 0)


def _tubes(field, text):
    return tuple(TubeId.parse(field, part) for part in text.split(",") if part.strip())


# ---------------------------------------------------------------------------
# handlers, one per subcommand
# ---------------------------------------------------------------------------

def cmd_classify(args):
    m = _load_rep(args)
    label = classify(m, _rng(args))
    return {"label": label.value, "defect": m.algebra.defect_form()(m.dims)}


def cmd_defect(args):
    m = _load_rep(args)
    return {"defect": m.algebra.defect_form()(m.dims),
            "dims": {v: m.dims[v] for v in m.algebra.vertices}}


def cmd_decompose(args):
    m = _load_rep(args)
    dec = decompose(m, _rng(args))
    return {
        "summands": [{"multiplicity": k, "rep": rep_to_json(r, include_algebra=False)}
                     for r, k in dec.summands],
        "certified": True,
        "algebra": m.algebra.spec(),
    }


def cmd_hom(args):
    algebra = load_algebra(args.algebra) if args.algebra else None
    m = load_representation(args.source, algebra)
    n = load_representation(args.target, algebra or m.algebra)
    basis = hom_basis(m, n)
    return {"dim": len(basis), "basis": [morphism_to_json(f) for f in basis]}


def cmd_ext(args):
    algebra = load_algebra(args.algebra) if args.algebra else None
    n = load_representation(args.source, algebra)
    m = load_representation(args.target, algebra or n.algebra)
    classes = ext1_basis(n, m)
    middles = [rep_to_json(cls.realize().middle, include_algebra=False)
               for cls in classes]
    return {"dim": len(classes), "middles": middles}


def cmd_tau(args):
    m = _load_rep(args)
    rep = tau_inverse_with_report(m) if args.inverse else tau_with_report(m)
    return {"result": rep_to_json(rep.result, include_algebra=False),
            "dropped_summands": rep.dropped_summands,
            "algebra": m.algebra.spec()}


def cmd_tube_simples(args):
    alg = load_algebra(args.algebra)
    tube = TubeId.parse(alg.field, args.tube)
    orbit = regular_simples(alg, tube, _rng(args))
    return {"tube": tube.to_str(alg.field),
            "simples": [rep_to_json(s, include_algebra=False) for s in orbit],
            "algebra": alg.spec()}


def cmd_sbracket(args):
    alg = load_algebra(args.algebra)
    tube = TubeId.parse(alg.field, args.tube)
    tower = uniserial_tower(alg, tube, args.socle, args.rlen, _rng(args))
    return {"rep": rep_to_json(tower.top_module, include_algebra=False),
            "position": {"tube": tube.to_str(alg.field),
                         "socle": tower.position.socle,
                         "rlen": tower.position.rlen},
            "algebra": alg.spec()}


def cmd_split_trisect(args):
    m = _load_rep(args)
    tri = split_trisect(m, _rng(args))
    return {
        "p": rep_to_json(tri.p_part, include_algebra=False),
        "t": rep_to_json(tri.t_part, include_algebra=False),
        "q": rep_to_json(tri.q_part, include_algebra=False),
        "certified": True,
        "algebra": m.algebra.spec(),
    }


def cmd_partition_tubes(args):
    m = _load_rep(args)
    tubes = _tubes(m.algebra.field, args.tubes)
    part = partition_by_tubes(m, tubes, _rng(args))
    return {
        "inside": rep_to_json(part.inside, include_algebra=False),
        "outside": rep_to_json(part.outside, include_algebra=False),
        "tubes": [t.to_str(m.algebra.field) for t in tubes],
        "certified": True,
    }


def cmd_omega_left(args):
    m = _load_rep(args)
    params = TruncationParams(_tubes(m.algebra.field, args.tubes), args.depth)
    ap = left_omega_approx(m, params, _rng(args))
    return {
        "sequence": ses_to_json(ap.sequence),
        "stripped": rep_to_json(ap.stripped, include_algebra=False),
        "multiplicities": {TubeId(*key).to_str(m.algebra.field): mults
                           for key, mults in ap.multiplicities.items()},
        "certificates": ap.certificates,
    }


def cmd_omega_right(args):
    m = _load_rep(args)
    params = TruncationParams(_tubes(m.algebra.field, args.tubes), args.depth)
    ap = right_omega_approx(m, params, _rng(args))
    return {
        "sequence": ses_to_json(ap.sequence),
        "cover_blocks": [[t.to_str(m.algebra.field), i, b]
                         for t, i, b in ap.cover_blocks],
        "dropped_blocks": ap.dropped_blocks,
        "certificates": ap.certificates,
    }


def cmd_generic(args):
    alg = load_algebra(args.algebra)
    gm = kronecker_generic(alg)
    return {"rep": rep_to_json(gm.module), "base_algebra": alg.spec()}


def cmd_endolength(args):
    alg = load_algebra(args.algebra)
    gm = kronecker_generic(alg)
    from .repcat import hom_dim

    return {"endolength": endolength(gm),
            "end_dim": hom_dim(gm.module, gm.module)}


def cmd_peg_growth(args):
    alg = load_algebra(args.algebra)
    rng = _rng(args)
    if args.peg:
        peg = projective_at(alg, args.peg)
    else:
        peg = pegs(alg)[0]
    tube = TubeId.parse(alg.field, args.tube)
    s = regular_simples(alg, tube, rng)[args.socle]
    growth = peg_hom_growth(peg, s, args.rmax, rng)
    return {"dims": growth.dims,
            "monomorphism_witness": [w is not None for w in growth.witnesses]}


def _tubular(args):
    return TubularAlgebra(load_algebra(args.algebra))


def cmd_slope(args):
    tub = _tubular(args)
    m = load_representation(args.rep, tub.algebra)
    from .tubular_slopes import slope as slope_fn

    s = slope_fn(m, tub, _rng(args))
    d0 = tub.delta_zero(m.dims)
    di = tub.delta_infinity(m.dims)
    family = "t0" if s == Slope.zero() else ("t-inf" if s.infinite else "middle")
    if args.format == "tsv":
        dims = ",".join(str(m.dims[v]) for v in tub.algebra.vertices)
        header = "dim_vector\tdelta0\tdelta_inf\tslope\tfamily"
        return header + "\n" + f"{dims}\t{d0}\t{di}\t{s}\t{family}"
    return {"dims": {v: m.dims[v] for v in tub.algebra.vertices},
            "delta0": d0, "delta_inf": di, "slope": str(s), "family": family}


def cmd_slope_check(args):
    tub = _tubular(args)
    m = load_representation(args.source, tub.algebra)
    n = load_representation(args.target, tub.algebra)
    verdict = slope_order_check(m, n, tub, _rng(args))
    return {"applicable": verdict.applicable, "passed": verdict.passed,
            "hom_dim": verdict.hom_dimension,
            "slope_source": str(verdict.slope_source),
            "slope_target": str(verdict.slope_target)}


def cmd_chain(args):
    tub = _tubular(args)
    ratios = [r for r in args.ratios.split(",") if r.strip()]
    chain = chain_toward_slope(tub, ratios, _rng(args), args.budget)
    return {
        "slopes": [str(s) for s in chain.slopes],
        "modules": [rep_to_json(m, include_algebra=False) for m in chain.modules],
        "inclusions": [morphism_to_json(f) for f in chain.inclusions],
    }


HANDLERS = {
    "classify": cmd_classify,
    "defect": cmd_defect,
    "decompose": cmd_decompose,
    "hom": cmd_hom,
    "ext": cmd_ext,
    "tau": cmd_tau,
    "tube-simples": cmd_tube_simples,
    "sbracket": cmd_sbracket,
    "split-trisect": cmd_split_trisect,
    "partition-tubes": cmd_partition_tubes,
    "omega-left": cmd_omega_left,
    "omega-right": cmd_omega_right,
    "generic": cmd_generic,
    "endolength": cmd_endolength,
    "peg-growth": cmd_peg_growth,
    "slope": cmd_slope,
    "slope-check": cmd_slope_check,
    "chain": cmd_chain,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="canrep",
        description="exact computations with modules over canonical algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **flags):
        p = sub.add_parser(name)
        p.add_argument("--seed", type=int, default=None,
                       required=name in SEED_REQUIRED)
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        for flag, kwargs in flags.items():
            p.add_argument(flag, **kwargs)
        return p

    rep = {"--rep": {"required": True}}
    alg_opt = {"--algebra": {"default": None}}
    alg_req = {"--algebra": {"required": True}}

    add("classify", **rep, **alg_opt)
    add("defect", **rep, **alg_opt)
    add("decompose", **rep, **alg_opt)
    add("hom", **{"--source": {"required": True}, "--target": {"required": True}},
        **alg_opt)
    add("ext", **{"--source": {"required": True}, "--target": {"required": True}},
        **alg_opt)
    add("tau", **rep, **alg_opt,
        **{"--inverse": {"action": "store_true"}})
    add("tube-simples", **alg_req, **{"--tube": {"required": True}})
    add("sbracket", **alg_req, **{"--tube": {"required": True},
                                  "--socle": {"type": int, "default": 0},
                                  "--rlen": {"type": int, "required": True}})
    add("split-trisect", **rep, **alg_opt)
    add("partition-tubes", **rep, **alg_opt, **{"--tubes": {"required": True}})
    add("omega-left", **rep, **alg_opt,
        **{"--tubes": {"required": True}, "--depth": {"type": int, "required": True}})
    add("omega-right", **rep, **alg_opt,
        **{"--tubes": {"required": True}, "--depth": {"type": int, "required": True}})
    add("generic", **alg_req)
    add("endolength", **alg_req)
    add("peg-growth", **alg_req,
        **{"--tube": {"required": True}, "--socle": {"type": int, "default": 0},
           "--rmax": {"type": int, "required": True}, "--peg": {"default": None}})
    add("slope", **alg_req, **rep)
    add("slope-check", **alg_req,
        **{"--source": {"required": True}, "--target": {"required": True}})
    add("chain", **alg_req, **{"--ratios": {"required": True},
                               "--budget": {"type": int, "default": 16}})
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = HANDLERS[args.command]
    try:
        result = handler(args)
    except ParseError as exc:
        sys.stdout.write(dumps({"error": {"kind": "parse", "message": str(exc)}}))
        return 2
    except CanrepError as exc:
        payload = {"error": {"kind": "domain", "message": str(exc)}}
        diagnostic = getattr(exc, "diagnostic", None)
        if diagnostic:
            payload["error"]["diagnostic"] = diagnostic
        sys.stdout.write(dumps(payload))
        return 1
    if isinstance(result, str):
        sys.stdout.write(result + "\n")
    else:
        result.setdefault("command", args.command)
        sys.stdout.write(dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
