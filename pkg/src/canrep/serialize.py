"""JSON (de)serialization for algebras, representations, and morphisms.

Scalars travel as exact strings ("3", "-3/4", "(t^2+1)/(t-3)"); emitted
documents carry a top-level "canrep_format": 1 version marker.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ParseError
from .exactla import Matrix
from .quiver_algebra import CanonicalAlgebra, algebra_from_spec
from .repcat import Morphism, Representation

FORMAT_VERSION = 1


def matrix_to_json(m: Matrix):
    F = m.field
    return [[F.to_str(x) for x in row] for row in m.data]


def matrix_from_json(field, rows: int, cols: int, data) -> Matrix:
    if len(data) != rows or any(len(r) != cols for r in data):
        raise ParseError("matrix data has the wrong shape")
    return Matrix(field, rows, cols,
                  [[field.parse(str(x)) for x in row] for row in data])


def rep_to_json(rep: Representation, include_algebra: bool = True) -> dict:
    out = {
        "canrep_format": FORMAT_VERSION,
        "dims": {v: rep.dims[v] for v in rep.algebra.vertices},
        "arrows": {a.label: matrix_to_json(rep.arrows[a.label])
                   for a in rep.algebra.arrows},
    }
    if include_algebra:
        out["algebra"] = rep.algebra.spec()
    return out


def rep_from_json(data: dict, algebra: CanonicalAlgebra | None = None) -> Representation:
    if algebra is None:
        spec = data.get("algebra")
        if spec is None:
            raise ParseError("representation file carries no algebra")
        if isinstance(spec, str):
            algebra = load_algebra(spec)
        else:
            algebra = algebra_from_spec(spec)
    dims = {str(v): int(d) for v, d in data.get("dims", {}).items()}
    arrows = {}
    for label, rows in data.get("arrows", {}).items():
        arrow = algebra.arrow_by_label.get(label)
        if arrow is None:
            raise ParseError(f"unknown arrow {label!r}")
        arrows[label] = matrix_from_json(
            algebra.field, dims.get(arrow.target, 0), dims.get(arrow.source, 0), rows)
    return Representation(algebra, dims, arrows)


def morphism_to_json(f: Morphism) -> dict:
    return {v: matrix_to_json(f.maps[v]) for v in f.source.algebra.vertices}


def ses_to_json(ses) -> dict:
    return {
        "sub": rep_to_json(ses.sub, include_algebra=False),
        "middle": rep_to_json(ses.middle, include_algebra=False),
        "quotient": rep_to_json(ses.quotient, include_algebra=False),
        "inclusion": morphism_to_json(ses.inclusion),
        "projection": morphism_to_json(ses.projection),
    }


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ParseError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON in {path}: {exc}") from exc


def load_algebra(path) -> CanonicalAlgebra:
    data = load_json(path)
    if "field" not in data:
        raise ParseError(f"{path} is not an algebra spec")
    return algebra_from_spec(data)


def load_representation(path, algebra=None) -> Representation:
    return rep_from_json(load_json(path), algebra)


def dumps(payload: dict) -> str:
    payload = dict(payload)
    payload.setdefault("canrep_format", FORMAT_VERSION)
    return json.dumps(payload, sort_keys=True, ensure_ascii=False,
                      separators=(",", ":")) + "\n"
