"""JSON (de)serialization for scalars, points, lines, cubics, and reports.

Scalar text grammar: rational := ['-'] digits ['/' digits];
scalar := rational | rational ('+'|'-') rational 'i' | rational 'i' | 'i'.
Scalars that live in a quadratic extension serialize as objects
{"a": <scalar>, "b": <scalar>, "rad": <scalar>} meaning a + b*sqrt(rad).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .eigenscheme import Cubic, EigDecomposition
from .forms import TernaryForm
from .geometry import Line, ProjPoint
from .scalars import Scalar, format_gauss, parse_scalar


def scalar_to_json(s: Scalar):
    if s.in_base_field():
        return str(s)
    rr, ri = s.rad
    return {"a": format_gauss(s.ar, s.ai), "b": format_gauss(s.br, s.bi),
            "rad": format_gauss(rr, ri)}


def scalar_from_json(obj) -> Scalar:
    try:
        if isinstance(obj, str):
            return parse_scalar(obj)
        if isinstance(obj, int):
            return Scalar(obj)
        if isinstance(obj, dict):
            a = parse_scalar(obj["a"])
            b = parse_scalar(obj["b"])
            rad = parse_scalar(obj["rad"])
            return a + b * Scalar(0, 0, 1, 0, (rad.ar, rad.ai))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad scalar payload {obj!r}: {exc}") from exc
    raise InputError(f"bad scalar payload {obj!r}")


def point_to_json(p: ProjPoint):
    return [scalar_to_json(c) for c in p.canonical]


def point_from_json(obj) -> ProjPoint:
    if not isinstance(obj, (list, tuple)) or len(obj) != 3:
        raise InputError(f"point payload must be a 3-element array, got {obj!r}")
    try:
        return ProjPoint(*(scalar_from_json(c) for c in obj))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def line_to_json(line: Line):
    return {"dual": [scalar_to_json(c) for c in line.canonical]}


def line_from_json(obj) -> Line:
    if isinstance(obj, dict) and "dual" in obj:
        obj = obj["dual"]
    if not isinstance(obj, (list, tuple)) or len(obj) != 3:
        raise InputError(f"line payload must have 3 dual coordinates, got {obj!r}")
    try:
        return Line(*(scalar_from_json(c) for c in obj))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cubic_to_json(c: Cubic):
    return [scalar_to_json(v) for v in c.vector]


def cubic_from_json(obj) -> Cubic:
    if not isinstance(obj, (list, tuple)) or len(obj) != 10:
        raise InputError("cubic payload must be an array of 10 scalar strings")
    vec = [scalar_from_json(v) for v in obj]
    if not any(vec):
        raise InputError("cubic payload is identically zero")
    return Cubic(vec)


def form_to_json(f: TernaryForm):
    return {"degree": f.degree,
            "terms": [[list(e), scalar_to_json(c)] for e, c in f.terms()]}


def scalar_pair_from_json(obj):
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise InputError(f"parameter pair must be a 2-element array, got {obj!r}")
    return (scalar_from_json(obj[0]), scalar_from_json(obj[1]))


def decomposition_to_json(dec: EigDecomposition):
    pts = []
    for p in dec.residual_points:
        if isinstance(p, ProjPoint):
            pts.append({"exact": point_to_json(p)})
        else:
            pts.append({"numeric": [[float(c.real), float(c.imag)] for c in p]})
    return {
        "kind": dec.kind,
        "component": form_to_json(dec.component) if dec.component else None,
        "residual_points": pts,
        "residual_degree": dec.residual_degree,
        "exact_residual": dec.exact_residual,
    }


def rational_from_json(obj) -> Fraction:
    try:
        return Fraction(obj)
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad rational {obj!r}") from exc
