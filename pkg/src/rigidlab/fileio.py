"""JSON file formats and canonical serialization.

Scalars in geometry files may be JSON numbers (decimal) or strings like
"3/5", which are parsed to exact rationals; readers preserve exactness so
exact-mode analyses of file inputs stay exact.  Report serialization is
canonical: floats at 17 significant digits, rationals as "p/q" strings, so
identical runs produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
import math
import os
import tempfile
from fractions import Fraction
from typing import Any

import numpy as np

from rigidlab.bipartite import BipartiteRealization
from rigidlab.curves import CurveHandle, HelixSpec
from rigidlab.framework import Framework, Graph, Realization


def parse_scalar(v):
    """Number -> itself (int stays exact); string -> exact Fraction."""
    if isinstance(v, bool):
        raise ValueError("booleans are not coordinates")
    if isinstance(v, (int, float)):
        return v
    if isinstance(v, str):
        return Fraction(v)
    raise ValueError(f"cannot parse scalar {v!r}")


def scalar_to_json(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (int, float)):
        return x
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    raise ValueError(f"cannot serialize scalar {x!r}")


def _parse_point(p):
    return tuple(parse_scalar(x) for x in p)


def _point_to_json(p):
    return [scalar_to_json(x) for x in p]


# ---------------------------------------------------------------------------
# framework / bipartite / curve files


def framework_to_dict(f: Framework) -> dict:
    return {
        "dimension": f.dim,
        "points": [_point_to_json(p) for p in f.realization.points],
        "edges": [list(e) for e in f.graph.edges],
    }


def framework_from_dict(data: dict) -> Framework:
    d = int(data["dimension"])
    points = tuple(_parse_point(p) for p in data["points"])
    edges = tuple(tuple(int(i) for i in e) for e in data["edges"])
    return Framework(Graph(len(points), edges), Realization(d, points))


def bipartite_to_dict(br: BipartiteRealization) -> dict:
    return {
        "dimension": br.dim,
        "A": [_point_to_json(p) for p in br.A],
        "B": [_point_to_json(p) for p in br.B],
    }


def bipartite_from_dict(data: dict) -> BipartiteRealization:
    return BipartiteRealization(
        int(data["dimension"]),
        tuple(_parse_point(p) for p in data["A"]),
        tuple(_parse_point(p) for p in data["B"]),
    )


def curve_to_dict(c: CurveHandle) -> dict:
    out: dict[str, Any] = {"kind": c.kind, "dimension": c.dim}
    if c.kind == "helix":
        spec = c.helix_spec
        out["blocks"] = [list(b) for b in spec.blocks]
        out["w"] = list(spec.w)
        out["offset"] = list(spec.offset)
    elif c.kind == "polynomial":
        out["coeffs"] = [[scalar_to_json(x) for x in coeffs] for coeffs in c.coefficients]
    else:
        out["samples"] = [[t, _point_to_json(p)] for t, p in c.samples]
    out["domain"] = [c.domain[0], c.domain[1]]
    return out


def curve_from_dict(data: dict) -> CurveHandle:
    kind = data["kind"]
    domain = tuple(float(x) for x in data["domain"])
    if kind == "helix":
        spec = HelixSpec(
            dim=int(data["dimension"]),
            blocks=tuple(tuple(float(x) for x in b) for b in data["blocks"]),
            w=tuple(float(x) for x in data.get("w", [])),
            offset=tuple(float(x) for x in data["offset"]) if data.get("offset") else None,
        )
        return CurveHandle.helix(spec, domain)
    if kind == "polynomial":
        coeffs = tuple(tuple(parse_scalar(x) for x in cs) for cs in data["coeffs"])
        if "dimension" in data and int(data["dimension"]) != len(coeffs):
            raise ValueError("dimension does not match the coefficient rows")
        return CurveHandle.polynomial(coeffs, domain)
    if kind == "tabulated":
        samples = tuple((parse_scalar(t), _parse_point(p)) for t, p in data["samples"])
        return CurveHandle.tabulated(samples, domain)
    raise ValueError(f"unknown curve kind {kind!r}")


def read_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def read_framework(path: str) -> Framework:
    return framework_from_dict(read_json(path))


def read_bipartite(path: str) -> BipartiteRealization:
    return bipartite_from_dict(read_json(path))


def read_curve(path: str) -> CurveHandle:
    return curve_from_dict(read_json(path))


# ---------------------------------------------------------------------------
# canonical output


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("reports must not contain NaN or infinity")
    s = format(float(x), ".17g")
    if not any(ch in s for ch in ".eE"):
        s += ".0"
    return s


def dumps_canonical(obj, indent: int = 2) -> str:
    """Deterministic JSON: dict order preserved, floats at 17 significant
    digits, Fractions as quoted "p/q"."""

    def render(o, depth: int) -> str:
        pad = " " * (indent * depth)
        pad_in = " " * (indent * (depth + 1))
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [
                f"{pad_in}{json.dumps(str(k))}: {render(v, depth + 1)}" for k, v in o.items()
            ]
            return "{\n" + ",\n".join(items) + "\n" + pad + "}"
        if isinstance(o, (list, tuple)) or isinstance(o, np.ndarray):
            seq = list(o)
            if not seq:
                return "[]"
            items = [f"{pad_in}{render(v, depth + 1)}" for v in seq]
            return "[\n" + ",\n".join(items) + "\n" + pad + "]"
        if isinstance(o, bool):
            return "true" if o else "false"
        if o is None:
            return "null"
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, (float, np.floating)):
            return format_float(float(o))
        if isinstance(o, Fraction):
            return json.dumps(str(o))
        if isinstance(o, str):
            return json.dumps(o)
        raise ValueError(f"cannot serialize {type(o).__name__}")

    return render(obj, 0) + "\n"


def atomic_write_text(path: str, text: str) -> None:
    """Write via a sibling temp file + rename so readers never see partials."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".rigidlab-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path: str, obj) -> None:
    atomic_write_text(path, dumps_canonical(obj))


def write_csv(path: str, header: list[str], rows: list[list]) -> None:
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    atomic_write_text(path, buf.getvalue())
