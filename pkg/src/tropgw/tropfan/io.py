"""JSON exchange format for weighted complexes and PL functions.

Rationals are written as strings ``"p/q"`` (or ``"p"``); integers are
also accepted on input.  A complex looks like::

    {"ambient_dim": 2,
     "lattice": [[1, 0], [0, 1]],            # optional basis of the lattice
     "cells": [{"dim": 1, "vertices": [["0", "0"]], "rays": [[1, 1]], "lineality": []}],
     "weights": {"0": 1}}

Only cells listed in ``weights`` are facets; other cells are ignored.
With a lattice basis B, coordinates are ambient coordinates and are
converted internally to B-coordinates so that the lattice becomes Z^n.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from ..exactlin import solve
from .complex import WeightedComplex
from .functions import CellwiseFunction, MaxFunction, PLFunction, RayValueFunction
from .polyhedron import Polyhedron

__all__ = [
    "FormatError",
    "complex_from_dict",
    "complex_to_dict",
    "dumps_complex",
    "function_from_dict",
    "function_to_dict",
    "loads_complex",
    "parse_rational",
    "rational_str",
]


class FormatError(ValueError):
    """Malformed JSON input."""


def parse_rational(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise FormatError("boolean is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError("bad rational %r" % x) from exc
    raise FormatError("rationals must be strings or integers, got %r" % (x,))


def rational_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def _weight_out(w: Fraction):
    return int(w) if w.denominator == 1 else rational_str(w)


def _vec(v, n):
    if not isinstance(v, list) or len(v) != n:
        raise FormatError("expected a vector of length %d, got %r" % (n, v))
    return [parse_rational(x) for x in v]


def _to_coords(v, basis):
    if basis is None:
        return v
    sol = solve([list(c) for c in zip(*basis)], v)
    if sol is None:
        raise FormatError("vector %r outside the span of the lattice" % (v,))
    return sol


def _from_coords(v, basis):
    if basis is None:
        return list(v)
    return [sum(Fraction(c) * b[j] for c, b in zip(v, basis)) for j in range(len(basis[0]))]


def complex_from_dict(d: dict) -> WeightedComplex:
    try:
        n = int(d["ambient_dim"])
        cells = d["cells"]
        weights = d["weights"]
    except (KeyError, TypeError) as exc:
        raise FormatError("missing field: %s" % exc) from exc
    basis = d.get("lattice")
    if basis is not None:
        basis = [[int(x) for x in row] for row in basis]
        if len(basis) != n:
            raise FormatError("lattice basis must have ambient_dim rows")
    facets = {}
    dim = None
    for key, w in weights.items():
        try:
            c = cells[int(key)]
        except (ValueError, IndexError) as exc:
            raise FormatError("weight for unknown cell %r" % key) from exc
        pts = [_to_coords(_vec(p, n), basis) for p in c.get("vertices", [])]
        rays = [_to_coords(_vec(r, n), basis) for r in c.get("rays", [])]
        lin = [_to_coords(_vec(l, n), basis) for l in c.get("lineality", [])]
        if not pts:
            pts = [[Fraction(0)] * n]
        poly = Polyhedron(pts, rays, lin)
        if "dim" in c and int(c["dim"]) != poly.dim:
            raise FormatError("cell %s: declared dim %s, actual %d" % (key, c["dim"], poly.dim))
        if dim is None:
            dim = poly.dim
        elif dim != poly.dim:
            raise FormatError("complex is not pure-dimensional")
        facets[poly] = facets.get(poly, Fraction(0)) + parse_rational(w)
    if dim is None:
        dim = int(d.get("dim", 0))
    x = WeightedComplex(n, dim, facets, prune=False)
    x.lattice_basis = basis
    return x


def complex_to_dict(x: WeightedComplex) -> dict:
    basis = getattr(x, "lattice_basis", None)
    cells, weights = [], {}
    for i, p in enumerate(x.facets()):
        def conv(v):
            return [rational_str(t) for t in _from_coords(v, basis)]
        def conv_int(v):
            out = _from_coords(v, basis)
            return [int(t) if Fraction(t).denominator == 1 else rational_str(t) for t in out]
        cells.append({
            "dim": p.dim,
            "vertices": [conv(q) for q in p.points],
            "rays": [conv_int(r) for r in p.rays],
            "lineality": [conv(l) for l in p.lineality],
        })
        weights[str(i)] = _weight_out(x.weight(p))
    out = {"ambient_dim": x.ambient, "dim": x.dim, "cells": cells, "weights": weights}
    if basis is not None:
        out["lattice"] = basis
    return out


def loads_complex(text: str) -> WeightedComplex:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(str(exc)) from exc
    return complex_from_dict(d)


def dumps_complex(x: WeightedComplex) -> str:
    return json.dumps(complex_to_dict(x), indent=1)


def function_from_dict(d: dict, x: WeightedComplex | None = None) -> PLFunction:
    """Three shapes are understood.

    ``{"type": "max", "ambient_dim": n, "components": [{"coef": c, "terms": [[b, [a...]], ...]}]}``
    ``{"type": "rays", "ambient_dim": n, "values": [{"ray": [..], "value": "p/q"}]}``
    ``{"type": "cells", "values": {"facet index": {"linear": [...], "constant": c}}}`` (needs x)
    """
    kind = d.get("type")
    if kind == "max":
        n = int(d["ambient_dim"])
        comps = []
        for comp in d["components"]:
            terms = [(parse_rational(b), _vec(a, n)) for b, a in comp["terms"]]
            comps.append((parse_rational(comp.get("coef", 1)), terms))
        return MaxFunction(n, comps)
    if kind == "rays":
        n = int(d["ambient_dim"])
        return RayValueFunction(n, {tuple(int(t) for t in e["ray"]): parse_rational(e["value"])
                                    for e in d["values"]})
    if kind == "cells":
        if x is None:
            raise FormatError("cellwise functions need their complex")
        facets = x.facets()
        data = {}
        for key, e in d["values"].items():
            data[facets[int(key)]] = (_vec(e["linear"], x.ambient), parse_rational(e.get("constant", 0)))
        return CellwiseFunction(x.ambient, data)
    raise FormatError("unknown function type %r" % kind)


def function_to_dict(f: PLFunction, x: WeightedComplex | None = None) -> dict:
    if isinstance(f, MaxFunction):
        return {"type": "max", "ambient_dim": f.ambient,
                "components": [{"coef": rational_str(c),
                                "terms": [[rational_str(b), [rational_str(t) for t in a]] for b, a in ts]}
                               for c, ts in f.components]}
    if isinstance(f, RayValueFunction):
        return {"type": "rays", "ambient_dim": f.ambient,
                "values": [{"ray": list(r), "value": rational_str(v)} for r, v in sorted(f.values.items())]}
    if x is None:
        raise FormatError("cellwise export needs the complex")
    vals = {}
    for i, p in enumerate(x.facets()):
        lin, c = f.affine_on(p)
        vals[str(i)] = {"linear": [rational_str(t) for t in lin], "constant": rational_str(c)}
    return {"type": "cells", "values": vals}
