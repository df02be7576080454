"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 precondition violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .gwengine import (
    MODEL_NAMES,
    GWEngine,
    KeyError_,
    PreconditionViolation,
    build_surface_model,
    parse_key,
)
from .modcurves import (
    Partition,
    boundary_divisor_weight,
    enumerate_types,
    parse_tree,
    psi_product,
)
from .parmod import Degree, degree_factorial, delta_of_degree
from .tropfan import (
    FormatError,
    check_balanced,
    complex_from_dict,
    complex_to_dict,
    diagonal_intersection,
    divisor,
    function_from_dict,
    recession_fan,
)
from .tropfan.io import rational_str

__all__ = ["build_parser", "main", "run"]

OK, FAILED, BAD_INPUT, PRECONDITION = 0, 1, 2, 3


class UsageError(ValueError):
    """Input that parses but cannot be processed."""


def _max_n(default: int) -> int:
    raw = os.environ.get("TROPGW_MAX_N")
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError("TROPGW_MAX_N must be an integer, got %r" % raw) from None


def _guard(n: int, default: int) -> None:
    limit = _max_n(default)
    if n > limit:
        raise UsageError("n = %d exceeds the limit %d (raise TROPGW_MAX_N to allow it)" % (n, limit))


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as err:
        raise FormatError("%s: %s" % (path, err)) from err
    except OSError as err:
        raise UsageError(str(err)) from err


def _write(args, text: str) -> None:
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageError("expected a comma separated list of integers, got %r" % text) from None


def _cell_text(p) -> str:
    def vec(v):
        return "(%s)" % ",".join(rational_str(x) for x in v)
    parts = ["conv " + " ".join(vec(v) for v in p.points)]
    if p.rays:
        parts.append("rays " + " ".join(vec(v) for v in p.rays))
    if p.lineality:
        parts.append("lin " + " ".join(vec(v) for v in p.lineality))
    return "; ".join(parts)


# -- fan --------------------------------------------------------------------------


def _fan_check(args) -> int:
    x = complex_from_dict(_read_json(args.file))
    bad = check_balanced(x)
    if args.json:
        print(json.dumps({"balanced": not bad, "dim": x.dim, "ambient_dim": x.ambient, "facets": len(x),
                          "unbalanced": [{"ridge": _cell_text(t), "residue": [rational_str(c) for c in v]}
                                         for t, v in bad]}))
    elif bad:
        print("unbalanced at %d ridge(s)" % len(bad))
        for t, v in bad:
            print("  %s  residue (%s)" % (_cell_text(t), ",".join(rational_str(c) for c in v)))
    else:
        print("balanced: dimension %d in R^%d, %d facets" % (x.dim, x.ambient, len(x)))
    return FAILED if bad else OK


def _emit_complex(args, x) -> int:
    d = complex_to_dict(x)
    if x.dim == 0 and not args.json:
        _write(args, json.dumps(d, indent=1))
        print("degree %s" % rational_str(x.degree()), file=sys.stderr)
    else:
        _write(args, json.dumps(d, indent=None if args.json else 1))
    return OK


def _fan_divisor(args) -> int:
    x = complex_from_dict(_read_json(args.file))
    f = function_from_dict(_read_json(args.function), x)
    return _emit_complex(args, divisor(f, x))


def _fan_intersect(args) -> int:
    x = complex_from_dict(_read_json(args.first))
    y = complex_from_dict(_read_json(args.second))
    if x.ambient != y.ambient:
        raise UsageError("the cycles live in R^%d and R^%d" % (x.ambient, y.ambient))
    return _emit_complex(args, diagonal_intersection(x, y))


def _fan_recession(args) -> int:
    return _emit_complex(args, recession_fan(complex_from_dict(_read_json(args.file))))


# -- moduli ---------------------------------------------------------------------------


def _moduli_types(args) -> int:
    _guard(args.n, 8)
    dim = args.n - 3 if args.dim is None else args.dim
    if not 0 <= dim <= args.n - 3:
        raise UsageError("dimension must lie between 0 and n - 3")
    types = sorted(t.to_text() for t in enumerate_types(args.n, dim))
    if args.json:
        print(json.dumps({"n": args.n, "dim": dim, "types": types}))
    else:
        print("\n".join(types))
    return OK


def _moduli_psi(args) -> int:
    _guard(args.n, 8)
    a = _int_list(args.a)
    if len(a) != args.n:
        raise UsageError("-a needs %d exponents, got %d" % (args.n, len(a)))
    if any(x < 0 for x in a):
        raise UsageError("exponents must be non-negative")
    fan = psi_product(args.n, a)
    if args.degree_only:
        if fan.dim != 0:
            raise UsageError("the product has dimension %d, not 0" % fan.dim)
        value = fan.degree()
        print(json.dumps({"degree": value}) if args.json else value)
        return OK
    if args.json:
        print(fan.to_json())
    else:
        print("dimension %d, %d weighted types" % (fan.dim, len(fan.weights)))
        for t, w in sorted(fan.weights.items(), key=lambda tw: tw[0].to_text()):
            print("%d  %s" % (w, t.to_text()))
    return OK


def _moduli_boundary(args) -> int:
    _guard(args.n, 8)
    labels = range(1, args.n + 1)
    part = Partition.of(_int_list(args.split), labels)
    if part.is_leaf():
        raise UsageError("the split %s is a leaf split" % part)
    ridge = parse_tree(args.ridge)
    if set(ridge.labels) != set(labels):
        raise UsageError("the ridge type must carry the labels 1..%d" % args.n)
    if ridge.dim != args.n - 4:
        raise UsageError("the ridge type must have codimension one")
    w = boundary_divisor_weight(part, ridge)
    print(json.dumps({"split": str(part), "ridge": ridge.to_text(), "weight": w}) if args.json else w)
    return OK


# -- degree ------------------------------------------------------------------------------


def _degree_from_args(args) -> Degree:
    if args.model is not None:
        key = parse_key(args.model, args.degree, "-")
        return Degree.from_directions(key.degree, key.surface.r)
    dirs = []
    for tok in args.degree.replace(")(", ") (").split():
        body, _, mult = tok.partition("^")
        v = _int_list(body.strip("()"))
        dirs.extend([tuple(v)] * (int(mult) if mult else 1))
    if not dirs:
        raise UsageError("empty degree")
    return Degree.from_directions(dirs)


def _degree_delta(args) -> int:
    return _emit_complex(args, delta_of_degree(_degree_from_args(args)))


def _degree_factorial(args) -> int:
    value = degree_factorial(_degree_from_args(args))
    print(json.dumps({"factorial": value}) if args.json else value)
    return OK


# -- invariants ------------------------------------------------------------------------------


def _invariant(args) -> int:
    key = parse_key(args.model, args.degree, args.conditions)
    engine = GWEngine(key.model, strategy=args.strategy, route="labelled" if args.labelled else "unlabelled")
    value = engine.labelled(key) if args.labelled else engine.unlabelled(key)
    if args.ledger:
        with open(args.ledger, "w", encoding="utf-8") as fh:
            json.dump(engine.ledger(), fh, indent=1, sort_keys=True)
            fh.write("\n")
    if args.json:
        print(json.dumps({"key": key.canonical(), "labelled": bool(args.labelled), "value": rational_str(value)}))
    else:
        print(rational_str(value))
    return OK


# -- verify ------------------------------------------------------------------------------


def _verify(args) -> int:
    from .suites import run_suite

    if args.max_n is None:
        args.max_n = _max_n(6)
    args.max_n_abstract = _max_n(8)
    args.models = tuple(build_surface_model(m).name for m in args.model or ())
    try:
        rep = run_suite(args.suite, args)
    except KeyError as err:
        raise UsageError(err.args[0]) from None
    if args.json:
        print(json.dumps(rep.to_dict()))
    else:
        for c in rep.checks:
            print("%s  %s%s" % ("pass" if c.passed else "FAIL", c.name, "  [%s]" % c.detail if c.detail else ""))
        print(("pass: " if rep.passed else "FAIL: ") + rep.summary())
    return OK if rep.passed else FAILED


# -- parser ------------------------------------------------------------------------------


def _leaf(sub, name: str, func, help_text: str):
    p = sub.add_parser(name, help=help_text, description=help_text)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    p.set_defaults(func=func)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropgw", description="Tropical intersection theory and descendant invariants.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    top = parser.add_subparsers(dest="command", required=True)

    fan = top.add_parser("fan", help="operations on weighted complexes (JSON files, '-' for stdin)")
    fs = fan.add_subparsers(dest="action", required=True)
    p = _leaf(fs, "check", _fan_check, "check balancing")
    p.add_argument("file")
    p = _leaf(fs, "divisor", _fan_divisor, "divisor of a function on a cycle")
    p.add_argument("file")
    p.add_argument("--function", "-f", required=True, help="JSON file with the function")
    p.add_argument("--output", "-o")
    p = _leaf(fs, "intersect", _fan_intersect, "stable intersection of two cycles")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--output", "-o")
    p = _leaf(fs, "recession", _fan_recession, "recession fan of a cycle")
    p.add_argument("file")
    p.add_argument("--output", "-o")

    mod = top.add_parser("moduli", help="combinatorics of the moduli space of rational tropical curves")
    ms = mod.add_subparsers(dest="action", required=True)
    p = _leaf(ms, "types", _moduli_types, "list the combinatorial types of a given dimension")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--dim", type=int)
    p = _leaf(ms, "psi-product", _moduli_psi, "weighted types of a product of psi-classes")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-a", required=True, help="exponents, comma separated")
    p.add_argument("--degree-only", action="store_true")
    p = _leaf(ms, "boundary-weight", _moduli_boundary, "weight of div(phi_I|J) on a codimension-one type")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--split", required=True, help="one side I, comma separated")
    p.add_argument("--ridge", required=True, help="type in tree notation, e.g. '((1,2),3,4,5)'")

    deg = top.add_parser("degree", help="degrees of tropical curves")
    ds = deg.add_subparsers(dest="action", required=True)
    for name, func, text in (("delta", _degree_delta, "the one-dimensional fan of a degree"),
                             ("factorial", _degree_factorial, "the symmetry factor of a degree")):
        p = _leaf(ds, name, func, text)
        p.add_argument("--degree", required=True, help="model degree (with --model) or '(x,y)^k ...'")
        p.add_argument("--model", choices=MODEL_NAMES)
        if name == "delta":
            p.add_argument("--output", "-o")

    inv = top.add_parser("invariant", help="descendant invariants")
    ins = inv.add_subparsers(dest="action", required=True)
    p = _leaf(ins, "compute", _invariant, "compute one invariant exactly")
    p.add_argument("--model", required=True, help=", ".join(MODEL_NAMES))
    p.add_argument("--degree", required=True)
    p.add_argument("--conditions", required=True, help="e.g. 'pt^3 line tau1(pt)'; '-' for none")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--unlabelled", dest="labelled", action="store_false", help="divide by the symmetry factor (default)")
    g.add_argument("--labelled", dest="labelled", action="store_true")
    p.set_defaults(labelled=False)
    p.add_argument("--strategy", choices=("first", "last"), default="first")
    p.add_argument("--ledger", help="write every computed invariant to this JSON file")

    p = _leaf(top, "verify", _verify, "run verification suites")
    p.add_argument("suite", help="all, closed-form, fan, fan-displacement, bezout, models, properties, "
                                 "boundary-psi, invariants")
    p.add_argument("--max-n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=20, help="displacement seeds per basis pair")
    p.add_argument("--model", action="append", help="restrict model-based suites (repeatable)")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PreconditionViolation as err:
        if args.json:
            print(json.dumps({"error": "precondition", "labels": list(err.labels),
                              "violations": [{"label": v.label, "reason": v.reason} for v in err.violations]}))
        else:
            for v in err.violations:
                print("precondition (%s) violated: %s" % (v.label, v.reason), file=sys.stderr)
        return PRECONDITION
    except (KeyError_, FormatError, UsageError, ValueError) as err:
        print("error: %s" % err, file=sys.stderr)
        return BAD_INPUT


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
