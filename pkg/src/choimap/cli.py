"""choimap command-line interface.

Exit codes: 0 success / positive / spanning, 1 not positive, 2 positivity
unknown, 3 spanning inconclusive, 64 usage error, 65 invalid input,
74 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import geometry, optimality, positivity
from .core import PRESETS, build_map, map_from_dict, matrix_from_json, witness_value
from .errors import ChoiMapError
from .tolerances import ToleranceConfig

EX_OK, EX_NOT_POSITIVE, EX_UNKNOWN, EX_INCONCLUSIVE = 0, 1, 2, 3
EX_USAGE, EX_DATAERR, EX_IOERR = 64, 65, 74


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    return obj


def dumps(obj):
    """JSON with every float written to 17 significant digits; non-finite floats become null."""
    obj = to_jsonable(obj)
    if isinstance(obj, float):
        return format(obj, ".17g") if math.isfinite(obj) else "null"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, list):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    return json.dumps(obj)


def _add_map_args(p):
    g = p.add_argument_group("map")
    g.add_argument("--map", choices=sorted(PRESETS), help="named preset")
    g.add_argument("--input", help="JSON file with keys a..f")
    for name in "abc":
        g.add_argument(f"--{name}", type=float)
    for name in "def":
        g.add_argument(f"--{name}", type=float, default=0.0)


def _add_tol_args(p):
    p.add_argument("--sat-tol", type=float)
    p.add_argument("--rank-tol", type=float)


def _map_from_args(args, tol):
    given = [args.a is not None or args.b is not None or args.c is not None, bool(args.map), bool(args.input)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --map, --input or --a/--b/--c")
    if args.map:
        if any(getattr(args, k) for k in "def"):
            raise UsageError("--d/--e/--f cannot be combined with --map")
        return build_map(*PRESETS[args.map], tol=tol)
    if args.input:
        with open(args.input) as fh:
            return map_from_dict(json.load(fh), tol)
    if None in (args.a, args.b, args.c):
        raise UsageError("--a, --b and --c are all required")
    return build_map(args.a, args.b, args.c, args.d, args.e, args.f, tol=tol)


def _emit(args, text):
    out = getattr(args, "output", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_classify(args, tol):
    m = _map_from_args(args, tol)
    rep = positivity.condition_report(m, tol)
    verdict = positivity.classify_positivity(m, args.resolution, tol)
    _emit(args, dumps({"map": m.to_dict(), "conditions": rep.to_dict(), "verdict": verdict.to_dict()}))
    return {"positive": EX_OK, "not_positive": EX_NOT_POSITIVE, "unknown": EX_UNKNOWN}[verdict.kind]


def cmd_optimality(args, tol):
    m = _map_from_args(args, tol)
    verdict = positivity.classify_positivity(m, args.resolution, tol)
    rep = optimality.spanning_report(m, tol, args.resolution)
    _emit(args, dumps({"map": m.to_dict(), "verdict": verdict.to_dict(), "spanning": rep.to_dict()}))
    if not verdict.is_positive:
        return EX_NOT_POSITIVE
    return EX_OK if rep.optimal_by_spanning else EX_INCONCLUSIVE


def _write_text(args, writer):
    if args.output:
        with open(args.output, "w", newline="") as fh:
            writer(fh)
    else:
        writer(sys.stdout)


def cmd_scan(args, tol):
    if args.n < 2:
        raise UsageError("--n must be >= 2")
    if args.mode == "bc":
        recs = geometry.bc_scan(args.n, tol=tol)
        _write_text(args, lambda fh: geometry.write_bc_csv(recs, fh))
        return EX_OK
    if None in (args.a, args.b, args.c):
        raise UsageError("plane scans need --a, --b and --c")
    radius = args.radius
    if radius is None:
        mu = max(min(args.a - 1.0, args.b, args.c), 0.0)
        radius = max(1.2 * math.sqrt(6.0) * mu, 0.5)
    recs = geometry.region_scan(args.a, args.b, args.c, radius, args.n, tol)
    _write_text(args, lambda fh: geometry.write_region_csv(recs, fh))
    return EX_OK


def cmd_optimal_points(args, tol):
    region, sets = geometry.optimal_points(args.b, args.c, tol)
    out = {"b": args.b, "c": args.c, "a": 3.0 - args.b - args.c, "region": region.value, "sets": []}
    for s in sets:
        d = s.to_dict()
        if args.validate:
            d["validation"] = [geometry.validate_point(args.b, args.c, p, tol).to_dict() for p in s.points]
        out["sets"].append(d)
    _emit(args, dumps(out))
    return EX_OK


def cmd_gradcheck(args, tol):
    m = _map_from_args(args, tol)
    dev, edges = positivity.gradient_deviation(m, h=args.h, tol=tol)
    if not edges:
        raise ChoiMapError("no edge condition is saturated at this map")
    _emit(args, dumps({"map": m.to_dict(), "edges": edges, "max_relative_deviation": dev}))
    return EX_OK if dev < args.threshold else EX_NOT_POSITIVE


def cmd_witness(args, tol):
    m = _map_from_args(args, tol)
    with open(args.state) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data["rho"]
    rho = matrix_from_json(data)
    _emit(args, dumps({"map": m.to_dict(), "witness": witness_value(m, rho, tol)}))
    return EX_OK


def build_parser():
    p = _Parser(prog="choimap", description="Positivity and optimality of generalized Choi maps on M_3.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_, map_args=True):
        sp = sub.add_parser(name, help=help_)
        if map_args:
            _add_map_args(sp)
        _add_tol_args(sp)
        sp.add_argument("--output", help="write the result to this file instead of stdout")
        sp.set_defaults(func=fn)
        return sp

    for name, fn, help_ in (
        ("classify", cmd_classify, "condition report and positivity verdict"),
        ("optimality", cmd_optimality, "spanning test for optimality"),
    ):
        sp = add(name, fn, help_)
        sp.add_argument("--resolution", type=int, default=60, help="oracle grid resolution")

    sp = add("scan", cmd_scan, "CSV grid over the d+e+f=0 plane or the (b, c) plane", map_args=False)
    sp.add_argument("--mode", choices=("plane", "bc"), default="plane")
    for name in "abc":
        sp.add_argument(f"--{name}", type=float)
    sp.add_argument("--n", type=int, default=200)
    sp.add_argument("--radius", type=float)

    sp = add("optimal-points", cmd_optimal_points, "optimal points for a+b+c=3", map_args=False)
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--validate", action="store_true", help="attach saturations and spanning rank")

    sp = add("gradcheck", cmd_gradcheck, "closed-form versus finite-difference edge gradients")
    sp.add_argument("--h", type=float, default=1e-6)
    sp.add_argument("--threshold", type=float, default=1e-5)

    sp = add("witness", cmd_witness, "Tr(C rho) for a 9x9 state given as [re, im] pairs")
    sp.add_argument("--state", required=True)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a command is required")
        tol = ToleranceConfig.from_env().override(sat_tol=args.sat_tol, rank_tol=args.rank_tol)
        return args.func(args, tol)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except (ChoiMapError, ValueError, KeyError) as exc:
        print(f"invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EX_DATAERR
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EX_IOERR


if __name__ == "__main__":
    sys.exit(main())
