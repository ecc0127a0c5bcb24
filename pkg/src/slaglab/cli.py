"""Command-line interface.

Exit codes: 0 success, 1 a verification did not match the catalog, 2 bad
arguments or input, 3 an instance is unsolvable, 4 the question is
undecided.  ``--json`` prints a report with sorted keys that validates
against ``schemas/report.schema.json``; the same arguments and seed give
the same bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from importlib import resources
from typing import Any

import jsonschema
import numpy as np

from . import __version__
from . import charclass, cones, obstruction, symplectic
from .errors import ParseError, SlagLabError

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_UNSOLVABLE, EXIT_UNDECIDED = 0, 1, 2, 3, 4

DEFAULT_TOL = {
    "cone verify": 1e-8,
    "cone smoothing": 1e-6,
    "geom integral": 1e-10,
    "geom moments": 1e-6,
}


class UsageError(Exception):
    pass


def load_schema(name: str) -> dict:
    return json.loads(resources.files("slaglab").joinpath("schemas", f"{name}.schema.json").read_text())


def _plain(x: Any) -> Any:
    """Turn numpy scalars, complex numbers and tuples into JSON values."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [_plain(x.real), _plain(x.imag)]
    if isinstance(x, (float, np.floating)):
        return None if math.isnan(x) else float(x)
    return x


def _read_json(path: str, schema: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from err
    except json.JSONDecodeError as err:
        raise UsageError(f"{path}: invalid JSON at line {err.lineno} column {err.colno}: {err.msg}") from err
    validator = jsonschema.Draft202012Validator(load_schema(schema))
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        where = "/" + "/".join(str(p) for p in first.absolute_path)
        raise UsageError(f"{path}: schema violation at {where}: {first.message}")
    return doc


def _pair(text: str) -> tuple[int, int]:
    try:
        p, q = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected P,Q with integers, got {text!r}") from None
    return p, q


# -- commands ---------------------------------------------------------------------
# each returns (result dict, exit code)


def cmd_cone_verify(args, seed, tol):
    cone = cones.parse_cone_id(args.cone)
    report = cones.verify_cone(cone, samples=args.samples, tol=tol, seed=seed)
    result = report.to_json()
    result["catalog_special_lagrangian"] = cone.is_special_lagrangian
    return result, EXIT_OK if report.matches_catalog else EXIT_MISMATCH


def _sw_maslov(p: int, q: int, samples: int) -> dict:
    cone = cones.SchoenWolfson(p, q)
    index = symplectic.maslov_index(cones.link_loop(cone), m=samples)
    return {"loop": cone.id, "maslov_index": index, "samples": samples}


def cmd_cone_maslov(args, seed, tol):
    return _sw_maslov(args.p, args.q, args.samples), EXIT_OK


def cmd_cone_smoothing(args, seed, tol):
    cone = cones.parse_cone_id(args.cone)
    family = cones.SmoothingFamily(cone, args.t)
    radii = np.geomspace(args.rmin, args.rmax, args.radii)
    report = cones.check_smoothing(family, radii, samples=args.samples, seed=seed)
    ok = abs(report.slope - (report.rate - 1)) <= 0.1 and report.phase_stddev <= tol
    result = report.to_json()
    result["expected_slope"] = report.rate - 1
    result["verdict"] = "ConsistentWithRate" if ok else "Inconsistent"
    result["notes"] = list(cone.notes)
    return result, EXIT_OK if ok else EXIT_MISMATCH


def _attempt(fn, *a):
    try:
        return fn(*a)
    except SlagLabError as err:
        return {"unavailable": f"{type(err).__name__}: {err}"}


def cmd_cobordism(args, seed, tol):
    expr = charclass.parse_manifold_expr(args.expr)
    verdict = charclass.is_nullcobordant(expr)
    result = {
        "expression": str(expr),
        "dim": expr.dim,
        "orientable": charclass.is_orientable(expr),
        "sw_numbers": _attempt(charclass.sw_numbers, expr),
        "pontrjagin_numbers": _attempt(charclass.pontrjagin_numbers, expr),
        "cobordism": verdict.to_json(),
    }
    return result, EXIT_UNDECIDED if isinstance(verdict, charclass.Undecided) else EXIT_OK


def _class_text(fn, expr):
    try:
        value = fn(expr)
    except SlagLabError as err:
        return f"unavailable ({type(err).__name__})"
    return [str(v) for v in value] if isinstance(value, list) else str(value)


def cmd_charclass(args, seed, tol):
    expr = charclass.parse_manifold_expr(args.expr)
    result = {
        "expression": str(expr),
        "dim": expr.dim,
        "orientable": charclass.is_orientable(expr),
        "total_sw_class": _class_text(charclass.total_sw_class, expr),
        "total_pontrjagin_class": _class_text(charclass.total_pontrjagin_class, expr),
        "immersion": charclass.lagrangian_immersion_obstructions(expr).to_json(),
        "euler": charclass.euler_embedding_obstruction(expr).to_json(),
    }
    return result, EXIT_OK


def _load_instance(path: str) -> obstruction.PbpInstance:
    return obstruction.PbpInstance.from_json(_read_json(path, "pbp_instance"))


def cmd_pbp_decide(args, seed, tol):
    inst = _load_instance(args.file)
    verdict = obstruction.decide_pbp(inst)
    result = verdict.to_json()
    result["n"] = inst.n
    result["warnings"] = [w.to_json() for w in obstruction.validate_instance(inst)]
    if args.count:
        try:
            result["extensions"] = str(obstruction.count_extensions(inst))
        except SlagLabError as err:
            result["extensions"] = None
            result["extensions_unavailable"] = str(err)
    code = {"Solvable": EXIT_OK, "Unsolvable": EXIT_UNSOLVABLE, "Undecided": EXIT_UNDECIDED}[verdict.kind]
    return result, code


def cmd_pbp_validate(args, seed, tol):
    inst = _load_instance(args.file)
    warnings = obstruction.validate_instance(inst)
    consistent = not any(w.kind == "inconsistent" for w in warnings)
    return {"n": inst.n, "consistent": consistent, "warnings": [w.to_json() for w in warnings]}, (
        EXIT_OK if consistent else EXIT_MISMATCH
    )


def _circle(t):
    return np.array([np.exp(1j * t), 0.0])


def _loop_from_args(args, need_frames: bool):
    if args.file:
        doc = _read_json(args.file, "loop")
        points = np.array([[complex(re, im) for re, im in row] for row in doc["points"]])
        frames = np.array(doc["frames"], dtype=float) if "frames" in doc else None
        if need_frames and frames is None:
            raise UsageError(f"{args.file}: the loop has no frames")
        return symplectic.LoopTrace(points, frames), f"file {args.file}"
    if args.sw:
        cone = cones.SchoenWolfson(*args.sw)
        return cones.link_loop(cone), cone.id
    if need_frames:
        raise UsageError("--circle has no Lagrangian frames; use --sw or --file")
    return symplectic.ParametricLoop(_circle), "circle (e^{it}, 0)"


def cmd_geom_integral(args, seed, tol):
    loop, label = _loop_from_args(args, need_frames=False)
    res = symplectic.loop_liouville_integral(loop, m=args.samples, atol=tol)
    result = res.to_json()
    result["loop"] = label
    result["verdict"] = "Exact" if res.exact else "NotExact"
    return result, EXIT_OK


def cmd_geom_maslov(args, seed, tol):
    loop, label = _loop_from_args(args, need_frames=True)
    return {"loop": label, "maslov_index": symplectic.maslov_index(loop, m=args.samples), "samples": args.samples}, EXIT_OK


def cmd_geom_moments(args, seed, tol):
    n = args.clifford
    if n < 2:
        raise UsageError("--clifford needs n >= 2")
    sample = symplectic.clifford_torus_sample(n, grid=args.grid, rotation=args.rotation)
    residuals = symplectic.sl_moment_residuals(sample)
    worst = float(np.max(np.abs(residuals)))
    result = {
        "surface": f"clifford({n})",
        "grid": args.grid,
        "rotation": args.rotation,
        "basis_size": len(residuals),
        "residuals": residuals,
        "max_residual": worst,
        "verdict": "MomentConditionsHold" if worst <= tol else "MomentConditionsFail",
    }
    return result, EXIT_OK


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default: $SLAGLAB_SEED, else 0)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print a JSON report")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="tolerance override")

    parser = argparse.ArgumentParser(prog="slaglab", description="Special Lagrangian cones and obstructions.", parents=[common])
    parser.add_argument("--version", action="version", version=f"slaglab {__version__}")
    sub = parser.add_subparsers(dest="group", required=True)

    def leaf(subparsers, name, func, help_text):
        p = subparsers.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    cone = sub.add_parser("cone", help="catalog cones").add_subparsers(dest="action", required=True)
    p = leaf(cone, "verify", cmd_cone_verify, "check the Lagrangian and phase conditions at random link points")
    p.add_argument("cone", help="su(n), su-so(n), su-sp(n), sw(p,q) or clifford(n)")
    p.add_argument("--samples", type=int, default=200)
    p = leaf(cone, "maslov", cmd_cone_maslov, "Maslov index of the sw(p,q) link")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--samples", type=int, default=256)
    p = leaf(cone, "smoothing", cmd_cone_smoothing, "sample the two-ended smoothing L_t")
    p.add_argument("cone")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--rmin", type=float, default=10.0)
    p.add_argument("--rmax", type=float, default=1000.0)
    p.add_argument("--radii", type=int, default=7)
    p.add_argument("--samples", type=int, default=100)

    p = leaf(sub, "cobordism", cmd_cobordism, "characteristic numbers and nullcobordism verdict")
    p.add_argument("expr")
    p = leaf(sub, "charclass", cmd_charclass, "total classes, immersion and Euler tests")
    p.add_argument("expr")

    pbp = sub.add_parser("pbp", help="prescribed boundary problem").add_subparsers(dest="action", required=True)
    p = leaf(pbp, "decide", cmd_pbp_decide, "decide solvability of a JSON instance")
    p.add_argument("file")
    p.add_argument("--count", action="store_true", help="also report the group of extensions")
    p = leaf(pbp, "validate", cmd_pbp_validate, "consistency warnings for a JSON instance")
    p.add_argument("file")

    geom = sub.add_parser("geom", help="loop and surface numerics").add_subparsers(dest="action", required=True)
    for name, func, samples in (("integral", cmd_geom_integral, 1024), ("maslov", cmd_geom_maslov, 256)):
        p = leaf(geom, name, func, f"loop {name}")
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--circle", action="store_true", help="the loop (e^{it}, 0) in C^2")
        src.add_argument("--sw", type=_pair, metavar="P,Q", help="the sw(p,q) link")
        src.add_argument("--file", help="JSON loop (schemas/loop.schema.json)")
        p.add_argument("--samples", type=int, default=samples)
    p = leaf(geom, "moments", cmd_geom_moments, "moment residuals of a Clifford torus link")
    p.add_argument("--clifford", type=int, required=True, metavar="N")
    p.add_argument("--grid", type=int, default=24)
    p.add_argument("--rotation", type=float, default=0.0)
    return parser


def _resolve_seed(args) -> int:
    seed = getattr(args, "seed", None)
    if seed is not None:
        return seed
    env = os.environ.get("SLAGLAB_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"SLAGLAB_SEED must be an integer, got {env!r}") from None


def _print_text(command: str, result: dict, out) -> None:
    print(command, file=out)
    for key in sorted(result):
        value = result[key]
        if isinstance(value, dict):
            print(f"  {key}:", file=out)
            for k in sorted(value):
                print(f"    {k}: {value[k]}", file=out)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"  {key}:", file=out)
            for item in value:
                print("    - " + ", ".join(f"{k}={item[k]}" for k in sorted(item)), file=out)
        else:
            print(f"  {key}: {value}", file=out)


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    command = args.group + (f" {args.action}" if getattr(args, "action", None) else "")
    try:
        seed = _resolve_seed(args)
        tol = getattr(args, "tol", None)
        if tol is None:
            tol = DEFAULT_TOL.get(command)
        result, code = args.func(args, seed, tol)
    except ParseError as exc:
        print(f"error: {exc}", file=err)
        print(exc.caret(), file=err)
        return EXIT_USAGE
    except (UsageError, SlagLabError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE

    report = {
        "command": command,
        "version": __version__,
        "seed": seed,
        "tol": tol,
        "exit_code": code,
        "result": _plain(result),
    }
    if getattr(args, "json", False):
        jsonschema.validate(report, load_schema("report"))
        print(json.dumps(report, sort_keys=True, indent=2), file=out)
    else:
        _print_text(command, report["result"], out)
    return code


if __name__ == "__main__":
    sys.exit(main())
