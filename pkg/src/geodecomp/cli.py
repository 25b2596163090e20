"""Command-line front end.

Exit codes: 0 success, 1 validation violations or failed checks, 2 IO or
parse errors (including malformed JSON and schema mismatches).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import jsonschema
import numpy as np

from . import curvature as cv
from .assembly import AssemblyValidationError, assembly_from_json, assembly_to_json, diagnose, validate_assembly
from .examples import FAMILIES, branched_cover_invariants, build_M, build_Mprime, build_Z
from .flat_catalog import catalog_to_json, format_rational
from .generate import GENERATORS
from .pieces import UnsupportedDefectError, piece_from_json, sigma_l2, sigma_top, validate
from .schema import SCHEMAS, check

EXIT_OK, EXIT_VIOLATION, EXIT_IO = 0, 1, 2
REPORT_COLUMNS = ("label", "chi", "sigma", "slack", "classification")


class InputError(Exception):
    """IO or parse failure; maps to exit code 2."""


@dataclass
class RunConfig:
    subcommand: str
    input_path: Optional[str] = None
    output_format: str = "table"
    seed: Optional[int] = None
    tolerance: float = 1e-6

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.output_format not in ("json", "table", "csv"):
            raise ValueError(f"unknown output format {self.output_format!r}")


# -- input -----------------------------------------------------------------


def load_json(path: str, kind: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    try:
        check(obj, kind)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"{path}: at {where}: {exc.message}") from exc
    return obj


# -- output ----------------------------------------------------------------


def _natural_key(label: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", label)]


def _jsonable(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    return v


def emit_report(assemblies, fmt: str = "csv") -> str:
    """Geography table of valid assemblies, sorted naturally by label."""
    rows = sorted((diagnose(a) for a in assemblies), key=lambda d: _natural_key(d.label))
    if fmt == "json":
        return json.dumps([d.as_dict() for d in rows], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for d in rows:
            w.writerow([d.label, d.chi, d.sigma, d.slack, d.classification.value])
        return buf.getvalue()
    table = [REPORT_COLUMNS + ("sigma/chi",)]
    for d in rows:
        ratio = f"{d.sigma / d.chi:.6f}" if d.chi else "-"
        table.append((d.label, str(d.chi), str(d.sigma), str(d.slack), d.classification.value, ratio))
    widths = [max(len(r[i]) for r in table) for i in range(len(table[0]))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in table)


def _emit_rows(rows: list, fmt: str) -> str:
    """Generic dict rows as JSON, CSV or an aligned table."""
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    cols = list(rows[0]) if rows else []
    flat = [[_cell(r[c]) for c in cols] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        w.writerows(flat)
        return buf.getvalue()
    table = [cols] + flat
    widths = [max(len(r[i]) for r in table) for i in range(len(cols))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in table)


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return ";".join(_cell(x) for x in v)
    return str(v)


# -- subcommands -------------------------------------------------------------


def cmd_catalog(args, out) -> int:
    out.write(_emit_rows(catalog_to_json(), args.format))
    return EXIT_OK


def cmd_piece(args, out) -> int:
    obj = load_json(args.input, "piece")
    try:
        p = piece_from_json(obj)
    except ValueError as exc:
        raise InputError(f"{args.input}: {exc}") from exc
    violations = validate(p)
    if violations:
        for v in violations:
            print(v, file=sys.stderr)
        return EXIT_VIOLATION
    row = {"label": p.label, "geometry": p.geometry.value, "chi": p.chi, "sigma_l2": format_rational(sigma_l2(p))}
    try:
        row["sigma_top"] = format_rational(sigma_top(p))
    except UnsupportedDefectError:
        row["sigma_top"] = None
    out.write(_emit_rows([row], args.format))
    return EXIT_OK


def _emit_assembly(a, fmt: str, out) -> int:
    violations = validate_assembly(a)
    if violations:
        for v in violations:
            print(v, file=sys.stderr)
        return EXIT_VIOLATION
    d = diagnose(a)
    if fmt == "json":
        out.write(json.dumps({"assembly": assembly_to_json(a), "diagnosis": d.as_dict()}, indent=2) + "\n")
    elif fmt == "csv":
        out.write(emit_report([a], "csv"))
    else:
        out.write(d.line() + "\n")
    return EXIT_OK


def cmd_assemble(args, out) -> int:
    obj = load_json(args.input, "assembly")
    try:
        a = assembly_from_json(obj)
    except ValueError as exc:
        raise InputError(f"{args.input}: {exc}") from exc
    return _emit_assembly(a, args.format, out)


def cmd_examples(args, out) -> int:
    fam = args.family
    if fam == "branched":
        rep = branched_cover_invariants(args.n)
        out.write(_emit_rows([rep.as_dict()], args.format))
        return EXIT_OK
    if fam in ("random", "holzapfel"):
        if args.seed is None:
            raise InputError(f"--seed is required for --family {fam}")
        gen = GENERATORS["holzapfel" if fam == "holzapfel" else args.kind]
        a = gen(args.seed)
    elif fam == "Z":
        a = build_Z(args.n)
    else:
        a = FAMILIES[fam](args.m)
    return _emit_assembly(a, args.format, out)


# hard-coded model constants: scalar, |W+|^2, |W-|^2, |Ric0|^2 (None = no fixed value)
MODEL_CONSTANTS = {
    "F4": (-3.0, 0.375, 0.375, 2.25),
    "H4": (-12.0, 0.0, 0.0, 0.0),
    "H3xE1": (-6.0, None, None, None),
    "H2xE2": (-2.0, None, None, None),
    "H2xH2": (-4.0, None, None, None),
    "CH2": (-24.0, None, 0.0, 0.0),
}


def check_report(model: str, rep: cv.CurvatureReport, tol: float) -> bool:
    expected = MODEL_CONSTANTS[model]
    got = (rep.scalar, rep.wplus_norm2, rep.wminus_norm2, rep.traceless_ricci_norm2)
    ok = all(e is None or abs(g - e) <= tol for e, g in zip(expected, got))
    if model == "CH2":
        ok = ok and abs(rep.delta_minus_density) <= tol
    else:
        ok = ok and abs(rep.wplus_norm2 - rep.wminus_norm2) <= tol
    return ok


def _parse_point(text: str) -> np.ndarray:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError as exc:
        raise InputError(f"bad --point {text!r}") from exc
    if len(vals) != 4:
        raise InputError(f"--point needs 4 coordinates, got {len(vals)}")
    return np.array(vals)


def cmd_curvature(args, out) -> int:
    try:
        chart = cv.model_chart(args.model)
    except KeyError as exc:
        raise InputError(str(exc)) from exc
    step = cv.DEFAULT_STEP
    if args.step is not None:
        chart, step = chart.without_derivatives(), args.step
    if args.point is not None:
        points = [_parse_point(args.point)]
    else:
        points = cv.random_domain_points(chart, args.points, np.random.default_rng(args.seed))
    rows, all_ok = [], True
    for p in points:
        try:
            rep = cv.curvature_at(chart, p, step)
        except cv.CurvatureError as exc:
            raise InputError(f"point {list(p)}: {exc}") from exc
        ok = check_report(args.model, rep, args.tolerance)
        all_ok &= ok
        rows.append((rep, ok))
    if args.format == "json":
        doc = {
            "model": args.model,
            "tolerance": args.tolerance,
            "points": [dict(r.summary(), passed=ok) for r, ok in rows],
            "passed": all_ok,
        }
        out.write(json.dumps(doc, indent=2) + "\n")
    elif args.format == "csv":
        out.write(_emit_rows([dict(r.summary(), passed=ok) for r, ok in rows], "csv"))
    else:
        for r, ok in rows:
            out.write(
                f"scalar={r.scalar:.6f} wplus2={r.wplus_norm2:.6f} wminus2={r.wminus_norm2:.6f} "
                f"ric0sq={r.traceless_ricci_norm2:.6f} {'PASS' if ok else 'FAIL'}\n"
            )
        if len(rows) > 1:
            out.write(f"model={args.model} points={len(rows)} {'PASS' if all_ok else 'FAIL'}\n")
    return EXIT_OK if all_ok else EXIT_VIOLATION


def cmd_report(args, out) -> int:
    names = ("M", "Mprime", "Z") if args.families == "all" else tuple(args.families.split(","))
    assemblies = []
    for name in names:
        if name == "M":
            assemblies += [build_M(m) for m in range(1, args.n_max + 1)]
        elif name == "Mprime":
            assemblies += [build_Mprime(m) for m in range(1, args.n_max + 1)]
        elif name == "Z":
            assemblies += [build_Z(n) for n in range(2, args.n_max + 1)]
        else:
            raise InputError(f"unknown family {name!r}")
    out.write(emit_report(assemblies, args.format if args.format_given else "csv"))
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geodecomp", description=__doc__.splitlines()[0])
    parser.add_argument("--schema", action="store_true", help="print the JSON input schemas and exit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table", "csv"), default=None)
    sub = parser.add_subparsers(dest="subcommand")

    sub.add_parser("catalog", parents=[common], help="flat cusp cross-section table")
    p = sub.add_parser("piece", parents=[common], help="evaluate one piece from JSON")
    p.add_argument("--input", required=True)
    p = sub.add_parser("assemble", parents=[common], help="validate and diagnose an assembly from JSON")
    p.add_argument("--input", required=True)

    p = sub.add_parser("examples", parents=[common], help="build a named family")
    p.add_argument("--family", required=True, choices=("M", "Mprime", "Z", "holzapfel", "random", "branched"))
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--seed", type=int)
    p.add_argument("--kind", choices=sorted(GENERATORS), default="mixed", help="generator for --family random")

    p = sub.add_parser("curvature", parents=[common], help="check a model metric against its constants")
    p.add_argument("--model", required=True, choices=cv.MODEL_NAMES)
    p.add_argument("--point", help="comma-separated coordinates x,y,z,w")
    p.add_argument("--points", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=1e-6)
    p.add_argument("--step", type=float, help="use finite differences with this step")

    p = sub.add_parser("report", parents=[common], help="geography table of the named families")
    p.add_argument("--families", default="all")
    p.add_argument("--n-max", type=int, default=6)
    return parser


COMMANDS = {
    "catalog": cmd_catalog,
    "piece": cmd_piece,
    "assemble": cmd_assemble,
    "examples": cmd_examples,
    "curvature": cmd_curvature,
    "report": cmd_report,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.schema:
        out.write(json.dumps(SCHEMAS, indent=2) + "\n")
        return EXIT_OK
    if args.subcommand is None:
        parser.print_usage(sys.stderr)
        return EXIT_IO
    args.format_given = args.format is not None
    args.format = args.format or "table"
    try:
        RunConfig(
            args.subcommand,
            getattr(args, "input", None),
            args.format,
            getattr(args, "seed", None),
            getattr(args, "tolerance", 1e-6),
        )
        return COMMANDS[args.subcommand](args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except AssemblyValidationError as exc:
        for v in exc.violations:
            print(v, file=sys.stderr)
        return EXIT_VIOLATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
