"""Command line interface.

Exit status: 0 on success, 1 when a verification or cross-check fails (a JSON
witness goes to stderr), 2 for invalid arguments or violated constraints.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .codes import (CodePreset, CodeSpecError, ColoringFamily, FamilySpec, PresetKind,
                    PresetRejected, default_preset, end_to_end, family_rows, generate_code,
                    theorem_table)
from .cycles import CycleFamily, CycleSpec, CycleSpecError, cross_check, valid_ps
from .label_core import EnumerationBoundError
from .lattice import (LatticeError, LinePattern, Orientation, build_diagonal_coloring,
                      fold_profile, project_ball, verify_code)
from .render import RenderError, RenderSpec, render

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

TABLE_COLUMNS = ["family", "a", "b", "r", "alpha", "in_scope", "variant"]


class UsageError(Exception):
    pass


def _fmt(args) -> str:
    if getattr(args, "json", False):
        return "json"
    if getattr(args, "csv", False):
        return "csv"
    return getattr(args, "format", None) or "json"


def _csv(rows: list, cols: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow(["" if r.get(c) is None else r.get(c) for c in cols])
    return buf.getvalue()


def _emit(out, payload, args, rows=None, cols=None):
    if _fmt(args) == "csv":
        out.write(_csv(rows if rows is not None else [payload], cols))
    else:
        out.write(json.dumps(payload, indent=2) + "\n")


def _witness(err, payload):
    err.write(json.dumps(payload, sort_keys=True) + "\n")


# -- subcommands -------------------------------------------------------------
def cmd_enumerate(args, out, err) -> int:
    values = None
    if args.values:
        values = {}
        for item in args.values.split(","):
            k, _, v = item.partition("=")
            values[k.strip()] = v.strip()
    spec = CycleSpec(CycleFamily.parse(args.type), args.p, values, args.special_t)
    rep = cross_check(spec)
    d = rep.to_dict()
    rows = [{"a": r["a"], "b": r["b"], "found": r["count"],
             "predicted": dict(((x["a"], x["b"]), x["count"]) for x in d["predicted"]).get((r["a"], r["b"]), 0)}
            for r in d["found"]]
    _emit(out, d, args, rows, ["a", "b", "found", "predicted"])
    if not (rep.match and rep.structure_ok):
        _witness(err, {"spec": spec.label(), "discrepancies": rep.discrepancies})
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_cross_check(args, out, err) -> int:
    results = []
    for fam in CycleFamily:
        for p in valid_ps(fam, args.p_max):
            variants = (False, True) if fam == CycleFamily.TYPE8 else (False,)
            for st in variants:
                rep = cross_check(CycleSpec(fam, p, special_t=st))
                results.append(rep)
    rows = [{"family": int(r.spec.family), "p": r.spec.p, "special_t": r.spec.special_t,
             "pairs": len(r.found), "labellings": sum(r.found.values()),
             "match": r.match, "structure_ok": r.structure_ok} for r in results]
    _emit(out, rows, args, rows, ["family", "p", "special_t", "pairs", "labellings", "match",
                                  "structure_ok"])
    bad = [r for r in results if not (r.match and r.structure_ok)]
    if bad:
        _witness(err, {"failures": [{"spec": r.spec.label(), "discrepancies": r.discrepancies}
                                    for r in bad]})
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_project(args, out, err) -> int:
    if args.r < 1:
        raise UsageError("--r must be at least 1")
    prof = project_ball(args.r, args.shift)
    rows = [{"i": i, "h": h} for i, h in prof.values]
    payload = {"r": prof.r, "shift": prof.shift, "total": prof.total(), "profile": rows}
    _emit(out, payload, args, rows, ["i", "h"])
    return EXIT_OK


def cmd_fold(args, out, err) -> int:
    if args.r < 1:
        raise UsageError("--r must be at least 1")
    cycle = fold_profile(project_ball(args.r, args.shift), args.p)
    weights = [str(w) for w in cycle.values()]
    rows = [{"i": i, "w": w} for i, w in enumerate(weights)]
    _emit(out, {"p": cycle.p, "weights": weights}, args, rows, ["i", "w"])
    return EXIT_OK


def cmd_table(args, out, err) -> int:
    rows = [row.to_dict() for row in theorem_table(args.r)
            if row.in_theorem_scope or not args.only_in_scope]
    _emit(out, rows, args, rows, TABLE_COLUMNS)
    return EXIT_OK


def cmd_end_to_end(args, out, err) -> int:
    rep = end_to_end(args.r, crossed=not args.no_crossed)
    out.write(rep.to_csv() if _fmt(args) == "csv" else rep.to_json() + "\n")
    if not rep.ok:
        _witness(err, {"r": args.r, "failures": [
            {"family": row.family, "variant": row.variant, "alpha": row.alpha,
             "violation": row.violation} for row in rep.rows if not row.ok]})
        return EXIT_MISMATCH
    return EXIT_OK


def _family_spec(args) -> FamilySpec:
    fam = ColoringFamily.parse(args.family)
    variant = args.variant
    if fam == ColoringFamily.COLORING5 and variant is None:
        variant = "two"
    return FamilySpec(fam, args.r, variant)


def _preset(args, spec: FamilySpec) -> CodePreset:
    if args.preset:
        return CodePreset.parse(args.preset, args.alpha, args.pattern)
    if args.pattern:
        return CodePreset(PresetKind.EXPLICIT, None, LinePattern.parse(args.pattern).colors)
    rows = family_rows(spec)
    for row in rows:
        if row.alpha == args.alpha:
            return default_preset(row)
    if args.alpha is not None:
        alphas = sorted({row.alpha for row in rows if row.alpha is not None})
        raise UsageError(f"alpha={args.alpha} is not a row of {spec.label()} at r={spec.r} "
                         f"(valid: {alphas})")
    return default_preset(rows[0])


def _generate(args, err):
    spec = _family_spec(args)
    try:
        return generate_code(spec, _preset(args, spec), Orientation.parse(args.orientation))
    except PresetRejected as exc:
        _witness(err, {"error": str(exc), "witness": exc.witness})
        return None


def cmd_gen_code(args, out, err) -> int:
    code = _generate(args, err)
    if code is None:
        return EXIT_MISMATCH
    d = code.to_dict()
    _emit(out, d, args, [d], list(d))
    return EXIT_OK


def _read_code_json(args):
    text = Path(args.input).read_text() if args.input and args.input != "-" else sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"cannot parse JSON input: {exc}") from None


def cmd_verify(args, out, err) -> int:
    expected = None
    r, pattern, orientation = args.r, args.pattern, args.orientation
    if pattern is None:
        data = _read_code_json(args)
        pattern = data.get("pattern")
        if pattern is None:
            raise UsageError("input JSON has no 'pattern'")
        r = r if r is not None else data.get("r")
        orientation = orientation or data.get("orientation")
        if data.get("a") is not None or data.get("b") is not None:
            expected = (data.get("a"), data.get("b"))
    if r is None:
        raise UsageError("--r is required")
    coloring = build_diagonal_coloring(LinePattern.parse(pattern),
                                       Orientation.parse(orientation or "parallel"))
    rep = verify_code(coloring, r)
    d = {"r": r, "pattern": coloring.pattern.colors.bits(),
         "orientation": coloring.orientation.value, **rep.to_dict()}
    flat = {k: v for k, v in d.items() if k != "violation"}
    _emit(out, d, args, [flat], list(flat))
    if not rep.verified:
        _witness(err, {"status": rep.status.value, "violation": rep.violation})
        return EXIT_MISMATCH
    if expected is not None and (rep.a, rep.b) != tuple(expected):
        _witness(err, {"status": "Mismatch", "expected": list(expected), "observed": [rep.a, rep.b]})
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_render(args, out, err) -> int:
    fmt = args.image_format
    if fmt is None:
        fmt = "svg" if str(args.output).lower().endswith(".svg") else "pbm"
    spec = RenderSpec.parse_window(args.window, args.cell, fmt)
    if args.family is None:
        if args.pattern is None:
            raise UsageError("render needs --family or --pattern")
        coloring = build_diagonal_coloring(LinePattern.parse(args.pattern),
                                           Orientation.parse(args.orientation))
    else:
        if args.r is None:
            raise UsageError("--r is required with --family")
        code = _generate(args, err)
        if code is None:
            return EXIT_MISMATCH
        coloring = code.coloring
    data = render(coloring, spec)
    if args.output == "-":
        sys.stdout.buffer.write(data) if out is sys.stdout else out.write(data.decode())
    else:
        Path(args.output).write_bytes(data)
    return EXIT_OK


# -- parser ------------------------------------------------------------------
def _add_format(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--format", choices=("json", "csv"))
    g.add_argument("--json", action="store_true", help="same as --format json")
    g.add_argument("--csv", action="store_true", help="same as --format csv")


def _add_code_args(p, need_family=True):
    p.add_argument("--family", required=need_family, help="coloring family 1..5")
    p.add_argument("--r", type=int, required=need_family)
    p.add_argument("--variant", choices=("two", "three"), help="Coloring 5 sub-family")
    p.add_argument("--alpha", type=int)
    p.add_argument("--preset", help="initial-block, alternate, half-black, three-pattern or explicit")
    p.add_argument("--pattern", help="explicit line pattern as a 1/0 string")
    p.add_argument("--orientation", default="parallel", choices=("parallel", "crossed"))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gridcover",
                                 description="Constant 2-labellings of weighted cycles and (r,a,b)-codes of Z^2.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="enumerate the labellings of one cycle family and compare with the rows")
    p.add_argument("--type", required=True, help="cycle family 1..8")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--special-t", action="store_true")
    p.add_argument("--values", help="concrete weights, e.g. z=5,x=2,y=3")
    _add_format(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("cross-check", help="enumerate every family at every valid p up to a bound")
    p.add_argument("--p-max", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_cross_check)

    p = sub.add_parser("project", help="project a ball onto the horizontal line")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--shift", type=int, default=1)
    _add_format(p)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("fold", help="fold a projected ball onto a cycle")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--shift", type=int, default=1)
    p.add_argument("--p", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("table", help="code constants per coloring family")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--only-in-scope", action="store_true", help="keep rows with |a-b| > 4")
    _add_format(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("end-to-end", help="generate and verify a code for every table row")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--no-crossed", action="store_true", help="skip the crossed-orientation check")
    _add_format(p)
    p.set_defaults(func=cmd_end_to_end)

    p = sub.add_parser("gen-code", help="generate a diagonal code coloring")
    _add_code_args(p)
    _add_format(p)
    p.set_defaults(func=cmd_gen_code)

    p = sub.add_parser("verify", help="verify a diagonal coloring as an (r,a,b)-code")
    p.add_argument("--r", type=int)
    p.add_argument("--pattern")
    p.add_argument("--orientation", choices=("parallel", "crossed"))
    p.add_argument("--input", help="JSON from gen-code (file or - for stdin); used without --pattern")
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a window of a code coloring as PBM or SVG")
    _add_code_args(p, need_family=False)
    p.add_argument("--window", required=True, help="WxH in cells")
    p.add_argument("--cell", type=int, default=10, help="cell size in SVG units")
    p.add_argument("--image-format", choices=("pbm", "svg"), help="default: from the file extension")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, err)
    except (UsageError, CodeSpecError, CycleSpecError, LatticeError, RenderError,
            EnumerationBoundError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
