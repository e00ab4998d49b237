"""``sumset-cone`` command line.

Exit codes: 0 ok, 1 a requested check failed, 2 bad input, 3 oracle
budget exceeded, 4 hypotheses unmet, 5 unsupported dimension.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from pathlib import Path

from .brion import brion_verify, tangent_series, virtual_generators, xgen_series
from .cone import build_cone, structure_theorem_check, structure_threshold
from .corpus import random_dplus2, random_set_1d, random_simplicial
from .errors import BudgetExceeded, DimensionMismatch, HypothesisError
from .plotting import cardinality_plot, cone_plot_1d, level_slices_2d
from .polynomials import format_laurent
from .serialize import (
    InputError,
    dumps,
    load_pointset,
    multivariate_from_json,
    pointset_to_json,
    poly_to_json,
    rational_to_json,
    series_to_json,
)
from .series import dplus2_cardinality, khovanskii_polynomial, numerator_degrees, verify_multivariate
from .sumset import DEFAULT_BUDGET, PointSet, generates_full_lattice, normalize, sumset_sizes
from .truncated import disjointness_threshold, inclusion_exclusion_cardinality, truncated_cone_data

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_BUDGET, EXIT_HYPOTHESIS, EXIT_DIM = range(6)


class CommandResult:
    def __init__(self, payload: dict, rows: list[dict] | None = None, ok: bool = True,
                 svg: str | None = None, figure: str | None = None):
        self.payload = payload
        self.rows = rows
        self.ok = ok
        self.svg = svg
        self.figure = figure


def _read_input(args) -> PointSet:
    if args.points is not None:
        text = args.points
        if text.lstrip().startswith("["):
            text = json.dumps({"points": json.loads(text)})
    elif args.input is not None:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from exc
    else:
        raise InputError("give --input FILE or --points JSON")
    return load_pointset(text)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _fmt(v) for k, v in r.items()})
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


# -- commands -------------------------------------------------------------------


def _formula_for(a: PointSet, budget: int):
    """``(name, f, guaranteed_from)`` for the closed form that applies to ``a``, if any."""
    if a.hull.full_dimensional and generates_full_lattice(a):
        if len(a) == a.dim + 2:
            return "dplus2", lambda h: dplus2_cardinality(a, h), 0
        if a.hull.is_simplex:
            k = khovanskii_polynomial(a, budget=budget)
            return "khovanskii", k, k.certified_bound
    if len(a) == 1:
        return "singleton", lambda h: 1, 0
    return None, None, None


def cmd_sumset(a: PointSet, args) -> CommandResult:
    h_max = 10 if args.h_max is None else args.h_max
    sizes = sumset_sizes(a, h_max, args.budget)
    name, f, start = _formula_for(a, args.budget)
    rows, ok = [], True
    for h, n in enumerate(sizes):
        value = f(h) if f is not None else None
        match = None if value is None else value == n
        if match is False and h >= start:
            ok = False
        rows.append({"h": h, "cardinality": n, "formula_value": value, "match": match})
    payload = {"set": pointset_to_json(a), "formula": name, "guaranteed_from": start, "rows": rows}
    fig = None
    if args.figure:
        fig = cardinality_plot(sizes, [r["formula_value"] for r in rows] if f else None, name or "")
    return CommandResult(payload, rows, ok, figure=fig)


def _maybe_normalize(a: PointSet):
    if a.dim == 1:
        b, t = normalize(a)
        return b, {"shift": list(t.shift), "scale": t.scale}
    return a, None


def cmd_khovanskii(a: PointSet, args) -> CommandResult:
    a, transform = _maybe_normalize(a)
    k = khovanskii_polynomial(a, budget=args.budget)
    by_class, summed = numerator_degrees(build_cone(a, budget=args.budget))
    top = max(k.certified_bound + 10, args.h_max or 0)
    sizes = sumset_sizes(a, top, args.budget)
    rows = []
    ok = k.empirical_transition <= k.certified_bound
    for h, n in enumerate(sizes):
        p = k(h)
        rows.append({"h": h, "cardinality": n, "polynomial_value": p, "match": p == n})
        if h >= k.certified_bound and p != n:
            ok = False
    payload = {
        "set": pointset_to_json(a),
        "normalization": transform,
        "polynomial": poly_to_json(k.poly),
        "polynomial_text": str(k),
        "certified_bound": k.certified_bound,
        "empirical_transition": k.empirical_transition,
        "leading_coeff": rational_to_json(k.leading_coeff),
        "corrections": poly_to_json(k.corrections),
        "series": series_to_json(k.series),
        "numerator_degree_by_class": by_class,
        "numerator_degree": summed,
    }
    fig = cardinality_plot(sizes, [r["polynomial_value"] for r in rows], "p(h)") if args.figure else None
    return CommandResult(payload, rows, ok, figure=fig)


def cmd_brion(a: PointSet, args) -> CommandResult:
    a, transform = _maybe_normalize(a)
    if a.dim != 1:
        raise DimensionMismatch("the tangent-cone formula is implemented for d = 1 only")
    b = a.values[-1]
    report = brion_verify(a, args.h_max, args.budget)
    gens = virtual_generators(a, budget=args.budget)
    s0, sb = tangent_series(a, 0, gens), tangent_series(a, b, gens)
    x = xgen_series(a, gens)
    rows = [{"h": h, "formula_holds": v} for h, v in sorted(report.verdicts.items())]
    payload = {
        "set": pointset_to_json(a),
        "normalization": transform,
        "b": b,
        "threshold": report.threshold,
        "equality_from": report.equality_from,
        "theorem_holds": report.theorem_holds,
        "first_failure": report.first_failure(),
        "sigma_0": {"numerator": format_laurent(s0.numerator), "denominator_exponent": b},
        "sigma_b": {"numerator": format_laurent(sb.numerator), "denominator_exponent": -b},
        "virtual_generators": [
            {"residue": v.residue, "g": v.g, "h": v.h,
             "extraneous": [[p.point[0], p.height] for p in v.extraneous]}
            for v in gens
        ],
        "correction_t_degree": x.correction_t_degree,
        "rows": rows,
    }
    return CommandResult(payload, rows, report.theorem_holds)


def cmd_structure(a: PointSet, args) -> CommandResult:
    if a.dim > 1:
        a, _ = normalize(a)
    thr = structure_threshold(a)
    heights = args.heights if args.heights else [max(thr, 0) + i for i in range(3)]
    cone = build_cone(a, h_max=max(heights), budget=args.budget)
    rows = [{"h": h, "holds": structure_theorem_check(a, h, cone, args.budget)} for h in heights]
    ok = all(r["holds"] for r in rows)
    first = next((r["h"] for r in rows if not r["holds"]), None)
    payload = {"set": pointset_to_json(a), "threshold": thr, "first_failure": first, "rows": rows}
    return CommandResult(payload, rows, ok)


def cmd_dplus2(a: PointSet, args) -> CommandResult:
    tc = truncated_cone_data(a)
    H = tc.H
    h_max = H + 5 if args.h_max is None else args.h_max
    sizes = sumset_sizes(a, h_max, args.budget)
    rows, ok = [], True
    for h, n in enumerate(sizes):
        closed = dplus2_cardinality(a, h)
        ie = inclusion_exclusion_cardinality(tc, h)
        match = closed == n == ie
        ok &= match
        rows.append({"h": h, "cardinality": n, "closed_form": closed,
                     "inclusion_exclusion": ie, "match": match})
    meet = disjointness_threshold(tc)
    ok &= meet == H
    payload = {
        "set": pointset_to_json(a),
        "basis": [list(v) for v in tc.basis],
        "v0": list(tc.v0),
        "N": tc.N,
        "c": list(tc.c),
        "w": list(tc.w),
        "H": H,
        "disjointness_threshold": meet,
        "rows": rows,
    }
    fig = cardinality_plot(sizes, [r["closed_form"] for r in rows], "closed form") if args.figure else None
    return CommandResult(payload, rows, ok, figure=fig)


def cmd_verify_series(a: PointSet, args) -> CommandResult:
    if not args.claimed:
        raise InputError("--claimed FILE is required")
    try:
        obj = json.loads(Path(args.claimed).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read claimed series: {exc}") from exc
    claimed = multivariate_from_json(obj, a.dim)
    h_max = 12 if args.h_max is None else args.h_max
    res = verify_multivariate(a, claimed, h_max, args.budget)
    payload = {"set": pointset_to_json(a), "ok": res.ok, "h_max": h_max,
               "first_mismatch": res.first_mismatch}
    rows = [{"h_max": h_max, "ok": res.ok, "first_mismatch": res.first_mismatch}]
    return CommandResult(payload, rows, res.ok)


def cmd_plot(a: PointSet, args) -> CommandResult:
    if a.dim > 2:
        raise DimensionMismatch(f"plots are available for d <= 2, got d = {a.dim}")
    a, _ = normalize(a)
    cone = build_cone(a, h_max=args.h_max, budget=args.budget)
    if a.dim == 1:
        svg = cone_plot_1d(cone, args.h_max, bold=args.bold, hollow=args.hollow,
                           shade_minimals=args.shade)
    else:
        top = cone.h_max if args.h_max is None else args.h_max
        svg = level_slices_2d(cone, range(1, min(top, 4) + 1))
    return CommandResult({"set": pointset_to_json(a)}, None, True, svg=svg)


def cmd_sweep(_a, args) -> CommandResult:
    """Random corpus checks against the oracle (the only command without an input set)."""
    rng = random.Random(args.seed)
    rows, ok = [], True
    for i in range(args.count):
        if args.kind == "dplus2":
            d = args.dim
            a = random_dplus2(rng, d, args.max_volume)
            top = a.hull.normalized_volume + 5
            sizes = sumset_sizes(a, top, args.budget)
            good = all(dplus2_cardinality(a, h) == sizes[h] for h in range(top + 1))
        elif args.kind == "khovanskii":
            a = random_simplicial(rng, args.dim, args.max_volume)
            k = khovanskii_polynomial(a, budget=args.budget)
            sizes = sumset_sizes(a, k.certified_bound + 10, args.budget)
            good = all(k(h) == sizes[h] for h in range(k.certified_bound, k.certified_bound + 11))
        else:
            a = random_set_1d(rng, args.max_volume)
            good = brion_verify(a, budget=args.budget).theorem_holds
        ok &= good
        rows.append({"index": i, "set": json.dumps(pointset_to_json(a)["points"]), "ok": good})
    return CommandResult({"kind": args.kind, "seed": args.seed, "rows": rows}, rows, ok)


COMMANDS = {
    "sumset": cmd_sumset,
    "khovanskii": cmd_khovanskii,
    "brion": cmd_brion,
    "structure": cmd_structure,
    "dplus2": cmd_dplus2,
    "verify-series": cmd_verify_series,
    "plot": cmd_plot,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--input", help='JSON file {"dim": d, "points": [[...], ...]}')
    src.add_argument("--points", help="inline JSON: a point-set object or a list of points")
    common.add_argument("--h-max", type=int, default=None)
    common.add_argument("--format", choices=["json", "csv", "svg"], default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="largest number of points the oracle may hold in one level")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--figure", help="also write an SVG figure to this path")

    p = argparse.ArgumentParser(prog="sumset-cone", description="Iterated sumsets through the lifted cone.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("sumset", parents=[common], help="|hA| table with the applicable closed form")
    sub.add_parser("khovanskii", parents=[common], help="Khovanskii polynomial and phase transition")
    sub.add_parser("brion", parents=[common], help="one-dimensional tangent-cone formula for sigma_hA")
    s = sub.add_parser("structure", parents=[common], help="hA as an intersection of tangent cones")
    s.add_argument("--heights", type=int, nargs="+", help="levels to check (default: threshold and the next two)")
    sub.add_parser("dplus2", parents=[common], help="sets of d + 2 points via truncated cones")
    v = sub.add_parser("verify-series", parents=[common], help="check a claimed C_A(x, t) against the oracle")
    v.add_argument("--claimed", help="JSON file with numerator and denominator")
    pl = sub.add_parser("plot", parents=[common], help="SVG of the cone (d = 1) or level slices (d = 2)")
    pl.add_argument("--bold", type=int, nargs="*", default=[], help="residues drawn as filled circles")
    pl.add_argument("--hollow", type=int, nargs="*", default=[], help="residues drawn as open squares")
    pl.add_argument("--shade", type=int, nargs="*", default=[], help="residues whose minimal elements are shaded")
    sw = sub.add_parser("sweep", parents=[common], help="seeded random checks against the oracle")
    sw.add_argument("--kind", choices=["dplus2", "khovanskii", "brion"], default="dplus2")
    sw.add_argument("--count", type=int, default=10)
    sw.add_argument("--dim", type=int, default=1)
    sw.add_argument("--max-volume", type=int, default=12)
    return p


def _render(res: CommandResult, fmt: str) -> str:
    if fmt == "svg":
        if res.svg is None:
            raise InputError("this command has no SVG output; use --figure for a plot")
        return res.svg
    if fmt == "csv":
        return _csv(res.rows or [])
    return dumps(_jsonable(res.payload))


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.budget <= 0:
        print("error: --budget must be positive", file=stderr)
        return EXIT_INPUT
    fmt = args.format or ("svg" if args.command == "plot" else "json")

    def fail(code: int, kind: str, message: str, reason: str | None = None) -> int:
        err = {"error": kind, "message": message}
        if reason:
            err["reason"] = reason
        print(json.dumps(err, sort_keys=True), file=stderr)
        return code

    try:
        a = None if args.command == "sweep" else _read_input(args)
        res = COMMANDS[args.command](a, args)
        text = _render(res, fmt)
    except InputError as exc:
        return fail(EXIT_INPUT, "bad_input", str(exc))
    except DimensionMismatch as exc:
        return fail(EXIT_DIM, "unsupported_dimension", str(exc))
    except BudgetExceeded as exc:
        return fail(EXIT_BUDGET, "budget_exceeded", str(exc))
    except HypothesisError as exc:
        return fail(EXIT_HYPOTHESIS, "hypotheses_unmet", str(exc), exc.reason)
    except (ValueError, json.JSONDecodeError) as exc:
        return fail(EXIT_INPUT, "bad_input", str(exc))

    if args.output:
        Path(args.output).write_text(text)
    else:
        stdout.write(text)
    if args.figure and res.figure is not None:
        Path(args.figure).write_text(res.figure)
    elif args.figure and res.svg is not None:
        Path(args.figure).write_text(res.svg)
    return EXIT_OK if res.ok else EXIT_CHECK


def main() -> None:
    sys.exit(run())
