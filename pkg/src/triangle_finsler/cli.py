"""Command-line front end: ``triangle-finsler <subcommand> ...``.

Every subcommand prints deterministic output (numbers to 12 significant
digits) and exits 0 exactly when the checks it performs pass.  Parameters
are always tagged: ``--t`` for t, ``--t2`` for the triple ratio t^2.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import domain_shape as ds
from .flat_metric import NotStabilizedError, finsler_delta_eval, translation_length
from .spectral import (
    enumerate_even_classes,
    jordan_projection,
    lattice_distances,
    top_log_eigenvalue,
    trace_top_degrees,
    write_scan,
)
from .triangle_group import (
    Presentation,
    build_rep,
    check_word,
    evaluate_word_numeric,
    evaluate_word_symbolic,
    inverse_word,
    is_torsion,
    symbolic_rep,
    triple_ratio,
)

MAX_SCAN_LENGTH = 20


def _g(x: float) -> str:
    return f"{x:.12g}"


def _pres(text: str) -> Presentation:
    try:
        return Presentation.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _word(text: str) -> str:
    try:
        return check_word(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> float:
    try:
        val = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not val > 0 or not math.isfinite(val):
        raise argparse.ArgumentTypeError(f"parameter must be positive and finite, got {text}")
    return val


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _point(text: str) -> np.ndarray:
    try:
        xs = [float(s) for s in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}") from None
    if len(xs) != 2:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}")
    return np.array(xs)


def _t_values(args) -> list[float]:
    """Values of t from the tagged flags (one of --t / --t2 must be present)."""
    if args.t is not None:
        vals = args.t if isinstance(args.t, list) else [args.t]
        return [float(v) for v in vals]
    vals = args.t2 if isinstance(args.t2, list) else [args.t2]
    return [math.sqrt(v) for v in vals]


def _add_param(p: argparse.ArgumentParser, many: bool = False, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    nargs = "+" if many else None
    g.add_argument("--t", type=_positive, nargs=nargs, help="value(s) of t")
    g.add_argument("--t2", type=_positive, nargs=nargs, help="value(s) of the triple ratio t^2")


# -- subcommands ------------------------------------------------------------

def cmd_rep_check(args) -> int:
    pres = args.pqr
    rep = symbolic_rep(pres)
    out = {"presentation": str(pres), "field": pres.field.m}
    if args.format == "json":
        out["generators"] = {
            k: [[g[i, j].to_json() for j in range(3)] for i in range(3)] for k, g in rep.generators.items()
        }
    else:
        for k, g in rep.generators.items():
            print(f"rho({k}) =")
            for i in range(3):
                print("  [" + ", ".join(repr(g[i, j]) for j in range(3)) + "]")
    results = rep.verify()
    if args.t is not None or args.t2 is not None:
        for t in _t_values(args):
            for name, ok in build_rep(pres, t, verify=False).verify().items():
                results[f"{name} @ t={_g(t)}"] = ok
    try:
        tr = triple_ratio(rep)
        tr_text = "t^2" if tr == _t_squared(pres) else repr(tr)
        ok_tr = tr_text == "t^2"
    except ValueError:
        tr_text, ok_tr = "undefined", True
    out["relations"] = results
    out["triple_ratio"] = tr_text
    if args.format == "json":
        json.dump(out, sys.stdout, indent=1, sort_keys=True)
        print()
    else:
        for name, ok in results.items():
            print(f"{name}: {'pass' if ok else 'FAIL'}")
        print(f"triple ratio: {tr_text}")
    return 0 if all(results.values()) and ok_tr else 1


def _t_squared(pres):
    from .algebra import LaurentPoly

    return LaurentPoly.monomial(pres.field(1), 2)


def _even_word(args) -> str:
    if len(args.word) % 2:
        raise SystemExit(f"error: word {args.word!r} is odd; trace degrees are defined for even words")
    return args.word


def cmd_trace_degrees(args) -> int:
    w = _even_word(args)
    d1, d2 = trace_top_degrees(args.pqr, w)
    if args.format == "json":
        rep = symbolic_rep(args.pqr)
        payload = {
            "presentation": str(args.pqr),
            "word": w,
            "d1": d1,
            "d2": d2,
            "trace": evaluate_word_symbolic(rep, w).trace().to_json(),
            "trace_inverse": evaluate_word_symbolic(rep, inverse_word(w)).trace().to_json(),
        }
        json.dump(payload, sys.stdout, indent=1)
        print()
    else:
        print(f"{d1},{d2}")
    if args.expect is not None and (d1, d2) != tuple(args.expect):
        print(f"expected {tuple(args.expect)}, got {(d1, d2)}", file=sys.stderr)
        return 1
    return 0


def cmd_jordan_scan(args) -> int:
    if not 0 <= args.max_len <= MAX_SCAN_LENGTH:
        raise SystemExit(f"error: --max-len must be in [0, {MAX_SCAN_LENGTH}]")
    (t,) = _t_values(args)
    rep = build_rep(args.pqr, t)
    points = [jordan_projection(rep, w) for w in enumerate_even_classes(args.pqr, args.max_len)]
    if args.output in (None, "-"):
        write_scan(points, sys.stdout, args.format)
    else:
        with open(args.output, "w", newline="") as sink:
            write_scan(points, sink, args.format)
    outside = [p.word for p in points if not p.in_cone()]
    status = 0 if not outside else 1
    if t > 1:
        d = lattice_distances(points, t)
        mean, p90 = float(np.mean(d)), float(np.percentile(d, 90))
        summary = f"rows={len(points)} lattice_mean={_g(mean)} lattice_p90={_g(p90)}"
        if args.max_p90 is not None and not p90 < args.max_p90:
            status = 1
    else:
        summary = f"rows={len(points)} lattice=undefined (t <= 1)"
    diag = max((abs(p.x - p.y) for p in points), default=0.0)
    summary += f" max_abs_x_minus_y={_g(diag)} outside_cone={len(outside)}"
    if args.max_diagonal is not None and not diag < args.max_diagonal:
        status = 1
    print(summary, file=sys.stderr)
    return status


def cmd_flat_length(args) -> int:
    w = args.word
    try:
        l1 = translation_length(args.pqr, w)
        l2 = translation_length(args.pqr, inverse_word(w))
    except NotStabilizedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"{l1},{l2}")
    if args.cross_check:
        d1, d2 = trace_top_degrees(args.pqr, w)
        ok = (l1, l2) == (3 * d1, 3 * d2)
        print(f"3*trace degrees: {3 * d1},{3 * d2} {'match' if ok else 'MISMATCH'}")
        return 0 if ok else 1
    return 0


def cmd_verify_limit(args) -> int:
    w = _even_word(args)
    pres = args.pqr
    ts = _t_values(args)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["t", "t2", "log_l1", "log_l1_inverse", "ratio", "predicted", "residual"])
    if not w or is_torsion(pres, w):
        for t in ts:
            writer.writerow([_g(t), _g(t * t), "0", "0", "undefined", "undefined", "undefined"])
        return 0
    d1, d2 = trace_top_degrees(pres, w)
    predicted = Fraction(d1, d2) if d2 else None
    residuals = []
    for t in ts:
        rep = build_rep(pres, t)
        x = top_log_eigenvalue(evaluate_word_numeric(rep, w))
        y = top_log_eigenvalue(evaluate_word_numeric(rep, inverse_word(w)))
        ratio = x / y if y != 0 else math.nan
        if predicted is None or not math.isfinite(ratio):
            writer.writerow([_g(t), _g(t * t), _g(x), _g(y), _g(ratio), "undefined", "undefined"])
            residuals.append(math.nan)
            continue
        res = ratio - float(predicted)
        residuals.append(abs(res))
        writer.writerow([_g(t), _g(t * t), _g(x), _g(y), _g(ratio), str(predicted), _g(res)])
    ok = all(math.isfinite(r) for r in residuals) and all(
        b < a for a, b in zip(residuals, residuals[1:])
    )
    if not ok:
        print("residuals do not decrease strictly along the sweep", file=sys.stderr)
    return 0 if ok else 1


def _body(args):
    if args.polygon is not None:
        return ds.Polygon.from_json(Path(args.polygon).read_text())
    if args.ellipse is not None:
        a, b = args.ellipse
        return ds.ellipse(a, b)
    return ds.unit_disk()


def cmd_funk(args) -> int:
    body = _body(args)
    lift = ds.TITEICA_LIFT if args.lift == "titeica" else ds.FLAT_LIFT
    out = {"lift": lift.name}
    if args.y is not None:
        out["dds"] = ds.dds_eval(body, lift, args.x, args.y)
        out["dds_reverse"] = ds.dds_eval(body, lift, args.y, args.x)
        out["hilbert"] = ds.hilbert_distance(body, args.x, args.y)
    if args.v is not None:
        out["fds"] = ds.fds_eval(body, lift, args.x, args.v)
    for k, v in out.items():
        print(f"{k}: {v if isinstance(v, str) else _g(v)}")
    return 0


def cmd_titeica(args) -> int:
    directions = args.direction or [1, 1j, cmath.exp(1j * math.pi / 7)]
    ok = True
    rows = []
    prev = None
    for d in sorted(args.d):
        ball = ds.truncated_ball(d, args.samples)
        gauges = [ball.gauge([v.real, v.imag]) for v in directions]
        if prev is not None and any(g > p + 1e-12 for g, p in zip(gauges, prev)):
            ok = False
        prev = gauges
        rows.append({"d": d, "vertices": ball.vertices.tolist(), "gauges": gauges})
    limit = [finsler_delta_eval(1, v) for v in directions]
    if args.format == "json":
        payload = {
            "directions": [[v.real, v.imag] for v in directions],
            "limit": limit,
            "balls": [{"d": r["d"], "gauges": r["gauges"], "vertices": r["vertices"]} for r in rows],
        }
        print(json.dumps(payload, indent=1))
    else:
        print("d," + ",".join(f"gauge_{i}" for i in range(len(directions))))
        for r in rows:
            print(_g(r["d"]) + "," + ",".join(_g(g) for g in r["gauges"]))
        print("limit," + ",".join(_g(g) for g in limit))
    if not ok:
        print("gauges are not monotone in d", file=sys.stderr)
    return 0 if ok else 1


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triangle-finsler", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_pqr(p):
        p.add_argument("--pqr", type=_pres, default=Presentation(4, 4, 4), help="presentation p,q,r (default 4,4,4)")

    p = sub.add_parser("rep-check", help="verify relations and the triple ratio")
    with_pqr(p)
    _add_param(p, many=True, required=False)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_rep_check)

    p = sub.add_parser("trace-degrees", help="top t-degrees of tr(w) and tr(w^-1)")
    with_pqr(p)
    p.add_argument("--word", type=_word, required=True)
    p.add_argument("--expect", type=int, nargs=2, metavar=("D1", "D2"))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_trace_degrees)

    p = sub.add_parser("jordan-scan", help="Jordan projections of all even classes")
    with_pqr(p)
    _add_param(p)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o")
    p.add_argument("--max-p90", type=float, help="fail unless the 90th-percentile lattice distance is below this")
    p.add_argument("--max-diagonal", type=float, help="fail unless every |x - y| is below this")
    p.set_defaults(func=cmd_jordan_scan)

    p = sub.add_parser("flat-length", help="F^Delta translation lengths of w and w^-1")
    with_pqr(p)
    p.add_argument("--word", type=_word, required=True)
    p.add_argument("--cross-check", action="store_true", help="compare with 3 * trace degrees")
    p.set_defaults(func=cmd_flat_length)

    p = sub.add_parser("verify-limit", help="eigenvalue ratio against d1/d2 over a parameter sweep")
    with_pqr(p)
    p.add_argument("--word", type=_word, required=True)
    _add_param(p, many=True)
    p.set_defaults(func=cmd_verify_limit)

    p = sub.add_parser("funk", help="domain-shape and Hilbert distances on a convex body")
    shape = p.add_mutually_exclusive_group()
    shape.add_argument("--polygon", help="JSON file with {'vertices': [[x, y], ...]}")
    shape.add_argument("--ellipse", type=float, nargs=2, metavar=("A", "B"))
    p.add_argument("--lift", choices=("flat", "titeica"), default="flat")
    p.add_argument("--x", type=_point, required=True)
    p.add_argument("--y", type=_point)
    p.add_argument("--v", type=_point)
    p.set_defaults(func=cmd_funk)

    p = sub.add_parser("titeica", help="gauges of the truncated Titeica balls")
    p.add_argument("--d", type=_positive, nargs="+", default=[1.0, 2.0, 4.0, 8.0])
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--direction", type=_complex, action="append")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_titeica)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
