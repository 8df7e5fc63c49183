"""Command-line front end: good-d, decide, construct, verify, count."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

from .constructor import ConstructionError
from .curve import CurveModel, CurveParseError
from .density import aggregate_IX, aggregate_RX, count_family, default_grid, family_for, long_csv
from .reduction import integral_model, render_report, verify_egr
from .setzer import DEFAULT_A_MAX, EgrVerdict, decide, scan_good_d, table_to_csv

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNKNOWN = 3
EXIT_FAULT = 4


class InputError(ValueError):
    pass


def parse_int(text: str) -> int:
    """Integer from decimal or scientific notation ("1e6"); rejects non-integers."""
    try:
        d = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not d.is_finite() or d != d.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(d)


def positive_int(text: str) -> int:
    n = parse_int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return n


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _verdict_json(v: EgrVerdict) -> dict:
    out = {
        "m": v.m,
        "status": v.status,
        "failures": [{"D": r.D, "q": r.q, "failed": r.failed()} for r in v.failures],
        "unresolved": v.unresolved,
    }
    if v.witness is not None:
        w = v.witness
        out["witness"] = {
            "A": w.record.A, "D": w.record.D, "q": w.q, "d1": w.record.d1,
            "alpha": str(w.alpha), "n": w.n, "u": str(w.u), "branch": w.branch,
            "curve": w.curve.to_record(),
        }
    return out


def cmd_good_d(args) -> tuple[str, int]:
    table = scan_good_d(args.a_max)
    if args.format == "csv":
        return table_to_csv(table), EXIT_OK
    rows = sorted((r for recs in table.values() for r in recs), key=lambda r: r.A)
    if args.format == "json":
        return _dumps([r.__dict__ for r in rows]) + "\n", EXIT_OK
    lines = [f"{'A':>8} {'D':>14} {'t':>10} {'d1':>8} {'d2':>6} eps"]
    lines += [f"{r.A:>8} {r.D:>14} {r.t:>10} {r.d1:>8} {r.d2:>6} {r.epsilon:+d}" for r in rows]
    lines.append(f"# {len(table)} distinct good D from |A| <= {args.a_max}")
    return "\n".join(lines) + "\n", EXIT_OK


def _decide(args) -> EgrVerdict:
    try:
        return decide(args.m, a_max=args.a_max, retry_cap=args.retry_cap)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _status_code(v: EgrVerdict) -> int:
    return EXIT_UNKNOWN if v.status == "UNKNOWN" else EXIT_OK


def cmd_decide(args) -> tuple[str, int]:
    v = _decide(args)
    if args.format == "json":
        return _dumps(_verdict_json(v)) + "\n", _status_code(v)
    if args.format == "csv":
        lines = ["m,status,D,q,detail"]
        if v.witness is not None:
            w = v.witness
            lines.append(f"{v.m},{v.status},{w.record.D},{w.q},witness A={w.record.A}")
        lines += [f"{v.m},{v.status},{r.D},{r.q},fails {'/'.join(r.failed())}" for r in v.failures]
        lines += [f"{v.m},{v.status},{D},{v.m // D},unresolved" for D in v.unresolved]
        return "\n".join(lines) + "\n", _status_code(v)
    return v.summary() + "\n", _status_code(v)


def cmd_construct(args) -> tuple[str, int]:
    v = _decide(args)
    if v.status == "NO":
        raise InputError(f"Q(sqrt({v.m})) has no EGR curve with rational j-invariant:\n{v.summary()}")
    if v.status == "UNKNOWN":
        return v.summary() + "\n", EXIT_UNKNOWN
    w = v.witness
    E, _ = integral_model(w.curve)
    ok, reports = verify_egr(E)
    if args.format == "json":
        out = _verdict_json(v)
        out["j"] = str(E.j)
        out["egr"] = ok
        out["reports"] = [json.loads(r.to_json()) for r in reports]
        return _dumps(out) + "\n", EXIT_OK
    header = [
        f"# K = Q(sqrt({v.m})), A = {w.record.A}, D = {w.record.D}, q = {w.q}",
        f"# alpha = {w.alpha}, n = {w.n}, u = {w.u} ({w.branch} branch)",
        f"# j = {E.j}",
        f"# EGR: {str(ok).lower()}",
    ]
    header += ["# " + line for line in render_report(reports).splitlines()]
    return "\n".join(header) + "\n" + E.to_file_text(), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    try:
        E = CurveModel.load(args.curve)
    except OSError as exc:
        raise InputError(f"cannot read {args.curve}: {exc}") from exc
    except CurveParseError as exc:
        raise InputError(f"parse error in {args.curve}: {exc}") from exc
    ok, reports = verify_egr(E)
    if args.format == "json":
        out = {"egr": ok, "m": E.field.m, "discriminant_norm": str(integral_model(E)[0].discriminant.norm()),
               "reports": [json.loads(r.to_json()) for r in reports]}
        return _dumps(out) + "\n", EXIT_OK
    lines = [f"EGR: {str(ok).lower()}"]
    if not reports:
        lines.append("discriminant is a unit")
    lines += render_report(reports).splitlines()
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_count(args) -> tuple[str, int]:
    x = args.x if args.x is not None else args.x_max
    if x is None:
        raise InputError("count needs X (positional or --x-max)")
    if x < 10:
        raise InputError("X must be at least 10")
    grid = default_grid(x)
    target = args.family
    if target == "R":
        rep = aggregate_RX(x, grid)
    elif target == "I":
        rep = aggregate_IX(x, grid)
    else:
        try:
            spec = family_for(parse_int(target), sign=args.sign, residues=args.residues)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise InputError(str(exc)) from exc
        rep = count_family(spec, x, grid)
    fmt = args.format or "csv"
    if fmt == "csv":
        return (long_csv([rep]) if args.long else rep.to_csv()), EXIT_OK
    if fmt == "json":
        out = {"family": rep.label, "alpha": str(rep.alpha), "X": list(rep.X_grid),
               "count": list(rep.counts), "normalized": [round(v, 6) for v in rep.normalized]}
        return _dumps(out) + "\n", EXIT_OK
    lines = [f"# {rep.label}  alpha = {rep.alpha}", f"{'X':>12} {'count':>10} {'normalized':>12}"]
    lines += [f"{X:>12} {c:>10} {v:>12.6f}" for X, c, v in zip(rep.X_grid, rep.counts, rep.normalized)]
    return "\n".join(lines) + "\n", EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a-max", type=positive_int, default=DEFAULT_A_MAX, help="good-D scan bound on |A|")
    common.add_argument("--retry-cap", type=positive_int, default=8, help="conic solutions tried per witness")
    common.add_argument("--x-max", type=positive_int, default=None, help="counting bound X")
    common.add_argument("--format", choices=("text", "json", "csv"), default=None)
    common.add_argument("--out", type=Path, default=None, help="write output to this file")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="egr",
        description="Quadratic fields with everywhere-good-reduction curves of rational j-invariant.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("good-d", parents=[common], help="scan admissible A for good D")
    p.set_defaults(func=cmd_good_d)

    for name, func, text in (("decide", cmd_decide, "decide EGR over Q(sqrt(m))"),
                             ("construct", cmd_construct, "build and certify a witness curve")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("m", type=parse_int)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", parents=[common], help="check a curve file for everywhere good reduction")
    p.add_argument("curve", type=Path)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", parents=[common], help="count a family (D) or aggregate (R, I)")
    p.add_argument("family", help="a good D, or R / I for the aggregate field counts")
    p.add_argument("x", nargs="?", type=positive_int, default=None)
    p.add_argument("--sign", type=int, choices=(1, -1), default=None, help="sign of q (default -epsilon_D)")
    p.add_argument("--residues", choices=("narrow", "full"), default="narrow")
    p.add_argument("--long", action="store_true", help="CSV in long format family,X,count,normalized")
    p.set_defaults(func=cmd_count)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if args.command != "count" and args.format is None:
        args.format = "text"
    try:
        text, code = args.func(args)
    except (InputError, ConstructionError) as exc:
        # a YES verdict whose construction fails is an internal fault, not bad input
        if isinstance(exc, ConstructionError):
            print(f"egr: internal fault: {exc}", file=sys.stderr)
            return EXIT_FAULT
        print(f"egr: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"egr: internal fault: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAULT
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
