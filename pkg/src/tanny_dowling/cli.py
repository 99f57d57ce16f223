"""Command-line front end: ``table``, ``verify`` and ``quadcheck``.

Exit codes: 0 all pass, 1 identity or residual failure, 2 usage error.
Rational-valued flags take ``p/q`` strings so the exact path stays exact.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .bernoulli import bernoulli_numbers, bernoulli_poly, bernoulli_poly_eval
from .exact_arith import format_rational, parse_rational
from .identities import SELECTORS, SweepGrid, theorem4_values, verify_sweep
from .polynomials import dowling_poly, poly_eval, poly_to_json, tanny_dowling_poly
from .quadrature import ConvergenceError, check_theorem1_numeric, check_theorem3_numeric
from .triangles import WhitneyParams, stirling2_row, triangle_csv_rows, whitney2_table

TABLE_FAMILIES = (
    "stirling2",
    "whitney2",
    "dowling",
    "tanny_dowling",
    "bernoulli_numbers",
    "bernoulli_poly",
)
QUAD_SELECTORS = ("theorem1", "theorem3", "theorem4")
RATIONAL_FLAGS = {"--a", "--amin", "--amax", "--astep", "--x", "--z"}

REL_THRESHOLD = 1e-8
ABS_THRESHOLD_AT_ZERO = 1e-10

_FLOAT_TAG = "@@f17:"


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _tag_floats(obj):
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return f"{_FLOAT_TAG}{obj:.17g}"
    if isinstance(obj, dict):
        return {k: _tag_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_tag_floats(v) for v in obj]
    return obj


def dumps(obj) -> str:
    """JSON with every float printed to 17 significant digits."""
    text = json.dumps(_tag_floats(obj), indent=2)
    return re.sub(rf'"{re.escape(_FLOAT_TAG)}([^"]*)"', r"\1", text) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _add_params(p: argparse.ArgumentParser, m_default: int | None = 1) -> None:
    p.add_argument("--m", type=int, default=m_default, help="positive integer m")
    p.add_argument("--a", type=_rational, default=Fraction(0), help="rational a (p/q)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tanny-dowling",
        description="Noncentral Whitney / Dowling / Tanny-Dowling tables and identity checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="emit a triangle or polynomial table")
    t.add_argument("family", choices=TABLE_FAMILIES)
    _add_params(t)
    t.add_argument("--nmax", type=int, default=10)
    t.add_argument("--format", choices=("json", "csv"), default="json")
    t.add_argument("--output", "-o")

    v = sub.add_parser("verify", help="exact identity sweep over an (m, a, n) grid")
    v.add_argument("identity", choices=SELECTORS)
    v.add_argument("--m", type=int, help="single m (overrides --mmin/--mmax)")
    v.add_argument("--mmin", type=int, default=1)
    v.add_argument("--mmax", type=int, default=5)
    v.add_argument("--a", type=_rational, help="single a (overrides the a range)")
    v.add_argument("--amin", type=_rational, default=Fraction(-3))
    v.add_argument("--amax", type=_rational, default=Fraction(3))
    v.add_argument("--astep", type=_rational, default=Fraction(1, 2))
    v.add_argument("--nmin", type=int, default=0)
    v.add_argument("--nmax", type=int, default=25)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--timing", action="store_true", help="include wall_time (non-deterministic)")
    v.add_argument("--output", "-o")

    q = sub.add_parser("quadcheck", help="floating-point cross-checks")
    q.add_argument("identity", choices=QUAD_SELECTORS)
    _add_params(q)
    q.add_argument("--nmax", type=int, default=10)
    q.add_argument("--x", type=_rational, default=Fraction(1, 2))
    q.add_argument("--z", type=_rational, default=Fraction(1, 10))
    q.add_argument("--N", type=int, default=40, help="series truncation order")
    q.add_argument("--order", type=int, default=64, help="Laguerre rule order")
    q.add_argument("--precision", choices=("dd", "double"), default="dd")
    q.add_argument("--tol", type=_positive_float, default=1e-10)
    q.add_argument("--output", "-o")
    return parser


def _params(parser: argparse.ArgumentParser, m: int, a: Fraction) -> WhitneyParams:
    if m is None or m < 1:
        parser.error(f"--m must be a positive integer, got {m}")
    return WhitneyParams(m, a)


def _check_nmax(parser: argparse.ArgumentParser, nmax: int) -> None:
    if nmax < 0:
        parser.error(f"--nmax must be >= 0, got {nmax}")


def run_table(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    _check_nmax(parser, args.nmax)
    fam, nmax = args.family, args.nmax
    params = None
    if fam in ("whitney2", "dowling", "tanny_dowling"):
        params = _params(parser, args.m, args.a)

    if args.format == "csv":
        if fam == "bernoulli_numbers":
            lines = ["n,value"] + [
                f"{n},{format_rational(b)}" for n, b in enumerate(bernoulli_numbers(nmax))
            ]
        else:
            lines = ["n,k,value"]
            if fam == "whitney2":
                lines.extend(triangle_csv_rows(whitney2_table(params, nmax)))
            else:
                for n in range(nmax + 1):
                    lines.extend(
                        f"{n},{k},{format_rational(c)}" for k, c in enumerate(_row(fam, params, n))
                    )
        _emit("\n".join(lines) + "\n", args.output)
        return 0

    payload: dict = {"family": fam, "nmax": nmax}
    if params is not None:
        payload["m"] = params.m
        payload["a"] = format_rational(params.a)
    if fam == "bernoulli_numbers":
        payload["values"] = [format_rational(b) for b in bernoulli_numbers(nmax)]
    elif fam in ("stirling2", "whitney2"):
        payload["rows"] = [
            [format_rational(c) for c in _row(fam, params, n)] for n in range(nmax + 1)
        ]
    else:
        payload["polynomials"] = [
            poly_to_json(_row(fam, params, n), n=n, family=fam, params=params)
            for n in range(nmax + 1)
        ]
    _emit(dumps(payload), args.output)
    return 0


def _row(fam: str, params: WhitneyParams | None, n: int) -> tuple:
    # Full coefficient rows (degree n); no trailing-zero trimming.
    if fam == "stirling2":
        return tuple(Fraction(s) for s in stirling2_row(n))
    if fam == "whitney2":
        return whitney2_table(params, n).rows[n]
    if fam == "dowling":
        return dowling_poly(params, n).coeffs
    if fam == "tanny_dowling":
        return tanny_dowling_poly(params, n).coeffs
    if fam == "bernoulli_poly":
        return bernoulli_poly(n).coeffs
    raise ValueError(fam)


def run_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    mmin, mmax = (args.m, args.m) if args.m is not None else (args.mmin, args.mmax)
    if mmin < 1:
        parser.error(f"m must be a positive integer, got {mmin}")
    amin, amax = (args.a, args.a) if args.a is not None else (args.amin, args.amax)
    try:
        grid = SweepGrid.from_ranges(
            mmin, mmax, amin, amax, args.astep, args.nmin, args.nmax, (args.identity,)
        )
    except ValueError as exc:
        parser.error(f"invalid grid: {exc}")
    report = verify_sweep(grid, workers=args.workers)
    _emit(dumps(report.to_json(include_timing=args.timing)), args.output)
    return 0 if report.fail_count == 0 else 1


def _threshold(target: float) -> float:
    return REL_THRESHOLD * abs(target) if target != 0 else ABS_THRESHOLD_AT_ZERO


def run_quadcheck(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    params = _params(parser, args.m, args.a)
    rows: list[dict] = []
    meta: dict = {"identity": args.identity, "m": params.m, "a": format_rational(params.a)}

    if args.identity in ("theorem1", "theorem3"):
        _check_nmax(parser, args.nmax)
    if args.identity == "theorem1":
        meta["tol"] = args.tol
        for n in range(args.nmax + 1):
            target = float(Fraction(params.m) ** n * bernoulli_poly_eval(n, -params.a / params.m))
            try:
                residual = check_theorem1_numeric(params, n, args.tol)
            except ConvergenceError as exc:
                rows.append({"n": n, "target": target, "status": "no-convergence", "detail": str(exc), "pass": False})
                continue
            thr = _threshold(target)
            rows.append({"n": n, "target": target, "residual": residual, "threshold": thr, "pass": residual < thr})
    elif args.identity == "theorem3":
        if not 1 <= args.order <= 128:
            parser.error(f"--order must be in [1, 128], got {args.order}")
        meta.update(x=format_rational(args.x), order=args.order, precision=args.precision)
        for n in range(args.nmax + 1):
            target = float(poly_eval(tanny_dowling_poly(params, n), args.x))
            residual = check_theorem3_numeric(params, n, args.x, args.order, args.precision)
            thr = _threshold(target)
            rows.append({"n": n, "target": target, "residual": residual, "threshold": thr, "pass": residual < thr})
    else:
        if args.N < 0:
            parser.error(f"--N must be >= 0, got {args.N}")
        meta.update(x=format_rational(args.x), z=format_rational(args.z), N=args.N)
        try:
            vals = theorem4_values(params, args.x, args.z, args.N)
        except ConvergenceError as exc:
            rows.append({"status": "divergent", "detail": str(exc), "pass": True})
        else:
            rows.append({
                "series": vals.series,
                "closed_form": vals.closed_form,
                "integral": vals.integral,
                "residual": vals.residual,
                "threshold": REL_THRESHOLD,
                "status": "ok",
                "pass": vals.residual < REL_THRESHOLD,
            })

    ok = all(r["pass"] for r in rows)
    _emit(dumps({**meta, "rows": rows, "all_pass": ok}), args.output)
    return 0 if ok else 1


def _join_negative_rationals(argv: Sequence[str]) -> list[str]:
    # argparse reads "-5/2" as an option; glue such values onto their flag.
    out: list[str] = []
    argv = list(argv)
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (
            tok in RATIONAL_FLAGS
            and i + 1 < len(argv)
            and re.fullmatch(r"-\d+(/\d+)?", argv[i + 1])
        ):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    raw = sys.argv[1:] if argv is None else argv
    args = parser.parse_args(_join_negative_rationals(raw))
    handlers = {"table": run_table, "verify": run_verify, "quadcheck": run_quadcheck}
    return handlers[args.command](args, parser)


if __name__ == "__main__":
    raise SystemExit(main())
