"""Command-line entry point: ``compute``, ``verify``, ``heat``, ``dump-structure``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from .catalog import Metric, parse_descriptor, resolve_space
from .errors import DescriptorError, UnsupportedMetric, UnsupportedSpace
from .exact import parse_scalar

EXIT_PARSE, EXIT_SPACE, EXIT_METRIC = 2, 3, 4


def _metric(text: str | None) -> Metric:
    if text is None:
        return None
    try:
        value = Fraction(text)
    except ValueError:
        return text
    if value <= 0:
        raise argparse.ArgumentTypeError("metric multiplier must be positive")
    return value


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _quad_points(text: str) -> int:
    v = int(text)
    if v < 16:
        raise argparse.ArgumentTypeError("quad points must be at least 16")
    return v


def run_compute(args) -> str:
    from .invariants import full_report

    volY = None
    if args.vol is not None:
        try:
            volY = parse_scalar(args.vol)
        except ValueError as exc:
            raise DescriptorError(f"bad --vol value: {exc}") from None
    report = full_report(parse_descriptor(args.descriptor), volY, _metric(args.metric), args.generic)
    if args.format == "json":
        return json.dumps(report.to_json_dict(), indent=2)
    return report.render_text()


def run_verify(args) -> tuple[str, bool]:
    from .acceptance import run_all

    results = run_all(args.tol, args.quad_points, args.seed)
    lines = []
    for c in results:
        lines += [f"    {r}" for r in c.rows]
        lines.append(c.summary())
    ok = all(c.passed for c in results)
    lines.append(f"{sum(c.passed for c in results)}/{len(results)} criteria passed")
    if args.report_out:
        payload = {
            "schema": 1,
            "passed": ok,
            "criteria": [
                {
                    "number": c.number,
                    "title": c.title,
                    "passed": c.passed,
                    "seconds": round(c.seconds, 4),
                    "rows": [vars(r) for r in c.rows],
                }
                for c in results
            ],
        }
        with open(args.report_out, "w") as fh:
            json.dump(payload, fh, indent=2)
    return "\n".join(lines), ok


def run_heat(args) -> str:
    from .harness import fit_slope, heat_trace, ns_exponent
    from .invariants import INF_PLUS

    space = resolve_space(parse_descriptor(args.descriptor), _metric(args.metric))
    if not 0 <= args.degree <= space.n:
        raise DescriptorError(f"degree must lie in [0, {space.n}]")
    if ns_exponent(space, args.degree) == INF_PLUS:
        if args.format == "json":
            return json.dumps({"schema": 1, "space": str(space.descriptor), "degree": args.degree, "gap": True})
        return f"{space.descriptor} p={args.degree}: gap"
    if not 0 < args.t_min < args.t_max:
        raise DescriptorError("need 0 < t-min < t-max")
    ts = np.logspace(np.log10(args.t_min), np.log10(args.t_max), args.points)
    vals = heat_trace(space, args.degree, ts)
    rolling = [None] + [fit_slope(ts[i - 1 : i + 1], vals[i - 1 : i + 1]) for i in range(1, len(ts))]
    slope = fit_slope(ts, vals)
    if args.format == "json":
        return json.dumps(
            {
                "schema": 1,
                "space": str(space.descriptor),
                "degree": args.degree,
                "gap": False,
                "rows": [{"t": float(t), "trace": float(v), "slope": s} for t, v, s in zip(ts, vals, rolling)],
                "slope": slope,
            },
            indent=2,
        )
    lines = [f"{'t':>12} {'trace':>14} {'slope':>9}"]
    for t, v, s in zip(ts, vals, rolling):
        lines.append(f"{t:12.4g} {v:14.6e} {'' if s is None else f'{s:9.4f}'}")
    lines.append(f"fitted exponent: {slope:.4f}")
    return "\n".join(lines)


def run_dump(args) -> str:
    return resolve_space(parse_descriptor(args.descriptor), _metric(args.metric), args.generic).to_json()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="l2tor", description="L2-invariants of locally symmetric spaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    space = argparse.ArgumentParser(add_help=False)
    space.add_argument("descriptor", help='e.g. "SO(3,5)", "H^3 x H^2", "SL(3,R) @ trace2"')
    space.add_argument("--metric", help="curvature-1, trace2 or a positive rational multiplier")
    space.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("compute", parents=[space], help="exact invariant report")
    c.add_argument("--vol", help="vol(Y) as a pi-scalar, e.g. '6 * pi^2'")
    c.add_argument("--generic", action="store_true", help="skip catalog-pinned conventions")

    v = sub.add_parser("verify", help="run the acceptance suite")
    v.add_argument("--tol", type=_positive_float, default=None, help="numeric tolerance (default 1e-8 / 1e-6)")
    v.add_argument("--quad-points", type=_quad_points, default=64)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--report-out", help="write a JSON summary here")

    h = sub.add_parser("heat", parents=[space], help="coclosed heat trace and slope fit")
    h.add_argument("--degree", "-p", type=int, required=True)
    h.add_argument("--t-min", type=float, default=10.0)
    h.add_argument("--t-max", type=float, default=1e4)
    h.add_argument("--points", type=int, default=50)

    d = sub.add_parser("dump-structure", help="resolved structural data as JSON")
    d.add_argument("descriptor")
    d.add_argument("--metric")
    d.add_argument("--generic", action="store_true")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "compute":
            out = run_compute(args)
        elif args.command == "verify":
            out, ok = run_verify(args)
            print(out)
            return 0 if ok else 1
        elif args.command == "heat":
            out = run_heat(args)
        else:
            out = run_dump(args)
    except DescriptorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedMetric as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_METRIC
    except UnsupportedSpace as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPACE
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
