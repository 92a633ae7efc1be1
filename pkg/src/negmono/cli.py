"""Command line front end: score, sweep, sample, verify, threshold.

Exit codes: 0 on success, 2 when a requested score is not applicable
(a different situation from failure), 1 on any error including bad
usage. Output is deterministic: CSV is UTF-8 with LF line endings and a
header row, floats carry 12 significant digits, and Monte Carlo runs are
fully determined by their seed.

Complex parameters are written "re+imi" (for example 0.5-0.25i) or in
polar form "r@theta" (radians, for example 0.5@1.5708).
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
from pathlib import Path

from . import __version__
from .experiments import (
    CLOSED_FORM_FAMILIES,
    ExperimentConfig,
    GridAxis,
    HistogramSpec,
    SAMPLED_FAMILIES,
    histogram,
    min_mu3,
    run_experiment,
    sample_class_c,
    sample_gw_ground,
    scan_min_mu3,
    score_range,
    substream,
    verify_closed_forms,
)
from .linalg import TOL
from .monogamy import NotApplicableError, monogamy_report
from .states import FAMILY_SPECS, REAL_VIEWS, _coerce, build, build_real


class CliError(Exception):
    """Bad invocation or bad input; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors, but this tool reserves
    # 2 for "score not applicable", so usage errors become CliError -> 1.
    def error(self, message):
        raise CliError(message)


def parse_complex(token: str) -> complex:
    """Parse "re+imi" or polar "r@theta" tokens."""
    tok = token.strip()
    if not tok:
        raise CliError("empty parameter token")
    try:
        if "@" in tok:
            r_s, _, th_s = tok.partition("@")
            r, th = float(r_s), float(th_s)
            return complex(r * math.cos(th), r * math.sin(th))
        if tok[-1] in "iI":
            body = tok[:-1]
            for pos in range(len(body) - 1, 0, -1):
                if body[pos] in "+-" and body[pos - 1] not in "eE":
                    re_s, im_s = body[:pos], body[pos:]
                    if im_s in ("+", "-"):
                        im_s += "1"
                    return complex(float(re_s), float(im_s))
            if body in ("", "+", "-"):
                body += "1"
            return complex(0.0, float(body))
        return complex(float(tok), 0.0)
    except ValueError as err:
        raise CliError(f"cannot parse complex token {token!r}: {err}") from err


def fmt_float(v) -> str:
    return format(float(v), ".12g")


def fmt_value(v) -> str:
    """Render a parameter value as a CSV/JSON-friendly token."""
    if isinstance(v, complex):
        if v.imag == 0.0:
            return fmt_float(v.real)
        sign = "+" if v.imag >= 0 else "-"
        return f"{fmt_float(v.real)}{sign}{fmt_float(abs(v.imag))}i"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    return fmt_float(v)


def _round12(v: float) -> float:
    return float(fmt_float(v))


@contextlib.contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


REPORT_FIELDS = (
    "delta1",
    "delta2_j1",
    "delta2_j2",
    "delta2_j3",
    "delta3_j1j2",
    "delta3_j1j3",
    "delta3_j2j3",
    "delta4",
    "pi1",
    "pi2_j1",
    "pi2_j2",
    "pi2_j3",
    "pi3_j1j2",
    "pi3_j1j3",
    "pi3_j2j3",
    "pi4",
    "applicable_delta",
    "applicable_pi",
    "filter_pass",
)


def _report_values(report, filter_pass: bool) -> list[str]:
    def cell(v):
        return "na" if v is None else fmt_float(v)

    return [
        cell(report.delta1),
        *(cell(v) for v in report.delta2),
        *(cell(v) for v in report.delta3),
        cell(report.delta4),
        cell(report.pi1),
        *(cell(v) for v in report.pi2),
        *(cell(v) for v in report.pi3),
        cell(report.pi4),
        fmt_value(report.applicable_delta),
        fmt_value(report.applicable_pi),
        fmt_value(filter_pass),
    ]


def _write_records_csv(fh, param_names, records) -> None:
    fh.write(",".join(["sample_index", *param_names, *REPORT_FIELDS]) + "\n")
    for rec in records:
        values = dict(rec.params)
        row = [str(rec.index)]
        row += [fmt_value(values[name]) for name in param_names]
        row += _report_values(rec.report, rec.filter_pass)
        fh.write(",".join(row) + "\n")


def _write_hist_csv(fh, delta_hist, pi_hist) -> None:
    fh.write("bin_lower,bin_upper,count_delta4,count_pi4\n")
    edges = delta_hist.edges
    for i in range(len(delta_hist.counts)):
        fh.write(
            f"{fmt_float(edges[i])},{fmt_float(edges[i + 1])},"
            f"{int(delta_hist.counts[i])},{int(pi_hist.counts[i])}\n"
        )


def _score_payload(family: str, param_names, params, report) -> dict:
    def num(v):
        return None if v is None else _round12(v)

    rendered = {}
    for name, value in zip(param_names, params):
        if isinstance(value, complex) and value.imag != 0.0:
            rendered[name] = fmt_value(value)
        elif isinstance(value, int):
            rendered[name] = value
        else:
            rendered[name] = _round12(value.real if isinstance(value, complex) else value)
    return {
        "family": family,
        "params": rendered,
        "focus": report.focus,
        "mu3": {"delta": _round12(report.mu3_delta), "pi": _round12(report.mu3_pi)},
        "scores": {
            "delta1": num(report.delta1),
            "delta2": [num(v) for v in report.delta2],
            "delta3": [num(v) for v in report.delta3],
            "delta4": num(report.delta4),
            "pi1": num(report.pi1),
            "pi2": [num(v) for v in report.pi2],
            "pi3": [num(v) for v in report.pi3],
            "pi4": num(report.pi4),
        },
        "applicability": {
            "delta": report.applicable_delta,
            "pi": report.applicable_pi,
            "reason_delta": report.reason_delta,
            "reason_pi": report.reason_pi,
        },
        "version": __version__,
    }


def _parse_axis(text: str) -> GridAxis:
    name, eq, spec = text.partition("=")
    parts = spec.split(":")
    if not eq or len(parts) != 3:
        raise CliError(f"grid axis must look like name=lo:hi:count, got {text!r}")
    try:
        return GridAxis(name.strip(), float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError as err:
        raise CliError(f"bad grid axis {text!r}: {err}") from err


def _parse_fix(text: str) -> tuple[str, float]:
    name, eq, value = text.partition("=")
    if not eq:
        raise CliError(f"fixed parameter must look like name=value, got {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError as err:
        raise CliError(f"bad fixed parameter {text!r}: {err}") from err


def _parse_pair(text: str, what: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise CliError(f"{what} must look like lo:hi, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as err:
        raise CliError(f"bad {what} {text!r}: {err}") from err
    if not lo < hi:
        raise CliError(f"{what} needs lo < hi, got {text!r}")
    return lo, hi


def _parse_params(family: str, text: str) -> list:
    if family not in FAMILY_SPECS:
        raise CliError(f"unknown family {family!r}; choose from {sorted(FAMILY_SPECS)}")
    return [parse_complex(tok) for tok in text.split(",")]


def cmd_score(args) -> int:
    params = _parse_params(args.family, args.params)
    psi = build(args.family, params)
    report = monogamy_report(psi, args.focus, args.mu3_delta, args.mu3_pi)
    param_names = [name for name, _ in FAMILY_SPECS[args.family][1]]
    # build() coerced tokens already; re-coerce for rendering (ints stay ints)
    coerced = [
        _coerce(name, kind, value)
        for (name, kind), value in zip(FAMILY_SPECS[args.family][1], params)
    ]
    with _sink(args.out) as fh:
        if args.format == "json":
            payload = _score_payload(args.family, param_names, coerced, report)
            fh.write(json.dumps(payload, indent=2) + "\n")
        else:
            fh.write(",".join(["sample_index", *param_names, *REPORT_FIELDS]) + "\n")
            row = ["0", *(fmt_value(v) for v in coerced), *_report_values(report, True)]
            fh.write(",".join(row) + "\n")
    if not (report.applicable_delta and report.applicable_pi):
        for reason in (report.reason_delta, report.reason_pi):
            if reason:
                print(f"not applicable: {reason}", file=sys.stderr)
        return 2
    return 0


def cmd_sweep(args) -> int:
    axes = [_parse_axis(text) for text in args.grid]
    if not 1 <= len(axes) <= 2:
        raise CliError("sweep takes one or two --grid axes")
    fixed = tuple(sorted(_parse_fix(text) for text in args.fix))
    config = ExperimentConfig(
        family=args.family,
        grid=tuple(axes),
        fixed=fixed,
        mu3_delta=args.mu3_delta,
        mu3_pi=args.mu3_pi,
        focus=args.focus,
    )
    records = run_experiment(config)
    param_names = [axis.name for axis in axes] + [name for name, _ in fixed]
    with _sink(args.out) as fh:
        _write_records_csv(fh, param_names, records)
    if args.plot:
        if args.out is None:
            raise CliError("--plot needs --out to anchor the figure path")
        if len(axes) != 1:
            raise CliError("--plot supports one-axis sweeps only")
        from . import plots

        xs = [dict(rec.params)[axes[0].name] for rec in records]
        png = Path(args.out).with_suffix(".png")
        plots.save_sweep(
            axes[0].name,
            xs,
            [rec.report.delta4 for rec in records],
            [rec.report.pi4 for rec in records],
            png,
            title=f"{args.family} sweep",
        )
        print(f"wrote {png}", file=sys.stderr)
    return 0


def cmd_sample(args) -> int:
    if args.out is None:
        raise CliError("sample mode writes CSV files; --out is required")
    config = ExperimentConfig(
        family=args.family,
        samples=args.samples,
        seed=args.seed,
        mu3_delta=args.mu3_delta,
        mu3_pi=args.mu3_pi,
        focus=args.focus,
        filter=args.filter,
    )
    records = run_experiment(config)
    param_names = ("x1", "x2", "x3", "x4") if args.family == "class-c" else ("p", "a1", "a2", "a3", "a4")
    with _sink(args.out) as fh:
        _write_records_csv(fh, param_names, records)
    if args.range is not None:
        lo, hi = _parse_pair(args.range, "range")
    else:
        lo, hi = score_range(records)
    delta_hist = histogram(records, HistogramSpec(args.bins, lo, hi, "delta4"))
    pi_hist = histogram(records, HistogramSpec(args.bins, lo, hi, "pi4"))
    out = Path(args.out)
    hist_path = out.with_name(out.stem + "_hist.csv")
    with _sink(hist_path) as fh:
        _write_hist_csv(fh, delta_hist, pi_hist)
    for kind, hist in (("delta4", delta_hist), ("pi4", pi_hist)):
        n_ok = int(hist.counts.sum()) + hist.below + hist.above
        violations = sum(
            1
            for rec in records
            if rec.filter_pass
            and getattr(rec.report, kind) is not None
            and getattr(rec.report, kind) < -TOL.residual
        )
        print(
            f"{kind}: {n_ok} applicable, {hist.excluded} excluded, "
            f"{violations} below {-TOL.residual:g}",
            file=sys.stderr,
        )
    if args.plot:
        from . import plots

        png = out.with_name(out.stem + "_hist.png")
        plots.save_histogram(
            delta_hist,
            pi_hist,
            png,
            title=f"{args.family}, {args.samples} samples, seed {args.seed}",
        )
        print(f"wrote {png}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    result = verify_closed_forms(args.family, tol=args.tol, mu3=args.mu3)
    print(f"family {result.family}: {result.points} points, tol {result.tol:g}, mu3 {args.mu3:g}")
    for check in result.checks:
        if check.flagged:
            status = "reported (known discrepancy)"
        elif check.max_abs_diff <= result.tol:
            status = "ok"
        else:
            status = "FAIL"
        print(
            f"  {check.component:16s} max|oracle-pipeline| {fmt_float(check.max_abs_diff):>12s}"
            f"  at point {check.worst_point:4d}  {status}"
        )
    return 0 if result.passed else 1


def cmd_threshold(args) -> int:
    bracket = _parse_pair(args.bracket, "bracket")
    if args.params is not None:
        psi = build(args.family, _parse_params(args.family, args.params))
        try:
            value = min_mu3(psi, args.score, bracket, args.tol, args.focus)
        except NotApplicableError as err:
            print(f"not applicable: {err}", file=sys.stderr)
            return 2
        print(fmt_float(value))
        return 0
    if args.family in SAMPLED_FAMILIES:
        if args.seed is None:
            raise CliError("threshold scans over sampled families need --seed")
        sampler = sample_class_c if args.family == "class-c" else sample_gw_ground
        psis = (sampler(substream(args.seed, i)) for i in range(args.samples))
        n_points = args.samples
    elif args.family in REAL_VIEWS:
        if not args.grid:
            raise CliError(f"threshold scans over {args.family!r} need --grid")
        axes = [_parse_axis(text) for text in args.grid]
        fixed = dict(_parse_fix(text) for text in args.fix)
        import itertools

        grids = [axis.values() for axis in axes]
        names = [axis.name for axis in axes]
        psis = (
            build_real(args.family, {**fixed, **dict(zip(names, map(float, point)))})
            for point in itertools.product(*grids)
        )
        n_points = math.prod(axis.count for axis in axes)
    else:
        raise CliError(f"family {args.family!r} supports --params points only")
    try:
        scan = scan_min_mu3(psis, args.score, bracket, args.tol, args.focus)
    except NotApplicableError as err:
        print(f"not applicable: {err}", file=sys.stderr)
        return 2
    print(fmt_float(scan.max_mu3))
    print(
        f"scanned {n_points} points: {scan.applicable} applicable, "
        f"{scan.skipped} skipped (not applicable), worst at index {scan.argmax_index}",
        file=sys.stderr,
    )
    return 0


def build_cli() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="negmono",
        description="Strong-monogamy scores for four-qubit pure states.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mu=True):
        p.add_argument("--focus", type=int, default=0, help="focus qubit index (default 0)")
        if mu:
            p.add_argument("--mu3-delta", type=float, default=1.0, help="exponent for delta scores")
            p.add_argument("--mu3-pi", type=float, default=1.0, help="exponent for pi scores")

    p = sub.add_parser("score", help="full report for one state")
    p.add_argument("--family", required=True, choices=sorted(FAMILY_SPECS))
    p.add_argument("--params", required=True, help="comma-separated parameter tokens")
    common(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("sweep", help="grid sweep over one or two real parameters")
    p.add_argument("--family", required=True, choices=sorted(REAL_VIEWS))
    p.add_argument("--grid", action="append", default=[], metavar="NAME=LO:HI:COUNT", help="sweep axis (repeatable)")
    p.add_argument("--fix", action="append", default=[], metavar="NAME=VALUE", help="fix a remaining real parameter")
    common(p)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.add_argument("--plot", action="store_true", help="also render score-vs-parameter PNG next to --out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("sample", help="seeded Monte Carlo census")
    p.add_argument("--family", required=True, choices=sorted(SAMPLED_FAMILIES))
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--filter", choices=("none", "require_nonneg_delta3", "require_nonneg_pi3"), default="none")
    common(p)
    p.add_argument("--bins", type=int, default=50)
    p.add_argument(
        "--range",
        default=None,
        metavar="LO:HI",
        help="histogram range (default: observed); write --range=-1:1 for a negative LO",
    )
    p.add_argument("--out", default=None, help="CSV path; histogram lands next to it")
    p.add_argument("--plot", action="store_true", help="also render the histogram PNG")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="closed forms vs numeric pipeline")
    p.add_argument("--family", required=True, choices=sorted(CLOSED_FORM_FAMILIES))
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--mu3", type=float, default=1.0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("threshold", help="smallest mu3 with a non-negative score")
    p.add_argument("--family", required=True)
    p.add_argument("--score", required=True, choices=("delta", "pi"))
    p.add_argument("--params", default=None, help="single point (family parameter tokens)")
    p.add_argument("--grid", action="append", default=[], metavar="NAME=LO:HI:COUNT")
    p.add_argument("--fix", action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--bracket", default="1:6", metavar="LO:HI")
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--focus", type=int, default=0)
    p.set_defaults(func=cmd_threshold)

    return parser


def main(argv=None) -> int:
    parser = build_cli()
    try:
        args = parser.parse_args(argv)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except SystemExit as err:  # --help / --version
        return int(err.code or 0)
    try:
        return int(args.func(args) or 0)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
