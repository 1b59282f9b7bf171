"""Command-line entry point: ``turnloc {analyze,simulate,dist,bias}``.

Indices are beat numbers (or any integer sample index), values are in the
units of the input file, and rates are in inverse input units.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import analytic, exactdist, estimate, io, simulate
from .model import IndexWindow, NoiseModel, TrendSequence, ValidationError

log = logging.getLogger("turnloc")

UNITS_NOTE = (
    "Units: index = beat number (sample position); values in the input units "
    "(e.g. milliseconds); rate lambda in inverse input units."
)


def _int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty bandwidth list")
    return values


def _fraction(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {text}")
    return value


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turnloc",
        description="Argmin-location distribution and confidence intervals for trend + exponential-noise series.",
        epilog=UNITS_NOTE,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "analyze",
        help="confidence interval of the minimum location of a series file",
        description="Estimate the minimum location of an interval series for one or more bandwidths.",
        epilog=UNITS_NOTE,
    )
    p.add_argument("file", type=Path, help="single-column values or two-column index,value text file")
    p.add_argument("--h", dest="bandwidths", type=_int_list, required=True,
                   help="sliding-minimum half-width in beats, or a comma-separated sweep (e.g. 5,8,11)")
    p.add_argument("--level", type=_fraction, default=0.95, help="confidence level (default 0.95)")
    p.add_argument("--out", type=Path, default=Path("."), help="output directory (default: current)")
    p.add_argument("--format", choices=("json", "csv", "both"), default="both",
                   help="report format; csv holds index, trend_hat, mass, log_mass columns")
    p.set_defaults(func=run_analyze)

    p = sub.add_parser(
        "simulate",
        help="Monte Carlo coverage study",
        description="Coverage rate and mean interval length over simulated trend + Exp(lambda) series.",
        epilog=UNITS_NOTE,
    )
    p.add_argument("--trend", choices=("linear", "exponential"), required=True)
    p.add_argument("--a", type=float, required=True, help="left slope (linear) or left rate (exponential), per beat")
    p.add_argument("--b", type=float, required=True, help="right slope (linear) or right rate (exponential), per beat")
    p.add_argument("--t0", type=int, required=True, help="true minimum location (beat index)")
    p.add_argument("--n", type=int, required=True, help="series length; window is 1..n")
    p.add_argument("--left-amplitude", type=float, default=2.0, help="exponential trend only (default 2)")
    p.add_argument("--right-amplitude", type=float, default=4.0, help="exponential trend only (default 4)")
    p.add_argument("--lambda", dest="rate", type=float, default=1.0, help="noise rate, inverse value units (default 1)")
    p.add_argument("--reps", type=int, default=200, help="realizations per bandwidth (default 200)")
    p.add_argument("--h", dest="bandwidths", type=_int_list, required=True, help="comma-separated bandwidths")
    p.add_argument("--level", type=_fraction, default=0.95)
    p.add_argument("--seed", type=int, default=0, help="64-bit unsigned seed (default 0)")
    p.add_argument("--workers", type=int, default=1, help="worker processes; output does not depend on it")
    p.add_argument("--out", type=Path, help="write the coverage table here (.json or .csv)")
    p.set_defaults(func=run_simulate)

    p = sub.add_parser(
        "dist",
        help="exact argmin-location distribution for a known trend",
        description="Exact distribution of the argmin location for a trend file or a parametric trend.",
        epilog=UNITS_NOTE,
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--trend-file", type=Path, help="trend levels, same layout as a series file")
    src.add_argument("--trend", choices=("symmetric", "linear", "exponential"), help="parametric trend family")
    p.add_argument("--a", type=float, help="slope a (symmetric, linear) or left rate (exponential)")
    p.add_argument("--b", type=float, help="right slope or right rate")
    p.add_argument("--t0", type=int, help="minimum location (linear, exponential)")
    p.add_argument("--start", type=int, default=1, help="first index of the window (default 1)")
    p.add_argument("--n", type=int, help="window length")
    p.add_argument("--lambda", dest="rate", type=float, required=True, help="noise rate, inverse value units")
    p.add_argument("--level", type=_fraction, default=0.95)
    p.add_argument("--out", type=Path, help="write index, trend, mass, log_mass CSV here")
    p.set_defaults(func=run_dist)

    p = sub.add_parser(
        "bias",
        help="closed-form argmin bias of an asymmetric V trend",
        description="Closed-form mean argmin location for left slope a, right slope b, rate lambda.",
        epilog=UNITS_NOTE,
    )
    p.add_argument("--a", type=float, required=True, help="left slope, value units per beat")
    p.add_argument("--b", type=float, required=True, help="right slope, value units per beat")
    p.add_argument("--lambda", dest="rate", type=float, required=True, help="noise rate, inverse value units")
    p.set_defaults(func=run_bias)
    return parser


def _formats(choice: str) -> list[str]:
    return ["json", "csv"] if choice == "both" else [choice]


def run_analyze(args) -> int:
    series = io.load_series(args.file)
    reports = estimate.sweep_bandwidths(series, args.bandwidths, args.level)
    if not args.out.is_dir():
        raise FileNotFoundError(f"output directory not found: {args.out}")
    for h, report in reports.items():
        for fmt in _formats(args.format):
            io.write_report(report, fmt, args.out / f"report_h{h}.{fmt}")
        iv = report.interval
        print(f"h={h:3d}  tau_hat={report.tau_hat}  rate_hat={report.rate_hat:.4g}  "
              f"CI{iv.level:.0%}=[{iv.left}, {iv.right}]  length={iv.length}")
    if len(reports) > 1:
        io.write_coverage_table(estimate.endpoints_table(reports), "csv", args.out / "endpoints.csv")
    return 0


def run_simulate(args) -> int:
    window = IndexWindow(1, args.n)
    if args.trend == "linear":
        spec = analytic.PiecewiseLinearTrendSpec(args.a, args.b, args.t0, window)
    else:
        spec = analytic.ExponentialTrendSpec(
            args.a, args.b, args.t0, window, args.left_amplitude, args.right_amplitude
        )
    config = simulate.StudyConfig(
        trend_spec=spec,
        noise_rate=args.rate,
        realizations=args.reps,
        bandwidths=tuple(args.bandwidths),
        level=args.level,
        seed=args.seed,
    )
    log.info("running %d realizations x %d bandwidths", config.realizations, len(config.bandwidths))
    table = simulate.coverage_study(config, workers=args.workers)
    if args.out is not None:
        fmt = "json" if args.out.suffix == ".json" else "csv"
        io.write_coverage_table(table, fmt, args.out)
    print("   h  coverage  mean_length")
    for h, row in table:
        print(f"{h:4d}  {row.coverage_rate:8.3f}  {row.mean_interval_length:11.2f}")
    return 0


def _dist_trend(args) -> TrendSequence:
    if args.trend_file is not None:
        s = io.load_series(args.trend_file)
        return TrendSequence(s.window, s.values)
    if args.n is None or args.a is None:
        raise ValidationError("parametric trends need --a and --n")
    window = IndexWindow.of_length(args.n, args.start)
    if args.trend == "symmetric":
        return analytic.build_linear_symmetric(args.a, window)
    if args.b is None or args.t0 is None:
        raise ValidationError(f"--trend {args.trend} needs --b and --t0")
    if args.trend == "linear":
        return analytic.build_linear_asymmetric(analytic.PiecewiseLinearTrendSpec(args.a, args.b, args.t0, window))
    return analytic.build_exponential(analytic.ExponentialTrendSpec(args.a, args.b, args.t0, window))


def run_dist(args) -> int:
    trend = _dist_trend(args)
    dist = exactdist.location_distribution(trend, NoiseModel(args.rate))
    if args.out is not None:
        io.write_distribution(dist, trend, args.out)
    iv = exactdist.confidence_interval(dist, args.level)
    print(f"expectation = {exactdist.distribution_expectation(dist)!r}")
    print(f"quantile({(1 - iv.level) / 2:g}) = {iv.left}")
    print(f"quantile({1 - (1 - iv.level) / 2:g}) = {iv.right}")
    if len(dist) <= 20:
        for t, m in zip(dist.indices, dist.mass):
            print(f"P(tau={t}) = {float(m)!r}")
    return 0


def run_bias(args) -> int:
    print(repr(analytic.asymmetric_bias(args.a, args.b, args.rate)))
    return 0


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (ValidationError, ValueError, OSError) as exc:
        print(f"turnloc {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
