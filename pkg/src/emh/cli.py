"""``emh`` command line: run the efficiency tests on a CSV or simulate a series."""

from __future__ import annotations

import argparse
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .autocorr import DEFAULT_MAX_LAG, SeMode, correlogram
from .autoreg import ArSpec, RegressionError, ar_fit
from .report import AnalysisReport, render_correlogram, render_json, render_markdown
from .runs import RunsError, ZeroPolicy, runs_test
from .series import DEFAULT_DATE_FORMAT, SeriesError, parse_csv, serialize_csv, to_returns
from .simulate import Ar, IidNoise, RandomWalk, SimulationSpec, generate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DATA = 4
EXIT_STATS = 5

EXIT_CODES_HELP = """\
exit status:
  0  success
  2  usage error (bad flags or arguments)
  3  input file unreadable or output not writable
  4  invalid input data (bad CSV cell, duplicate date, too few rows)
  5  a test is undefined for this series (e.g. no down moves, collinear lags)

environment:
  EMH_DATE_FORMAT  default strptime pattern for the date column (default %Y-%m-%d)
"""

ANALYSES = ("runs", "acf", "ar", "all")


class _IOFailure(Exception):
    pass


def _analysis_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--input", required=True, metavar="PATH", help="CSV file with a header row")
    p.add_argument("--format", choices=("json", "markdown"), default="json")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--lags", type=int, default=DEFAULT_MAX_LAG, help="ACF lags (default 20)")
    p.add_argument("--ar-lags", type=int, default=2, help="autoregression order (default 2)")
    p.add_argument("--alpha", type=float, default=0.05, help="significance level (default 0.05)")
    p.add_argument("--returns", action="store_true", help="run ACF and AR on simple returns instead of levels")
    p.add_argument("--zero-policy", choices=[z.value for z in ZeroPolicy], default="exclude")
    p.add_argument("--se", choices=[m.value for m in SeMode], default=SeMode.LARGE_N.value,
                   help="ACF standard error: 1/sqrt(n) (large-n) or 1/sqrt(n-k) (exact)")
    p.add_argument("--plot", choices=("ascii", "svg"), help="also draw the correlogram")
    p.add_argument("--plot-out", metavar="PATH", help="write the correlogram plot to a separate file")
    p.add_argument("--label", help="series name used in tables (default: file stem)")
    p.add_argument("--date-column", default="Date")
    p.add_argument("--value-column", default="Close")
    p.add_argument("--date-format", default=None, help="strptime pattern (default $EMH_DATE_FORMAT or ISO)")
    p.add_argument("--thousands-sep", default=None, help="strip this character from values, e.g. ','")
    p.add_argument("--allow-nonpositive", action="store_true",
                   help="accept zero/negative closes (synthetic series)")
    p.add_argument("--stamp", action="store_true", help="embed a generation timestamp in markdown output")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emh",
        description="Weak-form market efficiency tests: runs test, autocorrelation, autoregression.",
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    parent = _analysis_parent()
    helps = {
        "runs": "sign-of-change runs test",
        "acf": "autocorrelation test and correlogram",
        "ar": "AR(p) least-squares autoregression",
        "all": "all three tests",
    }
    for name in ANALYSES:
        sub.add_parser(name, parents=[parent], help=helps[name], epilog=EXIT_CODES_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)

    sim = sub.add_parser("simulate", help="write a seeded synthetic series as CSV", epilog=EXIT_CODES_HELP,
                         formatter_class=argparse.RawDescriptionHelpFormatter)
    sim.add_argument("--model", choices=("random-walk", "ar", "iid"), default="random-walk")
    sim.add_argument("--n", type=int, default=2212)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--drift", type=float, default=0.0)
    sim.add_argument("--step-sd", type=float, default=1.0)
    sim.add_argument("--intercept", type=float, default=0.0)
    sim.add_argument("--coef", type=float, nargs="+", default=[0.5], help="AR coefficients, lag 1 first")
    sim.add_argument("--noise-sd", type=float, default=1.0)
    sim.add_argument("--sd", type=float, default=1.0, help="i.i.d. noise standard deviation")
    sim.add_argument("--mean", type=float, default=0.0, help="i.i.d. noise mean")
    sim.add_argument("--initial", type=float, nargs="+", default=None, help="starting values (default 100)")
    sim.add_argument("--label", default="")
    sim.add_argument("--out", metavar="PATH")
    return parser


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc.strerror or exc}") from exc


def _run_simulate(args) -> None:
    if args.model == "random-walk":
        model = RandomWalk(drift=args.drift, step_sd=args.step_sd)
    elif args.model == "ar":
        model = Ar(intercept=args.intercept, coefficients=tuple(args.coef), noise_sd=args.noise_sd)
    else:
        model = IidNoise(sd=args.sd, mean=args.mean)
    spec = SimulationSpec(
        model=model,
        n=args.n,
        seed=args.seed,
        initial_values=tuple(args.initial) if args.initial is not None else None,
        label=args.label,
    )
    _emit(serialize_csv(generate(spec)), args.out)


def _run_analysis(args, parser: argparse.ArgumentParser) -> None:
    cmd = args.command
    if cmd in ("acf", "all") and args.lags < 1:
        parser.error("--lags must be at least 1")
    if cmd in ("ar", "all") and args.ar_lags < 1:
        parser.error("--ar-lags must be at least 1")
    if not 0 < args.alpha < 1:
        parser.error("--alpha must lie in (0, 1)")
    if args.plot and args.format == "json" and not args.plot_out:
        parser.error("--plot with --format json needs --plot-out")

    date_format = args.date_format or os.environ.get("EMH_DATE_FORMAT") or DEFAULT_DATE_FORMAT
    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise _IOFailure(f"cannot read {args.input}: {getattr(exc, 'strerror', None) or exc}") from exc
    label = args.label if args.label is not None else Path(args.input).stem
    series = parse_csv(
        text,
        date_column=args.date_column,
        value_column=args.value_column,
        date_format=date_format,
        label=label,
        thousands_sep=args.thousands_sep,
        allow_nonpositive=args.allow_nonpositive,
    )
    values = to_returns(series) if args.returns else series.closes

    runs = corr = fit = None
    if cmd in ("runs", "all"):
        # return signs equal price-change signs, so the runs test always uses levels
        runs = runs_test(series, ZeroPolicy(args.zero_policy))
    if cmd in ("acf", "all"):
        corr = correlogram(values, args.lags, SeMode(args.se))
    if cmd in ("ar", "all"):
        fit = ar_fit(values, ArSpec(p=args.ar_lags))

    report = AnalysisReport.build(
        series_label=label,
        n=len(series),
        date_range=(series.dates[0], series.dates[-1]),
        alpha=args.alpha,
        returns=args.returns,
        runs=runs,
        correlogram=corr,
        ar=fit,
    )
    inline_plot = None
    if args.plot and corr is not None:
        if args.plot_out:
            _emit(render_correlogram(corr, args.plot), args.plot_out)
        else:
            inline_plot = args.plot
    if args.format == "json":
        _emit(render_json(report), args.out)
    else:
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds") if args.stamp else None
        _emit(render_markdown(report, plot=inline_plot, stamp=stamp), args.out)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "simulate":
            _run_simulate(args)
        else:
            _run_analysis(args, parser)
    except SystemExit as exc:
        return int(exc.code or 0)
    except _IOFailure as exc:
        print(f"emh: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SeriesError as exc:
        print(f"emh: invalid input: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (RunsError, RegressionError, ValueError) as exc:
        print(f"emh: test failed: {exc}", file=sys.stderr)
        return EXIT_STATS
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
