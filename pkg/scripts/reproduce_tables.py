"""Rebuild the runs-test table from published counts and simulated analogues of the rest.

The BSE/NSE closes are not bundled, so the ACF and autoregression tables are
computed on a seeded AR(2) series with the published lag coefficients.

    python scripts/reproduce_tables.py [--seed 7] [--plot svg --plot-out acf.svg]
"""

import argparse
from datetime import date
from pathlib import Path

from emh.autocorr import correlogram
from emh.autoreg import ar_fit
from emh.report import AnalysisReport, render_correlogram, render_markdown, render_runs_table
from emh.runs import summarize_runs
from emh.simulate import Ar, SimulationSpec, generate

# (runs, positive changes, negative changes) as published
PUBLISHED_RUNS = {"Sensex": (1037, 1158, 1053), "Nifty": (1033, 1153, 1047)}


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--plot", choices=("ascii", "svg"), default="ascii")
    ap.add_argument("--plot-out")
    args = ap.parse_args()

    for name, counts in PUBLISHED_RUNS.items():
        s = summarize_runs(*counts)
        print(f"## Runs Test: {name} (from published counts)\n")
        print(render_runs_table(s, name))
        print(f"\np-value {s.p_two_sided:.4f}, reject at 5%: {s.reject_at_5pct}\n")

    spec = SimulationSpec(
        Ar(8.0, (1.077, -0.077), noise_sd=100.0), n=2212, seed=args.seed,
        initial_values=(17692.62, 17935.68), label="Simulated index",
    )
    s = generate(spec)
    corr = correlogram(s, 20)
    report = AnalysisReport.build(
        s.label, len(s), (s.dates[0], s.dates[-1]), correlogram=corr, ar=ar_fit(s)
    )
    if args.plot_out:
        Path(args.plot_out).write_text(render_correlogram(corr, args.plot))
        print(render_markdown(report))
    else:
        print(render_markdown(report, plot=args.plot))


if __name__ == "__main__":
    main()
