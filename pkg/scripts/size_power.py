"""Monte Carlo rejection rates of the three tests under several generating models.

Rows are models, columns are tests; entries are the fraction of seeded
replications rejecting at 5%. Under the random-walk model the runs test on
price changes and the ACF/AR tests on first differences should sit near 0.05.

    python scripts/size_power.py --reps 200 --n 2212
"""

import argparse

import numpy as np

from emh.autocorr import correlogram
from emh.autoreg import ArSpec, ar_fit
from emh.runs import runs_test
from emh.series import to_returns
from emh.simulate import Ar, RandomWalk, SimulationSpec, generate

MODELS = {
    "random walk": RandomWalk(drift=0.0, step_sd=1.0),
    "AR(2) near unit root": Ar(8.0, (1.077, -0.077), noise_sd=100.0),
    "AR(1) momentum in changes": Ar(0.0, (1.1, -0.1), noise_sd=1.0),
}


def rates(model, n, reps):
    runs = acf1 = ar = 0
    for seed in range(reps):
        init = (10000.0,) * model.order
        s = generate(SimulationSpec(model, n, seed=seed, initial_values=init))
        r = s.closes[1:] - s.closes[:-1]
        runs += runs_test(s).reject_at_5pct
        acf1 += correlogram(r, 1).points[0].significant_at_5pct
        fit = ar_fit(r, ArSpec(p=1))
        ar += fit["Lag 1"].p_value < 0.05
    return runs / reps, acf1 / reps, ar / reps


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--reps", type=int, default=200)
    ap.add_argument("--n", type=int, default=2212)
    args = ap.parse_args()
    print("| model | runs | ACF(1) of changes | AR(1) of changes |")
    print("| :--- | ---: | ---: | ---: |")
    for name, model in MODELS.items():
        a, b, c = rates(model, args.n, args.reps)
        print(f"| {name} | {a:.3f} | {b:.3f} | {c:.3f} |")


if __name__ == "__main__":
    main()
