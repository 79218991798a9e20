"""Weak-form market efficiency tests for daily price-index series.

Three procedures are provided: the sign-of-change runs test, the sample
autocorrelation test, and an AR(p) least-squares autoregression.
"""

from .autocorr import AcfPoint, Correlogram, SeMode, acf, acf_se_approx, acf_se_exact, acf_t, correlogram
from .autoreg import ArFit, ArSpec, Coefficient, RegressionError, ar_fit, build_design, ols_fit
from .dist import std_normal_cdf, student_t_cdf, two_sided_p
from .runs import RunsError, RunsSummary, ZeroPolicy, count_runs, runs_moments, runs_test, runs_z, summarize_runs
from .series import (
    ChangeSign,
    PricePoint,
    PriceSeries,
    SeriesError,
    diff_signs,
    lag_align,
    parse_csv,
    serialize_csv,
    to_returns,
)
from .simulate import Ar, IidNoise, RandomWalk, SimulationSpec, generate

__version__ = "0.1.0"
