import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from emh.runs import RunsError, ZeroPolicy, count_runs, runs_moments, runs_test, runs_z, summarize_runs
from emh.series import ChangeSign, diff_signs
from emh.simulate import RandomWalk, SimulationSpec, generate
from oracles import enumerate_runs_moments, runs_of

UP, DOWN, ZERO = ChangeSign.UP, ChangeSign.DOWN, ChangeSign.ZERO


def test_count_runs_examples():
    assert count_runs([UP, UP, DOWN, UP])[:3] == (3, 3, 1)
    assert count_runs([UP, UP, UP])[0] == 1
    assert count_runs([UP, ZERO, DOWN], ZeroPolicy.EXCLUDE) == (2, 1, 1, 1)


def test_count_runs_carry_policy():
    assert count_runs([UP, ZERO, DOWN], ZeroPolicy.CARRY) == (2, 2, 1, 0)
    # leading zeros have nothing to carry and are dropped
    assert count_runs([ZERO, DOWN, ZERO, UP], ZeroPolicy.CARRY) == (2, 1, 2, 1)


def test_count_runs_all_zero():
    with pytest.raises(RunsError):
        count_runs([ZERO, ZERO])


@given(st.lists(st.sampled_from([-1, 1]), min_size=1, max_size=20))
def test_runs_equals_one_plus_sign_changes(signs):
    assert count_runs(signs)[0] == runs_of(signs)


def test_moments_table1_sensex():
    mu, sigma = runs_moments(1158, 1053)
    assert mu == pytest.approx(1104.0, abs=0.1)
    assert sigma == pytest.approx(23.45, abs=0.005)


def test_moments_table1_nifty():
    mu, sigma = runs_moments(1153, 1047)
    # 2*1153*1047/2200 + 1, evaluated by hand
    assert mu == pytest.approx(2414382 / 2200 + 1, rel=1e-15)
    assert mu == pytest.approx(1098.4, abs=0.05)
    assert sigma == pytest.approx(23.39, abs=0.005)


def test_moments_small_case_matches_enumeration():
    mu, sigma = runs_moments(2, 2)
    assert mu == 3.0
    assert sigma**2 == pytest.approx(2 / 3, rel=1e-15)
    emu, evar = enumerate_runs_moments(2, 2)
    assert (emu, evar) == pytest.approx((3.0, 2 / 3))


@pytest.mark.parametrize("n_pos, n_neg", [(0, 5), (5, 0), (1, 1)])
def test_moments_degenerate(n_pos, n_neg):
    with pytest.raises(RunsError):
        runs_moments(n_pos, n_neg)


def test_runs_z():
    assert runs_z(1037, 1104.007, 23.45) == pytest.approx(-2.857, abs=5e-4)
    assert runs_z(10, 10.0, 2.0) == 0.0
    assert runs_z(1033, 1098.45, 23.39) == pytest.approx(-2.798, abs=5e-4)
    with pytest.raises(RunsError):
        runs_z(3, 3.0, 0.0)


def test_strictly_increasing_series_is_degenerate():
    with pytest.raises(RunsError, match="degenerate"):
        runs_test(np.arange(1.0, 11.0))


def test_alternating_series():
    closes = [100 + (i % 2) for i in range(21)]
    res = runs_test(closes)
    assert res.runs == 20 and res.n_pos == 10 and res.n_neg == 10
    mu, sigma = runs_moments(10, 10)
    assert mu == 11.0
    assert res.z == pytest.approx((20 - 11) / sigma)
    assert res.z > 0 and res.reject_at_5pct


def test_summary_fields_consistent():
    s = summarize_runs(1037, 1158, 1053)
    assert s.p_two_sided == pytest.approx(2 * (1 - 0.5 * math.erfc(-abs(s.z) / math.sqrt(2))), abs=1e-15)
    assert s.reject_at_5pct == (abs(s.z) > 1.96)


def test_random_walk_size_over_seeds():
    accepted = sum(
        abs(runs_test(generate(SimulationSpec(RandomWalk(), 2212, seed=seed))).z) < 1.96
        for seed in range(100)
    )
    assert accepted >= 93


@given(st.lists(st.sampled_from([-1, 0, 1]), min_size=3, max_size=40))
def test_reflection_leaves_statistic_unchanged(signs):
    reflected = [-s for s in signs]
    try:
        a = summarize_runs(*count_runs(signs))
    except RunsError:
        with pytest.raises(RunsError):
            summarize_runs(*count_runs(reflected))
        return
    b = summarize_runs(*count_runs(reflected))
    assert (a.runs, a.mu, a.sigma, a.z) == (b.runs, b.mu, b.sigma, b.z)
    assert (a.n_pos, a.n_neg) == (b.n_neg, b.n_pos)


@given(st.lists(st.integers(1, 50), min_size=5, max_size=40), st.integers(1, 1000))
def test_count_runs_scale_invariant(closes, a):
    base = np.array(closes, dtype=float)
    assume(np.any(np.diff(base) != 0))
    assert count_runs(diff_signs(base)) == count_runs(diff_signs(base * a))
