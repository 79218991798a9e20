"""Standard normal and Student-t distribution functions.

Only the pieces the three efficiency tests need: CDFs and two-sided
tail probabilities. No inverse CDFs and no variate generation.
"""

from __future__ import annotations

import math

__all__ = [
    "std_normal_cdf",
    "student_t_cdf",
    "two_sided_p",
    "rejects",
    "regularized_incomplete_beta",
]

_CF_MAX_ITER = 500
_CF_EPS = 1e-15
_TINY = 1e-300


def _check_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"statistic must be finite, got {x!r}")
    return x


def std_normal_cdf(x: float) -> float:
    """Standard normal CDF, computed through the complementary error function."""
    x = _check_finite(x)
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def _beta_cf(a: float, b: float, x: float) -> float:
    # Modified Lentz evaluation of the incomplete-beta continued fraction.
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and 0 <= x <= 1."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    # The fraction converges fast only on this side of the mean; reflect otherwise.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def _t_two_sided(t: float, df: float) -> float:
    # P(|T| > |t|) = I_{df/(df+t^2)}(df/2, 1/2)
    if t == 0.0:
        return 1.0
    x = df / (df + t * t)
    return regularized_incomplete_beta(df / 2.0, 0.5, x)


def student_t_cdf(x: float, df: float) -> float:
    """CDF of Student's t distribution with ``df`` degrees of freedom."""
    x = _check_finite(x)
    if not df >= 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {df!r}")
    tail = 0.5 * _t_two_sided(x, float(df))
    return 1.0 - tail if x > 0 else tail


def two_sided_p(statistic: float, df: float | None = None) -> float:
    """Two-sided tail probability of ``statistic`` under its null.

    ``df=None`` means a standard normal null; otherwise Student-t with
    ``df`` degrees of freedom.
    """
    s = abs(_check_finite(statistic))
    if df is None:
        p = math.erfc(s / math.sqrt(2.0))
    else:
        if not df >= 1:
            raise ValueError(f"degrees of freedom must be >= 1, got {df!r}")
        p = _t_two_sided(s, float(df))
    return min(1.0, max(0.0, p))


def rejects(p_value: float, alpha: float = 0.05) -> bool:
    """True when a two-sided p-value falls below the significance level."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    return p_value < alpha
