"""Sample autocorrelation, its standard errors, and per-lag t tests."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .series import PriceSeries

__all__ = [
    "SeMode",
    "AcfPoint",
    "Correlogram",
    "acf",
    "acf_se_exact",
    "acf_se_approx",
    "acf_t",
    "correlogram",
    "LARGE_N_THRESHOLD",
]

LARGE_N_THRESHOLD = 50
CRITICAL_T_5PCT = 1.96
DEFAULT_MAX_LAG = 20


class SeMode(str, Enum):
    EXACT = "exact"  # 1 / sqrt(n - k)
    LARGE_N = "large-n"  # 1 / sqrt(n)


@dataclass(frozen=True)
class AcfPoint:
    lag: int
    acf: float
    se: float
    t_stat: float
    significant_at_5pct: bool


@dataclass(frozen=True)
class Correlogram:
    n: int
    max_lag: int
    points: tuple[AcfPoint, ...]
    se_mode: SeMode = SeMode.LARGE_N

    def __post_init__(self):
        if self.max_lag < 1:
            raise ValueError("correlogram needs at least one lag")
        lags = [p.lag for p in self.points]
        if lags != list(range(1, self.max_lag + 1)):
            raise ValueError("correlogram points must cover lags 1..max_lag in order")
        if not self.max_lag < self.n:
            raise ValueError("max_lag must be smaller than n")

    @property
    def values(self) -> np.ndarray:
        return np.array([p.acf for p in self.points])

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "max_lag": self.max_lag,
            "se_mode": self.se_mode.value,
            "points": [dict(p.__dict__) for p in self.points],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Correlogram":
        return cls(
            n=d["n"],
            max_lag=d["max_lag"],
            points=tuple(AcfPoint(**p) for p in d["points"]),
            se_mode=SeMode(d["se_mode"]),
        )


def _as_array(values) -> np.ndarray:
    if isinstance(values, PriceSeries):
        return values.closes
    return np.asarray(values, dtype=float)


def _acf_all(y: np.ndarray, max_lag: int) -> np.ndarray:
    dev = y - y.mean()
    denom = float(dev @ dev)
    if denom == 0.0:
        raise ValueError("autocorrelation undefined for a constant series")
    n = len(y)
    return np.array([float(dev[k:] @ dev[: n - k]) / denom for k in range(max_lag + 1)])


def acf(values: Sequence[float], k: int) -> float:
    """Biased sample autocorrelation at lag ``k`` (full-sample mean, n-term denominator)."""
    y = _as_array(values)
    if k < 0 or k >= len(y):
        raise ValueError(f"lag must satisfy 0 <= k < n={len(y)}, got {k}")
    return float(_acf_all(y, k)[k])


def acf_se_exact(n: int, k: int) -> float:
    if not 0 <= k < n:
        raise ValueError(f"lag must satisfy 0 <= k < n={n}, got {k}")
    return 1.0 / math.sqrt(n - k)


def acf_se_approx(n: int) -> float:
    if n < LARGE_N_THRESHOLD:
        raise ValueError(
            f"large-sample standard error needs n >= {LARGE_N_THRESHOLD}, got {n}"
        )
    return 1.0 / math.sqrt(n)


def acf_t(acf_value: float, se: float) -> float:
    if not se > 0:
        raise ValueError(f"standard error must be positive, got {se}")
    return acf_value / se


def correlogram(
    values: PriceSeries | Sequence[float],
    max_lag: int = DEFAULT_MAX_LAG,
    se_mode: SeMode = SeMode.LARGE_N,
) -> Correlogram:
    """ACF with standard error and t statistic for lags 1..max_lag."""
    y = _as_array(values)
    n = len(y)
    se_mode = SeMode(se_mode)
    if max_lag < 1:
        raise ValueError(f"max_lag must be at least 1, got {max_lag}")
    if max_lag >= n:
        raise ValueError(f"max_lag {max_lag} must be smaller than n={n}")
    r = _acf_all(y, max_lag)
    points = []
    for k in range(1, max_lag + 1):
        se = acf_se_exact(n, k) if se_mode is SeMode.EXACT else acf_se_approx(n)
        t = acf_t(float(r[k]), se)
        points.append(AcfPoint(k, float(r[k]), se, t, abs(t) > CRITICAL_T_5PCT))
    return Correlogram(n=n, max_lag=max_lag, points=tuple(points), se_mode=se_mode)
