"""Autoregression of a series on its own lags, fitted by least squares."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dist import two_sided_p
from .series import PriceSeries

__all__ = [
    "ArSpec",
    "Coefficient",
    "ArFit",
    "DesignMatrix",
    "OlsResult",
    "RegressionError",
    "build_design",
    "ols_fit",
    "ar_fit",
]

# relative residual norm below which a fit is treated as exact
_PERFECT_FIT_RTOL = 1e-12


class RegressionError(ValueError):
    """The regression is not identifiable or has no residual degrees of freedom."""


@dataclass(frozen=True)
class ArSpec:
    p: int = 2
    include_intercept: bool = True

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"number of lags must be >= 1, got {self.p}")

    @property
    def names(self) -> tuple[str, ...]:
        lags = tuple(f"Lag {j}" for j in range(1, self.p + 1))
        return (("Intercept",) + lags) if self.include_intercept else lags


@dataclass(frozen=True)
class Coefficient:
    name: str
    estimate: float
    se: float
    # None when the fit is exact and the statistic is undefined
    t: float | None
    p_value: float | None


@dataclass(frozen=True)
class ArFit:
    spec: ArSpec
    n_used: int
    coefficients: tuple[Coefficient, ...]
    r_squared: float
    adj_r_squared: float
    residual_variance: float

    def __getitem__(self, name: str) -> Coefficient:
        for c in self.coefficients:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def df_resid(self) -> int:
        return self.n_used - len(self.coefficients)

    @property
    def perfect_fit(self) -> bool:
        return self.residual_variance == 0.0

    def to_dict(self) -> dict:
        return {
            "spec": dict(self.spec.__dict__),
            "n_used": self.n_used,
            "coefficients": [dict(c.__dict__) for c in self.coefficients],
            "r_squared": self.r_squared,
            "adj_r_squared": self.adj_r_squared,
            "residual_variance": self.residual_variance,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ArFit":
        return cls(
            spec=ArSpec(**d["spec"]),
            n_used=d["n_used"],
            coefficients=tuple(Coefficient(**c) for c in d["coefficients"]),
            r_squared=d["r_squared"],
            adj_r_squared=d["adj_r_squared"],
            residual_variance=d["residual_variance"],
        )


@dataclass(frozen=True)
class DesignMatrix:
    response: np.ndarray
    regressors: np.ndarray
    names: tuple[str, ...]


@dataclass(frozen=True)
class OlsResult:
    estimates: np.ndarray
    covariance: np.ndarray
    residuals: np.ndarray
    fitted: np.ndarray
    rss: float
    df_resid: int
    residual_variance: float


def build_design(values: Sequence[float], spec: ArSpec) -> DesignMatrix:
    """Response y[p:] against columns [1,] y[p-1:-1], ..., y[:-p]."""
    y = values.closes if isinstance(values, PriceSeries) else np.asarray(values, dtype=float)
    n, p = len(y), spec.p
    if n <= p + 1:
        raise RegressionError(f"series of length {n} is too short for {p} lags")
    cols = [y[p - j : n - j] for j in range(1, p + 1)]
    if spec.include_intercept:
        cols.insert(0, np.ones(n - p))
    return DesignMatrix(response=y[p:].copy(), regressors=np.column_stack(cols), names=spec.names)


def ols_fit(design: DesignMatrix) -> OlsResult:
    """Least squares through a QR decomposition of the regressor matrix.

    Column scaling is applied before factorising since index levels sit
    around 1e4 while the intercept column is 1.
    """
    X, y = design.regressors, design.response
    n, k = X.shape
    df = n - k
    if df < 1:
        raise RegressionError(f"no residual degrees of freedom ({n} rows, {k} columns)")
    scale = np.linalg.norm(X, axis=0)
    if np.any(scale == 0):
        raise RegressionError("design matrix has an all-zero column")
    Xs = X / scale
    q, r = np.linalg.qr(Xs)
    diag = np.abs(np.diag(r))
    if diag.min() <= max(n, k) * np.finfo(float).eps * diag.max():
        raise RegressionError("design matrix is rank deficient (collinear regressors)")
    beta_s = np.linalg.solve(r, q.T @ y)
    fitted = Xs @ beta_s
    resid = y - fitted
    rss = float(resid @ resid)
    if math.sqrt(rss) <= _PERFECT_FIT_RTOL * max(float(np.linalg.norm(y)), 1.0):
        rss = 0.0
    s2 = rss / df
    r_inv = np.linalg.solve(r, np.eye(k))
    cov_s = s2 * (r_inv @ r_inv.T)
    beta = beta_s / scale
    cov = cov_s / np.outer(scale, scale)
    return OlsResult(
        estimates=beta,
        covariance=cov,
        residuals=resid,
        fitted=fitted,
        rss=rss,
        df_resid=df,
        residual_variance=s2,
    )


def ar_fit(values: PriceSeries | Sequence[float], spec: ArSpec = ArSpec()) -> ArFit:
    """Fit AR(p) by conditional least squares, dropping the first p observations."""
    design = build_design(values, spec)
    res = ols_fit(design)
    y = design.response
    n_used = len(y)
    centre = y.mean() if spec.include_intercept else 0.0
    tss = float(((y - centre) ** 2).sum())
    if tss == 0.0:
        raise RegressionError("response has zero total variation")
    r2 = min(1.0, max(0.0, 1.0 - res.rss / tss))
    k = spec.p
    adj = 1.0 - (1.0 - r2) * (n_used - 1) / (n_used - k - 1) if n_used - k - 1 > 0 else float("nan")

    coefs = []
    se = np.sqrt(np.clip(np.diag(res.covariance), 0.0, None))
    for name, b, s in zip(design.names, res.estimates, se):
        if res.rss == 0.0 or s == 0.0:
            coefs.append(Coefficient(name, float(b), 0.0, None, None))
        else:
            t = float(b / s)
            coefs.append(Coefficient(name, float(b), float(s), t, two_sided_p(t, res.df_resid)))
    return ArFit(
        spec=spec,
        n_used=n_used,
        coefficients=tuple(coefs),
        r_squared=r2,
        adj_r_squared=adj,
        residual_variance=res.residual_variance,
    )
