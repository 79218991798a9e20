"""Sign-of-change runs test (Wald-Wolfowitz) for randomness of price moves."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .dist import two_sided_p
from .series import ChangeSign, PriceSeries, diff_signs

__all__ = [
    "ZeroPolicy",
    "RunsSummary",
    "RunsError",
    "count_runs",
    "runs_moments",
    "runs_z",
    "summarize_runs",
    "runs_test",
]

CRITICAL_Z_5PCT = 1.96


class RunsError(ValueError):
    """The runs test is undefined for the given signs."""


class ZeroPolicy(str, Enum):
    EXCLUDE = "exclude"
    # a zero change continues the sign of the previous nonzero change
    CARRY = "carry"


@dataclass(frozen=True)
class RunsSummary:
    n_pos: int
    n_neg: int
    n_zero_excluded: int
    runs: int
    mu: float
    sigma: float
    z: float
    p_two_sided: float
    reject_at_5pct: bool
    zero_policy: ZeroPolicy = ZeroPolicy.EXCLUDE

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["zero_policy"] = self.zero_policy.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunsSummary":
        return cls(**{**d, "zero_policy": ZeroPolicy(d["zero_policy"])})


def _apply_policy(signs: Sequence[int], policy: ZeroPolicy) -> tuple[list[int], int]:
    policy = ZeroPolicy(policy)
    if policy is ZeroPolicy.EXCLUDE:
        kept = [int(s) for s in signs if s != 0]
        return kept, len(signs) - len(kept)
    kept: list[int] = []
    dropped = 0
    for s in signs:
        if s != 0:
            kept.append(int(s))
        elif kept:
            kept.append(kept[-1])
        else:
            # leading zeros have nothing to carry
            dropped += 1
    return kept, dropped


def count_runs(
    signs: Sequence[ChangeSign | int], zero_policy: ZeroPolicy = ZeroPolicy.EXCLUDE
) -> tuple[int, int, int, int]:
    """Count maximal same-sign blocks.

    Returns ``(runs, n_pos, n_neg, n_zero_excluded)``.
    """
    kept, dropped = _apply_policy(signs, zero_policy)
    if not kept:
        raise RunsError("no nonzero price changes left after zero handling")
    runs = 1 + sum(1 for a, b in zip(kept, kept[1:]) if a != b)
    n_pos = sum(1 for s in kept if s > 0)
    return runs, n_pos, len(kept) - n_pos, dropped


def runs_moments(n_pos: int, n_neg: int) -> tuple[float, float]:
    """Null mean and standard deviation of the number of runs.

    With N = n_pos + n_neg:
        mu      = 2 n_pos n_neg / N + 1
        sigma^2 = 2 n_pos n_neg (2 n_pos n_neg - N) / (N^2 (N - 1))
    """
    if n_pos < 1 or n_neg < 1:
        raise RunsError(
            f"degenerate sign distribution (n_pos={n_pos}, n_neg={n_neg}); runs test undefined"
        )
    n = n_pos + n_neg
    if n < 3:
        raise RunsError(f"need at least 3 nonzero changes, got {n}")
    prod = 2 * n_pos * n_neg
    mu = prod / n + 1.0
    var = prod * (prod - n) / (n * n * (n - 1))
    return mu, math.sqrt(var)


def runs_z(runs: int, mu: float, sigma: float) -> float:
    if not sigma > 0:
        raise RunsError(f"standard deviation of runs must be positive, got {sigma}")
    return (runs - mu) / sigma


def summarize_runs(
    runs: int,
    n_pos: int,
    n_neg: int,
    n_zero_excluded: int = 0,
    zero_policy: ZeroPolicy = ZeroPolicy.EXCLUDE,
) -> RunsSummary:
    """Build the full statistic set from run and sign counts alone."""
    mu, sigma = runs_moments(n_pos, n_neg)
    z = runs_z(runs, mu, sigma)
    return RunsSummary(
        n_pos=n_pos,
        n_neg=n_neg,
        n_zero_excluded=n_zero_excluded,
        runs=runs,
        mu=mu,
        sigma=sigma,
        z=z,
        p_two_sided=two_sided_p(z),
        reject_at_5pct=abs(z) > CRITICAL_Z_5PCT,
        zero_policy=ZeroPolicy(zero_policy),
    )


def runs_test(
    series: PriceSeries | Sequence[float], zero_policy: ZeroPolicy = ZeroPolicy.EXCLUDE
) -> RunsSummary:
    """Runs test on the signs of consecutive changes of ``series``."""
    runs, n_pos, n_neg, dropped = count_runs(diff_signs(series), zero_policy)
    return summarize_runs(runs, n_pos, n_neg, dropped, zero_policy)
