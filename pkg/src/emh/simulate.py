"""Seeded synthetic series: random walks, AR processes and i.i.d. noise.

Random numbers come from a counter-based SplitMix64 stream so that a seed
yields the same series on every platform:

    GAMMA   = 0x9E3779B97F4A7C15
    state_i = seed + (i + 1) * GAMMA              (mod 2**64), i = 0, 1, 2, ...
    z = state_i
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      (mod 2**64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB      (mod 2**64)
    z =  z ^ (z >> 31)
    u_i = (z >> 11) * 2**-53                      in [0, 1)

Normals pair consecutive uniforms with Box-Muller: for j = 0, 1, ...
r = sqrt(-2 ln(1 - u_{2j})), e_{2j} = r cos(2 pi u_{2j+1}),
e_{2j+1} = r sin(2 pi u_{2j+1}).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from typing import Union

import numpy as np

from .series import PriceSeries

__all__ = [
    "RandomWalk",
    "Ar",
    "IidNoise",
    "SimulationSpec",
    "splitmix64",
    "uniforms",
    "standard_normals",
    "generate",
    "START_DATE",
]

GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
START_DATE = date(2010, 4, 1)
DEFAULT_INITIAL = 100.0


def splitmix64(seed: int, count: int) -> np.ndarray:
    """First ``count`` outputs of the SplitMix64 stream for ``seed``."""
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    i = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + i * GAMMA
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def uniforms(seed: int, count: int) -> np.ndarray:
    return (splitmix64(seed, count) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def standard_normals(seed: int, count: int) -> np.ndarray:
    pairs = (count + 1) // 2
    u = uniforms(seed, 2 * pairs).reshape(pairs, 2)
    r = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
    theta = 2.0 * np.pi * u[:, 1]
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)]).ravel()[:count]


@dataclass(frozen=True)
class RandomWalk:
    drift: float = 0.0
    step_sd: float = 1.0
    order = 1


@dataclass(frozen=True)
class Ar:
    intercept: float
    coefficients: tuple[float, ...]
    noise_sd: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))
        if not self.coefficients:
            raise ValueError("AR model needs at least one coefficient")

    @property
    def order(self) -> int:
        return len(self.coefficients)


@dataclass(frozen=True)
class IidNoise:
    sd: float = 1.0
    mean: float = 0.0
    order = 0


Model = Union[RandomWalk, Ar, IidNoise]


@dataclass(frozen=True)
class SimulationSpec:
    model: Model
    n: int
    seed: int = 0
    initial_values: tuple[float, ...] | None = None
    label: str = field(default="", compare=True)

    def __post_init__(self):
        order = self.model.order
        if self.initial_values is None:
            object.__setattr__(self, "initial_values", (DEFAULT_INITIAL,) * order)
        else:
            object.__setattr__(self, "initial_values", tuple(float(v) for v in self.initial_values))
        if len(self.initial_values) != order:
            raise ValueError(f"need {order} initial values for this model, got {len(self.initial_values)}")
        if self.n < max(order + 1, 3):
            raise ValueError(f"n={self.n} is too short for a model of order {order}")
        sd = {RandomWalk: "step_sd", Ar: "noise_sd", IidNoise: "sd"}[type(self.model)]
        if getattr(self.model, sd) < 0:
            raise ValueError(f"{sd} must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def business_days(start: date, n: int) -> tuple[date, ...]:
    days = np.busday_offset(np.datetime64(start, "D"), np.arange(n), roll="forward")
    return tuple(days.astype(object))


def generate(spec: SimulationSpec) -> PriceSeries:
    """Deterministic synthetic series for ``spec``, dated on consecutive business days."""
    m, n = spec.model, spec.n
    order = m.order
    eps = standard_normals(spec.seed, n - order)
    y = np.empty(n)
    y[:order] = spec.initial_values
    if isinstance(m, RandomWalk):
        y[1:] = y[0] + np.cumsum(m.drift + m.step_sd * eps)
    elif isinstance(m, IidNoise):
        y[:] = m.mean + m.sd * eps
    else:
        c = np.array(m.coefficients)
        shocks = m.intercept + m.noise_sd * eps
        for t in range(order, n):
            # c[j] multiplies y[t-1-j]
            y[t] = shocks[t - order] + float(c @ y[t - 1 :: -1][:order])
    return PriceSeries(
        label=spec.label or type(m).__name__,
        dates=business_days(START_DATE, n),
        closes=y,
        synthetic=True,
    )
