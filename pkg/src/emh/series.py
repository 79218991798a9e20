"""Price series ingestion, validation and basic transforms."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from datetime import date, datetime
from enum import IntEnum
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ChangeSign",
    "PricePoint",
    "PriceSeries",
    "SeriesError",
    "parse_csv",
    "serialize_csv",
    "diff_signs",
    "to_returns",
    "lag_align",
    "MIN_LENGTH",
    "DEFAULT_DATE_FORMAT",
]

MIN_LENGTH = 3
DEFAULT_DATE_FORMAT = "%Y-%m-%d"


class SeriesError(ValueError):
    """Raised for malformed input data or an invalid series."""


class ChangeSign(IntEnum):
    DOWN = -1
    ZERO = 0
    UP = 1

    def __str__(self) -> str:
        return self.name.capitalize()


@dataclass(frozen=True)
class PricePoint:
    date: date
    close: float

    def __post_init__(self):
        if not isinstance(self.date, date):
            raise SeriesError(f"date must be a calendar date, got {self.date!r}")
        if not (math.isfinite(self.close) and self.close > 0):
            raise SeriesError(f"close must be strictly positive, got {self.close!r}")


@dataclass(frozen=True, eq=False)
class PriceSeries:
    """A date-ordered sequence of daily closes.

    Closes are stored as a read-only float array. Synthetic series (from
    :mod:`emh.simulate`) only need nonzero closes; real series must be
    strictly positive.
    """

    label: str
    dates: tuple[date, ...]
    closes: np.ndarray = field(repr=False)
    synthetic: bool = False

    def __post_init__(self):
        closes = np.array(self.closes, dtype=float)
        closes.setflags(write=False)
        object.__setattr__(self, "closes", closes)
        object.__setattr__(self, "dates", tuple(self.dates))
        if closes.ndim != 1 or len(closes) != len(self.dates):
            raise SeriesError("dates and closes must be 1-d and of equal length")
        if len(closes) < MIN_LENGTH:
            raise SeriesError(f"series needs at least {MIN_LENGTH} observations, got {len(closes)}")
        if not np.all(np.isfinite(closes)):
            raise SeriesError("closes must be finite")
        if self.synthetic:
            if np.any(closes == 0):
                raise SeriesError("synthetic closes must be nonzero")
        elif np.any(closes <= 0):
            i = int(np.argmax(closes <= 0))
            raise SeriesError(f"close must be strictly positive, got {closes[i]!r} on {self.dates[i]}")
        for i in range(1, len(self.dates)):
            if not self.dates[i - 1] < self.dates[i]:
                raise SeriesError(f"dates must be strictly increasing ({self.dates[i - 1]} then {self.dates[i]})")

    @classmethod
    def from_points(cls, label: str, points: Iterable[PricePoint]) -> "PriceSeries":
        points = list(points)
        return cls(label, tuple(p.date for p in points), [p.close for p in points])

    @property
    def points(self) -> tuple[PricePoint, ...]:
        if self.synthetic:
            raise SeriesError("synthetic series may hold non-positive closes; use dates/closes directly")
        return tuple(PricePoint(d, float(c)) for d, c in zip(self.dates, self.closes))

    def __len__(self) -> int:
        return len(self.closes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PriceSeries):
            return NotImplemented
        return (
            self.label == other.label
            and self.synthetic == other.synthetic
            and self.dates == other.dates
            and np.array_equal(self.closes, other.closes)
        )

    __hash__ = None


def _parse_value(cell: str, thousands_sep: str | None) -> float:
    if thousands_sep:
        cell = cell.replace(thousands_sep, "")
    return float(cell)


def parse_csv(
    text: str | io.TextIOBase,
    date_column: str = "Date",
    value_column: str = "Close",
    date_format: str = DEFAULT_DATE_FORMAT,
    label: str = "",
    thousands_sep: str | None = None,
    allow_nonpositive: bool = False,
) -> PriceSeries:
    """Read a header-row CSV of dates and closes into a sorted :class:`PriceSeries`.

    Rows with an empty value cell are skipped; :func:`parse_csv_with_stats`
    also returns how many were skipped.
    """
    return parse_csv_with_stats(
        text, date_column, value_column, date_format, label, thousands_sep, allow_nonpositive
    )[0]


def parse_csv_with_stats(
    text: str | io.TextIOBase,
    date_column: str = "Date",
    value_column: str = "Close",
    date_format: str = DEFAULT_DATE_FORMAT,
    label: str = "",
    thousands_sep: str | None = None,
    allow_nonpositive: bool = False,
) -> tuple[PriceSeries, int]:
    """Like :func:`parse_csv` but also return the count of skipped empty-value rows."""
    stream = io.StringIO(text) if isinstance(text, str) else text
    reader = csv.DictReader(stream)
    header = reader.fieldnames or []
    for col in (date_column, value_column):
        if col not in header:
            raise SeriesError(f"missing column {col!r} (found {header})")

    rows: list[tuple[date, float]] = []
    seen: dict[date, int] = {}
    skipped = 0
    # row numbers are 1-based file lines; the header is line 1
    for lineno, row in enumerate(reader, start=2):
        raw_value = (row.get(value_column) or "").strip()
        raw_date = (row.get(date_column) or "").strip()
        if not raw_value:
            skipped += 1
            continue
        try:
            d = datetime.strptime(raw_date, date_format).date()
        except ValueError:
            raise SeriesError(f"row {lineno}: cannot parse date {raw_date!r} with format {date_format!r}") from None
        try:
            v = _parse_value(raw_value, thousands_sep)
        except ValueError:
            raise SeriesError(f"row {lineno}: cannot parse value {raw_value!r}") from None
        if not math.isfinite(v):
            raise SeriesError(f"row {lineno}: value {raw_value!r} is not finite")
        if not allow_nonpositive and v <= 0:
            raise SeriesError(f"row {lineno}: close must be strictly positive, got {raw_value!r}")
        if d in seen:
            raise SeriesError(f"row {lineno}: duplicate date {d.isoformat()} (first seen on row {seen[d]})")
        seen[d] = lineno
        rows.append((d, v))

    if len(rows) < MIN_LENGTH:
        raise SeriesError(f"need at least {MIN_LENGTH} usable rows, got {len(rows)}")
    rows.sort(key=lambda r: r[0])
    series = PriceSeries(
        label=label,
        dates=tuple(r[0] for r in rows),
        closes=[r[1] for r in rows],
        synthetic=allow_nonpositive,
    )
    return series, skipped


def serialize_csv(
    series: PriceSeries,
    date_column: str = "Date",
    value_column: str = "Close",
    date_format: str = DEFAULT_DATE_FORMAT,
) -> str:
    """Write a series in the CSV layout :func:`parse_csv` reads.

    Values use ``repr`` so a parse of the output reproduces the closes exactly.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([date_column, value_column])
    for d, c in zip(series.dates, series.closes):
        writer.writerow([d.strftime(date_format), repr(float(c))])
    return out.getvalue()


def _closes(values: PriceSeries | Sequence[float]) -> np.ndarray:
    if isinstance(values, PriceSeries):
        return values.closes
    return np.asarray(values, dtype=float)


def diff_signs(series: PriceSeries | Sequence[float]) -> tuple[ChangeSign, ...]:
    """Sign of each consecutive change; element t reflects close[t+1] - close[t]."""
    y = _closes(series)
    return tuple(ChangeSign(int(s)) for s in np.sign(np.diff(y)))


def to_returns(series: PriceSeries | Sequence[float]) -> np.ndarray:
    """Simple returns close[t] / close[t-1] - 1."""
    y = _closes(series)
    return y[1:] / y[:-1] - 1.0


def lag_align(values: Sequence[float], k: int) -> tuple[np.ndarray, np.ndarray]:
    """Pair each value with the one ``k`` steps earlier.

    >>> lag_align([1, 2, 3, 4], 1)
    (array([2., 3., 4.]), array([1., 2., 3.]))
    """
    y = np.asarray(values, dtype=float)
    if k < 1:
        raise ValueError(f"lag must be a positive integer, got {k}")
    if k >= len(y):
        raise ValueError(f"lag {k} must be smaller than the series length {len(y)}")
    return y[k:], y[:-k]
