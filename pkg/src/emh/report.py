"""Analysis reports: JSON, markdown tables and correlogram plots."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date
from decimal import ROUND_HALF_EVEN, Decimal
from xml.sax.saxutils import escape

from .autocorr import Correlogram, SeMode
from .autoreg import ArFit
from .dist import rejects, two_sided_p
from .runs import RunsSummary

__all__ = [
    "AnalysisReport",
    "SCHEMA_VERSION",
    "fmt",
    "render_json",
    "parse_json",
    "render_markdown",
    "render_runs_table",
    "render_acf_table",
    "render_ar_table",
    "render_correlogram",
]

SCHEMA_VERSION = 1
REJECTED = "weak-form efficiency rejected"
NOT_REJECTED = "weak-form efficient not rejected"


def fmt(x: float | None, places: int) -> str:
    """Round half-even on the shortest decimal repr of ``x``."""
    if x is None:
        return "n/a"
    q = Decimal(1).scaleb(-places)
    d = Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_EVEN)
    if d == 0:
        d = abs(d)
    return f"{d:f}"


@dataclass(frozen=True)
class AnalysisReport:
    series_label: str
    n: int
    date_range: tuple[date, date]
    alpha: float = 0.05
    returns: bool = False
    runs: RunsSummary | None = None
    correlogram: Correlogram | None = None
    ar: ArFit | None = None
    decisions: dict[str, bool] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        series_label: str,
        n: int,
        date_range: tuple[date, date],
        alpha: float = 0.05,
        returns: bool = False,
        runs: RunsSummary | None = None,
        correlogram: Correlogram | None = None,
        ar: ArFit | None = None,
    ) -> "AnalysisReport":
        """Assemble a report, deciding each included test at level ``alpha``."""
        decisions = {}
        if runs is not None:
            decisions["runs"] = rejects(runs.p_two_sided, alpha)
        if correlogram is not None:
            decisions["acf"] = any(rejects(two_sided_p(p.t_stat), alpha) for p in correlogram.points)
        if ar is not None:
            decisions["ar"] = any(
                c.p_value is not None and rejects(c.p_value, alpha)
                for c in ar.coefficients
                if c.name != "Intercept"
            )
        return cls(series_label, n, tuple(date_range), alpha, returns, runs, correlogram, ar, decisions)

    @property
    def rejected(self) -> bool:
        return any(self.decisions.values())

    @property
    def verdict(self) -> str:
        return REJECTED if self.rejected else NOT_REJECTED

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "series_label": self.series_label,
            "n": self.n,
            "date_range": [d.isoformat() for d in self.date_range],
            "alpha": self.alpha,
            "returns": self.returns,
            "runs": self.runs.to_dict() if self.runs else None,
            "correlogram": self.correlogram.to_dict() if self.correlogram else None,
            "ar": self.ar.to_dict() if self.ar else None,
            "decisions": dict(self.decisions),
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema version {d.get('schema_version')!r}")
        report = cls(
            series_label=d["series_label"],
            n=d["n"],
            date_range=tuple(date.fromisoformat(s) for s in d["date_range"]),
            alpha=d["alpha"],
            returns=d["returns"],
            runs=RunsSummary.from_dict(d["runs"]) if d["runs"] else None,
            correlogram=Correlogram.from_dict(d["correlogram"]) if d["correlogram"] else None,
            ar=ArFit.from_dict(d["ar"]) if d["ar"] else None,
            decisions=dict(d["decisions"]),
        )
        if report.verdict != d["verdict"]:
            raise ValueError("verdict is inconsistent with the per-test decisions")
        return report


def render_json(report: AnalysisReport) -> str:
    return json.dumps(report.to_dict(), indent=2, allow_nan=False) + "\n"


def parse_json(text: str) -> AnalysisReport:
    return AnalysisReport.from_dict(json.loads(text))


def _table(header: list[str], rows: list[list[str]], align: list[str]) -> str:
    sep = ["---:" if a == "r" else ":---:" if a == "c" else ":---" for a in align]
    lines = ["| " + " | ".join(header) + " |", "| " + " | ".join(sep) + " |"]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines)


def render_runs_table(runs: RunsSummary, label: str) -> str:
    rows = [
        ["Number of Runs", str(runs.runs)],
        ["Number of Positive Runs", str(runs.n_pos)],
        ["Number of Negative Runs", str(runs.n_neg)],
        ["Mean of Runs", fmt(runs.mu, 1)],
        ["Standard Deviation of Runs", fmt(runs.sigma, 2)],
        ["Calculated Z-Statistic", fmt(runs.z, 2)],
    ]
    return _table(["Statistic", label], rows, ["l", "r"])


def render_acf_table(corr: Correlogram, label: str) -> str:
    if corr.se_mode is SeMode.LARGE_N:
        rows = [[str(p.lag), fmt(p.acf, 3)] for p in corr.points]
        rows.append(["Standard Error", fmt(corr.points[0].se, 3)])
        return _table(["Lags", label], rows, ["c", "c"])
    rows = [[str(p.lag), fmt(p.acf, 3), fmt(p.se, 3)] for p in corr.points]
    return _table(["Lags", label, "Standard Error"], rows, ["c", "c", "c"])


def render_ar_table(fit: ArFit) -> str:
    stats = _table(
        ["Regression Statistics", ""],
        [["R Squared", fmt(fit.r_squared, 3)], ["Adjusted R Squared", fmt(fit.adj_r_squared, 3)]],
        ["l", "r"],
    )
    coefs = _table(
        ["", "Coefficients", "t-value", "p-value"],
        [[c.name, fmt(c.estimate, 3), fmt(c.t, 2), fmt(c.p_value, 4)] for c in fit.coefficients],
        ["l", "r", "r", "r"],
    )
    return stats + "\n\n" + coefs


def _decision_line(name: str, rejected: bool, alpha: float) -> str:
    word = "rejected" if rejected else "not rejected"
    return f"Null hypothesis of the {name} {word} at {fmt(alpha * 100, 2).rstrip('0').rstrip('.')}% significance."


def render_markdown(report: AnalysisReport, plot: str | None = None, stamp: str | None = None) -> str:
    """Markdown report with one section per included test.

    ``plot`` adds the correlogram drawn in that style; ``stamp`` appends a
    generation note. Output is otherwise a pure function of ``report``.
    """
    label = report.series_label or "Series"
    start, end = report.date_range
    out = [
        f"# Weak-form efficiency: {label}",
        "",
        f"Observations: {report.n} ({start.isoformat()} to {end.isoformat()})"
        + (", tests on simple returns" if report.returns else ""),
    ]
    if report.runs is not None:
        out += ["", f"## Runs Test: {label}", "", render_runs_table(report.runs, label), ""]
        out.append(
            f"p-value: {fmt(report.runs.p_two_sided, 4)}. "
            + _decision_line("runs test", report.decisions["runs"], report.alpha)
        )
    if report.correlogram is not None:
        corr = report.correlogram
        ts = [p.t_stat for p in corr.points]
        n_sig = sum(p.significant_at_5pct for p in corr.points)
        out += ["", f"## Autocorrelation Test: {label}", "", render_acf_table(corr, label), ""]
        out.append(
            f"t-statistics range from {fmt(min(ts), 2)} to {fmt(max(ts), 2)}; "
            f"{n_sig} of {corr.max_lag} lags significant at 5%. "
            + _decision_line("autocorrelation test", report.decisions["acf"], report.alpha)
        )
        if plot == "ascii":
            out += ["", "```", render_correlogram(corr, plot).rstrip("\n"), "```"]
        elif plot is not None:
            out += ["", render_correlogram(corr, plot).rstrip("\n")]
    if report.ar is not None:
        out += ["", f"## Autoregression: {label}", "", render_ar_table(report.ar), ""]
        out.append(_decision_line("autoregression", report.decisions["ar"], report.alpha))
    out += ["", f"**Verdict:** {report.verdict}."]
    if stamp:
        out += ["", f"<!-- generated {stamp} -->"]
    return "\n".join(out) + "\n"


def render_correlogram(corr: Correlogram, style: str = "ascii") -> str:
    """Spike plot of ACF against lag with dashed guides at +/-1.96 se."""
    if not corr.points:
        raise ValueError("correlogram has no lags to draw")
    if style == "ascii":
        return _ascii_plot(corr)
    if style == "svg":
        return _svg_plot(corr)
    raise ValueError(f"unknown plot style {style!r}")


_HALF = 10  # rows per unit of acf


def _ascii_plot(corr: Correlogram) -> str:
    guides = [1.96 * p.se for p in corr.points]
    lines = []
    for row in range(_HALF, -_HALF - 1, -1):
        level = row / _HALF
        cells = []
        for p, g in zip(corr.points, guides):
            if row == 0:
                ch = "+"
            elif (row > 0 and p.acf >= level - 0.5 / _HALF) or (row < 0 and p.acf <= level + 0.5 / _HALF):
                ch = "#"
            elif abs(abs(level) - g) < 0.5 / _HALF:
                ch = "-"
            else:
                ch = " "
            cells.append(ch.center(3))
        lines.append(f"{level:5.1f} |" + "".join(cells).rstrip())
    ticks = "".join(str(p.lag).rjust(2).ljust(3) for p in corr.points)
    lines.append("      " + "-" * (3 * len(corr.points)))
    lines.append("  lag  " + ticks.rstrip())
    return "\n".join(lines) + "\n"


def _svg_plot(corr: Correlogram) -> str:
    width, height, margin = 640, 320, 40
    k = len(corr.points)
    plot_w = width - 2 * margin
    mid = height / 2
    scale = (height - 2 * margin) / 2
    step = plot_w / k

    def x(i: int) -> float:
        return margin + step * (i + 0.5)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<title>{escape("Autocorrelation by lag")}</title>',
        f'<line x1="{margin}" y1="{mid:.2f}" x2="{width - margin}" y2="{mid:.2f}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>',
    ]
    # guides follow the per-lag se, so draw them as polylines
    for sign in (1, -1):
        pts = " ".join(
            f"{x(i) - step / 2:.2f},{mid - sign * 1.96 * p.se * scale:.2f} "
            f"{x(i) + step / 2:.2f},{mid - sign * 1.96 * p.se * scale:.2f}"
            for i, p in enumerate(corr.points)
        )
        parts.append(f'<polyline class="guide" points="{pts}" fill="none" stroke="blue" stroke-dasharray="4 3"/>')
    for i, p in enumerate(corr.points):
        y = mid - p.acf * scale
        parts.append(
            f'<line class="spike" data-lag="{p.lag}" x1="{x(i):.2f}" y1="{mid:.2f}" x2="{x(i):.2f}" y2="{y:.2f}" '
            f'stroke="black" stroke-width="{max(1.0, step * 0.4):.2f}"/>'
        )
        parts.append(
            f'<text x="{x(i):.2f}" y="{height - margin + 16}" font-size="10" text-anchor="middle">{p.lag}</text>'
        )
    for v in (1, 0, -1):
        parts.append(
            f'<text x="{margin - 6}" y="{mid - v * scale + 4:.2f}" font-size="10" text-anchor="end">{v}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
