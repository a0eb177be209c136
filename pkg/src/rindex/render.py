"""Text renderings of R-Index reports.

Every rational appears twice: exactly (``n/d``, or ``n`` when whole) and as
a fixed-point decimal with four places, rounded half to even.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Sequence

from .engine import RIndexReport

__all__ = ["FORMATS", "exact", "decimal4", "render", "render_json", "render_csv", "render_table"]

FORMATS = ("json", "csv", "table")

CSV_COLUMNS = (
    "researcher",
    "responsibility_total",
    "responsibility_total_decimal",
    "completed_total",
    "r_index",
    "r_index_decimal",
    "lagged_out_papers",
    "excluded_events",
)


def exact(q: Fraction) -> str:
    """
    >>> exact(Fraction(3, 2)), exact(Fraction(-4, 2))
    ('3/2', '-2')
    """
    return str(Fraction(q))


def decimal4(q: Fraction) -> str:
    """Four-place decimal, half-to-even, computed without floats.

    >>> decimal4(Fraction(1, 2)), decimal4(Fraction(-7, 3)), decimal4(Fraction(1, 80000))
    ('0.5000', '-2.3333', '0.0000')
    """
    scaled = round(Fraction(q) * 10_000)  # Fraction.__round__ is half-to-even
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10_000)
    return f"{sign}{whole}.{frac:04d}"


def _ratio(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def render_json(reports: Sequence[RIndexReport]) -> str:
    items = [
        {
            "researcher": r.researcher,
            "responsibility_total": _ratio(r.responsibility_total),
            "completed_total": r.completed_total,
            "r_index": _ratio(r.r_index),
            "r_index_decimal": decimal4(r.r_index),
            "lagged_out_papers": list(r.lagged_out_papers),
            "excluded_events": list(r.excluded_events),
        }
        for r in reports
    ]
    return json.dumps(items, indent=2) + "\n"


def render_csv(reports: Sequence[RIndexReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow(
            (
                r.researcher,
                exact(r.responsibility_total),
                decimal4(r.responsibility_total),
                r.completed_total,
                exact(r.r_index),
                decimal4(r.r_index),
                ";".join(r.lagged_out_papers),
                ";".join(r.excluded_events),
            )
        )
    return buf.getvalue()


def render_table(reports: Sequence[RIndexReport]) -> str:
    """Aligned table, most review-indebted researcher first."""
    header = ("researcher", "responsibility", "completed", "r_index", "r_index_exact")
    rows = [
        (
            r.researcher,
            decimal4(r.responsibility_total),
            str(r.completed_total),
            decimal4(r.r_index),
            exact(r.r_index),
        )
        for r in sorted(reports, key=lambda r: (r.r_index, r.researcher))
    ]
    widths = [max(len(row[i]) for row in [header, *rows]) for i in range(len(header))]
    lines = []
    for n, row in enumerate([header, *rows]):
        cells = [row[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(row[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def render(reports: Sequence[RIndexReport], fmt: str = "table") -> str:
    if fmt == "json":
        return render_json(reports)
    if fmt == "csv":
        return render_csv(reports)
    if fmt == "table":
        return render_table(reports)
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
