"""CSV and JSON emission of blockage curves.

Numbers are printed fixed-point with ties rounded away from zero. Percent and
fraction are rounded from the exact ratio ``blocked/total`` so the two columns
always agree to printed precision.
"""

from __future__ import annotations

import csv
import io
import json
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Iterable

from .engine import BlockageCurve, SweepSpec

CSV_COLUMNS = ("param", "value", "ap", "blocked", "total", "percent", "fraction")


def fixed(value, places: int) -> str:
    """Fixed-point text for a float, int or Fraction, ties away from zero."""
    if isinstance(value, Fraction):
        scaled = value * 10**places
        whole, rem = divmod(abs(scaled.numerator), scaled.denominator)
        if 2 * rem >= scaled.denominator:
            whole += 1
        sign = "-" if scaled < 0 and whole else ""
        digits = str(whole).rjust(places + 1, "0")
        return f"{sign}{digits[:-places]}.{digits[-places:]}" if places else f"{sign}{digits}"
    q = Decimal(1).scaleb(-places)
    text = str(Decimal(value).quantize(q, rounding=ROUND_HALF_UP))
    return "0." + "0" * places if text.lstrip("-") == "0." + "0" * places else text


def panel_label(spec: SweepSpec, single: bool) -> str:
    """Value of the ``param`` column.

    A lone sweep is labelled by its varied parameter; in a multi-panel run
    the fixed values are appended so panels stay distinguishable.
    """
    if single:
        return spec.varied
    inner = ";".join(f"{k}={v:g}" for k, v in spec.fixed.items())
    return f"{spec.varied}({inner})"


def curve_records(curves: Iterable[BlockageCurve]) -> list[dict]:
    curves = list(curves)
    single = len(curves) == 1
    rows = []
    for curve in curves:
        label = panel_label(curve.spec, single)
        for s in curve.samples:
            ratio = Fraction(s.blocked_count, s.total_count)
            rows.append({
                "param": label,
                "value": fixed(s.parameter_value, 6),
                "ap": s.label,
                "blocked": s.blocked_count,
                "total": s.total_count,
                "percent": fixed(100 * ratio, 6),
                "fraction": fixed(ratio, 8),
            })
    return rows


def to_csv(records: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in records:
        writer.writerow([row[c] for c in CSV_COLUMNS])
    return buf.getvalue()


def to_json(records: list[dict], metadata: dict) -> str:
    out = []
    for row in records:
        out.append({
            **row,
            "value": float(row["value"]),
            "percent": float(row["percent"]),
            "fraction": float(row["fraction"]),
        })
    return json.dumps({"metadata": metadata, "records": out}, indent=2) + "\n"
