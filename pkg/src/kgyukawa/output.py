"""Deterministic CSV / JSON serialization of result rows."""

from __future__ import annotations

import io
import json
import math
from importlib import resources

__all__ = ["format_float", "normalize_value", "to_csv", "to_json", "schema"]


def format_float(x: float) -> str:
    """Nine significant digits; scientific notation below 1e-3 in magnitude."""
    if not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if x != 0 and abs(x) < 1e-3:
        return f"{x:.8e}"
    return f"{x:.9g}"


def normalize_value(v):
    """Round floats through :func:`format_float`; non-finite floats become None."""
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, float) or hasattr(v, "__float__"):
        x = float(v)
        return float(format_float(x)) if math.isfinite(x) else None
    return str(v)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_float(v)
    return str(v).replace(",", ";").replace("\n", " ")


def to_csv(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO(newline="")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_cell(row.get(c)) for c in columns) + "\n")
    return buf.getvalue()


def to_json(columns: list[str], rows: list[dict], meta: dict) -> str:
    payload = {
        "meta": meta,
        "rows": [{c: normalize_value(row.get(c)) for c in columns} for row in rows],
    }
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def schema() -> dict:
    """JSON schema of the ``{"meta", "rows"}`` output object."""
    text = resources.files("kgyukawa").joinpath("data/output.schema.json").read_text()
    return json.loads(text)
