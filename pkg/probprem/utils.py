"""Deterministic JSON, CSV and SVG emitters for probprem results."""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Mapping, Sequence
from xml.sax.saxutils import escape

from pydantic import BaseModel

from .models import CurveTrace

SIGNIFICANT_DIGITS = 17
SVG_SIZE = 800
SVG_MARGIN = 60
CURVE_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e")


def format_float(x: float) -> str:
    """Fixed 17-significant-digit rendering; non-finite values become ``null``.

    Example:
        >>> format_float(0.1)
        '0.10000000000000001'
    """
    if not math.isfinite(x):
        return "null"
    if x == 0.0:
        return "0.0"
    text = f"{x:.{SIGNIFICANT_DIGITS}g}"
    if "e" not in text and "." not in text:
        text += ".0"
    return text


def _payload(obj: Any) -> Any:
    if isinstance(obj, BaseModel):
        return obj.model_dump(mode="json")
    return obj


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, BaseModel):
        return _encode(_payload(obj), indent, level)
    if isinstance(obj, Mapping):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + f"\n{end}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + f"\n{end}]"
    raise TypeError(f"cannot encode {type(obj).__name__} as JSON")


def to_json(obj: Any, indent: int = 2) -> str:
    """Render ``obj`` (pydantic models, mappings, sequences, scalars) as JSON text.

    Keys keep their insertion order and floats use :func:`format_float`, so
    identical results give byte-identical output.
    """
    return _encode(obj, indent, 0) + "\n"


def trace_to_csv(trace: CurveTrace) -> str:
    """CSV with columns q, p, value_residual for the traced points."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["q", "p", "value_residual"])
    for pt, residual in zip(trace.points, trace.residuals):
        writer.writerow([format_float(pt.q), format_float(pt.p), format_float(residual)])
    return buffer.getvalue()


def _xy(q: float, p: float) -> tuple[str, str]:
    side = SVG_SIZE - 2 * SVG_MARGIN
    return f"{SVG_MARGIN + q * side:.3f}", f"{SVG_SIZE - SVG_MARGIN - p * side:.3f}"


def _polyline(coords: Sequence[tuple[float, float]], color: str, width: float = 2.0, dash: str = "") -> str:
    points = " ".join(",".join(_xy(q, p)) for q, p in coords)
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    return f'  <polyline points="{points}" fill="none" stroke="{color}" stroke-width="{width}"{dash_attr}/>'


def render_triangle_svg(p0: float, traces: Sequence[CurveTrace], labels: Sequence[str] = ()) -> str:
    """800x800 SVG of the (q, p) triangle with the budget line and traced curves."""
    corners = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]
    q_end = min(2.0 * p0, 2.0 * (1.0 - p0))
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        '  <rect width="100%" height="100%" fill="white"/>',
        _polyline(corners, "black", 1.5),
        _polyline([(0.0, p0), (q_end, p0 - 0.5 * q_end)], "gray", 1.5, "6,4"),
    ]
    x0, y0 = _xy(0.0, 0.0)
    x1, _ = _xy(1.0, 0.0)
    _, y1 = _xy(0.0, 1.0)
    lines.append(f'  <text x="{x1}" y="{float(y0) + 30:.3f}" font-size="18" text-anchor="end">q</text>')
    lines.append(f'  <text x="{float(x0) - 30:.3f}" y="{y1}" font-size="18">p</text>')
    for i, trace in enumerate(traces):
        color = CURVE_COLORS[i % len(CURVE_COLORS)]
        coords = [(pt.q, pt.p) for pt in trace.points]
        if len(coords) >= 2:
            lines.append(_polyline(coords, color))
        if i < len(labels):
            ly = SVG_MARGIN + 24 * (i + 1)
            lines.append(
                f'  <text x="{SVG_SIZE - SVG_MARGIN}" y="{ly}" font-size="16" '
                f'text-anchor="end" fill="{color}">{escape(labels[i])}</text>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_output(text: str, out: str | Path | None) -> None:
    """Write ``text`` to ``out`` or to stdout when ``out`` is None."""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(out).write_text(text, encoding="utf-8")


__all__ = [
    "format_float",
    "to_json",
    "trace_to_csv",
    "render_triangle_svg",
    "write_output",
]
