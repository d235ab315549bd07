"""Deterministic JSON/CSV emission.

Floats are written with 17 significant digits so every double round-trips
losslessly; the stdlib json module would use shortest-repr instead, which
is also lossless but harder to pin byte-for-byte across writers.
"""

from __future__ import annotations

import json
import math
from typing import Iterable


def _fmt_float(v: float) -> str:
    if not math.isfinite(v):
        raise ValueError(f"cannot serialize non-finite number {v}")
    return format(v, ".17g")


def dumps(obj: object, indent: int = 2) -> str:
    """Render a JSON document from dicts, lists, strings, and numbers."""
    out: list[str] = []
    _render(obj, out, indent, 0)
    return "".join(out)


def _render(obj: object, out: list[str], indent: int, level: int) -> None:
    pad = " " * (indent * (level + 1))
    close_pad = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_fmt_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(pad)
            out.append(json.dumps(str(k)))
            out.append(": ")
            _render(v, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(close_pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad)
            _render(v, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(close_pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def reports_to_csv(reports: Iterable) -> str:
    """Flat CSV view of bound reports, one row per body."""
    lines = ["body_id,delta,R,mu_star,ratio,symmetric,worst_margin"]
    for r in reports:
        lines.append(",".join([
            r.body_id,
            _fmt_float(r.delta),
            _fmt_float(r.enclosing_radius),
            _fmt_float(r.mu_star),
            _fmt_float(r.ratio),
            "true" if r.symmetric else "false",
            _fmt_float(r.worst_margin),
        ]))
    return "\n".join(lines) + "\n"
