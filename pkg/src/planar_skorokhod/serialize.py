"""Deterministic JSON (17 significant digits) and static SVG output."""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from . import __version__

TOOL = "planar-skorokhod"


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    return _encode(obj, indent, 0) + "\n"


def envelope(command: str, config: dict, payload: dict) -> dict:
    """Wrap a result with tool name, version and the echoed configuration."""
    return {"tool": TOOL, "version": __version__, "command": command, "config": config, **payload}


def write_text(text: str, out) -> None:
    if out is None or str(out) == "-":
        import sys
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# -- SVG ------------------------------------------------------------------------

def _frame(points_list, margin=0.05):
    allpts = np.concatenate([np.asarray(p) for p in points_list if len(p)])
    x0, x1 = min(allpts.real.min(), 0.0), max(allpts.real.max(), 0.0)
    y0, y1 = min(allpts.imag.min(), 0.0), max(allpts.imag.max(), 0.0)
    span = max(x1 - x0, y1 - y0, 1e-12)
    m = margin * span
    return x0 - m, y0 - m, span + 2 * m


def _path(points, x0, y1, scale):
    xs = (points.real - x0) * scale
    ys = (y1 - points.imag) * scale
    head = f"M{xs[0]:.3f},{ys[0]:.3f}"
    return head + "".join(f"L{x:.3f},{y:.3f}" for x, y in zip(xs[1:], ys[1:])) + "Z"


def svg_document(curves, raster=None, size: int = 600, title: str = "") -> str:
    """Closed curves (complex arrays) plus an optional raster silhouette.

    ``raster`` is ``(xs, ys, occupancy)`` with cell-centre coordinates.
    """
    pts = [np.asarray(c, dtype=complex) for c, _ in curves]
    if raster is not None and raster[2].any():
        xs, ys, occ = raster
        cols = np.flatnonzero(occ.any(axis=0))
        rows = np.flatnonzero(occ.any(axis=1))
        pts.append(np.array([xs[cols[0]] + 1j * ys[rows[0]], xs[cols[-1]] + 1j * ys[rows[-1]]]))
    x0, y0, span = _frame(pts)
    scale = size / span
    y1 = y0 + span
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">']
    if title:
        out.append(f"<title>{title}</title>")
    if raster is not None:
        xs, ys, occ = raster
        h = xs[1] - xs[0]
        rects = []
        for i, y in enumerate(ys):
            row = occ[i]
            if not row.any():
                continue
            # merge runs of occupied cells in the row
            edges = np.flatnonzero(np.diff(np.concatenate([[0], row.astype(int), [0]])))
            for a, b in zip(edges[::2], edges[1::2]):
                rx = (xs[a] - h / 2 - x0) * scale
                ry = (y1 - (y + h / 2)) * scale
                rects.append(f'<rect x="{rx:.3f}" y="{ry:.3f}" width="{(b - a) * h * scale:.3f}" '
                             f'height="{h * scale:.3f}"/>')
        out.append('<g fill="#9ecae1" stroke="none">' + "".join(rects) + "</g>")
    for c, color in curves:
        out.append(f'<path d="{_path(np.asarray(c, dtype=complex), x0, y1, scale)}" fill="none" '
                   f'stroke="{color}" stroke-width="1.5"/>')
    ox, oy = (0 - x0) * scale, (y1 - 0) * scale
    out.append(f'<circle cx="{ox:.3f}" cy="{oy:.3f}" r="3" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
