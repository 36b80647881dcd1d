"""Self-contained SVG line plots of sweep output (no plotting library needed)."""
from __future__ import annotations

import math
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .errors import EmptySelection
from .sweep import PARAMETERS, SweepRow

WIDTH, HEIGHT = 800, 500
MARGIN = {"left": 70, "right": 190, "top": 30, "bottom": 55}
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")
DASHES = ("", "6,3", "2,3", "8,3,2,3")
LABELS = {
    "temperature": "T",
    "j": "J",
    "delta": "Delta",
    "discord": "D",
    "concurrence": "C",
    "steering12": "S(1->2)",
    "steering21": "S(2->1)",
    "bell": "B",
    "fidelity": "F",
    "fidelity_deviation": "Delta(F)",
    "det_r": "det R",
    "work": "W",
    "efficiency": "mu",
    "s_global": "S_G",
    "energy_diff": "E",
    "s_local": "S_l",
    "work_local": "W_l",
}


def _ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9) * step
    out = []
    x = first
    while x <= hi + 1e-9 * step:
        out.append(0.0 if abs(x) < 1e-12 * step else x)
        x += step
    return out


def _pad(lo: float, hi: float) -> tuple[float, float]:
    if hi > lo:
        return lo, hi
    span = abs(lo) * 0.1 or 1.0
    return lo - span, hi + span


def emit_svg_plot(
    rows: Sequence[SweepRow],
    x: str = "temperature",
    y: Sequence[str] = (),
    path: Optional[str] = None,
) -> str:
    """Render ``y`` columns against ``x``, one polyline per column and parameter group.

    Rows are grouped by the parameter columns other than ``x``. Absent
    values break lines. A series with a single finite point is drawn as a
    marker.

    Raises
    ------
    EmptySelection
        No finite point exists in the selected columns.
    ValueError
        ``x`` is not strictly increasing within a group.
    """
    group_keys = [k for k in PARAMETERS if k != x]
    groups: dict[tuple, list[dict]] = {}
    for row in rows:
        d = row.as_dict()
        groups.setdefault(tuple(d[k] for k in group_keys), []).append(d)
    for key, members in groups.items():
        xs = [m[x] for m in members]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError(f"{x} is not strictly increasing in group {key}")

    varying = [i for i, _ in enumerate(group_keys) if len({key[i] for key in groups}) > 1]
    series = []
    for gi, (key, members) in enumerate(groups.items()):
        for yi, col in enumerate(y):
            pts = [
                (m[x], m.get(col))
                for m in members
                if m.get(col) is not None and math.isfinite(m[col])
            ]
            segments, current = [], []
            for m in members:
                v = m.get(col)
                if v is None or not math.isfinite(v):
                    if current:
                        segments.append(current)
                    current = []
                else:
                    current.append((m[x], v))
            if current:
                segments.append(current)
            label = LABELS.get(col, col)
            if varying:
                label += " (" + ", ".join(
                    f"{LABELS.get(group_keys[i], group_keys[i])}={key[i]:g}" for i in varying
                ) + ")"
            series.append((label, PALETTE[yi % len(PALETTE)], DASHES[gi % len(DASHES)], pts, segments))

    finite = [p for s in series for p in s[3]]
    if not finite:
        raise EmptySelection("no finite values in the selected columns")

    x_lo, x_hi = _pad(min(p[0] for p in finite), max(p[0] for p in finite))
    y_lo, y_hi = _pad(min(p[1] for p in finite), max(p[1] for p in finite))
    left, top = MARGIN["left"], MARGIN["top"]
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(v):
        return left + (v - x_lo) / (x_hi - x_lo) * pw

    def sy(v):
        return top + ph - (v - y_lo) / (y_hi - y_lo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x_lo, x_hi):
        px = sx(t)
        out.append(f'<line x1="{px:.2f}" y1="{top + ph}" x2="{px:.2f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{top + ph + 18}" text-anchor="middle">{t:g}</text>')
    for t in _ticks(y_lo, y_hi):
        py = sy(t)
        out.append(f'<line x1="{left - 5}" y1="{py:.2f}" x2="{left}" y2="{py:.2f}" stroke="black"/>')
        out.append(f'<line x1="{left}" y1="{py:.2f}" x2="{left + pw}" y2="{py:.2f}" stroke="#dddddd"/>')
        out.append(f'<text x="{left - 8}" y="{py + 4:.2f}" text-anchor="end">{t:g}</text>')
    out.append(
        f'<text x="{left + pw / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle">{escape(LABELS.get(x, x))}</text>'
    )

    for label, color, dash, pts, segments in series:
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        for seg in segments:
            if len(seg) == 1:
                px, py = sx(seg[0][0]), sy(seg[0][1])
                out.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="{color}"/>')
            else:
                coords = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in seg)
                out.append(
                    f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"{dash_attr}/>'
                )

    lx = left + pw + 15
    for k, (label, color, dash, _, _) in enumerate(series):
        ly = top + 10 + 18 * k
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 25}" y2="{ly}" stroke="{color}" stroke-width="2"{dash_attr}/>')
        out.append(f'<text x="{lx + 30}" y="{ly + 4}">{escape(label)}</text>')
    out.append("</svg>")
    doc = "\n".join(out) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(doc)
    return doc
