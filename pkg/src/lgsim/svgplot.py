"""Standalone SVG rendering of the envelope sweep (no plotting dependency).

Output is deterministic: fixed layout, fixed number formatting, no timestamps.
"""
from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

from .engine import CLASSICAL_BOUND, QUANTUM_BOUND
from .errors import InvalidArgumentError

PANEL_W, PANEL_H = 420.0, 300.0
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 60.0, 20.0, 36.0, 46.0
Y_RANGE = (-1.6, 3.1)
Y_TICKS = (-1.5, -1.0, 0.0, 1.0, 2.0, 3.0)

_PANELS = (
    ("minus", "K₋ envelope", "env_min_minus", "env_max_minus"),
    ("plus", "K₊ envelope", "env_min_plus", "env_max_plus"),
)


def _n(v: float) -> str:
    return f"{v:.3f}"


class _Axes:
    def __init__(self, x0, y0, xlim, ylim):
        self.x0, self.y0 = x0, y0
        self.xlim, self.ylim = xlim, ylim
        self.w = PANEL_W - MARGIN_L - MARGIN_R
        self.h = PANEL_H - MARGIN_T - MARGIN_B

    def px(self, x):
        lo, hi = self.xlim
        return self.x0 + MARGIN_L + (x - lo) / (hi - lo) * self.w

    def py(self, y):
        lo, hi = self.ylim
        return self.y0 + MARGIN_T + (hi - y) / (hi - lo) * self.h


def _x_ticks(lo, hi):
    span = hi - lo
    for step in (1, 2, 5, 10, 20, 25, 50, 100):
        if span / step <= 8:
            break
    first = -(-lo // step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9:
        ticks.append(t)
        t += step
    return ticks


def _panel(rows, idx, key, title, lo_attr, hi_attr):
    xs = [r.retardation for r in rows]
    xlim = (min(xs), max(xs)) if max(xs) > min(xs) else (min(xs) - 0.5, min(xs) + 0.5)
    ax = _Axes(idx * PANEL_W, 0.0, xlim, Y_RANGE)
    left, right = ax.px(xlim[0]), ax.px(xlim[1])
    top, bottom = ax.py(Y_RANGE[1]), ax.py(Y_RANGE[0])
    out = [f'<g id="panel-{key}">']
    out.append(f'<rect x="{_n(left)}" y="{_n(top)}" width="{_n(right - left)}" '
               f'height="{_n(bottom - top)}" fill="none" stroke="#000000" stroke-width="1"/>')
    out.append(f'<text x="{_n((left + right) / 2)}" y="{_n(top - 12)}" text-anchor="middle" '
               f'font-size="14">{escape(title)}</text>')
    for t in Y_TICKS:
        y = ax.py(t)
        out.append(f'<line x1="{_n(left - 4)}" y1="{_n(y)}" x2="{_n(left)}" y2="{_n(y)}" stroke="#000000"/>')
        out.append(f'<text x="{_n(left - 7)}" y="{_n(y + 4)}" text-anchor="end" font-size="11">{t:g}</text>')
    for t in _x_ticks(*xlim):
        x = ax.px(t)
        out.append(f'<line x1="{_n(x)}" y1="{_n(bottom)}" x2="{_n(x)}" y2="{_n(bottom + 4)}" stroke="#000000"/>')
        out.append(f'<text x="{_n(x)}" y="{_n(bottom + 17)}" text-anchor="middle" font-size="11">{t:g}</text>')
    out.append(f'<text x="{_n((left + right) / 2)}" y="{_n(bottom + 36)}" text-anchor="middle" '
               f'font-size="12">retardation (λ₀)</text>')
    for bound, colour, label in ((CLASSICAL_BOUND, "#444444", "classical-limit"),
                                 (QUANTUM_BOUND, "#888888", "quantum-limit")):
        y = ax.py(bound)
        out.append(f'<line class="{label}" x1="{_n(left)}" y1="{_n(y)}" x2="{_n(right)}" y2="{_n(y)}" '
                   f'stroke="{colour}" stroke-dasharray="6,4" stroke-width="1"/>')
    for attr, colour in ((lo_attr, "#d62728"), (hi_attr, "#1f77b4")):
        pts = " ".join(f"{_n(ax.px(r.retardation))},{_n(ax.py(getattr(r, attr)))}" for r in rows)
        out.append(f'<polyline class="{attr}" points="{pts}" fill="none" stroke="{colour}" '
                   f'stroke-width="1.5"/>')
    out.append("</g>")
    return out


def render_svg(rows) -> str:
    if not rows:
        raise InvalidArgumentError("no sweep rows to plot")
    width, height = PANEL_W * len(_PANELS), PANEL_H
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}" font-family="sans-serif">',
        f'<rect x="0" y="0" width="{width:g}" height="{height:g}" fill="#ffffff"/>',
    ]
    for idx, panel in enumerate(_PANELS):
        lines.extend(_panel(rows, idx, *panel))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_svg(rows, path) -> Path:
    path = Path(path)
    text = render_svg(rows)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path
