"""Standalone SVG line chart for voltage time series.

Presentation units live only here: the time axis is microseconds, the
voltage axis kilovolts.  The document is plain SVG 1.1 with one polyline and
computed tick marks, no external framework, so it renders anywhere and parses
as well-formed XML.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .materials import TimeGrid

_WIDTH = 720
_HEIGHT = 420
_MARGIN_L = 72
_MARGIN_R = 24
_MARGIN_T = 42
_MARGIN_B = 52


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    """Round tick positions covering [lo, hi] at a 1/2/5 step."""
    if hi <= lo:
        hi = lo + 1.0
    span = hi - lo
    raw = span / max(1, target)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        step = mult * mag
        if span / step <= target:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * span:
        ticks.append(0.0 if abs(t) < 1e-12 * span else t)
        t += step
    return ticks


def _fmt_tick(v: float) -> str:
    if v == int(v) and abs(v) < 1e6:
        return str(int(v))
    return f"{v:g}"


def emit_svg(voltage, grid: TimeGrid, title: str = "output voltage") -> str:
    """Render the voltage series against time as a standalone SVG document.

    An empty series produces an axes-only chart; otherwise the polyline has
    one point per grid time.
    """
    voltage = np.asarray(voltage, dtype=float)
    t_us = grid.times[: len(voltage)] * 1e6
    v_kv = voltage / 1e3

    if len(voltage):
        x_lo, x_hi = 0.0, float(t_us[-1]) if t_us[-1] > 0 else 1.0
        v_min, v_max = float(np.min(v_kv)), float(np.max(v_kv))
        if v_min == v_max:
            v_min -= 1.0
            v_max += 1.0
        pad = 0.05 * (v_max - v_min)
        y_lo, y_hi = v_min - pad, v_max + pad
    else:
        x_lo, x_hi = 0.0, 1.0
        y_lo, y_hi = -1.0, 1.0

    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def sx(x: float) -> float:
        return _MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        return _MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{escape(title)}</text>',
    ]

    axis_style = 'stroke="black" stroke-width="1"'
    x0, y0 = _MARGIN_L, _MARGIN_T + plot_h
    parts.append(f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" {axis_style}/>')
    parts.append(f'<line x1="{x0}" y1="{_MARGIN_T}" x2="{x0}" y2="{y0}" {axis_style}/>')

    for tx in _nice_ticks(x_lo, x_hi):
        px = sx(tx)
        parts.append(f'<line x1="{px:.2f}" y1="{y0}" x2="{px:.2f}" y2="{y0 + 5}" {axis_style}/>')
        parts.append(
            f'<text x="{px:.2f}" y="{y0 + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{_fmt_tick(tx)}</text>'
        )
    for ty in _nice_ticks(y_lo, y_hi):
        py = sy(ty)
        parts.append(f'<line x1="{x0 - 5}" y1="{py:.2f}" x2="{x0}" y2="{py:.2f}" {axis_style}/>')
        parts.append(
            f'<text x="{x0 - 9}" y="{py + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="12">{_fmt_tick(ty)}</text>'
        )

    parts.append(
        f'<text x="{x0 + plot_w / 2:.1f}" y="{_HEIGHT - 14}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">t [&#181;s]</text>'
    )
    parts.append(
        f'<text x="20" y="{_MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 20 {_MARGIN_T + plot_h / 2:.1f})">V [kV]</text>'
    )

    if len(voltage):
        pts = " ".join(f"{sx(float(x)):.3f},{sy(float(y)):.3f}" for x, y in zip(t_us, v_kv))
        parts.append(f'<polyline fill="none" stroke="#1f6fb2" stroke-width="1.5" points="{pts}"/>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
