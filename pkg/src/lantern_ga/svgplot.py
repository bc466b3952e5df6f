"""Hand-assembled SVG line plots with byte-stable output."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 800, 500
LEFT, RIGHT, TOP, BOTTOM = 80, 190, 50, 60
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
# log10 floor for zero angles (e.g. a sequence compared with its own last iterate)
LOG_FLOOR = -16.0


def _f(v: float) -> str:
    return f"{v:.2f}"


def log10_floor(v: float) -> float:
    return LOG_FLOOR if v <= 0.0 else max(LOG_FLOOR, math.log10(v))


def line_plot(series: list[tuple[str, list[int], list[float]]], title: str,
              xlabel: str, ylabel: str) -> str:
    """Render ``(label, xs, ys)`` polylines; ``ys`` are already in plot units."""
    if not series or any(len(xs) == 0 or len(xs) != len(ys) for _, xs, ys in series):
        raise ValueError("every series needs matching, nonempty x and y")
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys]
    x0, x1 = min(xs_all), max(xs_all)
    if x0 == x1:
        x0, x1 = x0 - 1, x1 + 1
    y0, y1 = math.floor(min(ys_all)), math.ceil(max(ys_all))
    if y0 == y1:
        y0, y1 = y0 - 1, y1 + 1
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def px(x):
        return LEFT + (x - x0) / (x1 - x0) * pw

    def py(y):
        return TOP + (y1 - y) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2 - RIGHT / 2:.2f}" y="28" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{escape(title)}</text>',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="#000000"/>',
    ]
    ystep = max(1, math.ceil((y1 - y0) / 10))
    for yt in range(y0, y1 + 1, ystep):
        y = py(yt)
        out.append(f'<line x1="{LEFT}" y1="{_f(y)}" x2="{LEFT + pw}" y2="{_f(y)}" '
                   'stroke="#dddddd"/>')
        out.append(f'<text x="{LEFT - 8}" y="{_f(y + 4)}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="12">{yt}</text>')
    for xt in range(math.ceil(x0), math.floor(x1) + 1):
        x = px(xt)
        out.append(f'<line x1="{_f(x)}" y1="{TOP + ph}" x2="{_f(x)}" y2="{TOP + ph + 5}" '
                   'stroke="#000000"/>')
        out.append(f'<text x="{_f(x)}" y="{TOP + ph + 20}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="12">{xt}</text>')
    out.append(f'<text x="{_f(LEFT + pw / 2)}" y="{HEIGHT - 15}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="14">{escape(xlabel)}</text>')
    out.append(f'<text x="20" y="{_f(TOP + ph / 2)}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="14" '
               f'transform="rotate(-90 20 {_f(TOP + ph / 2)})">{escape(ylabel)}</text>')
    for idx, (label, xs, ys) in enumerate(series):
        color = COLORS[idx % len(COLORS)]
        pts = " ".join(f"{_f(px(x))},{_f(py(y))}" for x, y in zip(xs, ys))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{pts}"/>')
        ly = TOP + 20 + 22 * idx
        lx = LEFT + pw + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 25}" y2="{ly}" stroke="{color}" '
                   'stroke-width="2"/>')
        out.append(f'<text x="{lx + 32}" y="{ly + 4}" font-family="sans-serif" '
                   f'font-size="12">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
