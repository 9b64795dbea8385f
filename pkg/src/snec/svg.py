"""Minimal SVG emission for series scatter/line plots and histograms.

Text-only output so artifacts diff cleanly; deterministic to the byte for a
fixed input apart from the version attribute stamped in the root element.
"""

from __future__ import annotations

import math

from . import __version__

WIDTH, HEIGHT = 880, 560
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 40, 55
PALETTE = ["#1f4fd8", "#d82f2f", "#1e9e3e", "#8d33c9", "#e08b12", "#444444"]


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _nice_ticks(lo: float, hi: float, n: int = 6):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-12 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


class _Canvas:
    def __init__(self, title, xlabel, ylabel, xlim, ylim):
        self.parts = []
        self.x0, self.x1 = xlim
        self.y0, self.y1 = ylim
        if self.x1 <= self.x0:
            self.x1 = self.x0 + 1.0
        if self.y1 <= self.y0:
            self.y1 = self.y0 + 1.0
        self.parts.append(
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'data-generator="snec {__version__}">'
        )
        self.parts.append(f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>')
        self.parts.append(
            f'<text x="{WIDTH / 2}" y="24" font-family="sans-serif" font-size="16" '
            f'text-anchor="middle">{_esc(title)}</text>'
        )
        self._axes(xlabel, ylabel)

    def px(self, x: float) -> float:
        frac = (x - self.x0) / (self.x1 - self.x0)
        return MARGIN_L + frac * (WIDTH - MARGIN_L - MARGIN_R)

    def py(self, y: float) -> float:
        frac = (y - self.y0) / (self.y1 - self.y0)
        return HEIGHT - MARGIN_B - frac * (HEIGHT - MARGIN_T - MARGIN_B)

    def _axes(self, xlabel, ylabel):
        left, right = MARGIN_L, WIDTH - MARGIN_R
        top, bottom = MARGIN_T, HEIGHT - MARGIN_B
        self.parts.append(
            f'<rect x="{left}" y="{top}" width="{right - left}" height="{bottom - top}" '
            f'fill="none" stroke="#222" stroke-width="1"/>'
        )
        for t in _nice_ticks(self.x0, self.x1):
            x = self.px(t)
            self.parts.append(
                f'<line x1="{_fmt(x)}" y1="{bottom}" x2="{_fmt(x)}" y2="{bottom + 5}" stroke="#222"/>'
            )
            self.parts.append(
                f'<text x="{_fmt(x)}" y="{bottom + 20}" font-family="sans-serif" font-size="11" '
                f'text-anchor="middle">{t:g}</text>'
            )
        for t in _nice_ticks(self.y0, self.y1):
            y = self.py(t)
            self.parts.append(
                f'<line x1="{left - 5}" y1="{_fmt(y)}" x2="{left}" y2="{_fmt(y)}" stroke="#222"/>'
            )
            self.parts.append(
                f'<text x="{left - 8}" y="{_fmt(y + 4)}" font-family="sans-serif" font-size="11" '
                f'text-anchor="end">{t:g}</text>'
            )
        self.parts.append(
            f'<text x="{(left + right) / 2}" y="{HEIGHT - 12}" font-family="sans-serif" '
            f'font-size="13" text-anchor="middle">{_esc(xlabel)}</text>'
        )
        self.parts.append(
            f'<text x="18" y="{(top + bottom) / 2}" font-family="sans-serif" font-size="13" '
            f'text-anchor="middle" transform="rotate(-90 18 {(top + bottom) / 2})">{_esc(ylabel)}</text>'
        )

    def legend(self, names, colors):
        x = MARGIN_L + 12
        y = MARGIN_T + 18
        for name, color in zip(names, colors):
            self.parts.append(f'<circle cx="{x}" cy="{y - 4}" r="4" fill="{color}"/>')
            self.parts.append(
                f'<text x="{x + 10}" y="{y}" font-family="sans-serif" font-size="12">{_esc(name)}</text>'
            )
            y += 18

    def finish(self) -> str:
        return "\n".join(self.parts) + "\n</svg>\n"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def series_plot(path, xs, series, names, title, xlabel, ylabel, scatter=True,
                lines=False, colors=None):
    """One scatter/line trace per row of `series` over the shared abscissa."""
    ymin = min(min(v) for v in series)
    ymax = max(max(v) for v in series)
    pad = 0.05 * (ymax - ymin or 1.0)
    cv = _Canvas(title, xlabel, ylabel, (min(xs), max(xs)), (ymin - pad, ymax + pad))
    if colors is None:
        colors = [PALETTE[i % len(PALETTE)] for i in range(len(series))]
    for vals, color in zip(series, colors):
        if lines:
            pts = " ".join(f"{_fmt(cv.px(x))},{_fmt(cv.py(v))}" for x, v in zip(xs, vals))
            cv.parts.append(
                f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1"/>'
            )
        if scatter:
            for x, v in zip(xs, vals):
                cv.parts.append(
                    f'<circle cx="{_fmt(cv.px(x))}" cy="{_fmt(cv.py(v))}" r="1.6" '
                    f'fill="{color}" fill-opacity="0.75"/>'
                )
    cv.legend(names, colors)
    with open(path, "w") as fh:
        fh.write(cv.finish())


def histogram_plot(path, edges, counts, names, title, xlabel):
    """Overlaid translucent bar charts sharing bin edges."""
    ymax = max(max(c) for c in counts) or 1
    cv = _Canvas(title, xlabel, "count", (edges[0], edges[-1]), (0.0, 1.05 * ymax))
    colors = [PALETTE[i % len(PALETTE)] for i in range(len(counts))]
    for vals, color in zip(counts, colors):
        for i, c in enumerate(vals):
            if c == 0:
                continue
            x0, x1 = cv.px(edges[i]), cv.px(edges[i + 1])
            y0, y1 = cv.py(float(c)), cv.py(0.0)
            cv.parts.append(
                f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_fmt(x1 - x0)}" '
                f'height="{_fmt(y1 - y0)}" fill="{color}" fill-opacity="0.45"/>'
            )
    cv.legend(names, colors)
    with open(path, "w") as fh:
        fh.write(cv.finish())


def scatter_xy(path, groups, names, title, xlabel, ylabel):
    """2-D scatter with one color per group; groups = [(xs, ys), ...]."""
    all_x = [x for xs, _ in groups for x in xs]
    all_y = [y for _, ys in groups for y in ys]
    padx = 0.05 * ((max(all_x) - min(all_x)) or 1.0)
    pady = 0.05 * ((max(all_y) - min(all_y)) or 1.0)
    cv = _Canvas(
        title, xlabel, ylabel,
        (min(all_x) - padx, max(all_x) + padx),
        (min(all_y) - pady, max(all_y) + pady),
    )
    colors = [PALETTE[i % len(PALETTE)] for i in range(len(groups))]
    for (xs, ys), color in zip(groups, colors):
        for x, y in zip(xs, ys):
            cv.parts.append(
                f'<circle cx="{_fmt(cv.px(x))}" cy="{_fmt(cv.py(y))}" r="1.8" '
                f'fill="{color}" fill-opacity="0.6"/>'
            )
    cv.legend(names, colors)
    with open(path, "w") as fh:
        fh.write(cv.finish())
