"""Minimal deterministic SVG emission: scatter plots and line curves.

Hand-rolled on purpose -- byte-identical output for identical inputs is a
contract here, so no plotting library is involved.  Coordinates are
serialized with two fixed decimals (pixel space), data labels with
:func:`fmt17`.
"""

from __future__ import annotations

import math

WIDTH, HEIGHT = 800, 600
MARGIN = 70


def fmt17(x: float) -> str:
    """17 significant digits; round-trips any double."""
    return format(float(x), ".17g")


def _px(v: float) -> str:
    return f"{v:.2f}"


def _nice_ticks(lo: float, hi: float, n: int = 6) -> list[float]:
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
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


class _Frame:
    """Affine map from data coordinates to the pixel viewport."""

    def __init__(self, xlo, xhi, ylo, yhi):
        padx = 0.05 * (xhi - xlo) or 1.0
        pady = 0.05 * (yhi - ylo) or 1.0
        self.xlo, self.xhi = xlo - padx, xhi + padx
        self.ylo, self.yhi = ylo - pady, yhi + pady

    def x(self, v):
        return MARGIN + (v - self.xlo) / (self.xhi - self.xlo) * (WIDTH - 2 * MARGIN)

    def y(self, v):
        return HEIGHT - MARGIN - (v - self.ylo) / (self.yhi - self.ylo) * (HEIGHT - 2 * MARGIN)


def _axes(frame: _Frame, xlabel: str, ylabel: str, title: str) -> list[str]:
    parts = [
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" '
        f'height="{HEIGHT - 2 * MARGIN}" fill="none" stroke="black"/>',
        f'<text x="{WIDTH // 2}" y="30" text-anchor="middle" '
        f'font-size="16">{title}</text>',
        f'<text x="{WIDTH // 2}" y="{HEIGHT - 20}" text-anchor="middle" '
        f'font-size="13">{xlabel}</text>',
        f'<text x="20" y="{HEIGHT // 2}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 20 {HEIGHT // 2})">{ylabel}</text>',
    ]
    for t in _nice_ticks(frame.xlo, frame.xhi):
        px = frame.x(t)
        parts.append(f'<line x1="{_px(px)}" y1="{HEIGHT - MARGIN}" '
                     f'x2="{_px(px)}" y2="{HEIGHT - MARGIN + 5}" stroke="black"/>')
        parts.append(f'<text x="{_px(px)}" y="{HEIGHT - MARGIN + 18}" '
                     f'text-anchor="middle" font-size="11">{t:g}</text>')
    for t in _nice_ticks(frame.ylo, frame.yhi):
        py = frame.y(t)
        parts.append(f'<line x1="{MARGIN - 5}" y1="{_px(py)}" '
                     f'x2="{MARGIN}" y2="{_px(py)}" stroke="black"/>')
        parts.append(f'<text x="{MARGIN - 8}" y="{_px(py)}" text-anchor="end" '
                     f'dominant-baseline="middle" font-size="11">{t:g}</text>')
    return parts


def _document(body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
            f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">')
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>']
                     + body + ["</svg>"]) + "\n"


def scatter_svg(points, title: str, xlabel: str, ylabel: str) -> str:
    """Scatter plot; each point is (x, y, highlighted)."""
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    frame = _Frame(min(xs), max(xs), min(ys), max(ys))
    body = _axes(frame, xlabel, ylabel, title)
    for x, y, hl in points:
        color = "#d62728" if hl else "#1f77b4"
        r = 4 if hl else 2.5
        body.append(f'<circle cx="{_px(frame.x(x))}" cy="{_px(frame.y(y))}" '
                    f'r="{r}" fill="{color}"/>')
    return _document(body)


def curves_svg(x, curves, title: str, xlabel: str, ylabel: str) -> str:
    """Line curves; ``curves`` maps label -> (values, color)."""
    ys = [v for vals, _ in curves.values() for v in vals]
    frame = _Frame(min(x), max(x), min(ys), max(ys))
    body = _axes(frame, xlabel, ylabel, title)
    ly = MARGIN + 18
    for label, (vals, color) in curves.items():
        pts = " ".join(f"{_px(frame.x(xv))},{_px(frame.y(yv))}"
                       for xv, yv in zip(x, vals))
        body.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                    f'stroke-width="1.8"/>')
        body.append(f'<line x1="{WIDTH - MARGIN - 150}" y1="{ly}" '
                    f'x2="{WIDTH - MARGIN - 120}" y2="{ly}" stroke="{color}" '
                    f'stroke-width="1.8"/>')
        body.append(f'<text x="{WIDTH - MARGIN - 112}" y="{ly + 4}" '
                    f'font-size="12">{label}</text>')
        ly += 18
    return _document(body)
