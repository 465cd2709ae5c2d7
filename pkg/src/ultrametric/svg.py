"""Deterministic SVG rendering of Newton polygons and lattice polytopes:
integer grid, labeled vertices, slope annotations.  Presentation layer only;
the exact core never touches floats."""

from __future__ import annotations

from fractions import Fraction

SCALE = 30
MARGIN = 45


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _rat_str(v) -> str:
    f = Fraction(v)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _header(width, height):
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">\n'
        '<rect width="100%" height="100%" fill="white"/>\n'
    )


def _grid(x0, x1, y0, y1, tx, ty):
    step = max(1, (x1 - x0) // 24 + 1, (y1 - y0) // 24 + 1)
    out = []
    for gx in range(x0, x1 + 1, step):
        out.append(
            f'<line x1="{_fmt(tx(gx))}" y1="{_fmt(ty(y0))}" x2="{_fmt(tx(gx))}" '
            f'y2="{_fmt(ty(y1))}" stroke="#dddddd" stroke-width="0.5"/>'
        )
    for gy in range(y0, y1 + 1, step):
        out.append(
            f'<line x1="{_fmt(tx(x0))}" y1="{_fmt(ty(gy))}" x2="{_fmt(tx(x1))}" '
            f'y2="{_fmt(ty(gy))}" stroke="#dddddd" stroke-width="0.5"/>'
        )
    return "\n".join(out) + "\n"


def render_polygon_svg(vertices, slopes) -> str:
    """Newton polygon: vertices [(m, v)] with rational v, one slope label per
    segment."""
    xs = [m for m, _ in vertices]
    ys = [Fraction(v) for _, v in vertices]
    import math

    x0, x1 = min(xs), max(xs)
    y0 = math.floor(min(ys))
    y1 = math.ceil(max(ys))
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1
    width = MARGIN * 2 + (x1 - x0) * SCALE
    height = MARGIN * 2 + (y1 - y0) * SCALE

    def tx(x):
        return MARGIN + (float(x) - x0) * SCALE

    def ty(y):
        return height - MARGIN - (float(y) - y0) * SCALE

    parts = [_header(width, height), _grid(x0, x1, y0, y1, tx, ty)]
    pts = " ".join(f"{_fmt(tx(m))},{_fmt(ty(float(v)))}" for m, v in zip(xs, ys))
    parts.append(
        f'<polyline points="{pts}" fill="none" stroke="#1040a0" stroke-width="2"/>\n'
    )
    for i, (m, v) in enumerate(zip(xs, ys)):
        parts.append(
            f'<circle cx="{_fmt(tx(m))}" cy="{_fmt(ty(v))}" r="3" fill="#c03020"/>\n'
            f'<text x="{_fmt(tx(m) + 5)}" y="{_fmt(ty(v) - 5)}" font-size="11" '
            f'font-family="monospace">({m}, {_rat_str(v)})</text>\n'
        )
    for i, slope in enumerate(slopes):
        mx = Fraction(xs[i] + xs[i + 1], 2)
        my = (ys[i] + ys[i + 1]) / 2
        parts.append(
            f'<text x="{_fmt(tx(mx) + 4)}" y="{_fmt(ty(my) + 14)}" font-size="11" '
            f'font-family="monospace" fill="#106020">slope {_rat_str(slope)}</text>\n'
        )
    parts.append("</svg>\n")
    return "".join(parts)


def render_polytope_svg(vertices) -> str:
    """Lattice polytope: closed polygon on the integer grid."""
    xs = [x for x, _ in vertices]
    ys = [y for _, y in vertices]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    x1 = max(x1, x0 + 1)
    y1 = max(y1, y0 + 1)
    width = MARGIN * 2 + (x1 - x0) * SCALE
    height = MARGIN * 2 + (y1 - y0) * SCALE

    def tx(x):
        return MARGIN + (float(x) - x0) * SCALE

    def ty(y):
        return height - MARGIN - (float(y) - y0) * SCALE

    parts = [_header(width, height), _grid(x0, x1, y0, y1, tx, ty)]
    pts = " ".join(f"{_fmt(tx(x))},{_fmt(ty(y))}" for x, y in vertices)
    closing = "" if len(vertices) < 3 else ' fill="#c8d8f0" fill-opacity="0.5"'
    parts.append(
        f'<polygon points="{pts}" stroke="#1040a0" stroke-width="2"{closing}/>\n'
        if len(vertices) >= 3
        else f'<polyline points="{pts}" fill="none" stroke="#1040a0" stroke-width="2"/>\n'
    )
    for x, y in vertices:
        parts.append(
            f'<circle cx="{_fmt(tx(x))}" cy="{_fmt(ty(y))}" r="3" fill="#c03020"/>\n'
            f'<text x="{_fmt(tx(x) + 5)}" y="{_fmt(ty(y) - 5)}" font-size="11" '
            f'font-family="monospace">({x}, {y})</text>\n'
        )
    parts.append("</svg>\n")
    return "".join(parts)
