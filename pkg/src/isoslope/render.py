"""Polygon rendering: ASCII art for terminals, SVG 1.1 on request.

Both renderers draw the polygon on the integer lattice with slopes
annotated as exact fractions; output is a pure function of the polygon.
"""

from __future__ import annotations

from fractions import Fraction

from .documents import fraction_str
from .polys import NewtonPolygon


def ascii_polygon(polygon: NewtonPolygon, title: str = "polygon") -> str:
    verts = list(polygon.vertices)
    if len(verts) < 2:
        return f"{title}: single point {verts[0] if verts else '-'}"
    xs = [x for x, _ in verts]
    ys = [y for _, y in verts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)

    def height(x: int) -> Fraction:
        for (a, ya), (b, yb) in zip(verts, verts[1:]):
            if a <= x <= b and a != b:
                return Fraction(ya * (b - x) + yb * (x - a), b - a)
        return Fraction(verts[-1][1])

    vertex_set = set(verts)
    lines = [f"{title} (slopes left to right: "
             + ", ".join(f"{fraction_str(s)} x{m}" for s, m in polygon.slopes)
             + (f"; x^{polygon.vanishing_order} stripped)" if polygon.vanishing_order else ")")]
    for y in range(y1, y0 - 1, -1):
        row = [f"{y:>4} |"]
        for x in range(x0, x1 + 1):
            h = height(x)
            if (x, y) in vertex_set:
                row.append("*")
            elif h == y:
                row.append("o")
            elif y - 1 < h < y:
                row.append(".")
            else:
                row.append(" ")
        lines.append("".join(row))
    lines.append("     +" + "-" * (x1 - x0 + 1))
    lines.append("      " + "".join(str(x % 10) for x in range(x0, x1 + 1)))
    return "\n".join(lines)


def svg_polygon(polygon: NewtonPolygon, title: str = "polygon") -> str:
    verts = list(polygon.vertices)
    if not verts:
        verts = [(0, 0)]
    xs = [x for x, _ in verts]
    ys = [y for _, y in verts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    unit = 40
    pad = 30

    def X(x):
        return pad + (x - x0) * unit

    def Y(y):
        return pad + (y1 - y) * unit  # flip: larger valuation up

    width = X(x1) + pad
    height = Y(y0) + pad
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f"<title>{title}</title>",
    ]
    for x in range(x0, x1 + 1):
        parts.append(
            f'<line x1="{X(x)}" y1="{Y(y1)}" x2="{X(x)}" y2="{Y(y0)}" '
            f'stroke="#cccccc" stroke-width="1"/>'
        )
    for y in range(y0, y1 + 1):
        parts.append(
            f'<line x1="{X(x0)}" y1="{Y(y)}" x2="{X(x1)}" y2="{Y(y)}" '
            f'stroke="#cccccc" stroke-width="1"/>'
        )
    if len(verts) > 1:
        points = " ".join(f"{X(x)},{Y(y)}" for x, y in verts)
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="#1f3d7a" stroke-width="2"/>'
        )
    for x, y in verts:
        parts.append(f'<circle cx="{X(x)}" cy="{Y(y)}" r="4" fill="#1f3d7a"/>')
    for (a, ya), (b, yb) in zip(verts, verts[1:]):
        label = fraction_str(Fraction(yb - ya, b - a)) if b != a else "?"
        parts.append(
            f'<text x="{(X(a) + X(b)) / 2:.1f}" y="{(Y(ya) + Y(yb)) / 2 - 6:.1f}" '
            f'font-size="12" text-anchor="middle">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)
