"""Schematic SVG of the hexagon with the level lines of one convex form.

All geometry is exact until the final drawing step, which maps the rational
hexagon onto the regular one and prints decimals.
"""
from __future__ import annotations

import math
from fractions import Fraction

from . import linalg as la
from .forms import Form, FormSpace
from .hexagon import HEXAGON, hexagon_value_matrix

FORM_NAMES = ("0", "u") + tuple(f"v{i}" for i in range(1, 7))

# (x, y) -> x*(1, 0) + y*(1/2, sqrt(3)/2): rational hexagon -> regular hexagon
_DISPLAY = ((1.0, 0.5), (0.0, math.sqrt(3) / 2))


def named_form(OC: FormSpace, name: str) -> Form:
    if name in ("0", "zero"):
        return OC.zero
    if name in ("u", "unit"):
        return OC.unit
    if name.startswith("v") and name[1:].isdigit() and 1 <= int(name[1:]) <= 6:
        rows, _ = hexagon_value_matrix(OC)
        return rows[int(name[1:]) - 1]
    raise ValueError(f"unknown form {name!r}; expected one of {', '.join(FORM_NAMES)}")


def affine_coefficients(OC: FormSpace, u: Form) -> tuple[tuple, Fraction]:
    """Gradient ``g`` and offset ``c`` with ``u(x) = g . x + c`` on the plane."""
    pts = OC.vertices
    M = [[p[0], p[1], 1] for p in pts]
    sol = la.solve(M, list(u.values), 3)
    if sol is None:
        raise ValueError("values do not extend to an affine functional")
    return (sol[0], sol[1]), sol[2]


def level_line(gradient, offset, level):
    """Two exact points on ``{g . x + c = level}``, or None if g = 0."""
    gx, gy = gradient
    if gx == 0 and gy == 0:
        return None
    rhs = level - offset
    base = (rhs / gx, Fraction(0)) if gx != 0 else (Fraction(0), rhs / gy)
    return base, (base[0] - gy, base[1] + gx)


def _disp(p) -> tuple[float, float]:
    x, y = float(p[0]), float(p[1])
    return (_DISPLAY[0][0] * x + _DISPLAY[0][1] * y, _DISPLAY[1][0] * x + _DISPLAY[1][1] * y)


def _fmt(v: float) -> str:
    s = f"{v:.4f}"
    return "0.0000" if s == "-0.0000" else s


def render_svg(OC: FormSpace, form_name: str = "v1", size: int = 400) -> str:
    u = named_form(OC, form_name)
    g, c = affine_coefficients(OC, u)
    half = 1.6
    scale = size / (2 * half)

    def px(p):
        x, y = _disp(p)
        return _fmt((x + half) * scale), _fmt((half - y) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f"  <title>hexagon with level lines of {form_name}</title>",
        '  <defs><clipPath id="frame"><rect x="0" y="0" '
        f'width="{size}" height="{size}"/></clipPath></defs>',
    ]
    poly = " ".join(",".join(px(v)) for v in HEXAGON)
    out.append(f'  <polygon points="{poly}" fill="#dfe9f5" stroke="#1f3b5c" stroke-width="2"/>')
    for level, colour in ((0, "#2b7bb9"), (1, "#d9534f")):
        line = level_line(g, c, level)
        if line is None:
            continue
        (x0, y0), (x1, y1) = (_disp(p) for p in line)
        dx, dy = x1 - x0, y1 - y0
        norm = math.hypot(dx, dy)
        dx, dy = dx / norm * 10, dy / norm * 10
        a = ((x0 - dx + half) * scale, (half - (y0 - dy)) * scale)
        b = ((x0 + dx + half) * scale, (half - (y0 + dy)) * scale)
        out.append(
            f'  <line class="level-{level}" x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" '
            f'x2="{_fmt(b[0])}" y2="{_fmt(b[1])}" stroke="{colour}" stroke-width="2" '
            'clip-path="url(#frame)"/>')
    for i, v in enumerate(HEXAGON, 1):
        x, y = px(v)
        value = u.strings()[i - 1]
        out.append(f'  <circle cx="{x}" cy="{y}" r="4" fill="#1f3b5c"/>')
        out.append(f'  <text x="{x}" y="{y}" dx="6" dy="-6" font-size="12">'
                   f"s{i} ({value})</text>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
