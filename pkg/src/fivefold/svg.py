"""Deterministic SVG rendering of tiling documents.

Output is assembled by plain string formatting with six-decimal
coordinates; identical documents and options give bit-identical bytes.
When the document carries groups, each group is drawn as one merged
polygon in its kind's palette colour, otherwise one polygon per triangle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import EPS, TAU_C, CycloPoint
from .document import TilingDocument

__all__ = ["RenderOptions", "render_svg", "PALETTE"]

PALETTE = {
    "ThickRhomb": "#f59e0b",      # amber
    "ThinRhomb": "#0d9488",       # teal
    "PentagonBig": "#eab308",     # gold
    "PentagonSmall": "#ca8a04",   # darker gold
    "Pentagram": "#dc2626",       # crimson
    "Boat": "#2563eb",            # blue
    "Trapezoid": "#16a34a",       # green
    "Deltoid": "#7c3aed",         # violet
    "AcuteTriangle": "#b8b8b8",   # light gray
    "ObtuseTriangle": "#8e8e8e",  # dark gray
    "A": "#b8b8b8",
    "O": "#8e8e8e",
}
_EDGE = "#303030"
_ATOM = "#111111"
_OVERLAY = "#c2185b"


@dataclass(frozen=True)
class RenderOptions:
    scale: float = 100.0
    atoms: bool = False
    overlay: tuple[int, int] | None = None  # (tau exponent, 72-degree steps)
    margin: float = 0.5


def _fmt(x: float) -> str:
    out = f"{x:.6f}"
    return "0.000000" if out == "-0.000000" else out


def _group_outline(doc: TilingDocument, indices) -> list[list[int]]:
    """Boundary loops of a group as vertex-index cycles.

    Each triangle contributes its directed boundary (counterclockwise by
    chirality); interior edges cancel in pairs, the rest chain into loops.
    """
    directed: set[tuple[int, int]] = set()
    for i in indices:
        t = doc.triangles[i]
        cycle = (t.apex, t.base0, t.base1) if t.chirality == 1 else (
            t.apex, t.base1, t.base0)
        for k in range(3):
            directed.add((cycle[k], cycle[(k + 1) % 3]))
    boundary = {(a, b) for (a, b) in directed if (b, a) not in directed}
    adjacency: dict[int, list[int]] = {}
    for a, b in sorted(boundary):
        adjacency.setdefault(a, []).append(b)
    loops = []
    used: set[tuple[int, int]] = set()
    for a, b in sorted(boundary):
        if (a, b) in used:
            continue
        loop = [a]
        cur, nxt = a, b
        while True:
            used.add((cur, nxt))
            cur = nxt
            if cur == a:
                break
            loop.append(cur)
            nxt = next(v for v in adjacency[cur] if (cur, v) not in used)
        loops.append(loop)
    return loops


def render_svg(doc: TilingDocument, options: RenderOptions = RenderOptions()) -> bytes:
    doc.validate()
    scale = options.scale
    embedded = [CycloPoint(*v).embed() for v in doc.vertices]
    if embedded:
        xs = [p[0] for p in embedded]
        ys = [p[1] for p in embedded]
        lo_x, hi_x = min(xs) - options.margin, max(xs) + options.margin
        lo_y, hi_y = min(ys) - options.margin, max(ys) + options.margin
    else:
        lo_x, hi_x, lo_y, hi_y = -1.0, 1.0, -1.0, 1.0
    width = (hi_x - lo_x) * scale
    height = (hi_y - lo_y) * scale

    def to_svg(p: tuple[float, float]) -> tuple[float, float]:
        return ((p[0] - lo_x) * scale, (hi_y - p[1]) * scale)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>\n',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">\n',
    ]

    def polygon(point_list, fill, stroke=_EDGE, stroke_width=1.0, fill_opacity=None):
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in point_list)
        opacity = (f' fill-opacity="{_fmt(fill_opacity)}"'
                   if fill_opacity is not None else "")
        parts.append(f'<polygon points="{coords}" fill="{fill}"{opacity} '
                     f'stroke="{stroke}" stroke-width="{_fmt(stroke_width)}"/>\n')

    if doc.groups is not None:
        for kind, indices in doc.groups:
            fill = PALETTE.get(kind, "#cccccc")
            for loop in _group_outline(doc, indices):
                polygon([to_svg(embedded[i]) for i in loop], fill)
    else:
        for t in doc.triangles:
            fill = PALETTE[t.kind]
            pts = [to_svg(embedded[i]) for i in (t.apex, t.base0, t.base1)]
            polygon(pts, fill)

    if options.overlay is not None:
        k, m = options.overlay
        factor = TAU_C ** k * EPS ** (m % 5)
        mapped = [(CycloPoint(*v) * factor).embed() for v in doc.vertices]
        if doc.groups is not None:
            for kind, indices in doc.groups:
                for loop in _group_outline(doc, indices):
                    coords = " ".join(
                        f"{_fmt(x)},{_fmt(y)}"
                        for x, y in (to_svg(mapped[i]) for i in loop))
                    parts.append(f'<polygon points="{coords}" fill="none" '
                                 f'stroke="{_OVERLAY}" stroke-width="2.000000"/>\n')
        else:
            for t in doc.triangles:
                coords = " ".join(
                    f"{_fmt(x)},{_fmt(y)}"
                    for x, y in (to_svg(mapped[i])
                                 for i in (t.apex, t.base0, t.base1)))
                parts.append(f'<polygon points="{coords}" fill="none" '
                             f'stroke="{_OVERLAY}" stroke-width="2.000000"/>\n')

    if options.atoms:
        radius = 0.06 * scale
        for p in embedded:
            x, y = to_svg(p)
            parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" '
                         f'r="{_fmt(radius)}" fill="{_ATOM}"/>\n')

    parts.append("</svg>\n")
    return "".join(parts).encode("ascii")
