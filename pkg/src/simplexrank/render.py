"""Deterministic SVG renderings of a decomposition file: the region
colormap, the area barchart, per-item heatmaps, and the within-region
robustness map. Output is byte-stable: no timestamps, no randomness, fixed
decimal formatting.

Screen convention: input 1 sits at the right corner, input 2 at the left,
input 3 on top; points map from barycentric coordinates as a mix of the
three screen corners.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import analytics as _analytics
from .errors import InputError
from .fileio import DecompositionFile
from .model import RankLabel

SQRT3 = 3.0**0.5


def _fmt(x: float) -> str:
    s = f"{x:.4f}"
    return "0.0000" if s == "-0.0000" else s


class _Svg:
    def __init__(self, width: float, height: float):
        self.parts = [
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
            f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">\n'
        ]

    def polygon(self, pts, fill, stroke="#333333", stroke_width=0.8, opacity=None):
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        op = f' fill-opacity="{_fmt(opacity)}"' if opacity is not None else ""
        self.parts.append(
            f'<polygon points="{coords}" fill="{fill}" stroke="{stroke}" '
            f'stroke-width="{_fmt(stroke_width)}"{op}/>\n'
        )

    def line(self, x1, y1, x2, y2, stroke="#888888", width=0.6, dash=None):
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
            f'y2="{_fmt(y2)}" stroke="{stroke}" stroke-width="{_fmt(width)}"{d}/>\n'
        )

    def circle(self, cx, cy, r, fill):
        self.parts.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" '
            f'fill="{fill}"/>\n'
        )

    def rect(self, x, y, w, h, fill, stroke="none"):
        self.parts.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" '
            f'height="{_fmt(h)}" fill="{fill}" stroke="{stroke}"/>\n'
        )

    def text(self, x, y, s, size=12.0, anchor="middle", fill="#111111"):
        esc = (
            s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        )
        self.parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{_fmt(size)}" '
            f'font-family="sans-serif" text-anchor="{anchor}" '
            f'fill="{fill}">{esc}</text>\n'
        )

    def finish(self) -> str:
        return "".join(self.parts) + "</svg>\n"


class _Triangle:
    """Screen placement of the weight triangle."""

    def __init__(self, size: float, margin: float):
        self.side = size
        height = size * SQRT3 / 2.0
        self.right = (margin + size, margin + height)   # input 1
        self.left = (margin, margin + height)           # input 2
        self.top = (margin + size / 2.0, margin)        # input 3
        self.width = size + 2 * margin
        self.height = height + 2 * margin

    def screen(self, bary: Sequence[float]) -> tuple[float, float]:
        b1, b2, b3 = (float(v) for v in bary)
        x = b1 * self.right[0] + b2 * self.left[0] + b3 * self.top[0]
        y = b1 * self.right[1] + b2 * self.left[1] + b3 * self.top[1]
        return (x, y)

    def corners(self):
        return (self.right, self.left, self.top)


def _parse_bary(strs: Sequence[str]) -> tuple[float, float, float]:
    return tuple(float(Fraction(s)) for s in strs)


def _input_names(decfile: DecompositionFile) -> list[str]:
    return [e["name"] for e in decfile.raw["input_set"]["inputs"]]


def _draw_frame(svg: _Svg, tri: _Triangle, names: Sequence[str]):
    r, l, t = tri.corners()
    # relative-weight axes: from each corner through the center
    center = tri.screen((1 / 3, 1 / 3, 1 / 3))
    for corner, opposite in (
        (r, ((0.0, 0.5, 0.5))),
        (l, ((0.5, 0.0, 0.5))),
        (t, ((0.5, 0.5, 0.0))),
    ):
        ox, oy = tri.screen(opposite)
        svg.line(corner[0], corner[1], ox, oy, stroke="#bbbbbb", width=0.5,
                 dash="4,3")
    svg.circle(center[0], center[1], 2.0, "#555555")
    svg.polygon([r, l, t], fill="none", stroke="#222222", stroke_width=1.2)
    svg.text(r[0], r[1] + 16, names[0], anchor="end")
    svg.text(l[0], l[1] + 16, names[1], anchor="start")
    svg.text(t[0], t[1] - 8, names[2], anchor="middle")


def _region_screen_polys(decfile: DecompositionFile, tri: _Triangle):
    out = []
    for region in decfile.raw["regions"]:
        pts = [
            tri.screen(_parse_bary(b))
            for b in region["vertices_barycentric"]
        ]
        out.append((region, pts))
    return out


def _grid_points(decfile: DecompositionFile, tri: _Triangle):
    k = decfile.grid_resolution
    cells = decfile.raw["grid_cells"]
    pts = []
    idx = 0
    for i in range(k + 1):
        for j in range(k - i + 1):
            bary = (i / k, j / k, (k - i - j) / k)
            pts.append((tri.screen(bary), cells[idx]))
            idx += 1
    return pts


def render_colormap(decfile: DecompositionFile, size: float = 640.0) -> str:
    """Region polygons in their palette colors (grid files draw cells)."""
    tri = _Triangle(size, 60.0)
    svg = _Svg(tri.width, tri.height)
    if decfile.method == "exact":
        for region, pts in _region_screen_polys(decfile, tri):
            svg.polygon(pts, fill=region["color"]["hex"], stroke="#ffffff")
    else:
        radius = max(size / (2.2 * (decfile.grid_resolution + 1)), 0.8)
        colors = [r["color"]["hex"] for r in decfile.raw["regions"]]
        for (x, y), label_idx in _grid_points(decfile, tri):
            svg.circle(x, y, radius, colors[label_idx])
    _draw_frame(svg, tri, _input_names(decfile))
    return svg.finish()


def _shade(base_light: float, span: float, t: float) -> str:
    # grayscale helper: t in [0,1], larger t = darker
    v = int(round(base_light - span * t))
    v = max(0, min(255, v))
    return f"#{v:02x}{v:02x}{v:02x}"


def render_item_heatmap(
    decfile: DecompositionFile, item_name: str, size: float = 640.0
) -> str:
    """Shade each region by the item's ranked position (lighter = better)."""
    items = decfile.raw["input_set"]["items"]
    if item_name not in items:
        raise InputError(f"unknown item {item_name!r}")
    item_id = items.index(item_name)
    n = len(items)
    tri = _Triangle(size, 60.0)
    svg = _Svg(tri.width, tri.height + 40.0)

    def fill_for(region) -> str:
        pos = region["label"]["positions"][item_id]
        t = 0.0 if n == 1 else (pos - 1) / (n - 1)
        return _shade(235.0, 165.0, t)

    if decfile.method == "exact":
        for region, pts in _region_screen_polys(decfile, tri):
            svg.polygon(pts, fill=fill_for(region), stroke="#ffffff")
    else:
        radius = max(size / (2.2 * (decfile.grid_resolution + 1)), 0.8)
        fills = [fill_for(r) for r in decfile.raw["regions"]]
        for (x, y), label_idx in _grid_points(decfile, tri):
            svg.circle(x, y, radius, fills[label_idx])
    _draw_frame(svg, tri, _input_names(decfile))
    # legend: best..worst
    lx, ly = 60.0, tri.height + 10.0
    for k in range(n):
        t = 0.0 if n == 1 else k / (n - 1)
        svg.rect(lx + k * 26.0, ly, 24.0, 12.0, _shade(235.0, 165.0, t),
                 stroke="#888888")
        svg.text(lx + k * 26.0 + 12.0, ly + 24.0, str(k + 1), size=9.0)
    svg.text(lx, ly - 6.0, f"position of {item_name} (lighter = better)",
             size=10.0, anchor="start")
    return svg.finish()


def _eroded(pts: list[tuple[float, float]], d: float):
    # shift every edge inward by d and re-intersect (convex polygons only)
    from .geometry import clip_convex

    if len(pts) < 3:
        return []
    area2 = 0.0
    m = len(pts)
    for i in range(m):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % m]
        area2 += x1 * y2 - x2 * y1
    oriented = pts if area2 > 0 else pts[::-1]
    halves = []
    for i in range(m):
        px, py = oriented[i]
        qx, qy = oriented[(i + 1) % m]
        nx, ny = -(qy - py), (qx - px)
        norm = (nx * nx + ny * ny) ** 0.5
        if norm == 0:
            continue
        nx, ny = nx / norm, ny / norm
        # interior satisfies n.x >= n.p + d  ->  -n.x + (n.p + d) <= 0
        halves.append(
            (Fraction(-nx), Fraction(-ny), Fraction(nx * px + ny * py + d))
        )
    poly = clip_convex([(Fraction(x), Fraction(y)) for x, y in oriented], halves)
    return [(float(x), float(y)) for x, y in poly]


def render_sensitivity(
    decfile: DecompositionFile, size: float = 640.0, bands: int = 10
) -> str:
    """Inset level bands per region, darker toward the deepest point."""
    if decfile.method != "exact":
        raise InputError("sensitivity rendering needs an exact decomposition")
    decomposition = decfile.decomposition()
    tri = _Triangle(size, 60.0)
    svg = _Svg(tri.width, tri.height)
    scale = tri.side  # equilateral side 1 -> screen side
    for region, file_region in zip(
        decomposition.regions, decfile.raw["regions"]
    ):
        pts = [
            tri.screen(_parse_bary(b))
            for b in file_region["vertices_barycentric"]
        ]
        radius = _analytics.chebyshev_radius(region) * scale
        for k in range(bands):
            t = k / bands
            poly = _eroded(pts, radius * t) if k else pts
            if len(poly) < 3:
                break
            svg.polygon(
                poly, fill=_shade(230.0, 160.0, (k + 1) / bands),
                stroke="none", stroke_width=0.0,
            )
        svg.polygon(pts, fill="none", stroke="#ffffff", stroke_width=1.0)
    _draw_frame(svg, tri, _input_names(decfile))
    return svg.finish()


def render_barchart(
    decfile: DecompositionFile, width: float = 720.0, height: float = 400.0
) -> str:
    """Area fraction per ranking, largest first, labels beneath the bars."""
    chart = decfile.raw["analytics"]["barchart"]
    regions = decfile.raw["regions"]
    svg = _Svg(width, height)
    margin = 50.0
    plot_w = width - 2 * margin
    plot_h = height - 2 * margin - 30.0
    m = len(chart)
    if m == 0:
        return svg.finish()
    max_frac = max(entry["fraction"] for entry in chart)
    bar_w = plot_w / m * 0.72
    gap = plot_w / m
    base_y = margin + plot_h
    total_pct = sum(entry["fraction"] for entry in chart) * 100.0
    for k, entry in enumerate(chart):
        frac = entry["fraction"]
        region = regions[entry["region"]]
        h = 0.0 if max_frac == 0 else plot_h * frac / max_frac
        x = margin + k * gap + (gap - bar_w) / 2
        svg.rect(x, base_y - h, bar_w, h, region["color"]["hex"],
                 stroke="#333333")
        svg.text(x + bar_w / 2, base_y - h - 4, f"{frac * 100:.1f}%",
                 size=10.0)
        label = " ".join(str(p) for p in region["label"]["positions"])
        svg.text(x + bar_w / 2, base_y + 14, f"[{label}]", size=9.0)
    svg.line(margin, base_y, margin + plot_w, base_y, stroke="#222222",
             width=1.0)
    svg.text(margin, margin - 10, f"share of weight set per ranking "
             f"(total {total_pct:.1f}%)", size=11.0, anchor="start")
    return svg.finish()


def region_label_string(label: RankLabel) -> str:
    return "[" + " ".join(str(p) for p in label.positions) + "]"
