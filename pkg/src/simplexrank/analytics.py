"""Scalar and matrix readouts of a decomposition: area barchart, pairwise
dominance (by label count and by area), expected ranking under a uniform
random weight, region adjacency with swap distances, per-item heatmaps, and
a within-region robustness measure."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from . import decompose as _decompose
from .errors import InputError
from .geometry import (
    SIMPLEX_CORNERS,
    classify_pair,
    clip_convex,
    line_of,
    polygon_area,
    to_equilateral,
)
from .model import (
    Decomposition,
    IndifferenceRegion,
    InputSet,
    Item,
    RankLabel,
    WeightVector,
    kendall_tau,
)


@dataclass(frozen=True)
class DominanceMatrices:
    """Pairwise dominance: ``xstar`` by share of region labels, ``astar``
    by share of weight-set area. Ties split 1/2 to each side."""

    xstar: np.ndarray
    astar: np.ndarray


def rankability(decomposition: Decomposition) -> int:
    """Number of distinct attainable aggregated rankings."""
    return len(decomposition.regions)


def _fraction_of(region: IndifferenceRegion) -> Fraction:
    if region.area_fraction_exact is not None:
        return region.area_fraction_exact
    return Fraction(region.area_fraction).limit_denominator(10**12)


def barchart(decomposition: Decomposition) -> list[tuple[RankLabel, float]]:
    """(label, area fraction) pairs, largest area first."""
    rows = [
        (r.label, float(_fraction_of(r))) for r in decomposition.regions
    ]
    rows.sort(key=lambda t: (-t[1], t[0].canonical()))
    return rows


def dominance_matrices(decomposition: Decomposition) -> DominanceMatrices:
    n = decomposition.input_set.n
    regions = decomposition.regions
    total_labels = len(regions)
    xstar = np.zeros((n, n))
    astar = np.zeros((n, n))
    astar_exact = [[Fraction(0)] * n for _ in range(n)]
    for region in regions:
        pos = region.label.positions
        frac = _fraction_of(region)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                if pos[i] < pos[j]:
                    xstar[i, j] += 1.0
                    astar_exact[i][j] += frac
                elif pos[i] == pos[j]:
                    xstar[i, j] += 0.5
                    astar_exact[i][j] += frac / 2
    if total_labels:
        xstar /= total_labels
    for i in range(n):
        for j in range(n):
            astar[i, j] = float(astar_exact[i][j])
    return DominanceMatrices(xstar=xstar, astar=astar)


def expected_ranking(decomposition: Decomposition) -> np.ndarray:
    """Componentwise expected ranked positions under a uniform weight."""
    n = decomposition.input_set.n
    acc = [Fraction(0)] * n
    for region in decomposition.regions:
        frac = _fraction_of(region)
        for i, p in enumerate(region.label.positions):
            acc[i] += frac * p
    return np.array([float(v) for v in acc])


def pairwise_dominance(input_set: InputSet, a: int, b: int) -> float:
    """Fraction of the weight set where item ``a`` outranks item ``b``,
    straight from the pair's separating line (no decomposition needed)."""
    cls = classify_pair(input_set, a, b)
    if cls.kind == "degenerate":
        return 0.5
    if cls.kind == "unanimous":
        return 1.0 if any(x < 0 for x in cls.delta.d) else 0.0
    coeffs = line_of(cls.delta)
    # a outranks b where A*x + B*y + C <= 0
    triangle = list(SIMPLEX_CORNERS)
    clipped = clip_convex(triangle, [coeffs])
    return float(polygon_area(clipped) / Fraction(1, 2))


def adjacency_graph(
    decomposition: Decomposition,
) -> list[tuple[int, int, str, int]]:
    """Region adjacency annotated with the labels' swap distance."""
    out = []
    for i, j, kind in decomposition.adjacency:
        dist = kendall_tau(
            decomposition.regions[i].label, decomposition.regions[j].label
        )
        out.append((i, j, kind, dist))
    return out


def _resolve_item(input_set: InputSet, item) -> Item:
    if isinstance(item, Item):
        if item.id >= input_set.n or input_set.items[item.id] != item:
            raise InputError(f"item {item!r} is not in this universe")
        return item
    if isinstance(item, int):
        if not 0 <= item < input_set.n:
            raise InputError(f"item id {item} out of range")
        return input_set.items[item]
    if isinstance(item, str):
        return input_set.item_by_name(item)
    raise InputError(f"cannot resolve item from {item!r}")


def item_heatmap(
    decomposition: Decomposition, item
) -> list[tuple[IndifferenceRegion, int]]:
    """The item's ranked position inside every region's label
    (render smaller positions lighter)."""
    it = _resolve_item(decomposition.input_set, item)
    return [
        (region, region.label.positions[it.id])
        for region in decomposition.regions
    ]


# ---------------------------------------------------------------------------
# sensitivity / robustness
# ---------------------------------------------------------------------------

def _edge_normals(vertices: Sequence[tuple[float, float]]):
    # inward normals of a ccw polygon, one per edge, with offsets n.p
    out = []
    m = len(vertices)
    for k in range(m):
        px, py = vertices[k]
        qx, qy = vertices[(k + 1) % m]
        nx, ny = -(qy - py), qx - px
        norm = (nx * nx + ny * ny) ** 0.5
        out.append((nx, ny, nx * px + ny * py, norm))
    return out


def _boundary_distance(vertices, x: float, y: float) -> float:
    dist = float("inf")
    for nx, ny, off, norm in _edge_normals(vertices):
        dist = min(dist, (nx * x + ny * y - off) / norm)
    return max(dist, 0.0)


@lru_cache(maxsize=256)
def _chebyshev(region: IndifferenceRegion) -> tuple[float, float, float]:
    """(center_x, center_y, inradius) of the region in equilateral coords."""
    normals = _edge_normals(region.vertices)
    a_ub = [[-nx, -ny, norm] for nx, ny, off, norm in normals]
    b_ub = [-off for nx, ny, off, norm in normals]
    res = linprog(
        c=[0.0, 0.0, -1.0],
        A_ub=a_ub,
        b_ub=b_ub,
        bounds=[(None, None), (None, None), (0.0, None)],
        method="highs",
    )
    if not res.success:
        raise RuntimeError(f"inradius solve failed: {res.message}")
    return (res.x[0], res.x[1], res.x[2])


def chebyshev_center(region: IndifferenceRegion) -> tuple[float, float]:
    return _chebyshev(region)[:2]


def chebyshev_radius(region: IndifferenceRegion) -> float:
    return _chebyshev(region)[2]


@dataclass(frozen=True)
class SensitivityField:
    """Per-region robustness: 0 on the region boundary, 1 at the deepest
    interior point (the Chebyshev center)."""

    decomposition: Decomposition

    def value(self, lam: WeightVector) -> float:
        return sensitivity(self.decomposition, lam)

    def region_radius(self, region: IndifferenceRegion) -> float:
        return _chebyshev(region)[2]


def sensitivity(decomposition: Decomposition, lam: WeightVector) -> float:
    """Robustness of the ranking at a weight: boundary distance normalized
    by the containing region's inradius. 0 on any region boundary."""
    if not isinstance(lam, WeightVector):
        lam = WeightVector(tuple(lam))
    consistent = _decompose.label_point(
        decomposition.input_set, lam, decomposition.labels
    )
    if len(consistent) != 1:
        return 0.0
    label = next(iter(consistent))
    region = decomposition.region_of_label(label)
    x, y = to_equilateral(lam)
    dist = _boundary_distance(region.vertices, x, y)
    radius = _chebyshev(region)[2]
    if radius <= 0:
        return 0.0
    return min(dist / radius, 1.0)
