"""Decomposition of the weight set into indifference regions.

Two routes: a lattice grid search that labels equally spaced weights
directly, and the exact algorithm that seeds candidate labels with a coarse
grid, builds every separating chord, labels all chord/boundary intersection
points, and takes convex hulls per label. The exact route runs entirely in
rational arithmetic, so tiling and overlap checks are exact, and refines the
seeding grid (then probes chord midpoints) when coverage comes up short.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import geometry
from .errors import CoverageGapError, IncompleteDecompositionError, InputError
from .geometry import (
    Bary,
    DedupLine,
    Point,
    SIMPLEX_CORNERS,
    bary_of_proj,
    build_hyperplanes,
    convex_hull,
    dedup_hyperplanes,
    intersect_lines,
    polygon_area,
    polygon_centroid,
    proj_of_bary,
)
from .model import (
    Decomposition,
    IndifferenceRegion,
    InputSet,
    RankLabel,
    WeightVector,
    rank_of,
)

log = logging.getLogger(__name__)

UtilityFn = Callable[[InputSet, WeightVector], Sequence]

#: Guard for the vectorized integer scoring path.
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class GridColormap:
    """Labels of every lattice weight {(i/K, j/K, (K-i-j)/K) : i+j <= K}."""

    resolution: int
    cells: tuple
    label_counts: dict

    def __post_init__(self):
        expect = (self.resolution + 1) * (self.resolution + 2) // 2
        if len(self.cells) != expect:
            raise InputError(
                f"grid with K={self.resolution} needs {expect} cells, "
                f"got {len(self.cells)}"
            )

    @property
    def labels(self) -> set[RankLabel]:
        return set(self.label_counts)


@dataclass(frozen=True)
class LabeledPoint:
    """An intersection point with every rank label consistent at it."""

    point: Bary
    labels: frozenset[RankLabel]

    def __post_init__(self):
        if not self.labels:
            raise InputError("a labeled point needs at least one label")


@dataclass(frozen=True)
class DecomposeConfig:
    seed_resolution: int = 100
    max_refinements: int = 3
    exact_seed_fallback: bool = True


def lattice(resolution: int) -> list[tuple[int, int, int]]:
    """Integer lattice numerators (i, j, K-i-j) in canonical order."""
    return [
        (i, j, resolution - i - j)
        for i in range(resolution + 1)
        for j in range(resolution - i + 1)
    ]


def _int_matrix(input_set: InputSet) -> Optional[list[list[int]]]:
    # Clear denominators so lattice scores are plain integers; bail out when
    # magnitudes would endanger the int64 fast path.
    rows = input_set.exact_matrix()
    den = 1
    for row in rows:
        for v in row:
            den = math.lcm(den, v.denominator)
            if den > 10**12:
                return None
    return [[int(v * den) for v in row] for row in rows]


def _positions_from_scores(scores: np.ndarray) -> np.ndarray:
    # competition positions per row: 1 + count of strictly smaller entries
    return 1 + (scores[:, None, :] < scores[:, :, None]).sum(axis=2)


def grid_position_arrays(
    input_set: InputSet, resolution: int
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized lattice labeling: (lattice numerators, position rows).

    Exact for inputs whose values clear to modest integers (rankings always
    do); falls back to rational arithmetic per point otherwise.
    """
    if input_set.j != 3:
        raise InputError("grid labeling needs exactly 3 inputs")
    pts = np.array(lattice(resolution), dtype=np.int64)
    ints = _int_matrix(input_set)
    if ints is not None:
        mat = np.array(ints, dtype=np.int64)
        if 3 * resolution * int(np.abs(mat).max() or 1) < _INT64_SAFE:
            scores = pts @ mat
            return pts, _positions_from_scores(scores)
    rows = input_set.exact_matrix()
    out = np.empty((len(pts), input_set.n), dtype=np.int64)
    for r, (i, j, k) in enumerate(pts):
        vals = [
            i * rows[0][c] + j * rows[1][c] + k * rows[2][c]
            for c in range(input_set.n)
        ]
        out[r] = rank_of(vals).positions
    return pts, out


def _interned(cache: dict, positions: tuple[int, ...]) -> RankLabel:
    lbl = cache.get(positions)
    if lbl is None:
        lbl = RankLabel(positions)
        cache[positions] = lbl
    return lbl


def grid_decompose(
    input_set: InputSet,
    resolution: int,
    utility: UtilityFn | None = None,
) -> GridColormap:
    """Heuristic colormap: label every lattice weight directly."""
    if resolution < 1:
        raise InputError("grid resolution must be >= 1")
    cache: dict[tuple[int, ...], RankLabel] = {}
    cells = []
    counts: Counter[RankLabel] = Counter()
    if utility is None:
        pts, positions = grid_position_arrays(input_set, resolution)
        for (i, j, k), row in zip(pts, positions):
            w = WeightVector(
                (
                    Fraction(int(i), resolution),
                    Fraction(int(j), resolution),
                    Fraction(int(k), resolution),
                )
            )
            lbl = _interned(cache, tuple(int(p) for p in row))
            cells.append((w, lbl))
            counts[lbl] += 1
    else:
        for i, j, k in lattice(resolution):
            w = WeightVector(
                (
                    Fraction(i, resolution),
                    Fraction(j, resolution),
                    Fraction(k, resolution),
                )
            )
            lbl_raw = rank_of(utility(input_set, w))
            lbl = _interned(cache, lbl_raw.positions)
            cells.append((w, lbl))
            counts[lbl] += 1
    return GridColormap(resolution, tuple(cells), dict(counts))


def collect_labels(input_set: InputSet, resolution: int) -> set[RankLabel]:
    """Distinct rank labels seen on the lattice (seeds the exact algorithm)."""
    _, positions = grid_position_arrays(input_set, resolution)
    cache: dict[tuple[int, ...], RankLabel] = {}
    return {
        _interned(cache, tuple(int(p) for p in row))
        for row in np.unique(positions, axis=0)
    }


def intersection_points(
    hyperplanes: Sequence,
    corners: Sequence[Point] = SIMPLEX_CORNERS,
) -> list[Bary]:
    """All chord/chord crossings inside the weight set, all chord endpoints,
    and the three extreme points, deduplicated exactly."""
    pts: set[Point] = {(c[0], c[1]) for c in corners}
    lines = [h.coeffs for h in hyperplanes]
    for h in hyperplanes:
        for ep in h.endpoints:
            pts.add(proj_of_bary(ep))
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            p = intersect_lines(lines[i], lines[j])
            if p is None:
                continue
            x, y = p
            if 0 <= x and 0 <= y and x + y <= 1:
                pts.add(p)
    return [bary_of_proj(p) for p in sorted(pts)]


def _exact_scores(input_set: InputSet, point) -> tuple[Fraction, ...]:
    if isinstance(point, WeightVector):
        b = point.exact()
    else:
        b = tuple(point)
    rows = input_set.exact_matrix()
    return tuple(
        b[0] * rows[0][c] + b[1] * rows[1][c] + b[2] * rows[2][c]
        for c in range(input_set.n)
    )


def _consistent(label: RankLabel, scores: Sequence[Fraction]) -> bool:
    # closure consistency: weak inequalities along the label's order, exact
    # equality inside tie groups
    groups = label.tie_groups
    prev_max = None
    for group in groups:
        first = scores[group[0]]
        for idx in group[1:]:
            if scores[idx] != first:
                return False
        if prev_max is not None and first < prev_max:
            return False
        prev_max = first
    return True


def label_point(
    input_set: InputSet,
    point,
    labels: Iterable[RankLabel],
) -> set[RankLabel]:
    """Every candidate label consistent with the aggregate at ``point``
    under weak inequalities (boundary points admit several)."""
    scores = _exact_scores(input_set, point)
    out = {lbl for lbl in labels if _consistent(lbl, scores)}
    if not out:
        raise CoverageGapError(
            "no candidate label is consistent at this weight; the label "
            "seeding missed a region"
        )
    return out


# ---------------------------------------------------------------------------
# exact decomposition
# ---------------------------------------------------------------------------

_LAMBDA_EDGES: tuple[tuple[int, int, int], ...] = (
    (0, 1, 0),   # y = 0
    (1, 0, 0),   # x = 0
    (1, 1, -1),  # x + y = 1
)


def _points_on_line(points: list[Point], coeffs) -> list[Point]:
    a_, b_, c_ = (Fraction(v) for v in coeffs)
    on = [p for p in points if a_ * p[0] + b_ * p[1] + c_ == 0]
    # order along the line direction (-B, A)
    on.sort(key=lambda p: (-b_ * p[0] + a_ * p[1], p))
    return on


def _probe_offset(mid: Point, coeffs, other_lines) -> Fraction:
    # Largest step along the line normal that stays within the current cells:
    # half the distance (in parameter t) to the first other line crossed.
    a_, b_, _ = (Fraction(v) for v in coeffs)
    t_min: Fraction | None = None
    for oa, ob, oc in other_lines:
        oa, ob, oc = Fraction(oa), Fraction(ob), Fraction(oc)
        den = oa * a_ + ob * b_
        if den == 0:
            continue
        t = -(oa * mid[0] + ob * mid[1] + oc) / den
        if t != 0:
            t = abs(t)
            if t_min is None or t < t_min:
                t_min = t
    if t_min is None:
        t_min = Fraction(1)
    return t_min / 2


def _segment_probe_labels(
    input_set: InputSet,
    lines: list[DedupLine],
    points: list[Point],
) -> set[RankLabel]:
    # Sample just off both sides of every chord sub-segment midpoint; every
    # full-dimensional region touches some chord, so this finds all labels.
    found: set[RankLabel] = set()
    all_coeffs = [tuple(ln.coeffs) for ln in lines] + list(_LAMBDA_EDGES)
    for ln in lines:
        on = _points_on_line(points, ln.coeffs)
        a_, b_, _ = (Fraction(v) for v in ln.coeffs)
        others = [c for c in all_coeffs if c != tuple(ln.coeffs)]
        for p, q in zip(on, on[1:]):
            mid = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
            t = _probe_offset(mid, ln.coeffs, others)
            for sign in (1, -1):
                x = mid[0] + sign * t * a_
                y = mid[1] + sign * t * b_
                if x < 0 or y < 0 or x + y > 1:
                    continue
                found.add(rank_of(_exact_scores(input_set, (x, y, 1 - x - y))))
    return found


def _build_regions(
    input_set: InputSet,
    labels: list[RankLabel],
    proj_points: list[Point],
    scores_at: list[tuple[Fraction, ...]],
):
    """Assign points to labels, hull them, and measure coverage."""
    per_label_points: dict[RankLabel, list[int]] = {lbl: [] for lbl in labels}
    point_labels: list[list[RankLabel]] = [[] for _ in proj_points]
    for idx, scores in enumerate(scores_at):
        for lbl in labels:
            if _consistent(lbl, scores):
                per_label_points[lbl].append(idx)
                point_labels[idx].append(lbl)
    hulls: dict[RankLabel, list[Point]] = {}
    areas: dict[RankLabel, Fraction] = {}
    for lbl in labels:
        pts = [proj_points[i] for i in per_label_points[lbl]]
        hull = convex_hull(pts) if pts else []
        hulls[lbl] = hull
        areas[lbl] = polygon_area(hull) if len(hull) >= 3 else Fraction(0)
    total = sum(areas.values(), Fraction(0))
    has_gap_point = any(not lbls for lbls in point_labels)
    covered = total == Fraction(1, 2) and not has_gap_point
    return per_label_points, point_labels, hulls, areas, covered


def _region_sort_key(label: RankLabel, areas) -> tuple:
    return (-areas[label], label.canonical())


def exact_decompose(
    input_set: InputSet,
    config: DecomposeConfig | None = None,
) -> Decomposition:
    """Exact convex indifference regions of the weight set.

    Seeds candidate labels from a coarse grid, constructs every separating
    chord, labels all intersection points, and hulls each label's points.
    Coverage is verified exactly; gaps double the seeding grid up to the
    configured limit, then (by default) fall back to exact probing of chord
    sub-segment midpoints before giving up.
    """
    cfg = config or DecomposeConfig()
    if input_set.j != 3:
        raise InputError(
            "exact decomposition needs exactly 3 inputs; reduce larger "
            "problems to a triangle first"
        )

    hyperplanes = build_hyperplanes(input_set)
    lines = dedup_hyperplanes(hyperplanes)
    n = input_set.n
    log.info(
        "separating lines: %d distinct from %d disagreeing pairs (bound %d)",
        len(lines), len(hyperplanes), n * (n - 1) // 2,
    )

    bary_points = intersection_points(lines)
    proj_points = [proj_of_bary(b) for b in bary_points]
    scores_at = [_exact_scores(input_set, b) for b in bary_points]

    resolution = cfg.seed_resolution
    label_set = collect_labels(input_set, resolution)
    attempt = 0
    while True:
        labels = sorted(label_set, key=lambda l: l.canonical())
        built = _build_regions(input_set, labels, proj_points, scores_at)
        per_label_points, point_labels, hulls, areas, covered = built
        if covered:
            break
        if attempt < cfg.max_refinements:
            attempt += 1
            resolution *= 2
            label_set |= collect_labels(input_set, resolution)
            continue
        if cfg.exact_seed_fallback:
            probed = _segment_probe_labels(input_set, lines, proj_points)
            if not probed <= label_set:
                label_set |= probed
                labels = sorted(label_set, key=lambda l: l.canonical())
                built = _build_regions(
                    input_set, labels, proj_points, scores_at
                )
                per_label_points, point_labels, hulls, areas, covered = built
        break

    region_labels = [lbl for lbl in labels if areas[lbl] > 0]
    region_labels.sort(key=lambda l: _region_sort_key(l, areas))

    regions = tuple(
        _make_region(lbl, hulls[lbl], areas[lbl]) for lbl in region_labels
    )
    adjacency = _adjacency(region_labels, point_labels)
    boundary = _boundary_labels(
        input_set, lines, proj_points, set(region_labels), bary_points,
        point_labels,
    )
    decomposition = Decomposition(
        input_set=input_set,
        regions=regions,
        boundary_labels=boundary,
        method="exact",
        grid_resolution=resolution,
        adjacency=adjacency,
    )
    if not covered:
        total = sum(areas.values(), Fraction(0))
        raise IncompleteDecompositionError(
            f"covered {float(2 * total):.6f} of the weight set after "
            f"{attempt} refinement(s); labels are missing",
            partial=decomposition,
        )
    return decomposition


def _make_region(label: RankLabel, hull: list[Point], area: Fraction):
    centroid = polygon_centroid(hull)
    return IndifferenceRegion(
        label=label,
        vertices=tuple(geometry.equilateral_of_proj(p) for p in hull),
        area=float(area) * geometry.SQRT3 / 2.0,
        area_fraction=float(2 * area),
        centroid=geometry.equilateral_of_proj(centroid),
        color=label.color_index(),
        vertices_barycentric=tuple(bary_of_proj(p) for p in hull),
        centroid_barycentric=bary_of_proj(centroid),
        area_fraction_exact=2 * area,
    )


def _adjacency(region_labels: list[RankLabel], point_labels) -> tuple:
    index = {lbl: i for i, lbl in enumerate(region_labels)}
    shared: Counter[tuple[int, int]] = Counter()
    for lbls in point_labels:
        present = sorted(index[l] for l in lbls if l in index)
        for a in range(len(present)):
            for b in range(a + 1, len(present)):
                shared[(present[a], present[b])] += 1
    return tuple(
        (i, j, "edge" if count >= 2 else "point")
        for (i, j), count in sorted(shared.items())
    )


def _boundary_labels(
    input_set: InputSet,
    lines: list[DedupLine],
    proj_points: list[Point],
    region_labels: set[RankLabel],
    bary_points: list[Bary],
    point_labels,
) -> tuple:
    entries: list[tuple[RankLabel, tuple[Bary, Bary]]] = []
    segment_labels: set[RankLabel] = set()

    def scan(coeffs, skip_region_labels: bool):
        on = _points_on_line(proj_points, coeffs)
        run_label = None
        run_start = None
        prev = None
        for p, q in zip(on, on[1:]):
            mid = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
            lbl = rank_of(_exact_scores(input_set, bary_of_proj(mid)))
            if skip_region_labels and lbl in region_labels:
                lbl = None
            if lbl == run_label and prev == p:
                prev = q
                continue
            if run_label is not None:
                entries.append(
                    (run_label, (bary_of_proj(run_start), bary_of_proj(prev)))
                )
                segment_labels.add(run_label)
            run_label, run_start, prev = lbl, p, q
        if run_label is not None:
            entries.append(
                (run_label, (bary_of_proj(run_start), bary_of_proj(prev)))
            )
            segment_labels.add(run_label)

    for ln in lines:
        scan(ln.coeffs, skip_region_labels=False)
    for edge in _LAMBDA_EDGES:
        scan(edge, skip_region_labels=True)

    # tie labels confined to single points (multi-chord crossings, corners)
    for idx, b in enumerate(bary_points):
        lbl = rank_of(_exact_scores(input_set, b))
        if lbl not in region_labels and lbl not in segment_labels:
            entries.append((lbl, (b, b)))
            segment_labels.add(lbl)

    return tuple(entries)
