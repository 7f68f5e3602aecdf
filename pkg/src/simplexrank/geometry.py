"""Exact 2D geometry for the weight-set triangle.

The weight set lives in projected coordinates (x, y) = (w1, w2) with
w3 = 1 - x - y, i.e. the right triangle with corners (0,0), (1,0), (0,1).
Every separating locus between two items is the chord of a line

    A*x + B*y + C = 0   with   A = d1 - d3, B = d2 - d3, C = d3,

where d_i is the difference of the two items' scores in input i. All
constructions here run in exact rational arithmetic; floats enter only
through the equilateral plotting transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import GeometricDegeneracyError, InputError
from .model import InputSet, WeightVector, as_fraction

Point = tuple[Fraction, Fraction]
Bary = tuple[Fraction, Fraction, Fraction]
Coeffs = tuple[Fraction, Fraction, Fraction]

SQRT3 = math.sqrt(3.0)

#: Projected corners of the weight set (w1, w2): full weight on inputs 1, 2, 3.
SIMPLEX_CORNERS: tuple[Point, Point, Point] = (
    (Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(1)),
    (Fraction(0), Fraction(0)),
)

#: Side tolerance for weights supplied as floats.
SIDE_TOL = 1e-9


def bary_of_proj(p: Point) -> Bary:
    return (p[0], p[1], 1 - p[0] - p[1])

def proj_of_bary(b: Sequence) -> Point:
    return (as_fraction(b[0]), as_fraction(b[1]))


@dataclass(frozen=True)
class Delta:
    """Componentwise score differences of one ordered item pair (a, b)."""

    d: tuple[Fraction, Fraction, Fraction]
    pair: tuple[int, int]

    @property
    def is_degenerate(self) -> bool:
        return all(x == 0 for x in self.d)

    @property
    def is_disagreeing(self) -> bool:
        return any(x > 0 for x in self.d) and any(x < 0 for x in self.d)

    @property
    def tie_count(self) -> int:
        return sum(1 for x in self.d if x == 0)


@dataclass(frozen=True)
class PairClass:
    """Outcome of classifying an item pair: unanimous, disagreeing, degenerate."""

    kind: str
    delta: Delta


@dataclass(frozen=True)
class Hyperplane:
    """The separating chord for one disagreeing item pair.

    ``coeffs`` keeps the pair's own orientation: evaluating
    A*x + B*y + C at a weight gives the aggregate score of item ``pair[0]``
    minus that of ``pair[1]`` (negative = first item ranks better).
    """

    pair: tuple[int, int]
    coeffs: Coeffs
    endpoints: tuple[Bary, Bary]
    disagreeing_input: Optional[int]


def delta_of(input_set: InputSet, a: int, b: int) -> Delta:
    if a == b:
        raise InputError("pair items must be distinct")
    if input_set.j != 3:
        raise InputError("pair geometry is defined for exactly 3 inputs")
    rows = input_set.exact_matrix()
    return Delta(tuple(rows[i][a] - rows[i][b] for i in range(3)), (a, b))


def classify_pair(input_set: InputSet, a: int, b: int) -> PairClass:
    """Sort an item pair into unanimous / disagreeing / degenerate."""
    delta = delta_of(input_set, a, b)
    if delta.is_degenerate:
        kind = "degenerate"
    elif delta.is_disagreeing:
        kind = "disagreeing"
    else:
        kind = "unanimous"
    return PairClass(kind, delta)


def line_of(delta: Delta) -> Coeffs:
    """Line coefficients (A, B, C) of the separating locus for ``delta``."""
    if delta.is_degenerate:
        raise GeometricDegeneracyError(
            f"pair {delta.pair} is identical in every input; no separating line"
        )
    d1, d2, d3 = delta.d
    return (d1 - d3, d2 - d3, d3)


def _edge_candidates(delta: Delta) -> list[Point]:
    # Closed forms for the crossings with the three triangle edge lines:
    # y = 0, x = 0, and x + y = 1 (division by zero means "no crossing").
    d1, d2, d3 = delta.d
    out: list[Point] = []
    if d1 != d3:
        x = Fraction(-d3, d1 - d3)
        if 0 <= x <= 1:
            out.append((x, Fraction(0)))
    if d2 != d3:
        y = Fraction(-d3, d2 - d3)
        if 0 <= y <= 1:
            out.append((Fraction(0), y))
    if d1 != d2:
        t = Fraction(-d2, d1 - d2)
        if 0 <= t <= 1:
            out.append((t, 1 - t))
    return out


def _edge_scan(coeffs: Coeffs) -> list[Point]:
    # Fallback: intersect the line with each triangle edge segment directly.
    a_, b_, c_ = coeffs
    pts: list[Point] = []
    edges = (
        (SIMPLEX_CORNERS[2], SIMPLEX_CORNERS[0]),  # y = 0
        (SIMPLEX_CORNERS[2], SIMPLEX_CORNERS[1]),  # x = 0
        (SIMPLEX_CORNERS[0], SIMPLEX_CORNERS[1]),  # x + y = 1
    )
    for p, q in edges:
        dx, dy = q[0] - p[0], q[1] - p[1]
        den = a_ * dx + b_ * dy
        if den == 0:
            continue
        t = Fraction(-(a_ * p[0] + b_ * p[1] + c_), den)
        if 0 <= t <= 1:
            pts.append((p[0] + t * dx, p[1] + t * dy))
    return pts


def endpoints_of(delta: Delta) -> tuple[Bary, Bary]:
    """The two points where the separating line leaves the weight set."""
    if delta.is_degenerate:
        raise GeometricDegeneracyError(
            f"pair {delta.pair} has no separating line"
        )
    pts = sorted(set(_edge_candidates(delta)))
    if len(pts) != 2:
        pts = sorted(set(_edge_scan(line_of(delta))))
    if len(pts) < 2:
        raise GeometricDegeneracyError(
            f"separating line for pair {delta.pair} does not cross the "
            "weight set in two distinct points"
        )
    return (bary_of_proj(pts[0]), bary_of_proj(pts[-1]))


def hyperplane_for(input_set: InputSet, a: int, b: int) -> Hyperplane:
    cls = classify_pair(input_set, a, b)
    if cls.kind != "disagreeing":
        raise InputError(f"pair ({a}, {b}) is {cls.kind}; no separating chord")
    delta = cls.delta
    signs = [(-1 if x < 0 else 1) for x in delta.d]
    if delta.tie_count == 0:
        neg = [i for i, s in enumerate(signs) if s < 0]
        disagreeing = neg[0] if len(neg) == 1 else (
            [i for i, s in enumerate(signs) if s > 0][0]
        )
    else:
        disagreeing = None
    return Hyperplane(
        pair=(a, b),
        coeffs=line_of(delta),
        endpoints=endpoints_of(delta),
        disagreeing_input=disagreeing,
    )


def build_hyperplanes(input_set: InputSet) -> list[Hyperplane]:
    """Separating chords for every disagreeing item pair (a < b)."""
    out = []
    n = input_set.n
    for a in range(n):
        for b in range(a + 1, n):
            if classify_pair(input_set, a, b).kind == "disagreeing":
                out.append(hyperplane_for(input_set, a, b))
    return out


def normalized_coeffs(coeffs: Coeffs) -> tuple[int, int, int]:
    """Canonical integer form of a line: cleared denominators, gcd 1,
    leading nonzero positive. Two coincident lines share this key."""
    fracs = tuple(as_fraction(c) for c in coeffs)
    den = math.lcm(*(f.denominator for f in fracs))
    ints = [int(f * den) for f in fracs]
    g = math.gcd(*(abs(v) for v in ints))
    if g:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v != 0), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


@dataclass(frozen=True)
class DedupLine:
    """One geometric line with all item pairs whose chords coincide on it."""

    coeffs: tuple[int, int, int]
    pairs: tuple[tuple[int, int], ...]
    endpoints: tuple[Bary, Bary]


def dedup_hyperplanes(hyperplanes: Iterable[Hyperplane]) -> list[DedupLine]:
    by_key: dict[tuple[int, int, int], list[Hyperplane]] = {}
    for hp in hyperplanes:
        by_key.setdefault(normalized_coeffs(hp.coeffs), []).append(hp)
    return [
        DedupLine(key, tuple(h.pair for h in group), group[0].endpoints)
        for key, group in sorted(by_key.items())
    ]


def side_of(line: Sequence, lam, tol: float = SIDE_TOL) -> str:
    """Which side of a separating line a weight falls on.

    "below" is the half where the pair's first item outranks (beats) the
    second, "above" the reverse, "on" the tie locus. Exact weights get exact
    verdicts; float weights use a ``tol`` band around zero.
    """
    a_, b_, c_ = (as_fraction(c) for c in line)
    raw = lam.lam if isinstance(lam, WeightVector) else tuple(lam)
    x, y = as_fraction(raw[0]), as_fraction(raw[1])
    val = a_ * x + b_ * y + c_
    exact = all(isinstance(v, (int, Fraction)) for v in raw[:2]) and all(
        isinstance(c, (int, Fraction)) for c in line
    )
    if val == 0 or (not exact and abs(float(val)) <= tol):
        return "on"
    return "below" if val < 0 else "above"


def to_equilateral(lam) -> tuple[float, float]:
    """Map a weight to the unit-side equilateral triangle (floats)."""
    raw = lam.lam if isinstance(lam, WeightVector) else tuple(lam)
    x = float(raw[0])
    y = float(raw[1])
    return (x - 0.5 * (1.0 - y), y * SQRT3 / 2.0)


def equilateral_of_proj(p: Sequence[float]) -> tuple[float, float]:
    x, y = float(p[0]), float(p[1])
    return (x - 0.5 * (1.0 - y), y * SQRT3 / 2.0)


# ---------------------------------------------------------------------------
# exact polygon utilities (projected coordinates)
# ---------------------------------------------------------------------------

def cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Monotone-chain hull, counterclockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:  # all input points collinear
        return [pts[0], pts[-1]]
    return hull


def polygon_area(points: Sequence[Point]) -> Fraction:
    """Absolute shoelace area (exact)."""
    n = len(points)
    if n < 3:
        return Fraction(0)
    acc = Fraction(0)
    for i in range(n):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % n]
        acc += x1 * y2 - x2 * y1
    return abs(acc) / 2


def polygon_centroid(points: Sequence[Point]) -> Point:
    """Exact area centroid of a simple polygon (vertex mean if degenerate)."""
    n = len(points)
    acc = Fraction(0)
    cx = Fraction(0)
    cy = Fraction(0)
    for i in range(n):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % n]
        w = x1 * y2 - x2 * y1
        acc += w
        cx += (x1 + x2) * w
        cy += (y1 + y2) * w
    if acc == 0:
        sx = sum(p[0] for p in points)
        sy = sum(p[1] for p in points)
        return (sx / n, sy / n)
    return (cx / (3 * acc), cy / (3 * acc))


def intersect_lines(l1: Sequence, l2: Sequence) -> Optional[Point]:
    """Crossing point of two lines A*x + B*y + C = 0, or None if parallel."""
    a1, b1, c1 = (as_fraction(c) for c in l1)
    a2, b2, c2 = (as_fraction(c) for c in l2)
    det = a1 * b2 - a2 * b1
    if det == 0:
        return None
    x = (b1 * c2 - b2 * c1) / det
    y = (a2 * c1 - a1 * c2) / det
    return (x, y)


def clip_convex(subject: Sequence[Point], half_planes: Iterable[Coeffs]) -> list[Point]:
    """Sutherland-Hodgman clip of a convex polygon against A*x+B*y+C <= 0
    half-planes, all exact."""
    poly = list(subject)
    for a_, b_, c_ in half_planes:
        if not poly:
            break
        out: list[Point] = []
        vals = [a_ * p[0] + b_ * p[1] + c_ for p in poly]
        m = len(poly)
        for i in range(m):
            p, q = poly[i], poly[(i + 1) % m]
            vp, vq = vals[i], vals[(i + 1) % m]
            if vp <= 0:
                out.append(p)
            if (vp < 0 < vq) or (vq < 0 < vp):
                t = vp / (vp - vq)
                out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
        poly = out
    # collapse duplicates introduced by clipping through vertices
    seen: list[Point] = []
    for p in poly:
        if not seen or p != seen[-1]:
            seen.append(p)
    if len(seen) > 1 and seen[0] == seen[-1]:
        seen.pop()
    return seen


def intersection_area(poly_a: Sequence[Point], poly_b: Sequence[Point]) -> Fraction:
    """Exact area of the overlap of two convex polygons."""
    if len(poly_a) < 3 or len(poly_b) < 3:
        return Fraction(0)
    halves = []
    m = len(poly_b)
    for i in range(m):
        p, q = poly_b[i], poly_b[(i + 1) % m]
        # inside (ccw polygon) is the left side of p->q
        a_ = -(q[1] - p[1])
        b_ = q[0] - p[0]
        c_ = -(a_ * p[0] + b_ * p[1])
        halves.append((-a_, -b_, -c_))  # flip so inside is <= 0
    clipped = clip_convex(poly_a, halves)
    return polygon_area(clipped)
