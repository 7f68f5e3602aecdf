"""Domain model for 3-way weighted rank aggregation.

Everything here is an immutable value type: items, score vectors, convex
weights, rank labels, indifference regions, and the decomposition that ties
them together. Numeric state is kept exact (``fractions.Fraction``) wherever
it feeds geometry; floats are accepted at the API surface and converted
exactly (every float is a rational).
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import InputError

Numeric = Union[int, float, Fraction]

#: Weight-sum tolerance accepted at the API surface.
WEIGHT_SUM_TOL = 1e-9

#: Qualitative palette used to color indifference regions (cycled by index).
DEFAULT_PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#1f77b4", "#aec7e8",
    "#ffbb78", "#2ca02c", "#98df8a", "#d62728", "#ff9896", "#9467bd",
    "#c5b0d5", "#8c564b", "#c49c94", "#e377c2", "#f7b6d2", "#7f7f7f",
)


def as_fraction(x: Numeric) -> Fraction:
    """Exact rational conversion. Floats convert via their binary value."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if x != x or x in (float("inf"), float("-inf")):
            raise InputError(f"non-finite value {x!r}")
        return Fraction(x)
    raise InputError(f"unsupported numeric type {type(x).__name__}")


@dataclass(frozen=True)
class Item:
    """One rankable item: a dense 0-based id plus a display name."""

    id: int
    name: str

    def __post_init__(self):
        if self.id < 0:
            raise InputError(f"item id must be nonnegative, got {self.id}")


@dataclass(frozen=True)
class ScoreVector:
    """Per-item scores for one criterion. Lower value = better.

    ``kind`` distinguishes ranked positions ("ranking") from raw measurements
    ("rating"); rankings must be integer-valued in 1..n, ties allowed.
    """

    values: tuple
    kind: str = "rating"

    def __init__(self, values: Sequence[Numeric], kind: str = "rating"):
        if kind not in ("ranking", "rating"):
            raise InputError(f"kind must be 'ranking' or 'rating', got {kind!r}")
        vals = tuple(values)
        if not vals:
            raise InputError("score vector must be nonempty")
        n = len(vals)
        if kind == "ranking":
            for v in vals:
                fv = as_fraction(v)
                if fv.denominator != 1:
                    raise InputError(f"ranking values must be integers, got {v!r}")
                if not 1 <= fv <= n:
                    raise InputError(
                        f"ranking value {v!r} outside 1..{n}"
                    )
        else:
            for v in vals:
                as_fraction(v)  # rejects non-finite
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "kind", kind)

    def __len__(self) -> int:
        return len(self.values)

    def exact(self) -> tuple[Fraction, ...]:
        return tuple(as_fraction(v) for v in self.values)


@dataclass(frozen=True)
class InputSet:
    """The item universe plus the j >= 3 score vectors to aggregate."""

    items: tuple[Item, ...]
    inputs: tuple[ScoreVector, ...]
    input_names: tuple[str, ...]

    def __init__(
        self,
        items: Sequence[Item],
        inputs: Sequence[ScoreVector],
        input_names: Sequence[str] | None = None,
    ):
        items = tuple(items)
        inputs = tuple(inputs)
        if input_names is None:
            input_names = tuple(f"input {k + 1}" for k in range(len(inputs)))
        input_names = tuple(input_names)
        n = len(items)
        if n == 0:
            raise InputError("item universe is empty")
        ids = [it.id for it in items]
        if ids != list(range(n)):
            raise InputError("item ids must be dense 0..n-1 in order")
        if len(inputs) < 3:
            raise InputError(f"need at least 3 inputs, got {len(inputs)}")
        for k, sv in enumerate(inputs):
            if len(sv) != n:
                raise InputError(
                    f"input {k} has length {len(sv)}, expected {n}"
                )
        if len(input_names) != len(inputs):
            raise InputError("input_names length must match inputs")
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "input_names", input_names)

    @property
    def n(self) -> int:
        return len(self.items)

    @property
    def j(self) -> int:
        return len(self.inputs)

    def item_by_name(self, name: str) -> Item:
        for it in self.items:
            if it.name == name:
                return it
        raise InputError(f"unknown item {name!r}")

    def exact_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        """Rows = inputs, columns = items, as exact rationals."""
        return tuple(sv.exact() for sv in self.inputs)


@dataclass(frozen=True)
class WeightVector:
    """A point in the weight set: three nonnegative weights summing to 1."""

    lam: tuple

    def __init__(self, lam: Sequence[Numeric]):
        lam = tuple(lam)
        if len(lam) != 3:
            raise InputError(f"weight vector needs 3 components, got {len(lam)}")
        total = sum(as_fraction(v) for v in lam)
        if abs(float(total) - 1.0) > WEIGHT_SUM_TOL:
            raise InputError(f"weights must sum to 1, got {float(total)!r}")
        for v in lam:
            if as_fraction(v) < 0:
                raise InputError(f"weights must be nonnegative, got {v!r}")
        object.__setattr__(self, "lam", lam)

    def exact(self) -> tuple[Fraction, Fraction, Fraction]:
        """Exact barycentric triple, renormalized to sum to exactly 1."""
        fr = tuple(as_fraction(v) for v in self.lam)
        total = fr[0] + fr[1] + fr[2]
        return (fr[0] / total, fr[1] / total, fr[2] / total)

    def as_floats(self) -> tuple[float, float, float]:
        return (float(self.lam[0]), float(self.lam[1]), float(self.lam[2]))


def _competition_positions(values: Sequence[Fraction]) -> tuple[int, ...]:
    # competition style: position = 1 + number of strictly better items
    order = sorted(range(len(values)), key=lambda i: values[i])
    positions = [0] * len(values)
    for k, idx in enumerate(order):
        if k > 0 and values[idx] == values[order[k - 1]]:
            positions[idx] = positions[order[k - 1]]
        else:
            positions[idx] = k + 1
    return tuple(positions)


@dataclass(frozen=True)
class RankLabel:
    """A ranked-position vector, competition style ("1, 2, 2, 4").

    ``positions[i]`` is the ranked position of item i; tied items share the
    smallest position of their group. ``tie_groups`` is the full partition of
    item ids into equal-position groups (singletons when no ties), ordered by
    position.
    """

    positions: tuple[int, ...]
    tie_groups: tuple[tuple[int, ...], ...] = field(default=())

    def __init__(self, positions: Sequence[int], tie_groups=None):
        positions = tuple(int(p) for p in positions)
        derived = _groups_from_positions(positions)
        if _competition_positions([Fraction(p) for p in positions]) != positions:
            raise InputError(
                f"{positions} is not a competition-style position vector"
            )
        if tie_groups is not None and tuple(map(tuple, tie_groups)) != derived:
            raise InputError("tie_groups inconsistent with positions")
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "tie_groups", derived)

    @property
    def n(self) -> int:
        return len(self.positions)

    @property
    def has_ties(self) -> bool:
        return any(len(g) > 1 for g in self.tie_groups)

    def canonical(self) -> str:
        """Stable display string, e.g. '1 2 2 4 5'."""
        return " ".join(str(p) for p in self.positions)

    def items_by_position(self) -> tuple[tuple[int, ...], ...]:
        """Groups of item ids from best to worst (alias of tie_groups)."""
        return self.tie_groups

    def color_index(self, palette_size: int = len(DEFAULT_PALETTE)) -> int:
        """Deterministic palette index from the canonical string."""
        return zlib.crc32(self.canonical().encode()) % palette_size


def _groups_from_positions(positions: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    by_pos: dict[int, list[int]] = {}
    for i, p in enumerate(positions):
        by_pos.setdefault(p, []).append(i)
    return tuple(tuple(sorted(by_pos[p])) for p in sorted(by_pos))


@dataclass(frozen=True)
class IndifferenceRegion:
    """One convex region of the weight set mapping to a single rank label.

    Vertices are stored both in unit-side equilateral coordinates (floats,
    counterclockwise) and exactly in barycentric form. ``area`` is in
    equilateral units, ``area_fraction`` relative to the whole triangle.
    """

    label: RankLabel
    vertices: tuple[tuple[float, float], ...]
    area: float
    area_fraction: float
    centroid: tuple[float, float]
    color: int
    vertices_barycentric: tuple[tuple[Fraction, Fraction, Fraction], ...] = ()
    centroid_barycentric: tuple[Fraction, Fraction, Fraction] | None = None
    area_fraction_exact: Fraction | None = None


@dataclass(frozen=True)
class Decomposition:
    """The full decomposition of the weight set into indifference regions.

    ``boundary_labels`` holds pure-tie labels living on zero-area loci,
    each with the barycentric segment it occupies. ``adjacency`` holds
    (region index, region index, "edge" | "point") with i < j.
    """

    input_set: InputSet
    regions: tuple[IndifferenceRegion, ...]
    boundary_labels: tuple = ()
    method: str = "exact"
    grid_resolution: int | None = None
    adjacency: tuple = ()

    def __post_init__(self):
        if self.method not in ("exact", "grid"):
            raise InputError(f"method must be 'exact' or 'grid', got {self.method!r}")
        labels = [r.label for r in self.regions]
        if len(set(labels)) != len(labels):
            raise InputError("region labels must be pairwise distinct")

    @property
    def labels(self) -> tuple[RankLabel, ...]:
        return tuple(r.label for r in self.regions)

    def region_of_label(self, label: RankLabel) -> IndifferenceRegion:
        for r in self.regions:
            if r.label == label:
                return r
        raise KeyError(label.canonical())


def aggregate(input_set: InputSet, lam: WeightVector) -> ScoreVector:
    """Weighted average of the three input score vectors at weight ``lam``.

    Exact when inputs and weights are rational (always, since floats are).
    """
    if input_set.j != 3:
        raise InputError(
            f"aggregate needs exactly 3 inputs, got {input_set.j}; "
            "reduce larger problems to a 3-input triangle first"
        )
    w = lam.exact()
    rows = input_set.exact_matrix()
    values = tuple(
        w[0] * rows[0][i] + w[1] * rows[1][i] + w[2] * rows[2][i]
        for i in range(input_set.n)
    )
    return ScoreVector(values, kind="rating")


def rank_of(scores: ScoreVector | Sequence[Numeric]) -> RankLabel:
    """Ranked positions of a score vector, competition style, exact ties."""
    values = scores.exact() if isinstance(scores, ScoreVector) else tuple(
        as_fraction(v) for v in scores
    )
    return RankLabel(_competition_positions(values))


def label_of_weight(input_set: InputSet, lam: WeightVector) -> RankLabel:
    """Rank label induced at a single weight (aggregate then rank)."""
    return rank_of(aggregate(input_set, lam))


def kendall_tau(a: RankLabel | Sequence[int], b: RankLabel | Sequence[int]) -> int:
    """Number of item pairs the two labels order oppositely (swap distance).

    Pairs tied in either label contribute nothing; for tie-free permutations
    this is the classic adjacent-transposition distance.
    """
    pa = a.positions if isinstance(a, RankLabel) else tuple(a)
    pb = b.positions if isinstance(b, RankLabel) else tuple(b)
    if len(pa) != len(pb):
        raise InputError("labels must rank the same number of items")
    n = len(pa)
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if (pa[i] - pa[j]) * (pb[i] - pb[j]) < 0:
                count += 1
    return count


def make_items(names: Iterable[str]) -> tuple[Item, ...]:
    return tuple(Item(i, name) for i, name in enumerate(names))
