"""Problem and decomposition file formats (JSON), plus the pipeline that
turns a parsed problem into a serialized decomposition.

Rational quantities are serialized as exact "p/q" strings next to float
approximations, so files round-trip bit-exactly through parse/serialize.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import analytics as _analytics
from . import decompose as _decompose
from . import extensions as _extensions
from . import preprocess as _preprocess
from .errors import InputError
from .geometry import equilateral_of_proj
from .model import (
    DEFAULT_PALETTE,
    Decomposition,
    IndifferenceRegion,
    InputSet,
    RankLabel,
    ScoreVector,
    make_items,
)

FILE_VERSION = 1


def _frac_str(f: Fraction) -> str:
    return str(f)


def _frac_parse(s: str, where: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: bad rational {s!r} ({exc})")


def _require(cond: bool, where: str, msg: str):
    if not cond:
        raise InputError(f"{where}: {msg}")


# ---------------------------------------------------------------------------
# problem files
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProblemOptions:
    normalize: bool = True
    partition: _extensions.PartitionConfig | None = None
    nonlinear_enabled: bool = False
    nonlinear_a: float = 5.0
    nonlinear_b: float = 10.0


@dataclass(frozen=True)
class ProblemFile:
    """Parsed problem: item names, named score vectors, and options."""

    item_names: tuple[str, ...]
    input_names: tuple[str, ...]
    input_kinds: tuple[str, ...]
    input_values: tuple[tuple, ...]
    options: ProblemOptions

    def to_input_set(self) -> InputSet:
        inputs = [
            ScoreVector(vals, kind=kind)
            for vals, kind in zip(self.input_values, self.input_kinds)
        ]
        return InputSet(make_items(self.item_names), inputs, self.input_names)

    def canonical_dict(self) -> dict:
        out: dict[str, Any] = {
            "version": FILE_VERSION,
            "items": list(self.item_names),
            "inputs": [
                {"name": name, "kind": kind, "values": list(vals)}
                for name, kind, vals in zip(
                    self.input_names, self.input_kinds, self.input_values
                )
            ],
            "options": {"normalize": self.options.normalize},
        }
        if self.options.partition is not None:
            p = self.options.partition
            out["options"]["partition"] = {
                "chosen": list(p.chosen),
                "fixed_weights": [float(w) for w in p.fixed_weights],
                "p1": float(p.p1),
                "p2": float(p.p2),
            }
        if self.options.nonlinear_enabled:
            out["options"]["nonlinear"] = {
                "enabled": True,
                "kind": "sigmoid",
                "a": self.options.nonlinear_a,
                "b": self.options.nonlinear_b,
            }
        return out


def parse_problem(text: str) -> ProblemFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"problem file is not valid JSON: line {exc.lineno} "
            f"column {exc.colno}: {exc.msg}"
        )
    _require(isinstance(data, dict), "problem", "top level must be an object")
    _require(data.get("version") == FILE_VERSION, "version",
             f"must be {FILE_VERSION}")

    items = data.get("items")
    _require(isinstance(items, list) and items, "items",
             "must be a nonempty list of names")
    for k, name in enumerate(items):
        _require(isinstance(name, str) and name, f"items[{k}]",
                 "must be a nonempty string")
    _require(len(set(items)) == len(items), "items", "names must be unique")

    inputs = data.get("inputs")
    _require(isinstance(inputs, list) and len(inputs) >= 3, "inputs",
             "must be a list of at least 3 score vectors")
    names, kinds, values = [], [], []
    for k, entry in enumerate(inputs):
        where = f"inputs[{k}]"
        _require(isinstance(entry, dict), where, "must be an object")
        name = entry.get("name", f"input {k + 1}")
        _require(isinstance(name, str) and name, f"{where}.name",
                 "must be a nonempty string")
        kind = entry.get("kind")
        _require(kind in ("ranking", "rating"), f"{where}.kind",
                 "must be 'ranking' or 'rating'")
        vals = entry.get("values")
        _require(isinstance(vals, list), f"{where}.values", "must be a list")
        _require(len(vals) == len(items), f"{where}.values",
                 f"length {len(vals) if isinstance(vals, list) else '?'} "
                 f"!= {len(items)} items")
        for i, v in enumerate(vals):
            _require(isinstance(v, (int, float)) and not isinstance(v, bool),
                     f"{where}.values[{i}]", "must be a number")
        try:
            ScoreVector(vals, kind=kind)
        except InputError as exc:
            raise InputError(f"{where}.values: {exc}")
        names.append(name)
        kinds.append(kind)
        values.append(tuple(vals))

    opts = data.get("options", {})
    _require(isinstance(opts, dict), "options", "must be an object")
    normalize = opts.get("normalize", True)
    _require(isinstance(normalize, bool), "options.normalize",
             "must be a boolean")

    partition = None
    if "partition" in opts and opts["partition"] is not None:
        p = opts["partition"]
        where = "options.partition"
        _require(isinstance(p, dict), where, "must be an object")
        for key in ("chosen", "fixed_weights", "p1", "p2"):
            _require(key in p, f"{where}.{key}", "is required")
        try:
            partition = _extensions.PartitionConfig(
                p["chosen"], p["fixed_weights"], p["p1"], p["p2"]
            )
        except (InputError, TypeError) as exc:
            raise InputError(f"{where}: {exc}")
        _require(len(inputs) >= 4, where, "needs at least 4 inputs")
        _require(
            len(p["fixed_weights"]) == len(inputs) - 3,
            f"{where}.fixed_weights",
            f"needs {len(inputs) - 3} entries for {len(inputs)} inputs",
        )
        for c in partition.chosen:
            _require(0 <= c < len(inputs), f"{where}.chosen",
                     f"index {c} out of range")

    nl_enabled, nl_a, nl_b = False, 5.0, 10.0
    if "nonlinear" in opts and opts["nonlinear"] is not None:
        nl = opts["nonlinear"]
        where = "options.nonlinear"
        _require(isinstance(nl, dict), where, "must be an object")
        nl_enabled = bool(nl.get("enabled", False))
        if nl_enabled:
            _require(nl.get("kind", "sigmoid") == "sigmoid", f"{where}.kind",
                     "only 'sigmoid' is supported")
            nl_a = float(nl.get("a", 5.0))
            nl_b = float(nl.get("b", 10.0))
            _require(nl_b > 0, f"{where}.b", "must be positive")

    return ProblemFile(
        item_names=tuple(items),
        input_names=tuple(names),
        input_kinds=tuple(kinds),
        input_values=tuple(values),
        options=ProblemOptions(
            normalize=normalize,
            partition=partition,
            nonlinear_enabled=nl_enabled,
            nonlinear_a=nl_a,
            nonlinear_b=nl_b,
        ),
    )


def load_problem(path: str | Path) -> ProblemFile:
    return parse_problem(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# decomposition files
# ---------------------------------------------------------------------------

def _label_dict(label: RankLabel) -> dict:
    return {
        "positions": list(label.positions),
        "tie_groups": [list(g) for g in label.tie_groups],
    }


def _label_parse(data: dict, where: str) -> RankLabel:
    _require(isinstance(data, dict) and "positions" in data, where,
             "label must be an object with positions")
    try:
        return RankLabel(data["positions"])
    except InputError as exc:
        raise InputError(f"{where}: {exc}")


def _bary_strs(b) -> list[str]:
    return [_frac_str(Fraction(v)) for v in b]


def _region_dict(region: IndifferenceRegion, palette) -> dict:
    out = {
        "label": _label_dict(region.label),
        "color": {
            "index": region.color,
            "hex": palette[region.color % len(palette)],
        },
        "area": region.area,
        "area_fraction": region.area_fraction,
        "area_fraction_exact": _frac_str(region.area_fraction_exact)
        if region.area_fraction_exact is not None else None,
        "vertices_equilateral": [list(v) for v in region.vertices],
        "vertices_barycentric": [
            _bary_strs(b) for b in region.vertices_barycentric
        ],
        "centroid_equilateral": list(region.centroid),
        "centroid_barycentric": _bary_strs(region.centroid_barycentric)
        if region.centroid_barycentric is not None else None,
    }
    return out


def _region_parse(data: dict, where: str) -> IndifferenceRegion:
    label = _label_parse(data.get("label"), f"{where}.label")
    verts_b = tuple(
        tuple(_frac_parse(s, f"{where}.vertices_barycentric") for s in b)
        for b in data.get("vertices_barycentric", [])
    )
    centroid_b = data.get("centroid_barycentric")
    exact = data.get("area_fraction_exact")
    return IndifferenceRegion(
        label=label,
        vertices=tuple(tuple(v) for v in data.get("vertices_equilateral", [])),
        area=float(data["area"]),
        area_fraction=float(data["area_fraction"]),
        centroid=tuple(data["centroid_equilateral"]),
        color=int(data["color"]["index"]),
        vertices_barycentric=verts_b,
        centroid_barycentric=tuple(
            _frac_parse(s, f"{where}.centroid_barycentric") for s in centroid_b
        ) if centroid_b is not None else None,
        area_fraction_exact=_frac_parse(exact, f"{where}.area_fraction_exact")
        if exact is not None else None,
    )


def _input_set_dict(input_set: InputSet) -> dict:
    return {
        "items": [it.name for it in input_set.items],
        "inputs": [
            {
                "name": name,
                "kind": sv.kind,
                "values_exact": [_frac_str(v) for v in sv.exact()],
            }
            for name, sv in zip(input_set.input_names, input_set.inputs)
        ],
    }


def _input_set_parse(data: dict, where: str) -> InputSet:
    items = make_items(data["items"])
    inputs = []
    names = []
    for k, entry in enumerate(data["inputs"]):
        vals = tuple(
            _frac_parse(s, f"{where}.inputs[{k}]") for s in entry["values_exact"]
        )
        inputs.append(ScoreVector(vals, kind=entry["kind"]))
        names.append(entry["name"])
    return InputSet(items, inputs, names)


@dataclass(frozen=True)
class DecompositionFile:
    """A decomposition plus its analytics in serializable form.

    Equality and ``to_json`` are defined on the canonical dict, so
    parse(serialize(x)) == x holds bit-exactly.
    """

    raw: dict

    def to_json(self) -> str:
        return json.dumps(self.raw, sort_keys=True, separators=(",", ":")) + "\n"

    @property
    def method(self) -> str:
        return self.raw["method"]

    @property
    def problem(self) -> dict:
        return self.raw["problem"]

    @property
    def grid_resolution(self):
        return self.raw.get("grid_resolution")

    def decomposition(self) -> Decomposition:
        input_set = _input_set_parse(self.raw["input_set"], "input_set")
        regions = tuple(
            _region_parse(r, f"regions[{k}]")
            for k, r in enumerate(self.raw["regions"])
        )
        boundary = tuple(
            (
                _label_parse(b["label"], f"boundary_labels[{k}]"),
                (
                    tuple(_frac_parse(s, "boundary segment")
                          for s in b["segment_barycentric"][0]),
                    tuple(_frac_parse(s, "boundary segment")
                          for s in b["segment_barycentric"][1]),
                ),
            )
            for k, b in enumerate(self.raw.get("boundary_labels", []))
        )
        adjacency = tuple(
            (int(a[0]), int(a[1]), str(a[2]))
            for a in self.raw.get("adjacency", [])
        )
        return Decomposition(
            input_set=input_set,
            regions=regions,
            boundary_labels=boundary,
            method=self.raw["method"],
            grid_resolution=self.raw.get("grid_resolution"),
            adjacency=adjacency,
        )


def serialize_decomposition(
    decomposition: Decomposition,
    problem: ProblemFile,
    palette=DEFAULT_PALETTE,
    grid: _decompose.GridColormap | None = None,
    nonlinear: bool = False,
) -> DecompositionFile:
    """Build the canonical file dict for a decomposition (exact or grid)."""
    matrices = _analytics.dominance_matrices(decomposition)
    chart = _analytics.barchart(decomposition)
    label_index = {
        r.label: k for k, r in enumerate(decomposition.regions)
    }
    graph = _analytics.adjacency_graph(decomposition)
    raw: dict[str, Any] = {
        "version": FILE_VERSION,
        "problem": problem.canonical_dict(),
        "method": decomposition.method,
        "grid_resolution": decomposition.grid_resolution,
        "nonlinear": nonlinear,
        "input_set": _input_set_dict(decomposition.input_set),
        "regions": [
            _region_dict(r, palette) for r in decomposition.regions
        ],
        "boundary_labels": [
            {
                "label": _label_dict(lbl),
                "segment_barycentric": [_bary_strs(seg[0]), _bary_strs(seg[1])],
            }
            for lbl, seg in decomposition.boundary_labels
        ],
        "adjacency": [
            [i, j, kind, dist] for i, j, kind, dist in graph
        ],
        "analytics": {
            "barchart": [
                {"region": label_index[lbl], "fraction": frac}
                for lbl, frac in chart
            ],
            "xstar": [[float(v) for v in row] for row in matrices.xstar],
            "astar": [[float(v) for v in row] for row in matrices.astar],
            "expected_ranking": [
                float(v) for v in _analytics.expected_ranking(decomposition)
            ],
            "rankability": _analytics.rankability(decomposition),
        },
    }
    if grid is not None:
        raw["grid_cells"] = [
            label_index[lbl] for _, lbl in grid.cells
        ]
    return DecompositionFile(raw=raw)


def parse_decomposition(text: str) -> DecompositionFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"decomposition file is not valid JSON: line {exc.lineno} "
            f"column {exc.colno}: {exc.msg}"
        )
    _require(isinstance(data, dict), "decomposition", "top level must be an object")
    _require(data.get("version") == FILE_VERSION, "version",
             f"must be {FILE_VERSION}")
    _require(data.get("method") in ("exact", "grid"), "method",
             "must be 'exact' or 'grid'")
    file = DecompositionFile(raw=data)
    file.decomposition()  # validates the geometry blocks eagerly
    return file


def load_decomposition(path: str | Path) -> DecompositionFile:
    return parse_decomposition(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# pipeline: problem -> decomposition file
# ---------------------------------------------------------------------------

def effective_input_set(problem: ProblemFile) -> InputSet:
    """Raw inputs after normalization and (for j > 3) partition reduction."""
    input_set = problem.to_input_set()
    if problem.options.normalize:
        input_set = _preprocess.normalized_input_set(input_set)
    if input_set.j > 3:
        if problem.options.partition is None:
            raise InputError(
                f"{input_set.j} inputs need options.partition to reduce "
                "onto the weight triangle"
            )
        input_set = _extensions.reduce_to_triangle(
            input_set, problem.options.partition
        )
    return input_set


def decompose_problem(
    problem: ProblemFile,
    method: str = "exact",
    grid_resolution: int | None = None,
    max_refine: int = 3,
    palette=DEFAULT_PALETTE,
    seed_probe: bool = True,
) -> DecompositionFile:
    """Run the full pipeline and return the serializable result."""
    if method not in ("exact", "grid"):
        raise InputError(f"method must be 'exact' or 'grid', got {method!r}")
    input_set = effective_input_set(problem)
    nonlinear = problem.options.nonlinear_enabled
    if nonlinear and method == "exact":
        raise InputError(
            "nonlinear utilities bend region boundaries; use --method grid"
        )
    if method == "exact":
        decomposition = _decompose.exact_decompose(
            input_set,
            _decompose.DecomposeConfig(
                seed_resolution=grid_resolution or 100,
                max_refinements=max_refine,
                exact_seed_fallback=seed_probe,
            ),
        )
        return serialize_decomposition(decomposition, problem, palette)

    resolution = grid_resolution or 100
    utility = None
    if nonlinear:
        utility = _extensions.nonlinear_utility(
            lambda x: _extensions.sigmoid_f(
                x, problem.options.nonlinear_a, problem.options.nonlinear_b
            )
        )
    grid = _decompose.grid_decompose(input_set, resolution, utility)
    decomposition = _grid_summary(input_set, grid)
    return serialize_decomposition(
        decomposition, problem, palette, grid=grid, nonlinear=nonlinear
    )


def _grid_summary(
    input_set: InputSet, grid: _decompose.GridColormap
) -> Decomposition:
    """Vertexless region summaries (label, fraction, mean cell) for a grid run."""
    total = len(grid.cells)
    sums: dict[RankLabel, list[Fraction]] = {}
    counts = grid.label_counts
    for w, lbl in grid.cells:
        acc = sums.setdefault(lbl, [Fraction(0), Fraction(0)])
        ex = w.exact()
        acc[0] += ex[0]
        acc[1] += ex[1]
    regions = []
    for lbl, count in counts.items():
        frac = Fraction(count, total)
        cx = sums[lbl][0] / count
        cy = sums[lbl][1] / count
        regions.append(
            IndifferenceRegion(
                label=lbl,
                vertices=(),
                area=float(frac) * 3**0.5 / 4.0,
                area_fraction=float(frac),
                centroid=equilateral_of_proj((cx, cy)),
                color=lbl.color_index(),
                vertices_barycentric=(),
                centroid_barycentric=(cx, cy, 1 - cx - cy),
                area_fraction_exact=frac,
            )
        )
    regions.sort(key=lambda r: (-r.area_fraction_exact, r.label.canonical()))
    return Decomposition(
        input_set=input_set,
        regions=tuple(regions),
        boundary_labels=(),
        method="grid",
        grid_resolution=grid.resolution,
        adjacency=(),
    )
