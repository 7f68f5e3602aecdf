"""Command-line interface: decompose, render, analyze, serve.

Exit codes: 0 success, 2 bad input or usage, 3 incomplete decomposition
(partial output still written).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .errors import IncompleteDecompositionError, InputError, SimplexRankError
from .fileio import (
    DecompositionFile,
    decompose_problem,
    load_decomposition,
    load_problem,
    serialize_decomposition,
)
from .model import DEFAULT_PALETTE

PALETTE_ENV = "SIMPLEXRANK_PALETTE"


def active_palette() -> tuple[str, ...]:
    """Default palette, optionally replaced by a file of hex colors
    (one per line) named in SIMPLEXRANK_PALETTE."""
    path = os.environ.get(PALETTE_ENV)
    if not path:
        return DEFAULT_PALETTE
    lines = [
        ln.strip() for ln in Path(path).read_text(encoding="utf-8").splitlines()
    ]
    colors = tuple(ln for ln in lines if ln.startswith("#") and len(ln) in (4, 7))
    if not colors:
        raise InputError(f"palette file {path!r} contains no hex colors")
    return colors


def _cmd_decompose(args) -> int:
    problem = load_problem(args.input)
    palette = active_palette()
    try:
        decfile = decompose_problem(
            problem,
            method=args.method,
            grid_resolution=args.grid_resolution,
            max_refine=args.max_refine,
            palette=palette,
            seed_probe=not args.no_seed_probe,
        )
    except IncompleteDecompositionError as exc:
        partial = serialize_decomposition(exc.partial, problem, palette)
        Path(args.output).write_text(partial.to_json(), encoding="utf-8")
        print(f"warning: incomplete decomposition: {exc}", file=sys.stderr)
        print(f"partial result written to {args.output}", file=sys.stderr)
        return 3
    Path(args.output).write_text(decfile.to_json(), encoding="utf-8")
    return 0


def _cmd_render(args) -> int:
    from . import render as _render

    decfile = load_decomposition(args.decomp)
    if args.kind == "colormap":
        svg = _render.render_colormap(decfile)
    elif args.kind == "barchart":
        svg = _render.render_barchart(decfile)
    elif args.kind == "item-heatmap":
        if not args.item:
            raise InputError("--item is required for item-heatmap")
        svg = _render.render_item_heatmap(decfile, args.item)
    else:
        svg = _render.render_sensitivity(decfile)
    Path(args.output).write_text(svg, encoding="utf-8")
    return 0


def _item_ids(decfile: DecompositionFile, names: list[str]) -> list[int]:
    items = decfile.raw["input_set"]["items"]
    ids = []
    for name in names:
        if name not in items:
            raise InputError(f"unknown item {name!r}")
        ids.append(items.index(name))
    return ids


def _cmd_analyze(args) -> int:
    decfile = load_decomposition(args.decomp)
    items = decfile.raw["input_set"]["items"]
    analytics = decfile.raw["analytics"]
    wrote = False
    if args.pair:
        a, b = _item_ids(decfile, list(args.pair))
        print(f"{analytics['astar'][a][b]:.3f}")
        wrote = True
    if args.matrices:
        for name in ("xstar", "astar"):
            print(",".join([name] + items))
            for i, row in enumerate(analytics[name]):
                print(",".join([items[i]] + [repr(v) for v in row]))
            print()
        wrote = True
    if args.expected:
        print("item,expected_position")
        for name, v in zip(items, analytics["expected_ranking"]):
            print(f"{name},{v!r}")
        wrote = True
    if not wrote:
        raise InputError("nothing to do: pass --pair, --matrices or --expected")
    return 0


def _cmd_serve(args) -> int:
    from . import server as _server

    problem = load_problem(args.input)
    method = args.method
    if method is None:
        method = "grid" if problem.options.nonlinear_enabled else "exact"
    decfile = decompose_problem(
        problem,
        method=method,
        grid_resolution=args.grid_resolution,
        palette=active_palette(),
    )
    print(f"serving {args.input} on http://127.0.0.1:{args.port}", flush=True)
    _server.serve_forever(decfile, args.port, args.ui_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplexrank",
        description="Decompose the weight set of a 3-way weighted rank "
        "aggregation into exact indifference regions and explore them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose a problem file")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=("exact", "grid"), default="exact")
    p.add_argument("--grid-resolution", type=int, default=None)
    p.add_argument("--max-refine", type=int, default=3)
    p.add_argument(
        "--no-seed-probe", action="store_true",
        help="disable the exact chord-probe fallback when the seeding grid "
        "misses labels (coverage gaps then fail with exit code 3)",
    )
    p.add_argument("--output", required=True)
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("render", help="render a decomposition to SVG")
    p.add_argument("--decomp", required=True)
    p.add_argument(
        "--kind", required=True,
        choices=("colormap", "barchart", "item-heatmap", "sensitivity"),
    )
    p.add_argument("--item", default=None)
    p.add_argument("--output", required=True)
    p.set_defaults(fn=_cmd_render)

    p = sub.add_parser("analyze", help="print dominance / expected ranking")
    p.add_argument("--decomp", required=True)
    p.add_argument("--pair", nargs=2, metavar=("ITEM_A", "ITEM_B"))
    p.add_argument("--matrices", action="store_true")
    p.add_argument("--expected", action="store_true")
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("serve", help="serve the explorer API and UI")
    p.add_argument("--input", required=True)
    p.add_argument("--port", type=int, default=8645)
    p.add_argument("--ui-dir", default=None)
    p.add_argument("--method", choices=("exact", "grid"), default=None)
    p.add_argument("--grid-resolution", type=int, default=None)
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SimplexRankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
