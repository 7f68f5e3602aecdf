"""Read-only HTTP host for one decomposed problem.

Endpoints:
  GET /api/decomposition        full decomposition file (JSON)
  GET /api/label?l1=&l2=&l3=    labels + aggregate scores at a weight
  GET /api/heatmap/<item>       per-region position of one item
  GET /api/sensitivity?l1=&l2=&l3=  robustness at a weight
  GET /                         static explorer bundle (if --ui-dir given)

All state is immutable after startup, so concurrent requests are safe and
answers are deterministic for a given input.
"""

from __future__ import annotations

import json
import logging
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, unquote, urlparse

from . import analytics as _analytics
from . import decompose as _decompose
from .errors import CoverageGapError, InputError, SimplexRankError
from .fileio import DecompositionFile
from .model import WeightVector

log = logging.getLogger(__name__)

_PLACEHOLDER = b"""<!doctype html>
<html><head><title>simplexrank</title></head>
<body><h1>simplexrank server</h1>
<p>No UI bundle configured. The JSON API lives under <code>/api/</code>:</p>
<ul>
<li><a href="/api/decomposition">/api/decomposition</a></li>
<li><a href="/api/label?l1=0.34&l2=0.33&l3=0.33">/api/label?l1=&amp;l2=&amp;l3=</a></li>
</ul></body></html>
"""

WEIGHT_QUERY_TOL = 1e-6


class ExplorerState:
    """Immutable bundle the request handler reads from."""

    def __init__(self, decfile: DecompositionFile, ui_dir: Path | None = None):
        self.decfile = decfile
        self.decomposition = decfile.decomposition()
        self.input_set = self.decomposition.input_set
        self.decomposition_bytes = decfile.to_json().encode("utf-8")
        self.ui_dir = Path(ui_dir).resolve() if ui_dir else None

    # ---- endpoint payloads ------------------------------------------------

    def weight_from_query(self, query: dict) -> WeightVector:
        try:
            vals = [float(query[k][0]) for k in ("l1", "l2", "l3")]
        except (KeyError, ValueError, IndexError):
            raise InputError("query needs numeric l1, l2, l3")
        if any(v < -WEIGHT_QUERY_TOL for v in vals):
            raise InputError("weights must be nonnegative")
        total = sum(vals)
        if abs(total - 1.0) > WEIGHT_QUERY_TOL:
            raise InputError(f"weights must sum to 1, got {total!r}")
        clamped = [max(v, 0.0) for v in vals]
        s = sum(clamped)
        return WeightVector(tuple(v / s for v in clamped))

    def label_payload(self, lam: WeightVector) -> dict:
        scores = _decompose._exact_scores(self.input_set, lam.exact())
        at_point = _decompose.rank_of(scores)
        try:
            consistent = _decompose.label_point(
                self.input_set, lam, self.decomposition.labels
            )
        except CoverageGapError:
            consistent = set()
        index_of = {r.label: k for k, r in enumerate(self.decomposition.regions)}
        ordered = sorted(consistent, key=lambda l: index_of[l])
        region_indices = [index_of[l] for l in ordered]
        area_fraction = (
            self.decomposition.regions[region_indices[0]].area_fraction
            if len(region_indices) == 1 else None
        )
        return {
            "weight": list(lam.as_floats()),
            "aggregate": [float(v) for v in scores],
            "label_at_point": {
                "positions": list(at_point.positions),
                "tie_groups": [list(g) for g in at_point.tie_groups],
            },
            "labels": [
                {
                    "positions": list(l.positions),
                    "tie_groups": [list(g) for g in l.tie_groups],
                }
                for l in ordered
            ],
            "region_indices": region_indices,
            "area_fraction": area_fraction,
            "tie": len(region_indices) != 1 or at_point.has_ties,
        }

    def heatmap_payload(self, item_name: str) -> dict:
        item = self.input_set.item_by_name(item_name)  # raises InputError
        entries = _analytics.item_heatmap(self.decomposition, item)
        index_of = {r.label: k for k, r in enumerate(self.decomposition.regions)}
        return {
            "item": item.name,
            "entries": [
                {"region": index_of[region.label], "position": pos}
                for region, pos in entries
            ],
        }

    def sensitivity_payload(self, lam: WeightVector) -> dict:
        if self.decfile.method != "exact":
            raise InputError("sensitivity needs an exact decomposition")
        return {
            "weight": list(lam.as_floats()),
            "robustness": _analytics.sensitivity(self.decomposition, lam),
        }


class _Handler(BaseHTTPRequestHandler):
    state: ExplorerState  # set on the class by make_server

    def log_message(self, fmt, *args):
        log.debug("%s %s", self.address_string(), fmt % args)

    def _send(self, code: int, body: bytes, content_type: str):
        self.send_response(code)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, code: int, payload: dict):
        body = json.dumps(payload, sort_keys=True,
                          separators=(",", ":")).encode("utf-8") + b"\n"
        self._send(code, body, "application/json")

    def do_GET(self):  # noqa: N802 (stdlib naming)
        parsed = urlparse(self.path)
        path = unquote(parsed.path)
        try:
            if path == "/api/decomposition":
                self._send(200, self.state.decomposition_bytes,
                           "application/json")
            elif path == "/api/label":
                lam = self.state.weight_from_query(parse_qs(parsed.query))
                self._send_json(200, self.state.label_payload(lam))
            elif path == "/api/sensitivity":
                lam = self.state.weight_from_query(parse_qs(parsed.query))
                self._send_json(200, self.state.sensitivity_payload(lam))
            elif path.startswith("/api/heatmap/"):
                item = path[len("/api/heatmap/"):]
                try:
                    payload = self.state.heatmap_payload(item)
                except InputError as exc:
                    self._send_json(404, {"error": str(exc)})
                    return
                self._send_json(200, payload)
            elif path.startswith("/api/"):
                self._send_json(404, {"error": f"no such endpoint {path}"})
            else:
                self._serve_static(path)
        except InputError as exc:
            self._send_json(400, {"error": str(exc)})
        except SimplexRankError as exc:
            self._send_json(500, {"error": str(exc)})

    def _serve_static(self, path: str):
        ui = self.state.ui_dir
        if ui is None:
            if path in ("/", "/index.html"):
                self._send(200, _PLACEHOLDER, "text/html; charset=utf-8")
            else:
                self._send(404, b"not found\n", "text/plain")
            return
        rel = path.lstrip("/") or "index.html"
        target = (ui / rel).resolve()
        if not str(target).startswith(str(ui)) or not target.is_file():
            self._send(404, b"not found\n", "text/plain")
            return
        ctype = {
            ".html": "text/html; charset=utf-8",
            ".js": "text/javascript",
            ".mjs": "text/javascript",
            ".css": "text/css",
            ".json": "application/json",
            ".svg": "image/svg+xml",
            ".map": "application/json",
        }.get(target.suffix, "application/octet-stream")
        self._send(200, target.read_bytes(), ctype)


def make_server(
    decfile: DecompositionFile,
    port: int,
    ui_dir: str | Path | None = None,
    host: str = "127.0.0.1",
) -> ThreadingHTTPServer:
    """Build (but do not start) the HTTP server for one decomposition."""
    state = ExplorerState(decfile, ui_dir)
    handler = type("BoundHandler", (_Handler,), {"state": state})
    return ThreadingHTTPServer((host, port), handler)


def serve_forever(
    decfile: DecompositionFile,
    port: int,
    ui_dir: str | Path | None = None,
    host: str = "127.0.0.1",
):
    httpd = make_server(decfile, port, ui_dir, host)
    log.info("serving on http://%s:%d", host, httpd.server_address[1])
    try:
        httpd.serve_forever()
    finally:
        httpd.server_close()
