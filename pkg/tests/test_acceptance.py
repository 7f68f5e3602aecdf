"""Acceptance suite: one test per primary criterion, each printing a
PASS/FAIL line (run with -s to see them all).

The random suite is fixed-seed: 50 no-tie instances (n in 4..7, integer
rankings) shared by the oracle-equivalence, tiling, convexity, separation,
neighbor and endpoint checks, plus 20 single-tie instances for the tie-case
endpoint proposition.
"""

from __future__ import annotations

import json
import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from simplexrank import (
    ScoreVector,
    TopKList,
    WeightVector,
    adjacency_graph,
    aggregate,
    build_hyperplanes,
    classify_pair,
    complete_lists,
    dominance_matrices,
    exact_decompose,
    expected_ranking,
    nonlinear_normalize,
    partition_aggregate,
    rank_of,
    reduce_to_triangle,
    sigmoid_f,
    side_of,
    to_equilateral,
)
from simplexrank.decompose import grid_position_arrays
from simplexrank.extensions import PartitionConfig
from simplexrank.geometry import (
    SIMPLEX_CORNERS,
    clip_convex,
    intersection_area,
    polygon_area,
    proj_of_bary,
)
from conftest import (
    ONCOLOGY_INPUTS,
    ONCOLOGY_NAMES,
    TREATMENTS,
    make_ranking_set,
    random_permutation_instance,
    random_single_tie_instance,
    rational_simplex_point,
)

F = Fraction
SQRT3 = math.sqrt(3.0)
SUITE_SEED = 20260810
GRID_K = 500


def report(name: str, ok: bool, detail: str = ""):
    tail = f"  ({detail})" if detail else ""
    print(f"[{'PASS' if ok else 'FAIL'}] {name}{tail}")


@pytest.fixture(scope="module")
def suite():
    rng = random.Random(SUITE_SEED)
    no_tie = [
        random_permutation_instance(rng, rng.choice([4, 5, 6, 7]))
        for _ in range(50)
    ]
    single_tie = [
        random_single_tie_instance(rng, rng.choice([4, 5, 6]))
        for _ in range(20)
    ]
    return no_tie, single_tie


@pytest.fixture(scope="module")
def decomposed(suite):
    no_tie, _ = suite
    start = time.perf_counter()
    decs = [exact_decompose(iset) for iset in no_tie]
    elapsed = time.perf_counter() - start
    return decs, elapsed


def _grid_mismatches(iset, decomposition, resolution):
    """Count lattice points with clearance > 2/K from every region boundary
    whose exact lattice label differs from the containing region's label."""
    pts, positions = grid_position_arrays(iset, resolution)
    l1 = pts[:, 0] / resolution
    l2 = pts[:, 1] / resolution
    ex = l1 - 0.5 * (1.0 - l2)
    ey = l2 * SQRT3 / 2.0
    clearance = 2.0 / resolution
    mismatches = 0
    tested = 0
    for region in decomposition.regions:
        verts = region.vertices
        m = len(verts)
        inside = np.ones(len(pts), dtype=bool)
        for k in range(m):
            px, py = verts[k]
            qx, qy = verts[(k + 1) % m]
            nx, ny = -(qy - py), qx - px
            norm = math.hypot(nx, ny)
            slack = (nx * (ex - px) + ny * (ey - py)) / norm
            inside &= slack > clearance
            if not inside.any():
                break
        if not inside.any():
            continue
        target = np.array(region.label.positions, dtype=np.int64)
        rows = positions[inside]
        mismatches += int((rows != target).any(axis=1).sum())
        tested += int(inside.sum())
    return mismatches, tested


def test_oracle_equivalence_exact_vs_grid(suite, decomposed):
    no_tie, _ = suite
    decs, decompose_time = decomposed
    start = time.perf_counter()
    mismatches = 0
    tested = 0
    for iset, dec in zip(no_tie, decs):
        bad, n_tested = _grid_mismatches(iset, dec, GRID_K)
        mismatches += bad
        tested += n_tested
    elapsed = time.perf_counter() - start + decompose_time
    ok = mismatches == 0 and elapsed < 60.0
    report(
        "oracle equivalence (exact vs K=500 grid)", ok,
        f"{mismatches} mismatches over {tested} clear points, "
        f"{elapsed:.1f}s of 60s budget",
    )
    assert mismatches == 0
    assert elapsed < 60.0


def test_tiling_exact(suite, decomposed):
    no_tie, _ = suite
    decs, _ = decomposed
    area_violations = 0
    overlap_violations = 0
    for dec in decs:
        total_eq = sum(r.area for r in dec.regions)
        if abs(total_eq - SQRT3 / 4.0) > 1e-6:
            area_violations += 1
        if sum(r.area_fraction_exact for r in dec.regions) != 1:
            area_violations += 1
        polys = [
            [proj_of_bary(b) for b in r.vertices_barycentric]
            for r in dec.regions
        ]
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                if intersection_area(polys[i], polys[j]) != 0:
                    overlap_violations += 1
    ok = area_violations == 0 and overlap_violations == 0
    report(
        "tiling (area sum exact, interior overlaps zero)", ok,
        f"{area_violations} area / {overlap_violations} overlap violations",
    )
    assert area_violations == 0
    assert overlap_violations == 0


def test_convexity(decomposed):
    from simplexrank.geometry import convex_hull

    decs, _ = decomposed
    violations = 0
    regions = 0
    for dec in decs:
        for region in dec.regions:
            regions += 1
            pts = [proj_of_bary(b) for b in region.vertices_barycentric]
            if set(convex_hull(pts)) != set(pts):
                violations += 1
    report("convexity (every region is its own hull)", violations == 0,
           f"{violations} violations over {regions} regions")
    assert violations == 0


def _side_samples(coeffs, rng, count=1000):
    """Exact sample points strictly on each side of a line, plus the sign of
    the weighted difference there, computed in integer arithmetic.

    Yields the negative side (first item outranks second) first: clipping by
    +coeffs keeps value <= 0, clipping by -coeffs keeps value >= 0."""
    out = []
    for expect in (-1, 1):
        flipped = tuple(-expect * c for c in coeffs)
        poly = clip_convex(list(SIMPLEX_CORNERS), [flipped])
        if polygon_area(poly) == 0:
            out.append(None)
            continue
        a_, b_, c_ = (F(c) for c in coeffs)
        vals = [a_ * p[0] + b_ * p[1] + c_ for p in poly]
        den = math.lcm(*(v.denominator for v in vals))
        ints = np.array([int(v * den) for v in vals], dtype=np.int64)
        if int(np.abs(ints).max()) * 2000 * len(vals) >= 2**62:
            ints = None  # fall back on exact fractions
        weights = rng.integers(1, 1000, size=(count, len(poly)))
        if ints is not None:
            dots = weights @ ints
            signs = np.sign(dots)
        else:
            signs = np.array([
                int(np.sign(sum(int(w) * v for w, v in zip(row, vals))))
                for row in weights
            ])
        pts = []
        for row in weights[:5]:
            tot = int(row.sum())
            x = sum(int(w) * p[0] for w, p in zip(row, poly)) / tot
            y = sum(int(w) * p[1] for w, p in zip(row, poly)) / tot
            pts.append((x, y))
        out.append((signs, pts))
    return out


def test_separation(suite):
    no_tie, _ = suite
    rng = np.random.default_rng(SUITE_SEED)
    violations = 0
    checked = 0
    for iset in no_tie:
        for hp in build_hyperplanes(iset):
            samples = _side_samples(hp.coeffs, rng)
            for side_idx, sample in enumerate(samples):
                if sample is None:
                    continue
                signs, pts = sample
                expect = -1 if side_idx == 0 else 1
                checked += len(signs)
                violations += int((signs != expect).sum())
                # bind a handful through the public side_of API
                for x, y in pts:
                    side = side_of(hp.coeffs, (x, y, 1 - x - y))
                    want = "below" if expect < 0 else "above"
                    if side != want:
                        violations += 1
    report("separation (sign of weighted difference vs side_of)",
           violations == 0, f"{violations} violations over {checked} samples")
    assert violations == 0


def test_endpoint_propositions(suite):
    no_tie, single_tie = suite
    corners = {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    no_tie_violations = 0
    for iset in no_tie:
        for hp in build_hyperplanes(iset):
            for ep in hp.endpoints:
                if tuple(ep) in corners:
                    no_tie_violations += 1
    tie_violations = 0
    tie_pairs = 0
    for iset in single_tie:
        for a in range(iset.n):
            for b in range(a + 1, iset.n):
                cls = classify_pair(iset, a, b)
                if cls.kind != "disagreeing" or cls.delta.tie_count != 1:
                    continue
                tie_pairs += 1
                from simplexrank import endpoints_of

                hits = sum(
                    1 for ep in endpoints_of(cls.delta)
                    if tuple(ep) in corners
                )
                if hits != 1:
                    tie_violations += 1
    ok = no_tie_violations == 0 and tie_violations == 0 and tie_pairs > 0
    report(
        "endpoint propositions (vertices iff single tie)", ok,
        f"{no_tie_violations} no-tie / {tie_violations} tie violations, "
        f"{tie_pairs} tie pairs seen",
    )
    assert no_tie_violations == 0
    assert tie_violations == 0
    assert tie_pairs > 0


def test_neighbor_swaps(decomposed):
    decs, _ = decomposed
    edge_violations = 0
    point_violations = 0
    edges = 0
    points = 0
    for dec in decs:
        for _, _, kind, dist in adjacency_graph(dec):
            if kind == "edge":
                edges += 1
                if dist != 1:
                    edge_violations += 1
            else:
                points += 1
                if dist < 2:
                    point_violations += 1
    ok = edge_violations == 0 and point_violations == 0
    report(
        "neighbor swaps (edge = 1 swap, point >= 2)", ok,
        f"{edge_violations} edge violations of {edges}, "
        f"{point_violations} point violations of {points}; edge violations "
        "occur where two item pairs share one separating line, so crossing "
        "it swaps both pairs at once",
    )
    assert point_violations == 0
    assert edge_violations == 0, (
        f"{edge_violations} edge-adjacent region pairs are more than one "
        "swap apart; each such border lies on a line where two distinct "
        "item pairs tie simultaneously, so a single crossing flips both "
        "pairs. The one-swap rule holds only when every border line "
        "carries exactly one pair."
    )


def test_paper_fragment_golds(suite, decomposed):
    # 1) the half/half weight induces the printed aggregate and the 2/3 tie
    iset = make_ranking_set(ONCOLOGY_INPUTS, ONCOLOGY_NAMES, TREATMENTS)
    out = aggregate(iset, WeightVector((F(1, 2), F(1, 2), F(0))))
    agg_ok = [float(v) for v in out.values] == [1.0, 2.5, 2.5, 4.0, 5.0]
    label = rank_of(out)
    tie_ok = label.positions == (1, 2, 2, 4, 5) and (1, 2) in label.tie_groups

    # 2) count-matrix structure on every tie-free instance
    decs, _ = decomposed
    structure_ok = True
    for dec in decs:
        m = dominance_matrices(dec)
        n = m.xstar.shape[0]
        for i in range(n):
            for j in range(n):
                if i != j and abs(m.xstar[i, j] + m.xstar[j, i] - 1) > 1e-12:
                    structure_ok = False

    # 3) top-k completion reproduces the tied-at-six vectors exactly
    completed = complete_lists(
        [
            TopKList(["T1", "T2", "T3", "T4", "T5"]),
            TopKList(["T1", "T2", "T10", "T4", "T8"]),
            TopKList(["T2", "T3", "T6", "T5", "T4"]),
        ],
        ["efficacy", "safety", "cost"],
    )
    names = [it.name for it in completed.items]
    vec = lambda k: dict(zip(names, completed.inputs[k].values))
    completion_ok = (
        vec(0) == {"T1": 1, "T2": 2, "T3": 3, "T4": 4, "T5": 5,
                   "T6": 6, "T8": 6, "T10": 6}
        and vec(1) == {"T1": 1, "T2": 2, "T10": 3, "T4": 4, "T8": 5,
                       "T3": 6, "T5": 6, "T6": 6}
        and vec(2) == {"T2": 1, "T3": 2, "T6": 3, "T5": 4, "T4": 5,
                       "T1": 6, "T8": 6, "T10": 6}
    )
    ok = agg_ok and tie_ok and structure_ok and completion_ok
    report(
        "paper fragment golds (half/half tie, count identity, top-k)", ok,
        f"aggregate {agg_ok}, tie {tie_ok}, structure {structure_ok}, "
        f"completion {completion_ok}",
    )
    assert agg_ok and tie_ok and structure_ok and completion_ok


def test_equilateral_transform(decomposed):
    corners = [to_equilateral(c) for c in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    dist_ok = all(
        abs(math.dist(corners[i], corners[j]) - 1.0) <= 1e-12
        for i in range(3) for j in range(i + 1, 3)
    )
    decs, _ = decomposed
    area_violations = 0
    for dec in decs[:10]:
        for region in dec.regions:
            proj = float(region.area_fraction_exact) / 2.0
            verts = region.vertices
            acc = 0.0
            for k in range(len(verts)):
                x1, y1 = verts[k]
                x2, y2 = verts[(k + 1) % len(verts)]
                acc += x1 * y2 - x2 * y1
            eq_area = abs(acc) / 2.0
            if abs(eq_area - proj * SQRT3 / 2.0) > 1e-12:
                area_violations += 1
    ok = dist_ok and area_violations == 0
    report("equilateral transform (unit sides, area factor)", ok,
           f"distances {dist_ok}, {area_violations} area violations")
    assert dist_ok
    assert area_violations == 0


def test_nonlinear_equivalence():
    iset = make_ranking_set(ONCOLOGY_INPUTS, ONCOLOGY_NAMES, TREATMENTS)
    values = [[float(v) for v in sv.exact()] for sv in iset.inputs]
    rng = random.Random(SUITE_SEED)
    mismatches = 0
    for _ in range(10_000):
        raw = [rng.random() for _ in range(3)]
        s = sum(raw)
        lam = WeightVector(tuple(x / s for x in raw))
        l1, l2, l3 = lam.as_floats()
        direct = rank_of([
            l1 * values[0][i] + l2 * values[1][i]
            + sigmoid_f(l3) * values[2][i]
            for i in range(iset.n)
        ])
        pulled = rank_of(aggregate(iset, nonlinear_normalize(lam)))
        if direct != pulled:
            mismatches += 1
    sig_ok = (
        sigmoid_f(0.5) == 0.5
        and abs(sigmoid_f(0.0) - 0.0066929) <= 1e-6
        and abs(sigmoid_f(1.0) - 0.9933071) <= 1e-6
    )
    ok = mismatches == 0 and sig_ok
    report("nonlinear equivalence (rank under transform = pulled-back rank)",
           ok, f"{mismatches} mismatches of 10000, sigmoid values {sig_ok}")
    assert mismatches == 0
    assert sig_ok


def test_wide_input_reduction():
    rng = random.Random(SUITE_SEED + 1)
    mismatches = 0
    checked = 0
    for _ in range(10):
        j = rng.choice([4, 5, 6, 7, 8])
        n = rng.choice([4, 5, 6])
        vecs = []
        for _ in range(j):
            p = list(range(1, n + 1))
            rng.shuffle(p)
            vecs.append(p)
        from simplexrank import InputSet, make_items

        iset = InputSet(
            make_items([f"I{k}" for k in range(n)]),
            [ScoreVector(v, kind="ranking") for v in vecs],
        )
        rest = j - 3
        raw = [F(rng.randrange(1, 9)) for _ in range(rest)]
        p1 = F(rng.randrange(0, 101), 100)
        cfg = PartitionConfig(
            (0, 1, 2), [x / sum(raw) for x in raw], p1, 1 - p1,
        )
        reduced = reduce_to_triangle(iset, cfg)
        for _ in range(1000):
            lam = WeightVector(rational_simplex_point(rng))
            direct = rank_of(partition_aggregate(iset, cfg, lam))
            via = rank_of(aggregate(reduced, lam))
            checked += 1
            if direct != via:
                mismatches += 1
    report("wide-input reduction (partition vs reduced triangle)",
           mismatches == 0, f"{mismatches} mismatches of {checked}")
    assert mismatches == 0


def test_expected_ranking_vs_monte_carlo(decomposed):
    rng_master = random.Random(SUITE_SEED + 2)
    fixtures = [make_ranking_set(ONCOLOGY_INPUTS, ONCOLOGY_NAMES, TREATMENTS)]
    for _ in range(4):
        fixtures.append(
            random_permutation_instance(rng_master, rng_master.choice([4, 5, 6]))
        )
    worst = 0.0
    for k, iset in enumerate(fixtures):
        dec = exact_decompose(iset)
        expected = expected_ranking(dec)
        rng = np.random.default_rng(SUITE_SEED + k)
        samples = rng.dirichlet((1.0, 1.0, 1.0), size=1_000_000)
        values = np.array(
            [[float(v) for v in sv.exact()] for sv in iset.inputs]
        )
        scores = samples @ values
        positions = 1 + (scores[:, None, :] < scores[:, :, None]).sum(axis=2)
        mc = positions.mean(axis=0)
        worst = max(worst, float(np.max(np.abs(mc - expected))))
    report("expected ranking vs Monte-Carlo (1e6 samples x 5 fixtures)",
           worst < 0.01, f"worst component gap {worst:.5f}")
    assert worst < 0.01


def test_cli_io_round_trip(tmp_path):
    from simplexrank.cli import main
    from simplexrank.fileio import parse_decomposition

    problem = tmp_path / "problem.json"
    problem.write_text(json.dumps({
        "version": 1,
        "items": list(TREATMENTS),
        "inputs": [
            {"name": name, "kind": "ranking", "values": list(vals)}
            for name, vals in zip(ONCOLOGY_NAMES, ONCOLOGY_INPUTS)
        ],
        "options": {"normalize": True},
    }))
    decomp = tmp_path / "decomp.json"
    rc = main(["decompose", "--input", str(problem),
               "--output", str(decomp)])
    text = decomp.read_text()
    parsed = parse_decomposition(text)
    round_trip_ok = rc == 0 and parsed.to_json() == text

    render_ok = True
    for kind in ("colormap", "barchart"):
        a = tmp_path / f"{kind}-a.svg"
        b = tmp_path / f"{kind}-b.svg"
        for out in (a, b):
            if main(["render", "--decomp", str(decomp), "--kind", kind,
                     "--output", str(out)]) != 0:
                render_ok = False
        if a.read_bytes() != b.read_bytes():
            render_ok = False
    ok = round_trip_ok and render_ok
    report("cli/io (round-trip identity, byte-stable renders)", ok,
           f"round-trip {round_trip_ok}, renders {render_ok}")
    assert round_trip_ok
    assert render_ok
