"""Shared fixtures and tiny independent oracles.

The oracles here deliberately avoid the package's own geometry: brute-force
sorting, plain python loops, and fine grids are the reference against which
the exact machinery is judged.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from simplexrank import InputSet, ScoreVector, make_items


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------

TREATMENTS = (
    "T1 Temozolomide",
    "T2 Pembrolizumab",
    "T3 Gliovac",
    "T4 Bevacizumab",
    "T5 Adavosertib",
)

ONCOLOGY_INPUTS = ((1, 2, 3, 4, 5), (1, 3, 2, 4, 5), (5, 1, 2, 3, 4))
ONCOLOGY_NAMES = ("complexity", "effectiveness", "quality of life")


def make_ranking_set(vectors, names=None, item_names=None) -> InputSet:
    vectors = [tuple(v) for v in vectors]
    n = len(vectors[0])
    items = make_items(item_names or [f"I{k}" for k in range(n)])
    return InputSet(
        items,
        [ScoreVector(v, kind="ranking") for v in vectors],
        names,
    )


@pytest.fixture
def oncology() -> InputSet:
    return make_ranking_set(ONCOLOGY_INPUTS, ONCOLOGY_NAMES, TREATMENTS)


def random_permutation_instance(rng: random.Random, n: int) -> InputSet:
    vecs = []
    for _ in range(3):
        p = list(range(1, n + 1))
        rng.shuffle(p)
        vecs.append(p)
    return make_ranking_set(vecs)


def random_single_tie_instance(rng: random.Random, n: int) -> InputSet:
    # permutations, then collapse one adjacent pair in one input into a tie
    vecs = []
    for _ in range(3):
        p = list(range(1, n + 1))
        rng.shuffle(p)
        vecs.append(p)
    v = vecs[rng.randrange(3)]
    pos = rng.randrange(1, n)
    v[v.index(pos + 1)] = pos  # items ranked pos and pos+1 now tie at pos
    return make_ranking_set(vecs)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def brute_positions(values) -> tuple[int, ...]:
    """Competition positions by a plain double loop (reference semantics)."""
    vals = [Fraction(v) for v in values]
    return tuple(1 + sum(1 for w in vals if w < v) for v in vals)


def brute_aggregate(input_set: InputSet, lam) -> list[Fraction]:
    lam = [Fraction(x) for x in lam]
    rows = [sv.exact() for sv in input_set.inputs]
    return [
        sum(lam[i] * rows[i][c] for i in range(3))
        for c in range(input_set.n)
    ]


def brute_label(input_set: InputSet, lam) -> tuple[int, ...]:
    return brute_positions(brute_aggregate(input_set, lam))


def brute_grid_labels(input_set: InputSet, resolution: int):
    """Label every lattice point by plain loops: {(i, j) -> positions}."""
    out = {}
    for i in range(resolution + 1):
        for j in range(resolution - i + 1):
            lam = (
                Fraction(i, resolution),
                Fraction(j, resolution),
                Fraction(resolution - i - j, resolution),
            )
            out[(i, j)] = brute_label(input_set, lam)
    return out


def rational_simplex_point(rng: random.Random, denominator: int = 997):
    """A random exact barycentric point (uniform-ish over the lattice)."""
    while True:
        a = rng.randrange(denominator + 1)
        b = rng.randrange(denominator + 1)
        if a + b <= denominator:
            return (
                Fraction(a, denominator),
                Fraction(b, denominator),
                Fraction(denominator - a - b, denominator),
            )
