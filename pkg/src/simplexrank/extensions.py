"""Extensions beyond the 3-input linear core: reduction of j >= 4 problems
onto the weight triangle via partition weights, and a nonlinear transform of
the third weight (grid colormaps only; its region boundaries curve)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import InputError
from .model import (
    InputSet,
    ScoreVector,
    WeightVector,
    as_fraction,
)

PARTITION_TOL = 1e-9


@dataclass(frozen=True)
class PartitionConfig:
    """How to fold a j >= 4 problem onto the triangle: three spotlighted
    inputs, fixed weights for the rest, and the partition split p1/p2."""

    chosen: tuple[int, int, int]
    fixed_weights: tuple
    p1: Fraction
    p2: Fraction

    def __init__(self, chosen, fixed_weights, p1, p2):
        chosen = tuple(int(c) for c in chosen)
        if len(chosen) != 3 or len(set(chosen)) != 3:
            raise InputError("chosen must be 3 distinct input indices")
        p1 = as_fraction(p1)
        p2 = as_fraction(p2)
        if p1 < 0 or p2 < 0:
            raise InputError("partition weights must be nonnegative")
        if abs(float(p1 + p2) - 1.0) > PARTITION_TOL:
            raise InputError("partition weights must sum to 1")
        fixed = tuple(as_fraction(w) for w in fixed_weights)
        if any(w < 0 for w in fixed):
            raise InputError("fixed weights must be nonnegative")
        if p2 > 0:
            total = sum(fixed, Fraction(0))
            if abs(float(total) - 1.0) > PARTITION_TOL:
                raise InputError(
                    "fixed weights must sum to 1 within their partition"
                )
        object.__setattr__(self, "chosen", chosen)
        object.__setattr__(self, "fixed_weights", fixed)
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)


def _validate_config(input_set: InputSet, config: PartitionConfig):
    j = input_set.j
    if j < 4:
        raise InputError("partition aggregation applies to j >= 4 inputs")
    for c in config.chosen:
        if not 0 <= c < j:
            raise InputError(f"chosen index {c} out of range for j={j}")
    if len(config.fixed_weights) != j - 3:
        raise InputError(
            f"need {j - 3} fixed weights for the non-chosen inputs, "
            f"got {len(config.fixed_weights)}"
        )


def _fixed_combination(
    input_set: InputSet, config: PartitionConfig
) -> tuple[Fraction, ...]:
    # weighted blend of the non-chosen inputs, in ascending input order
    rows = input_set.exact_matrix()
    rest = [k for k in range(input_set.j) if k not in config.chosen]
    n = input_set.n
    out = [Fraction(0)] * n
    for w, k in zip(config.fixed_weights, rest):
        row = rows[k]
        for i in range(n):
            out[i] += w * row[i]
    return tuple(out)


def partition_aggregate(
    input_set: InputSet,
    config: PartitionConfig,
    lam: WeightVector,
) -> ScoreVector:
    """p1 * (triangle mix of the chosen three) + p2 * (fixed blend of the rest)."""
    _validate_config(input_set, config)
    w = lam.exact()
    rows = input_set.exact_matrix()
    fixed = _fixed_combination(input_set, config)
    n = input_set.n
    values = []
    for i in range(n):
        tri = sum(w[m] * rows[config.chosen[m]][i] for m in range(3))
        values.append(config.p1 * tri + config.p2 * fixed[i])
    return ScoreVector(tuple(values), kind="rating")


def reduce_to_triangle(
    input_set: InputSet, config: PartitionConfig
) -> InputSet:
    """Three effective inputs whose plain triangle aggregation reproduces
    ``partition_aggregate`` at every weight (the mix is affine in the weight,
    so the fixed blend folds into each effective input)."""
    _validate_config(input_set, config)
    rows = input_set.exact_matrix()
    fixed = _fixed_combination(input_set, config)
    n = input_set.n
    effective = []
    for m in range(3):
        row = rows[config.chosen[m]]
        effective.append(
            ScoreVector(
                tuple(config.p1 * row[i] + config.p2 * fixed[i] for i in range(n)),
                kind="rating",
            )
        )
    names = tuple(input_set.input_names[c] for c in config.chosen)
    return InputSet(input_set.items, effective, names)


def sigmoid_f(x: float, a: float = 5.0, b: float = 10.0) -> float:
    """Logistic ramp 1 / (1 + e^(a - b*x)): near 0 at x=0, 0.5 at a/b,
    near 1 at x=1 for the default shape."""
    return 1.0 / (1.0 + math.exp(a - b * x))


@dataclass(frozen=True)
class NonlinearUtility:
    """Positive monotone transform applied to the third weight only."""

    f: Callable[[float], float] = sigmoid_f

    def __post_init__(self):
        probes = [k / 8 for k in range(9)]
        vals = [self.f(x) for x in probes]
        if any(v <= 0 for v in vals):
            raise InputError("nonlinear transform must be positive on [0, 1]")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise InputError("nonlinear transform must be strictly increasing")

    def scores(self, input_set: InputSet, lam: WeightVector) -> tuple[float, ...]:
        l1, l2, l3 = lam.as_floats()
        w3 = self.f(l3)
        rows = [
            [float(v) for v in sv.exact()] for sv in input_set.inputs[:3]
        ]
        return tuple(
            l1 * rows[0][i] + l2 * rows[1][i] + w3 * rows[2][i]
            for i in range(input_set.n)
        )


def nonlinear_utility(f: Callable[[float], float] = sigmoid_f):
    """Adapter for ``grid_decompose(..., utility=...)``."""
    nl = NonlinearUtility(f)
    return nl.scores


def nonlinear_normalize(
    lam: WeightVector, f: Callable[[float], float] = sigmoid_f
) -> WeightVector:
    """Pull a weight back onto the simplex after transforming the third
    component: (l1, l2, f(l3)) rescaled to sum to 1."""
    l1, l2, l3 = lam.as_floats()
    w3 = f(l3)
    total = l1 + l2 + w3
    return WeightVector((l1 / total, l2 / total, w3 / total))
