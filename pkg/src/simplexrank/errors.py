"""Exception types shared across the package."""

from __future__ import annotations


class SimplexRankError(Exception):
    """Base class for all package errors."""


class InputError(SimplexRankError, ValueError):
    """Malformed or inconsistent user input (dimensions, kinds, names)."""


class DegenerateInputError(InputError):
    """Input that is technically well-formed but carries no usable signal,
    e.g. a constant rating vector that cannot be normalized."""


class GeometricDegeneracyError(SimplexRankError):
    """A geometric construction collapsed (fewer than two distinct
    separating-segment endpoints after all fallbacks)."""


class CoverageGapError(SimplexRankError):
    """A point in the weight set matched none of the candidate rank labels.

    Signals that the label seeding pass missed at least one region and a
    finer seeding is needed."""


class IncompleteDecompositionError(SimplexRankError):
    """Exact decomposition could not cover the whole weight set within the
    configured refinement budget. Carries the partial result."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
