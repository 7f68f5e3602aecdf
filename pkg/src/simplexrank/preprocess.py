"""Input cleanup: rating normalization, rating-to-ranking conversion, and
completion of top-k lists into full rankings over the union universe."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateInputError, InputError
from .model import InputSet, ScoreVector, make_items, rank_of


@dataclass(frozen=True)
class TopKList:
    """An ordered best-first list naming only an input's top k items."""

    entries: tuple[str, ...]

    def __init__(self, entries: Sequence[str]):
        entries = tuple(entries)
        if not entries:
            raise InputError("top-k list must be nonempty")
        if len(set(entries)) != len(entries):
            dupes = sorted({e for e in entries if entries.count(e) > 1})
            raise InputError(f"duplicate item name(s) in list: {dupes}")
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)


def normalize_rating(v: ScoreVector) -> ScoreVector:
    """Shift and scale a rating vector onto [0, 1] (min -> 0, max -> 1).

    Exact rational arithmetic, so ranks are preserved identically.
    """
    if v.kind != "rating":
        raise InputError("normalize_rating expects a rating vector")
    exact = v.exact()
    lo, hi = min(exact), max(exact)
    spread = hi - lo
    if spread == 0:
        raise DegenerateInputError(
            "constant rating vector has no spread to normalize"
        )
    return ScoreVector(tuple((x - lo) / spread for x in exact), kind="rating")


def ranking_from_rating(v: ScoreVector) -> ScoreVector:
    """Convert scores to their ranked positions (ties keep equal positions).

    Also accepts ranking-kind vectors, on which it is idempotent.
    """
    return ScoreVector(rank_of(v).positions, kind="ranking")


def complete_lists(
    lists: Sequence[TopKList],
    names: Sequence[str] | None = None,
) -> InputSet:
    """Expand three top-k lists into full rankings over the union universe.

    Listed items take positions 1..k in list order; everything the list
    omits is tied in last place at position k+1.
    """
    lists = tuple(lists)
    if len(lists) != 3:
        raise InputError(f"need exactly 3 lists, got {len(lists)}")
    universe: list[str] = []
    seen: set[str] = set()
    for lst in lists:
        for name in lst.entries:
            if name not in seen:
                seen.add(name)
                universe.append(name)
    index = {name: i for i, name in enumerate(universe)}
    n = len(universe)

    inputs = []
    for lst in lists:
        k = len(lst)
        positions = [k + 1] * n
        for rank, name in enumerate(lst.entries, start=1):
            positions[index[name]] = rank
        inputs.append(ScoreVector(positions, kind="ranking"))

    return InputSet(make_items(universe), inputs, names)


def normalized_input_set(input_set: InputSet) -> InputSet:
    """Normalize every rating-kind input independently; rankings pass through."""
    new_inputs = tuple(
        normalize_rating(sv) if sv.kind == "rating" else sv
        for sv in input_set.inputs
    )
    return InputSet(input_set.items, new_inputs, input_set.input_names)
