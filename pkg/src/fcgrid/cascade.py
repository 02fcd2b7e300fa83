"""Cascade grid: one binary search answers predecessor queries in k sorted grids.

The structure augments each input grid into a "level": a sorted array
holding every point of the original grid plus every second entry (odd
positions 1, 3, 5, ...) of the level below it. Each level entry carries
two precomputed indices:

* ``grid_index`` -- strict predecessor of the entry value in the original
  grid of that level;
* ``bridge``     -- strict predecessor of the entry value in the next
  level down (absent on the last level).

"Strict predecessor" of a key in a sorted sequence is the largest index
whose value is <= the key, -1 when the key lies below every value.
Both indices are functions of the entry value alone, so duplicate values
are harmless.

A query binary-searches the top level once; from there, each stored
bridge lands within one position of the true predecessor in the next
level, so a single value comparison per level corrects it. Promoting odd
positions keeps the total entry count at or below twice the number of
original grid points.

Cascades are immutable after construction; all lookups are pure reads and
safe to call concurrently on a shared structure.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidArgumentError, StructureMismatchError
from .grids import GridSet, validate_gridset

ENTRY_BYTES = 24  # value f64 + two i64 index columns

ORIGINAL_FIRST = "original-first"
PROMOTED_FIRST = "promoted-first"
_TIE_BREAKS = (ORIGINAL_FIRST, PROMOTED_FIRST)


class ComparisonCounter:
    """Mutable tally of key comparisons performed by a search routine."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0


def strict_predecessor(values: Sequence[float], key: float, counter: ComparisonCounter | None = None) -> int:
    """Largest index t with values[t] <= key, or -1 when key < values[0].

    ``values`` must be sorted non-decreasing. Performs at most
    floor(log2(len(values))) + 1 key comparisons; each one is tallied on
    ``counter`` when given.
    """
    if math.isnan(key):
        raise InvalidArgumentError("key is NaN")
    lo = 0
    hi = len(values) - 1
    result = -1
    while lo <= hi:
        mid = (lo + hi) // 2
        if counter is not None:
            counter.count += 1
        if values[mid] <= key:
            result = mid
            lo = mid + 1
        else:
            hi = mid - 1
    return result


@dataclass(frozen=True)
class CascadeEntry:
    """One level entry: a value plus its two precomputed predecessor indices."""

    value: float
    grid_index: int
    bridge: int | None


@dataclass(frozen=True)
class CascadeLevel:
    """Sorted level values with parallel predecessor-index columns.

    ``bridge`` is None on the last level, which has nothing below it.
    """

    values: tuple[float, ...]
    grid_index: tuple[int, ...]
    bridge: tuple[int, ...] | None

    def __len__(self) -> int:
        return len(self.values)

    def entry(self, t: int) -> CascadeEntry:
        return CascadeEntry(
            self.values[t],
            self.grid_index[t],
            None if self.bridge is None else self.bridge[t],
        )

    @cached_property
    def values_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)

    @cached_property
    def grid_index_array(self) -> np.ndarray:
        return np.asarray(self.grid_index, dtype=np.int64)

    @cached_property
    def bridge_array(self) -> np.ndarray | None:
        if self.bridge is None:
            return None
        return np.asarray(self.bridge, dtype=np.int64)


@dataclass(frozen=True)
class CascadeGrid:
    """The built structure: one level per input grid plus the original sizes."""

    levels: tuple[CascadeLevel, ...]
    grid_sizes: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.levels)

    @property
    def level_sizes(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.levels)

    @property
    def total_entries(self) -> int:
        return sum(len(level) for level in self.levels)


@dataclass(frozen=True)
class LookupResult:
    """Clamped predecessor index per grid: 0 below the grid, else the last index with value <= key."""

    indices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __getitem__(self, i: int) -> int:
        return self.indices[i]


@dataclass(frozen=True)
class LookupTrace:
    """Instrumented lookup: comparison tallies alongside the result.

    ``per_level_comparisons`` has one count per level after the first;
    each is 0 or 1 by construction.
    """

    binary_searches: int
    binary_search_comparisons: int
    per_level_comparisons: tuple[int, ...]
    result: LookupResult

    @property
    def total_comparisons(self) -> int:
        return self.binary_search_comparisons + sum(self.per_level_comparisons)


def _merge(original: Sequence[float], promoted: Sequence[float], original_first: bool) -> list[float]:
    out: list[float] = []
    ia = ib = 0
    na, nb = len(original), len(promoted)
    while ia < na and ib < nb:
        ov, pv = original[ia], promoted[ib]
        if (ov <= pv) if original_first else (ov < pv):
            out.append(ov)
            ia += 1
        else:
            out.append(pv)
            ib += 1
    out.extend(original[ia:])
    out.extend(promoted[ib:])
    return out


def _sweep_predecessors(values: Sequence[float], reference: Sequence[float]) -> list[int]:
    # Strict predecessor in `reference` for each of the sorted `values`,
    # in one linear pass over both sequences.
    out: list[int] = []
    t = 0
    n = len(reference)
    for v in values:
        while t < n and reference[t] <= v:
            t += 1
        out.append(t - 1)
    return out


def _build(grids: GridSet, tie_break: str, promote_even: bool) -> CascadeGrid:
    if tie_break not in _TIE_BREAKS:
        raise InvalidArgumentError(f"tie_break must be one of {_TIE_BREAKS}, got {tie_break!r}")
    validate_gridset(grids)
    k = grids.k
    original_first = tie_break == ORIGINAL_FIRST
    levels: list[CascadeLevel | None] = [None] * k
    below: tuple[float, ...] | None = None
    for i in range(k - 1, -1, -1):
        original = grids.grids[i].values
        if below is None:
            merged = list(original)
        else:
            promoted = below[0::2] if promote_even else below[1::2]
            merged = _merge(original, promoted, original_first)
        grid_index = _sweep_predecessors(merged, original)
        bridge = None if below is None else _sweep_predecessors(merged, below)
        levels[i] = CascadeLevel(
            tuple(merged),
            tuple(grid_index),
            None if bridge is None else tuple(bridge),
        )
        below = levels[i].values
    return CascadeGrid(tuple(levels), grids.sizes)  # type: ignore[arg-type]


def build_cascade(grids: GridSet, *, tie_break: str = ORIGINAL_FIRST) -> CascadeGrid:
    """Build the cascade structure over a valid grid set.

    Levels are constructed bottom-up: the last level is the last grid
    verbatim; every other level is the sorted merge of its grid with the
    odd-position entries of the level below. ``tie_break`` chooses which
    source wins the merge on equal values (original grid first by
    default); either choice yields identical lookup results because the
    index columns depend on values only.

    Deterministic: identical inputs produce an identical structure.
    """
    return _build(grids, tie_break, promote_even=False)


def build_cascade_even_promotion(grids: GridSet, *, tie_break: str = ORIGINAL_FIRST) -> CascadeGrid:
    """Variant that promotes even positions (0, 2, ...) instead of odd.

    Kept only as a negative fixture: on shapes such as (1, 1, 1, 1, 3)
    it overflows the twice-total-points size bound that odd-position
    promotion guarantees, and :func:`fcgrid.validate_structure` flags the
    overflow. Lookups through it are still correct.
    """
    return _build(grids, tie_break, promote_even=True)


def _check_shapes(cascade: CascadeGrid, grids: GridSet) -> None:
    if cascade.k != grids.k:
        raise StructureMismatchError(
            f"cascade has {cascade.k} levels but grid set has {grids.k} grids"
        )
    if cascade.grid_sizes != grids.sizes:
        raise StructureMismatchError(
            f"cascade built for grid sizes {cascade.grid_sizes}, got {grids.sizes}"
        )


def cascade_lookup_traced(cascade: CascadeGrid, grids: GridSet, key: float) -> LookupTrace:
    """Run one cascade lookup and record its comparison counts.

    Exactly one binary search (over the top level) and at most one value
    comparison per level after the first; the comparison is skipped only
    when the bridge already points at the end of the next level.
    """
    _check_shapes(cascade, grids)
    levels = cascade.levels
    counter = ComparisonCounter()
    searches = 0
    j = strict_predecessor(levels[0].values, key, counter)
    searches += 1
    indices: list[int] = []
    per_level: list[int] = []
    for i, level in enumerate(levels):
        g = level.grid_index[j] if j >= 0 else -1
        indices.append(g if g > 0 else 0)
        if level.bridge is not None:
            nxt = levels[i + 1].values
            b = level.bridge[j] if j >= 0 else -1
            step = b + 1
            if step < len(nxt):
                per_level.append(1)
                j = step if nxt[step] <= key else b
            else:
                per_level.append(0)
                j = b
    return LookupTrace(searches, counter.count, tuple(per_level), LookupResult(tuple(indices)))


def cascade_lookup(cascade: CascadeGrid, grids: GridSet, key: float) -> LookupResult:
    """Simultaneous clamped-predecessor lookup of ``key`` in every grid.

    Returns the same indices as :func:`naive_lookup`, via the traced
    descent (there is a single code path).
    """
    return cascade_lookup_traced(cascade, grids, key).result


def naive_lookup(grids: GridSet, key: float) -> LookupResult:
    """Oracle: an independent predecessor search per grid via the standard library."""
    if math.isnan(key):
        raise InvalidArgumentError("key is NaN")
    out: list[int] = []
    for grid in grids.grids:
        t = bisect_right(grid.values, key) - 1
        out.append(t if t > 0 else 0)
    return LookupResult(tuple(out))


def naive_lookup_counted(grids: GridSet, key: float) -> tuple[LookupResult, int]:
    """Naive lookup as k instrumented binary searches; returns (result, comparisons)."""
    counter = ComparisonCounter()
    out: list[int] = []
    for grid in grids.grids:
        t = strict_predecessor(grid.values, key, counter)
        out.append(t if t > 0 else 0)
    return LookupResult(tuple(out)), counter.count


@dataclass(frozen=True)
class StructureStats:
    """Size accounting for a built cascade."""

    k: int
    level_sizes: tuple[int, ...]
    total_entries: int
    total_grid_points: int
    size_ratio: float
    memory_bytes: int


def structure_stats(cascade: CascadeGrid) -> StructureStats:
    """Level sizes, totals, augmentation ratio, and a flat memory estimate."""
    total = cascade.total_entries
    points = sum(cascade.grid_sizes)
    return StructureStats(
        k=cascade.k,
        level_sizes=cascade.level_sizes,
        total_entries=total,
        total_grid_points=points,
        size_ratio=total / points,
        memory_bytes=total * ENTRY_BYTES,
    )
