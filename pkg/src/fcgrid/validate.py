"""Independent structural validation of cascade grids.

Every invariant is recomputed from scratch (binary search per entry, not
the linear construction sweep), so construction bugs cannot hide behind
their own bookkeeping. Violations are returned as data, never raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .cascade import CascadeGrid, strict_predecessor
from .grids import GridSet


@dataclass(frozen=True)
class Violation:
    """One failed invariant; ``level`` is 1-based, 0 for whole-structure checks."""

    level: int
    entry: int | None
    invariant: str
    detail: str

    def __str__(self) -> str:
        where = f"level {self.level}" if self.level else "structure"
        if self.entry is not None:
            where += f" entry {self.entry}"
        return f"{where}: {self.invariant}: {self.detail}"


def _subtract_sorted(values: Sequence[float], removed: Sequence[float]) -> tuple[list[float], list[float]]:
    # Multiset difference of two sorted sequences: (values - removed, removed - values).
    remaining: list[float] = []
    missing: list[float] = []
    t = 0
    n = len(removed)
    for v in values:
        while t < n and removed[t] < v:
            missing.append(removed[t])
            t += 1
        if t < n and removed[t] == v:
            t += 1
        else:
            remaining.append(v)
    missing.extend(removed[t:])
    return remaining, missing


def _odd_index_of(values: Sequence[float], value: float) -> int | None:
    for t in range(1, len(values), 2):
        if values[t] == value:
            return t
    return None


def validate_structure(cascade: CascadeGrid, grids: GridSet | None = None) -> list[Violation]:
    """Check every structural invariant; empty list means the cascade is sound.

    With ``grids`` given, original-grid content is checked against them;
    without (e.g. for a decoded snapshot), the originals are reconstructed
    by removing each level's promoted entries.

    Checks: per-level sortedness and finiteness, original-grid multiset
    containment, odd-position promotion containment, the level size
    recurrence, by-value correctness of both index columns (recomputed
    with an independent binary search), index ranges, and the global
    twice-total-points size bound.
    """
    out: list[Violation] = []
    k = cascade.k
    levels = cascade.levels

    if grids is not None:
        if grids.k != k:
            out.append(Violation(0, None, "shape", f"{k} levels but {grids.k} grids"))
            return out
        for i in range(k):
            if cascade.grid_sizes[i] != len(grids.grids[i]):
                out.append(
                    Violation(
                        i + 1,
                        None,
                        "shape",
                        f"recorded grid size {cascade.grid_sizes[i]} but grid has {len(grids.grids[i])} points",
                    )
                )
        if any(v.invariant == "shape" for v in out):
            return out

    finite_ok = [True] * k
    for i, level in enumerate(levels):
        lvl = i + 1
        vals = level.values
        if len(level.grid_index) != len(vals) or (
            level.bridge is not None and len(level.bridge) != len(vals)
        ):
            out.append(Violation(lvl, None, "columns", "index columns do not match value count"))
            return out
        if (level.bridge is None) != (i == k - 1):
            out.append(
                Violation(lvl, None, "columns", "bridge column present on last level or missing elsewhere")
            )
            return out
        for t, v in enumerate(vals):
            if not math.isfinite(v):
                out.append(Violation(lvl, t, "finite", f"value {v!r}"))
                finite_ok[i] = False
        for t in range(len(vals) - 1):
            if vals[t] > vals[t + 1]:
                out.append(Violation(lvl, t + 1, "sorted", f"{vals[t + 1]!r} after {vals[t]!r}"))

    # Size recurrence: last level matches its grid; above, each level adds
    # half (floored) of the level below.
    for i in range(k):
        lvl = i + 1
        expected = cascade.grid_sizes[i] + (len(levels[i + 1]) // 2 if i < k - 1 else 0)
        if len(levels[i]) != expected:
            out.append(
                Violation(
                    lvl,
                    None,
                    "size_recurrence",
                    f"level has {len(levels[i])} entries, expected {expected}",
                )
            )

    total = cascade.total_entries
    cap = 2 * sum(cascade.grid_sizes)
    if total > cap:
        out.append(Violation(0, None, "size_bound", f"total {total} > {cap}"))

    # Promotion containment, original-grid containment, and reconstruction.
    originals: list[tuple[float, ...] | None] = [None] * k
    for i in range(k):
        lvl = i + 1
        if i < k - 1:
            tail = levels[i + 1].values[1::2]
            remaining, missing = _subtract_sorted(levels[i].values, tail)
            for v in missing:
                out.append(
                    Violation(
                        i + 2,
                        _odd_index_of(levels[i + 1].values, v),
                        "promotion",
                        f"odd-position value {v!r} of level {i + 2} missing from level {lvl}",
                    )
                )
        else:
            remaining, missing = list(levels[i].values), []
        if grids is not None:
            original = grids.grids[i].values
            _, absent = _subtract_sorted(levels[i].values, original)
            for v in absent:
                out.append(
                    Violation(lvl, None, "grid_subset", f"grid value {v!r} missing from level")
                )
            originals[i] = original
        elif not missing and len(remaining) == cascade.grid_sizes[i]:
            originals[i] = tuple(remaining)

    # Index columns, recomputed by value with an independent binary search.
    for i, level in enumerate(levels):
        lvl = i + 1
        size = cascade.grid_sizes[i]
        for t, g in enumerate(level.grid_index):
            if not -1 <= g <= size - 1:
                out.append(Violation(lvl, t, "grid_index", f"{g} outside [-1, {size - 1}]"))
        if not finite_ok[i]:
            continue  # NaN values cannot be searched for; already reported
        original = originals[i]
        if original is not None and len(original) == size:
            recomputed = tuple(strict_predecessor(original, v) for v in level.values)
            if recomputed != level.grid_index:
                for t in range(len(level)):
                    if recomputed[t] != level.grid_index[t]:
                        out.append(
                            Violation(
                                lvl,
                                t,
                                "grid_index",
                                f"stored {level.grid_index[t]}, recomputed {recomputed[t]}",
                            )
                        )
        if level.bridge is not None:
            below = levels[i + 1].values
            for t, b in enumerate(level.bridge):
                if not -1 <= b <= len(below) - 1:
                    out.append(Violation(lvl, t, "bridge", f"{b} outside [-1, {len(below) - 1}]"))
            recomputed = tuple(strict_predecessor(below, v) for v in level.values)
            if recomputed != level.bridge:
                for t in range(len(level)):
                    if recomputed[t] != level.bridge[t]:
                        out.append(
                            Violation(
                                lvl,
                                t,
                                "bridge",
                                f"stored {level.bridge[t]}, recomputed {recomputed[t]}",
                            )
                        )

    return out
