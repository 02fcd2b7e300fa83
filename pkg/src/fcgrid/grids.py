"""Sorted energy grids and sets of them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import BuildRejectionError


@dataclass(frozen=True)
class EnergyGrid:
    """One nuclide's tabulation grid (eV), non-decreasing; duplicate points are legal."""

    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    @cached_property
    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)


@dataclass(frozen=True)
class GridSet:
    """An ordered collection of energy grids, one per nuclide.

    No ordering relation is required between grids. Raw float sequences
    are coerced to :class:`EnergyGrid` on construction.
    """

    grids: tuple[EnergyGrid, ...]

    def __post_init__(self):
        coerced = tuple(
            g if isinstance(g, EnergyGrid) else EnergyGrid(tuple(g)) for g in self.grids
        )
        object.__setattr__(self, "grids", coerced)

    @property
    def k(self) -> int:
        return len(self.grids)

    def __len__(self) -> int:
        return len(self.grids)

    def __iter__(self) -> Iterator[EnergyGrid]:
        return iter(self.grids)

    def __getitem__(self, i: int) -> EnergyGrid:
        return self.grids[i]

    @cached_property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.grids)

    @cached_property
    def total_points(self) -> int:
        return sum(self.sizes)


def validate_gridset(grids: GridSet) -> None:
    """Reject grid sets that cannot back a cascade.

    Raises :class:`BuildRejectionError` naming the offending grid (1-based)
    and position for: empty set, empty grid, non-finite value, unsorted grid.
    """
    if grids.k == 0:
        raise BuildRejectionError("grid set is empty")
    for ordinal, grid in enumerate(grids.grids, start=1):
        vals = grid.values
        if len(vals) == 0:
            raise BuildRejectionError(f"grid {ordinal} is empty", grid=ordinal)
        arr = grid.as_array
        if not np.isfinite(arr).all():
            for t, v in enumerate(vals):
                if not math.isfinite(v):
                    raise BuildRejectionError(
                        f"grid {ordinal} has non-finite value at position {t}",
                        grid=ordinal,
                        index=t,
                    )
        if arr.size > 1 and (np.diff(arr) < 0.0).any():
            for t in range(len(vals) - 1):
                if vals[t] > vals[t + 1]:
                    raise BuildRejectionError(
                        f"grid {ordinal} not sorted at position {t + 1}",
                        grid=ordinal,
                        index=t + 1,
                    )
