"""Cross-section tables and interpolation on top of lookup indices.

Microscopic values (barns) are tabulated per nuclide on its own energy
grid and interpolated lin-lin; the macroscopic total (1/cm) is the
density-weighted sum over a material's components. All functions here
are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cascade import CascadeGrid, cascade_lookup
from .errors import InvalidArgumentError
from .grids import EnergyGrid, GridSet


@dataclass(frozen=True)
class NuclideTable:
    """One nuclide's energy grid with its microscopic cross sections (barns)."""

    grid: EnergyGrid
    sigma: tuple[float, ...]

    def __post_init__(self):
        grid = self.grid if isinstance(self.grid, EnergyGrid) else EnergyGrid(tuple(self.grid))
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "sigma", tuple(float(s) for s in self.sigma))
        if len(self.sigma) != len(self.grid):
            raise InvalidArgumentError(
                f"table has {len(self.grid)} grid points but {len(self.sigma)} sigma values"
            )
        for t, s in enumerate(self.sigma):
            if not math.isfinite(s) or s < 0.0:
                raise InvalidArgumentError(f"sigma at position {t} must be finite and >= 0, got {s!r}")


@dataclass(frozen=True)
class Material:
    """Mixture components: (nuclide ordinal, number density in atoms/(barn*cm))."""

    components: tuple[tuple[int, float], ...]

    def __post_init__(self):
        comps = tuple((int(n), float(d)) for n, d in self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise InvalidArgumentError("material needs at least one component")
        for n, d in comps:
            if not math.isfinite(d) or d < 0.0:
                raise InvalidArgumentError(f"density for nuclide {n} must be finite and >= 0, got {d!r}")


def interp_sigma(table: NuclideTable, idx: int, key: float) -> float:
    """Lin-lin interpolation at ``key`` given its clamped predecessor index.

    Constant clamp at the last grid point, below the grid, and across
    duplicated points (the post-jump value at a discontinuity).
    """
    grid = table.grid.values
    if idx < 0 or idx >= len(grid):
        raise InvalidArgumentError(f"index {idx} outside [0, {len(grid) - 1}]")
    if idx == len(grid) - 1 or key <= grid[0] or grid[idx] == grid[idx + 1]:
        return table.sigma[idx]
    x0, x1 = grid[idx], grid[idx + 1]
    s0, s1 = table.sigma[idx], table.sigma[idx + 1]
    return s0 + (key - x0) / (x1 - x0) * (s1 - s0)


def tables_gridset(tables) -> GridSet:
    """The grid set formed by the tables' grids, in order."""
    return GridSet(tuple(t.grid for t in tables))


def eval_micro_all(tables, cascade: CascadeGrid, key: float) -> tuple[float, ...]:
    """Microscopic cross section of every table at ``key`` via one cascade lookup."""
    tables = tuple(tables)
    result = cascade_lookup(cascade, tables_gridset(tables), key)
    return tuple(interp_sigma(t, idx, key) for t, idx in zip(tables, result.indices))


def eval_macro(material: Material, tables, cascade: CascadeGrid, key: float) -> float:
    """Macroscopic cross section (1/cm): sum of density times microscopic value."""
    tables = tuple(tables)
    for ordinal, _ in material.components:
        if not 0 <= ordinal < len(tables):
            raise InvalidArgumentError(f"unknown nuclide ordinal {ordinal}")
    micro = eval_micro_all(tables, cascade, key)
    return sum(density * micro[ordinal] for ordinal, density in material.components)
