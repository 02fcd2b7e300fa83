"""Deterministic synthetic grid sets for property tests and benchmarks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .grids import EnergyGrid, GridSet
from .xsec import NuclideTable

DEFAULT_ENERGY_MIN = 1.0e-5  # eV
DEFAULT_ENERGY_MAX = 2.0e7


@dataclass(frozen=True)
class GenSpec:
    """Parameters for one deterministic grid set draw."""

    k: int
    size_min: int
    size_max: int
    energy_min: float = DEFAULT_ENERGY_MIN
    energy_max: float = DEFAULT_ENERGY_MAX
    duplicate_fraction: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise InvalidArgumentError(f"k must be >= 1, got {self.k}")
        if not 1 <= self.size_min <= self.size_max:
            raise InvalidArgumentError(
                f"need 1 <= size_min <= size_max, got {self.size_min}..{self.size_max}"
            )
        if not 0.0 < self.energy_min < self.energy_max:
            raise InvalidArgumentError(
                f"need 0 < energy_min < energy_max, got {self.energy_min}..{self.energy_max}"
            )
        if not 0.0 <= self.duplicate_fraction <= 1.0:
            raise InvalidArgumentError(
                f"duplicate_fraction must be in [0, 1], got {self.duplicate_fraction}"
            )
        if not 0 <= self.seed < 2**64:
            raise InvalidArgumentError(f"seed must be an unsigned 64-bit value, got {self.seed}")


def _draw_grid(rng: np.random.Generator, n: int, lo: float, hi: float, duplicate_fraction: float) -> EnergyGrid:
    if duplicate_fraction > 0.0:
        vals = np.sort(np.exp(rng.uniform(lo, hi, size=n)))
        dups = min(int(round(duplicate_fraction * n)), n - 1)
        if dups > 0:
            pos = rng.choice(np.arange(1, n), size=dups, replace=False)
            # Copying each chosen point from its left neighbour keeps the
            # array sorted (adjacent duplicates mimic discontinuity points).
            vals[pos] = vals[pos - 1]
    else:
        vals = np.unique(np.exp(rng.uniform(lo, hi, size=n)))
        while vals.size < n:  # collisions are ~impossible; strictness is guaranteed anyway
            extra = np.exp(rng.uniform(lo, hi, size=n - vals.size))
            vals = np.unique(np.concatenate([vals, extra]))
    return EnergyGrid(tuple(vals.tolist()))


def generate_gridset(spec: GenSpec) -> GridSet:
    """Draw a grid set fully determined by ``spec``.

    Sizes are uniform over [size_min, size_max]; values are log-uniform
    over [energy_min, energy_max] and sorted. With duplicate_fraction 0
    every grid is strictly increasing; otherwise about that fraction of
    points is duplicated onto its left neighbour.
    """
    rng = np.random.default_rng(spec.seed)
    sizes = [int(s) for s in rng.integers(spec.size_min, spec.size_max + 1, size=spec.k)]
    lo, hi = np.log(spec.energy_min), np.log(spec.energy_max)
    return GridSet(tuple(_draw_grid(rng, n, lo, hi, spec.duplicate_fraction) for n in sizes))


def generate_nuclide_tables(spec: GenSpec) -> tuple[NuclideTable, ...]:
    """The grids of ``generate_gridset(spec)`` with positive sigma values.

    Sigma values come from a separate stream keyed off the same seed, so
    the grids match ``generate_gridset`` exactly.
    """
    grids = generate_gridset(spec)
    rng = np.random.default_rng([spec.seed, 1])
    return tuple(
        NuclideTable(grid, tuple((10.0 ** rng.uniform(-3.0, 3.0, size=len(grid))).tolist()))
        for grid in grids
    )


def example_gridset() -> GridSet:
    """Fixed three-grid fixture used by the CLI demo and the regression tests."""
    return GridSet(
        (
            EnergyGrid((1.0, 2.0, 3.0, 4.0, 5.0)),
            EnergyGrid((1.5, 2.5, 3.5, 4.5, 5.5, 6.5)),
            EnergyGrid((0.5, 1.5, 2.5, 3.5)),
        )
    )


def adversarial_shapes() -> list[tuple[int, ...]]:
    """Grid-size vectors that stress the size bound and the boundary paths."""
    shapes: list[tuple[int, ...]] = [tuple([1] * k) for k in range(1, 9)]
    shapes.append((1, 1, 1, 1, 3))
    shapes.append((64, 32, 16, 8, 4, 2, 1))
    shapes.append((1, 2, 4, 8, 16, 32, 64))
    shapes.append((512, 1, 1, 1, 1, 1, 1, 1))
    shapes.append((512,))
    return shapes


def gridset_from_shape(shape, seed: int = 0) -> GridSet:
    """A deterministic grid set with the given per-grid sizes."""
    shape = tuple(int(n) for n in shape)
    if not shape or min(shape) < 1:
        raise InvalidArgumentError(f"shape must be non-empty positive sizes, got {shape}")
    rng = np.random.default_rng([seed, *shape])
    lo, hi = np.log(DEFAULT_ENERGY_MIN), np.log(DEFAULT_ENERGY_MAX)
    grids = tuple(
        EnergyGrid(tuple(np.sort(np.exp(rng.uniform(lo, hi, size=n))).tolist())) for n in shape
    )
    return GridSet(grids)
