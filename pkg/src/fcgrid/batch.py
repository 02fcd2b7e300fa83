"""Vectorized bulk lookups over arrays of keys.

Row-for-row equivalent to the scalar :func:`fcgrid.cascade_lookup` and
:func:`fcgrid.naive_lookup`; the scalar paths stay authoritative and the
two are cross-checked in the verification harness. Only the top-level
search uses a library binary search; the descent below it is pure bridge
arithmetic plus one gathered comparison per level.
"""

from __future__ import annotations

import numpy as np

from .cascade import CascadeGrid
from .errors import InvalidArgumentError
from .grids import GridSet


def _as_keys(keys) -> np.ndarray:
    arr = np.ascontiguousarray(keys, dtype=np.float64)
    if arr.ndim != 1:
        raise InvalidArgumentError("keys must be one-dimensional")
    if np.isnan(arr).any():
        raise InvalidArgumentError("key is NaN")
    return arr


def naive_indices(grids: GridSet, keys) -> np.ndarray:
    """Clamped predecessor index of every key in every grid; shape (k, len(keys))."""
    arr = _as_keys(keys)
    out = np.empty((grids.k, arr.size), dtype=np.int64)
    for i, grid in enumerate(grids.grids):
        out[i] = np.searchsorted(grid.as_array, arr, side="right") - 1
    np.maximum(out, 0, out=out)
    return out


def cascade_indices(cascade: CascadeGrid, keys) -> np.ndarray:
    """Cascade descent for every key at once; shape (k, len(keys))."""
    arr = _as_keys(keys)
    m = arr.size
    levels = cascade.levels
    k = len(levels)
    out = np.empty((k, m), dtype=np.int64)
    j = np.searchsorted(levels[0].values_array, arr, side="right").astype(np.int64) - 1
    for i, level in enumerate(levels):
        valid = j >= 0
        safe = np.where(valid, j, 0)
        grid_idx = np.where(valid, level.grid_index_array[safe], -1)
        out[i] = np.maximum(grid_idx, 0)
        if level.bridge_array is not None:
            below = levels[i + 1].values_array
            b = np.where(valid, level.bridge_array[safe], -1)
            step = b + 1
            can_compare = step < below.size
            took_step = np.zeros(m, dtype=bool)
            took_step[can_compare] = below[step[can_compare]] <= arr[can_compare]
            j = np.where(took_step, step, b)
    return out
