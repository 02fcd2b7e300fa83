"""Benchmark the cascade path against k independent binary searches.

Both paths see the identical key stream; a warm-up pass runs first and
is left out of the timings. Comparison counts come from the instrumented
lookups; wall-clock numbers are reported without any pass/fail threshold,
while the per-query comparison bound is asserted.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .cascade import (
    CascadeGrid,
    build_cascade,
    cascade_lookup,
    cascade_lookup_traced,
    naive_lookup,
    naive_lookup_counted,
)
from .errors import InvalidArgumentError
from .grids import GridSet


@dataclass(frozen=True)
class BenchReport:
    """Timing and comparison-count summary for one benchmark run."""

    queries: int
    k: int
    mean_grid_size: float
    cascade_wall_s: float
    naive_wall_s: float
    speedup: float
    cascade_mean_comparisons: float
    cascade_max_comparisons: int
    naive_mean_comparisons: float
    naive_max_comparisons: int
    cascade_bound: int
    naive_bound: int
    bound_ok: bool

    def rows(self) -> list[tuple[str, str]]:
        return [
            ("queries", str(self.queries)),
            ("grids", str(self.k)),
            ("mean grid size", f"{self.mean_grid_size:.1f}"),
            ("cascade wall s", f"{self.cascade_wall_s:.6f}"),
            ("naive wall s", f"{self.naive_wall_s:.6f}"),
            ("speedup naive/cascade", f"{self.speedup:.3f}"),
            ("cascade mean comparisons", f"{self.cascade_mean_comparisons:.2f}"),
            ("cascade max comparisons", str(self.cascade_max_comparisons)),
            ("cascade comparison bound", str(self.cascade_bound)),
            ("naive mean comparisons", f"{self.naive_mean_comparisons:.2f}"),
            ("naive max comparisons", str(self.naive_max_comparisons)),
            ("naive worst-case comparisons", str(self.naive_bound)),
            ("comparison bound", "PASS" if self.bound_ok else "FAIL"),
        ]


def run_bench(grids: GridSet, *, queries: int, seed: int = 0, warmup: int = 256) -> BenchReport:
    """Time and count Q lookups through both paths on one key stream."""
    if queries < 1:
        raise InvalidArgumentError(f"queries must be >= 1, got {queries}")
    cascade = build_cascade(grids)
    rng = np.random.default_rng(seed)
    lo = min(grid.values[0] for grid in grids.grids)
    hi = max(grid.values[-1] for grid in grids.grids)
    pad = (hi - lo) * 0.05 + 1.0
    keys = rng.uniform(lo - pad, hi + pad, size=queries).tolist()

    for key in keys[: min(warmup, queries)]:
        cascade_lookup(cascade, grids, key)
        naive_lookup(grids, key)

    t0 = time.perf_counter()
    for key in keys:
        cascade_lookup(cascade, grids, key)
    cascade_wall = time.perf_counter() - t0

    t0 = time.perf_counter()
    for key in keys:
        naive_lookup(grids, key)
    naive_wall = time.perf_counter() - t0

    cascade_bound = int(math.log2(len(cascade.levels[0]))) + 1 + (grids.k - 1)
    naive_bound = sum(int(math.log2(n)) + 1 for n in grids.sizes)
    fc_counts = []
    nv_counts = []
    bound_ok = True
    for key in keys:
        trace = cascade_lookup_traced(cascade, grids, key)
        total = trace.total_comparisons
        fc_counts.append(total)
        if total > cascade_bound or trace.binary_searches != 1:
            bound_ok = False
        _, n_comps = naive_lookup_counted(grids, key)
        nv_counts.append(n_comps)

    return BenchReport(
        queries=queries,
        k=grids.k,
        mean_grid_size=grids.total_points / grids.k,
        cascade_wall_s=cascade_wall,
        naive_wall_s=naive_wall,
        speedup=naive_wall / cascade_wall if cascade_wall > 0 else float("inf"),
        cascade_mean_comparisons=sum(fc_counts) / len(fc_counts),
        cascade_max_comparisons=max(fc_counts),
        naive_mean_comparisons=sum(nv_counts) / len(nv_counts),
        naive_max_comparisons=max(nv_counts),
        cascade_bound=cascade_bound,
        naive_bound=naive_bound,
        bound_ok=bound_ok,
    )
