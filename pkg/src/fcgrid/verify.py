"""Differential verification: cascade lookups against the naive oracle.

For each grid set the harness builds the cascade, re-validates its
structure, and compares cascade indices against independent per-grid
searches over a key set that always contains every boundary key (each
distinct grid value, its two float neighbours, and one key outside each
end of the span) plus a seeded batch of random keys. A deterministic
subsample of lookups runs through the instrumented scalar path so the
comparison-count guarantees are checked as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import batch
from .cascade import CascadeGrid, build_cascade, cascade_lookup_traced
from .gridgen import GenSpec, generate_gridset
from .grids import GridSet
from .validate import Violation, validate_structure

_DETAIL_CAP = 8


@dataclass(frozen=True)
class Mismatch:
    """First disagreement found: which key, which grid, both answers."""

    gridset: int
    key: float
    grid: int  # 1-based
    expected: int
    got: int


@dataclass
class VerifyReport:
    """Tallies from one verification run; ``ok`` means zero violations of any kind."""

    gridsets: int = 0
    keys_total: int = 0
    traced_lookups: int = 0
    mismatches: int = 0
    first_mismatch: Mismatch | None = None
    structural_violations: int = 0
    structural_details: list[Violation] = field(default_factory=list)
    efficiency_violations: int = 0
    efficiency_details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.mismatches == 0
            and self.structural_violations == 0
            and self.efficiency_violations == 0
        )

    def rows(self) -> list[tuple[str, str]]:
        if self.first_mismatch is None:
            first = "-"
        else:
            m = self.first_mismatch
            first = (
                f"gridset {m.gridset} key {m.key!r} grid {m.grid}: "
                f"expected {m.expected}, got {m.got}"
            )
        rows = [
            ("gridsets", str(self.gridsets)),
            ("keys", str(self.keys_total)),
            ("traced lookups", str(self.traced_lookups)),
            ("mismatches", str(self.mismatches)),
            ("first mismatch", first),
            ("structural violations", str(self.structural_violations)),
            ("efficiency violations", str(self.efficiency_violations)),
        ]
        for v in self.structural_details[:_DETAIL_CAP]:
            rows.append(("structural detail", str(v)))
        for d in self.efficiency_details[:_DETAIL_CAP]:
            rows.append(("efficiency detail", d))
        rows.append(("result", "PASS" if self.ok else "FAIL"))
        return rows


def boundary_keys(grids: GridSet) -> np.ndarray:
    """Every distinct grid value, its float neighbours, and one key beyond each end."""
    vals = np.unique(np.concatenate([grid.as_array for grid in grids.grids]))
    down = np.nextafter(vals, -np.inf)
    up = np.nextafter(vals, np.inf)
    ends = np.array([vals[0] - 1.0, vals[-1] + 1.0])
    return np.unique(np.concatenate([vals, down, up, ends]))


def _random_keys(grids: GridSet, count: int, rng: np.random.Generator) -> np.ndarray:
    if count <= 0:
        return np.empty(0, dtype=np.float64)
    lo = min(grid.values[0] for grid in grids.grids)
    hi = max(grid.values[-1] for grid in grids.grids)
    pad = (hi - lo) * 0.05 + 1.0
    if not (math.isfinite(pad) and math.isfinite(lo - pad) and math.isfinite(hi + pad)):
        pad = 0.0
    return rng.uniform(lo - pad, hi + pad, size=count)


def verify_gridset(
    grids: GridSet,
    report: VerifyReport,
    *,
    cascade: CascadeGrid | None = None,
    random_keys: int = 1000,
    rng: np.random.Generator | None = None,
    trace_limit: int = 64,
    ordinal: int = 0,
) -> None:
    """Run every check for one grid set, accumulating into ``report``."""
    if rng is None:
        rng = np.random.default_rng(0)
    if cascade is None:
        cascade = build_cascade(grids)

    violations = validate_structure(cascade, grids)
    report.structural_violations += len(violations)
    room = max(0, _DETAIL_CAP - len(report.structural_details))
    report.structural_details.extend(violations[:room])

    keys = np.concatenate([boundary_keys(grids), _random_keys(grids, random_keys, rng)])
    expected = batch.naive_indices(grids, keys)
    got = batch.cascade_indices(cascade, keys)
    report.keys_total += keys.size
    diff = expected != got
    if diff.any():
        report.mismatches += int(diff.sum())
        if report.first_mismatch is None:
            grid_i, key_i = np.argwhere(diff)[0]
            report.first_mismatch = Mismatch(
                gridset=ordinal,
                key=float(keys[key_i]),
                grid=int(grid_i) + 1,
                expected=int(expected[grid_i, key_i]),
                got=int(got[grid_i, key_i]),
            )

    # Instrumented scalar lookups on an evenly spread subsample of the keys.
    sample = np.unique(np.linspace(0, keys.size - 1, min(trace_limit, keys.size)).astype(int))
    top_bound = int(math.log2(len(cascade.levels[0]))) + 1
    for key_i in sample:
        key = float(keys[key_i])
        trace = cascade_lookup_traced(cascade, grids, key)
        report.traced_lookups += 1
        for grid_i, got_idx in enumerate(trace.result.indices):
            if got_idx != int(expected[grid_i, key_i]):
                report.mismatches += 1
                if report.first_mismatch is None:
                    report.first_mismatch = Mismatch(
                        ordinal, key, grid_i + 1, int(expected[grid_i, key_i]), got_idx
                    )
        problems = []
        if trace.binary_searches != 1:
            problems.append(f"{trace.binary_searches} binary searches")
        if trace.binary_search_comparisons > top_bound:
            problems.append(
                f"{trace.binary_search_comparisons} top-level comparisons > {top_bound}"
            )
        if len(trace.per_level_comparisons) != cascade.k - 1 or any(
            c > 1 for c in trace.per_level_comparisons
        ):
            problems.append(f"per-level comparisons {trace.per_level_comparisons}")
        if problems:
            report.efficiency_violations += 1
            if len(report.efficiency_details) < _DETAIL_CAP:
                report.efficiency_details.append(
                    f"gridset {ordinal} key {key!r}: " + "; ".join(problems)
                )


def random_gridsets(count: int, seed: int) -> list[GridSet]:
    """The fuzzing corpus: k in [1, 16], sizes in [1, 1024], duplicates on every other set.

    Size envelopes are mixed between full range and small-biased so that
    degenerate shapes get heavy coverage.
    """
    envelopes = [1, 2, 3, 4, 6, 8, 12, 16, 24, 48, 96, 192, 384, 768, 1024, 1024]
    out = []
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        k = int(rng.integers(1, 17))
        size_max = int(rng.choice(envelopes))
        out.append(
            generate_gridset(
                GenSpec(
                    k=k,
                    size_min=1,
                    size_max=size_max,
                    duplicate_fraction=0.0 if i % 2 == 0 else 0.05,
                    seed=int(rng.integers(0, 2**63)),
                )
            )
        )
    return out


def run_verification(
    gridsets: Iterable[GridSet],
    *,
    random_keys: int = 1000,
    seed: int = 0,
    trace_limit: int = 64,
    cascade: CascadeGrid | None = None,
) -> VerifyReport:
    """Verify several grid sets; deterministic for a given seed.

    ``cascade`` may be supplied only when verifying a single grid set
    (e.g. a decoded snapshot against its source grids).
    """
    report = VerifyReport()
    gridsets = list(gridsets)
    if cascade is not None and len(gridsets) != 1:
        raise ValueError("an explicit cascade requires exactly one grid set")
    for i, grids in enumerate(gridsets):
        verify_gridset(
            grids,
            report,
            cascade=cascade,
            random_keys=random_keys,
            rng=np.random.default_rng([seed, i]),
            trace_limit=trace_limit,
            ordinal=i,
        )
        report.gridsets += 1
    return report
