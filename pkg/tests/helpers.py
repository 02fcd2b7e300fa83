"""Shared oracles and frozen fixtures for the test suite.

The linear-scan routines here are the trusted reference: straight walks
with no binary search, mirroring the simplest possible implementation.
Every fast path in the package is checked against them somewhere.
"""

from fcgrid import GridSet


def linear_strict_predecessor(values, key):
    result = -1
    for t, v in enumerate(values):
        if v <= key:
            result = t
        else:
            break
    return result


def linear_scan_indices(grids: GridSet, key: float) -> tuple[int, ...]:
    out = []
    for grid in grids.grids:
        vals = grid.values
        idx = 0
        while idx + 1 < len(vals) and vals[idx + 1] <= key:
            idx += 1
        out.append(idx)
    return tuple(out)


# Seven reference keys for the fixed demo grids; expected index vectors were
# computed with linear_scan_indices and frozen here.
EXAMPLE_KEYS = (0.0, 1.4, 2.0, 3.2, 4.7, 6.0, 7.0)
EXAMPLE_EXPECTED = {
    0.0: (0, 0, 0),
    1.4: (0, 0, 0),
    2.0: (1, 0, 1),
    3.2: (2, 1, 2),
    4.7: (3, 3, 3),
    6.0: (4, 4, 3),
    7.0: (4, 5, 3),
}
