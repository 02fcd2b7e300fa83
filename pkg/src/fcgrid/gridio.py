"""Text documents for grid sets and binary snapshots for built cascades.

Text format (whitespace separated, ``#`` starts a comment anywhere):

    k                       # number of grids
    n_1                     # size of grid 1
    v_1 ... v_{n_1}         # its values, ascending
    ...                     # repeat per grid
    sigma                   # optional block, same shape as the grids
    n_1
    s_1 ... s_{n_1}
    ...

Values are written with the shortest representation that round-trips a
64-bit float, so ``parse(write(g)) == g`` exactly.

Snapshot format: magic ``FCG1``, one version octet, then little-endian:
``k`` as u64, the k original grid sizes (u64 each), and per level its
entry count (u64) followed by (value f64, grid-predecessor i64,
bridge i64) triples. The last level stores -1 bridges. Decoding checks
framing exactly and re-validates every structural invariant.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from .cascade import CascadeGrid, CascadeLevel
from .errors import GridSetParseError, InvalidArgumentError, SnapshotError
from .grids import GridSet
from .validate import validate_structure
from .xsec import NuclideTable

_MAGIC = b"FCG1"
_VERSION = 1
_LEVEL_ENTRY = np.dtype([("value", "<f8"), ("grid_index", "<i8"), ("bridge", "<i8")])


@dataclass(frozen=True)
class GridSetDocument:
    """Parsed grid set text, with the optional per-grid sigma columns."""

    grids: GridSet
    sigma: tuple[tuple[float, ...], ...] | None = None

    def tables(self) -> tuple[NuclideTable, ...]:
        if self.sigma is None:
            raise InvalidArgumentError("document has no sigma block")
        return tuple(NuclideTable(g, s) for g, s in zip(self.grids.grids, self.sigma))


class _Tokens:
    def __init__(self, text: str):
        self.items: list[tuple[str, int]] = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            body = line.split("#", 1)[0]
            for tok in body.split():
                self.items.append((tok, lineno))
        self.pos = 0
        self.last_line = len(text.splitlines()) or 1

    def peek(self) -> tuple[str, int] | None:
        return self.items[self.pos] if self.pos < len(self.items) else None

    def take(self, what: str) -> tuple[str, int]:
        if self.pos >= len(self.items):
            raise GridSetParseError(f"unexpected end of document, expected {what}", self.last_line)
        tok = self.items[self.pos]
        self.pos += 1
        return tok

    def take_int(self, what: str, minimum: int) -> int:
        tok, line = self.take(what)
        try:
            value = int(tok)
        except ValueError:
            raise GridSetParseError(f"malformed {what}: {tok!r}", line) from None
        if value < minimum:
            raise GridSetParseError(f"{what} must be >= {minimum}, got {value}", line)
        return value

    def take_float(self, what: str) -> tuple[float, int]:
        tok, line = self.take(what)
        try:
            value = float(tok)
        except ValueError:
            raise GridSetParseError(f"non-numeric token {tok!r} for {what}", line) from None
        if not math.isfinite(value):
            raise GridSetParseError(f"non-finite {what}: {tok!r}", line)
        return value, line


def parse_gridset(text: str) -> GridSetDocument:
    """Parse the text grid set format with line-accurate diagnostics."""
    tokens = _Tokens(text)
    k = tokens.take_int("grid count", 1)
    grids: list[tuple[float, ...]] = []
    for g in range(1, k + 1):
        n = tokens.take_int(f"size of grid {g}", 1)
        vals: list[float] = []
        for t in range(n):
            v, line = tokens.take_float(f"grid {g} value {t}")
            if vals and v < vals[-1]:
                raise GridSetParseError(f"grid {g} not sorted at position {t}", line)
            vals.append(v)
        grids.append(tuple(vals))
    sigma = None
    nxt = tokens.peek()
    if nxt is not None and nxt[0] == "sigma":
        tokens.take("sigma marker")
        blocks: list[tuple[float, ...]] = []
        for g in range(1, k + 1):
            n = tokens.take_int(f"sigma size for grid {g}", 1)
            if n != len(grids[g - 1]):
                raise GridSetParseError(
                    f"sigma block for grid {g} has size {n}, expected {len(grids[g - 1])}",
                    tokens.items[tokens.pos - 1][1],
                )
            block: list[float] = []
            for t in range(n):
                s, line = tokens.take_float(f"sigma value {t} of grid {g}")
                if s < 0.0:
                    raise GridSetParseError(f"sigma value must be >= 0, got {s!r}", line)
                block.append(s)
            blocks.append(tuple(block))
        sigma = tuple(blocks)
    extra = tokens.peek()
    if extra is not None:
        raise GridSetParseError(f"unexpected trailing token {extra[0]!r}", extra[1])
    return GridSetDocument(GridSet(tuple(grids)), sigma)


def write_gridset(doc: GridSetDocument | GridSet) -> str:
    """Canonical text form; stable across runs and exact under parse."""
    if isinstance(doc, GridSet):
        doc = GridSetDocument(doc)
    lines = [str(doc.grids.k)]
    for grid in doc.grids.grids:
        lines.append(str(len(grid)))
        lines.append(" ".join(repr(v) for v in grid.values))
    if doc.sigma is not None:
        lines.append("sigma")
        for grid, block in zip(doc.grids.grids, doc.sigma):
            lines.append(str(len(grid)))
            lines.append(" ".join(repr(s) for s in block))
    return "\n".join(lines) + "\n"


def encode_cascade(cascade: CascadeGrid) -> bytes:
    """Fixed-width little-endian snapshot of a built cascade."""
    k = cascade.k
    parts = [
        _MAGIC,
        bytes([_VERSION]),
        struct.pack("<Q", k),
        struct.pack(f"<{k}Q", *cascade.grid_sizes),
    ]
    for level in cascade.levels:
        n = len(level)
        parts.append(struct.pack("<Q", n))
        arr = np.empty(n, dtype=_LEVEL_ENTRY)
        arr["value"] = level.values_array
        arr["grid_index"] = level.grid_index_array
        arr["bridge"] = -1 if level.bridge_array is None else level.bridge_array
        parts.append(arr.tobytes())
    return b"".join(parts)


def decode_cascade(data: bytes, validate: bool = True) -> CascadeGrid:
    """Restore a snapshot, re-checking framing and (by default) every invariant."""
    if len(data) < len(_MAGIC) or data[: len(_MAGIC)] != _MAGIC:
        raise SnapshotError("bad magic")
    off = len(_MAGIC)
    if len(data) < off + 1:
        raise SnapshotError("truncated before version octet")
    version = data[off]
    off += 1
    if version != _VERSION:
        raise SnapshotError(f"unsupported version {version}")

    def need(nbytes: int, what: str) -> None:
        if len(data) < off + nbytes:
            raise SnapshotError(f"truncated in {what}")

    need(8, "grid count")
    (k,) = struct.unpack_from("<Q", data, off)
    off += 8
    if k == 0:
        raise SnapshotError("grid count is zero")
    need(8 * k, "grid sizes")
    grid_sizes = struct.unpack_from(f"<{k}Q", data, off)
    off += 8 * k
    if min(grid_sizes) == 0:
        raise SnapshotError("zero grid size")

    levels: list[CascadeLevel] = []
    for i in range(k):
        need(8, f"entry count of level {i + 1}")
        (n,) = struct.unpack_from("<Q", data, off)
        off += 8
        if n == 0:
            raise SnapshotError(f"level {i + 1} is empty")
        need(n * _LEVEL_ENTRY.itemsize, f"entries of level {i + 1}")
        arr = np.frombuffer(data, dtype=_LEVEL_ENTRY, count=n, offset=off)
        off += n * _LEVEL_ENTRY.itemsize
        bridge: tuple[int, ...] | None
        if i == k - 1:
            if (arr["bridge"] != -1).any():
                raise SnapshotError("last level carries a bridge other than -1")
            bridge = None
        else:
            bridge = tuple(int(b) for b in arr["bridge"])
        levels.append(
            CascadeLevel(
                tuple(arr["value"].tolist()),
                tuple(int(g) for g in arr["grid_index"]),
                bridge,
            )
        )
    if off != len(data):
        raise SnapshotError(f"{len(data) - off} trailing bytes after last level")

    cascade = CascadeGrid(tuple(levels), tuple(int(s) for s in grid_sizes))
    if validate:
        violations = validate_structure(cascade)
        if violations:
            raise SnapshotError(
                f"invariant violation ({len(violations)} total): {violations[0]}"
            )
    return cascade
