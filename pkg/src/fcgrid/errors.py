"""Exception hierarchy for the fcgrid package."""


class FcgridError(ValueError):
    """Base class for every error raised by this package."""


class InvalidArgumentError(FcgridError):
    """An argument violates a documented precondition (NaN key, bad index, ...)."""


class BuildRejectionError(FcgridError):
    """Input grids are unusable for construction; names the offending grid and position."""

    def __init__(self, message: str, grid: int | None = None, index: int | None = None):
        self.grid = grid
        self.index = index
        super().__init__(message)


class StructureMismatchError(FcgridError):
    """A cascade and a grid set disagree in shape (grid count or grid sizes)."""


class GridSetParseError(FcgridError):
    """Malformed grid set document; carries the 1-based source line when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class SnapshotError(FcgridError):
    """Corrupt, truncated, or unsupported cascade snapshot."""
