"""Cascade-grid predecessor search across many sorted energy grids.

One binary search plus a single comparison per further grid answers a
simultaneous predecessor query over a set of sorted grids. The package
bundles the structure itself, a naive per-grid oracle it is verified
against, cross-section interpolation on the returned indices, a
deterministic test-data generator, text and binary persistence, and a
differential verification and benchmark harness (also exposed as the
``fcgrid`` command line tool).
"""

from .bench import BenchReport, run_bench
from .batch import cascade_indices, naive_indices
from .cascade import (
    ENTRY_BYTES,
    ORIGINAL_FIRST,
    PROMOTED_FIRST,
    CascadeEntry,
    CascadeGrid,
    CascadeLevel,
    ComparisonCounter,
    LookupResult,
    LookupTrace,
    StructureStats,
    build_cascade,
    build_cascade_even_promotion,
    cascade_lookup,
    cascade_lookup_traced,
    naive_lookup,
    naive_lookup_counted,
    strict_predecessor,
    structure_stats,
)
from .errors import (
    BuildRejectionError,
    FcgridError,
    GridSetParseError,
    InvalidArgumentError,
    SnapshotError,
    StructureMismatchError,
)
from .gridgen import (
    GenSpec,
    adversarial_shapes,
    example_gridset,
    generate_gridset,
    generate_nuclide_tables,
    gridset_from_shape,
)
from .gridio import (
    GridSetDocument,
    decode_cascade,
    encode_cascade,
    parse_gridset,
    write_gridset,
)
from .grids import EnergyGrid, GridSet, validate_gridset
from .validate import Violation, validate_structure
from .verify import (
    Mismatch,
    VerifyReport,
    boundary_keys,
    random_gridsets,
    run_verification,
    verify_gridset,
)
from .xsec import (
    Material,
    NuclideTable,
    eval_macro,
    eval_micro_all,
    interp_sigma,
    tables_gridset,
)

__version__ = "0.1.0"

__all__ = [
    "BenchReport",
    "BuildRejectionError",
    "CascadeEntry",
    "CascadeGrid",
    "CascadeLevel",
    "ComparisonCounter",
    "ENTRY_BYTES",
    "EnergyGrid",
    "FcgridError",
    "GenSpec",
    "GridSet",
    "GridSetDocument",
    "GridSetParseError",
    "InvalidArgumentError",
    "LookupResult",
    "LookupTrace",
    "Material",
    "Mismatch",
    "NuclideTable",
    "ORIGINAL_FIRST",
    "PROMOTED_FIRST",
    "SnapshotError",
    "StructureMismatchError",
    "StructureStats",
    "VerifyReport",
    "Violation",
    "adversarial_shapes",
    "boundary_keys",
    "build_cascade",
    "build_cascade_even_promotion",
    "cascade_indices",
    "cascade_lookup",
    "cascade_lookup_traced",
    "decode_cascade",
    "encode_cascade",
    "eval_macro",
    "eval_micro_all",
    "example_gridset",
    "generate_gridset",
    "generate_nuclide_tables",
    "gridset_from_shape",
    "interp_sigma",
    "naive_indices",
    "naive_lookup",
    "naive_lookup_counted",
    "parse_gridset",
    "random_gridsets",
    "run_bench",
    "run_verification",
    "strict_predecessor",
    "structure_stats",
    "tables_gridset",
    "validate_gridset",
    "validate_structure",
    "verify_gridset",
    "write_gridset",
]
