"""Command line interface: gen, build, query, verify, bench, stats.

Exit codes are uniform across subcommands: 0 for success/agreement, 1
for a property violation or index mismatch, 2 for usage, IO, or parse
errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import run_bench
from .cascade import (
    build_cascade,
    cascade_lookup_traced,
    naive_lookup,
    structure_stats,
)
from .errors import FcgridError
from .gridgen import GenSpec, example_gridset, generate_gridset, generate_nuclide_tables
from .gridio import GridSetDocument, decode_cascade, encode_cascade, parse_gridset, write_gridset
from .grids import GridSet
from .validate import validate_structure
from .verify import random_gridsets, run_verification
from .xsec import interp_sigma

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _print_rows(rows, tsv: bool) -> None:
    if tsv:
        for key, value in rows:
            print(f"{key}\t{value}")
    else:
        width = max(len(key) for key, _ in rows)
        for key, value in rows:
            print(f"{key:<{width}}  {value}")


def _stats_rows(stats) -> list[tuple[str, str]]:
    return [
        ("grids", str(stats.k)),
        ("level sizes", " ".join(str(n) for n in stats.level_sizes)),
        ("total entries", str(stats.total_entries)),
        ("grid points", str(stats.total_grid_points)),
        ("size ratio", f"{stats.size_ratio:.3f}"),
        ("memory bytes", str(stats.memory_bytes)),
    ]


def _load_document(path: str) -> GridSetDocument:
    return parse_gridset(Path(path).read_text())


def cmd_gen(args) -> int:
    if args.example:
        grids = example_gridset()
        sigma = tuple(grid.values for grid in grids.grids) if args.sigma else None
    else:
        if args.k is None or args.min_size is None or args.max_size is None:
            print("error: gen needs --k, --min-size and --max-size (or --example)", file=sys.stderr)
            return EXIT_USAGE
        spec = GenSpec(
            k=args.k,
            size_min=args.min_size,
            size_max=args.max_size,
            energy_min=args.emin,
            energy_max=args.emax,
            duplicate_fraction=args.dup_fraction,
            seed=args.seed,
        )
        if args.sigma:
            tables = generate_nuclide_tables(spec)
            grids = GridSet(tuple(t.grid for t in tables))
            sigma = tuple(t.sigma for t in tables)
        else:
            grids = generate_gridset(spec)
            sigma = None
    doc = GridSetDocument(grids, sigma)
    Path(args.out).write_text(write_gridset(doc))
    print(f"wrote {args.out}: {grids.k} grids, {grids.total_points} points")
    return EXIT_OK


def cmd_build(args) -> int:
    doc = _load_document(args.grids)
    cascade = build_cascade(doc.grids)
    violations = validate_structure(cascade, doc.grids)
    if violations:
        for v in violations[:8]:
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_VIOLATION
    Path(args.out).write_bytes(encode_cascade(cascade))
    _print_rows(_stats_rows(structure_stats(cascade)), args.tsv)
    return EXIT_OK


def cmd_query(args) -> int:
    doc = _load_document(args.grids)
    if args.cascade:
        cascade = decode_cascade(Path(args.cascade).read_bytes())
    else:
        cascade = build_cascade(doc.grids)
    tables = doc.tables() if doc.sigma is not None else None
    trace = cascade_lookup_traced(cascade, doc.grids, args.key)
    naive = naive_lookup(doc.grids, args.key)
    agree = True
    for i, (fc_idx, nv_idx) in enumerate(zip(trace.result.indices, naive.indices)):
        line = f"grid {i + 1}: fc={fc_idx} naive={nv_idx}"
        if tables is not None:
            line += f" sigma={interp_sigma(tables[i], fc_idx, args.key)!r}"
        if fc_idx != nv_idx:
            agree = False
        print(line)
    if args.stats:
        print(f"binary search comparisons: {trace.binary_search_comparisons}")
        per = " ".join(str(c) for c in trace.per_level_comparisons) or "-"
        print(f"per-level comparisons: {per}")
        print(f"total comparisons: {trace.total_comparisons}")
    print("MATCH" if agree else "MISMATCH")
    return EXIT_OK if agree else EXIT_VIOLATION


def cmd_verify(args) -> int:
    if args.grids:
        gridsets = [_load_document(args.grids).grids]
        cascade = None
        if args.cascade:
            cascade = decode_cascade(Path(args.cascade).read_bytes(), validate=False)
    else:
        gridsets = random_gridsets(args.random, args.seed)
        cascade = None
    report = run_verification(
        gridsets, random_keys=args.keys, seed=args.seed, cascade=cascade
    )
    _print_rows(report.rows(), args.tsv)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_bench(args) -> int:
    doc = _load_document(args.grids)
    report = run_bench(doc.grids, queries=args.queries, seed=args.seed)
    _print_rows(report.rows(), args.tsv)
    return EXIT_OK if report.bound_ok else EXIT_VIOLATION


def cmd_stats(args) -> int:
    doc = _load_document(args.grids)
    cascade = build_cascade(doc.grids)
    stats = structure_stats(cascade)
    cap = 2 * stats.total_grid_points
    ok = stats.total_entries <= cap
    rows = _stats_rows(stats)
    rows.append(("size bound", f"{'PASS' if ok else 'FAIL'} ({stats.total_entries} <= {cap})"))
    _print_rows(rows, args.tsv)
    return EXIT_OK if ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fcgrid",
        description="Cascade-grid predecessor search over sets of sorted energy grids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a grid set document")
    p.add_argument("--k", type=_positive_int, help="number of grids")
    p.add_argument("--min-size", type=_positive_int, help="smallest grid size")
    p.add_argument("--max-size", type=_positive_int, help="largest grid size")
    p.add_argument("--emin", type=float, default=1.0e-5, help="lowest energy (eV)")
    p.add_argument("--emax", type=float, default=2.0e7, help="highest energy (eV)")
    p.add_argument("--dup-fraction", type=float, default=0.0, help="fraction of duplicated points")
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--sigma", action="store_true", help="include a sigma block")
    p.add_argument("--example", action="store_true", help="write the fixed demo fixture")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen, tsv=False)

    p = sub.add_parser("build", help="build a cascade and write its snapshot")
    p.add_argument("--grids", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--tsv", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="look one key up through both paths")
    p.add_argument("--grids", required=True)
    p.add_argument("--cascade", help="snapshot to query instead of a fresh build")
    p.add_argument("--key", type=float, required=True)
    p.add_argument("--stats", action="store_true", help="print comparison counts")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="differential and structural verification")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--grids", help="verify this grid set document")
    group.add_argument("--random", type=_positive_int, help="verify N generated grid sets")
    p.add_argument("--cascade", help="snapshot to verify against --grids")
    p.add_argument("--keys", type=_nonneg_int, default=1000, help="random keys per grid set")
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--tsv", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time cascade vs naive lookups")
    p.add_argument("--grids", required=True)
    p.add_argument("--queries", type=_positive_int, default=10000)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--tsv", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("stats", help="structure sizes and the size-bound check")
    p.add_argument("--grids", required=True)
    p.add_argument("--tsv", action="store_true")
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "cascade", None) and args.command == "verify" and not args.grids:
        parser.error("--cascade requires --grids")
    try:
        return args.func(args)
    except FcgridError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
