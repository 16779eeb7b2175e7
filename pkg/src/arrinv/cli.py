"""Command line front end: analyze | realize | compare | census.

Exit codes: 0 success, 2 parse error, 3 invariant violation (e.g. repeated
lines), 4 out-of-range realize parameters, 5 census mismatch.
"""

from __future__ import annotations

import argparse
import sys

from . import milnor, strata
from .errors import (
    ArrangementError,
    InvariantViolationError,
    NonIsolatedSingularitiesError,
    UnrealizableError,
)
from .files import (
    FileFormatError,
    arrangement_to_dict,
    build_comparison,
    build_report,
    dump_json,
    load_arrangement,
)
from .lattice import NamedLattice, realize

EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_PARAMS = 4
EXIT_CENSUS = 5


def _engine_config(args, default_certified: bool) -> milnor.EngineConfig:
    certified = default_certified
    if args.certified:
        certified = True
    if args.no_certified:
        certified = False
    return milnor.EngineConfig(
        certified=certified, num_primes=args.primes, seed=args.seed
    )


def _add_engine_flags(parser):
    parser.add_argument("--certified", action="store_true", help="exact rank mode")
    parser.add_argument(
        "--no-certified", action="store_true", help="multi-prime modular rank mode"
    )
    parser.add_argument("--primes", type=int, default=3, help="number of random primes")
    parser.add_argument("--seed", type=int, default=milnor.DEFAULT_CONFIG.seed)


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    arr, label = load_arrangement(args.path)
    config = _engine_config(args, default_certified=False)
    report = build_report(arr, label, config, cap=args.cap, variant=args.variant)
    _emit(dump_json(report), args.out)
    return 0


def cmd_realize(args) -> int:
    spec = NamedLattice.parse(args.family)
    arr = realize(spec)
    _emit(dump_json(arrangement_to_dict(arr, label=str(spec))), args.out)
    return 0


def cmd_compare(args) -> int:
    config = _engine_config(args, default_certified=False)
    arr_a, label_a = load_arrangement(args.path_a)
    arr_b, label_b = load_arrangement(args.path_b)
    rep_a = build_report(arr_a, label_a, config, cap=args.cap, variant=args.variant)
    rep_b = build_report(arr_b, label_b, config, cap=args.cap, variant=args.variant)
    _emit(dump_json(build_comparison(rep_a, rep_b)), args.out)
    return 0


def cmd_census(args) -> int:
    config_certified = not args.no_certified
    report = strata.census(
        args.d, certified=config_certified, num_primes=args.primes, seed=args.seed
    )
    lines = [f"census d={args.d} (certified={config_certified})"]
    for row in report.rows:
        for cell in row.cells:
            status = "PASS" if cell.passed else "FAIL"
            lines.append(
                f"  [{status}] {row.family:>18} {cell.name}: "
                f"expected {cell.expected!r}, got {cell.actual!r}"
            )
    for cell in report.extra_checks:
        status = "PASS" if cell.passed else "FAIL"
        lines.append(
            f"  [{status}] {'(table-wide)':>18} {cell.name}: "
            f"expected {cell.expected!r}, got {cell.actual!r}"
        )
    lines.append("census result: " + ("ALL PASS" if report.passed else "FAILURES"))
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if report.passed else EXIT_CENSUS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arrinv",
        description="Exact invariants of line arrangements over the rationals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full invariant report for an arrangement file")
    p.add_argument("path")
    p.add_argument("--out", default=None)
    p.add_argument("--cap", type=int, default=None, help="degree cap override")
    p.add_argument("--variant", choices=("E", "Eprime"), default="E")
    _add_engine_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("realize", help="write a named-family arrangement file")
    p.add_argument("family", help="e.g. L(6,4), generic(5), Lhat(3,4), ziegler_A")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("compare", help="side-by-side reports with lattice verdict")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.add_argument("--out", default=None)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--variant", choices=("E", "Eprime"), default="E")
    _add_engine_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("census", help="verify the d = 4, 5 or 6 stratum table")
    p.add_argument("d", type=int, choices=(4, 5, 6))
    p.add_argument("--out", default=None)
    p.add_argument("--certified", action="store_true")
    p.add_argument("--no-certified", action="store_true")
    p.add_argument("--primes", type=int, default=3)
    p.add_argument("--seed", type=int, default=milnor.DEFAULT_CONFIG.seed)
    p.set_defaults(func=cmd_census)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileFormatError as exc:
        print(f"arrinv: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ArrangementError, NonIsolatedSingularitiesError, InvariantViolationError) as exc:
        print(f"arrinv: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except UnrealizableError as exc:
        print(f"arrinv: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
