"""Command-line entry point: ``choiduality <command> ...``.

Exit status: 0 success / valid / holds, 1 invalid verdict or failing
check, 2 unreadable input, 3 input violating a basis or shape invariant.
"""

from __future__ import annotations

import argparse
import json
import sys
import time


from . import __version__
from .audit import AuditReport, run_audit
from .bases import BasisError, basis_validity
from .cases import run_case
from .maps import choi_matrix, choi_psd_verdict
from .matrix_core import DEFAULT_TOL, DimensionError
from .serialization import (
    SchemaError,
    basis_from_json,
    load_json,
    map_from_json,
    matrix_to_json,
    supermap_basis_from_json,
)
from .supermaps import correspondence_check_basis

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_INVARIANT = 0, 1, 2, 3


def _emit(report: dict, as_json: bool, out=None):
    out = out or sys.stdout
    if as_json:
        json.dump(report, out, indent=1)
        out.write("\n")
        return
    for key, value in report.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            out.write(f"{key}:\n")
            for item in value:
                status = "PASS" if item.get("passed", item.get("holds")) else "FAIL"
                out.write(f"  [{status}] {item.get('name', item)}\n")
        elif isinstance(value, (list, dict)):
            out.write(f"{key}: {json.dumps(value)}\n")
        else:
            out.write(f"{key}: {value}\n")


def _report(command, tol, verdicts, spectra=(), seed=0, trials=1, start=None) -> AuditReport:
    elapsed = int((time.perf_counter() - start) * 1000) if start else 0
    return AuditReport(command, seed, trials, list(verdicts), list(spectra), elapsed, tol)


def cmd_demo(args, tol) -> int:
    start = time.perf_counter()
    result = run_case(args.example, tol)
    spectra = [result["spectrum"]] if "spectrum" in result else []
    report = _report(f"demo {args.example}", tol, [result], spectra, start=start)
    _emit(report.to_dict(), args.json)
    return EXIT_OK if result["passed"] else EXIT_INVALID


def cmd_check_basis(args, tol) -> int:
    start = time.perf_counter()
    basis = basis_from_json(load_json(args.file))
    verdict = basis_validity(basis, tol)
    report = _report("check-basis", tol, [verdict.summary()], [list(verdict.spectrum)], start=start)
    _emit(report.to_dict(), args.json)
    return EXIT_OK if verdict.valid else EXIT_INVALID


def cmd_check_supermap_basis(args, tol) -> int:
    start = time.perf_counter()
    basis = supermap_basis_from_json(load_json(args.file))
    verdict = correspondence_check_basis(basis, tol)
    report = _report("check-supermap-basis", tol, [verdict.summary()], [list(verdict.spectrum)], start=start)
    _emit(report.to_dict(), args.json)
    return EXIT_OK if verdict.holds else EXIT_INVALID


def cmd_choi(args, tol) -> int:
    start = time.perf_counter()
    phi = map_from_json(load_json(args.map))
    basis = basis_from_json(load_json(args.basis)) if args.basis else None
    c = choi_matrix(phi, basis)
    verdict = choi_psd_verdict(c, tol)
    summary = verdict.summary()
    summary["choi_matrix"] = matrix_to_json(c)
    report = _report("choi", tol, [summary], [list(verdict.spectrum)], start=start)
    _emit(report.to_dict(), args.json)
    return EXIT_OK


def cmd_audit(args, tol) -> int:
    report = run_audit(args.suite, args.trials, args.seed, args.dim, tol)
    _emit(report.to_dict(), args.json)
    return EXIT_OK if report.passed else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    def shared(defaults: bool) -> argparse.ArgumentParser:
        # Sub-commands must not reset values given before the command name.
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument(
            "--json", action="store_true", default=False if defaults else argparse.SUPPRESS,
            help="machine-readable JSON output",
        )
        p.add_argument(
            "--tol", action="append", default=[] if defaults else argparse.SUPPRESS,
            metavar="KEY=VALUE", help="override a tolerance (repeatable)",
        )
        return p

    common = shared(defaults=False)
    parser = argparse.ArgumentParser(
        prog="choiduality", description=__doc__.splitlines()[0], parents=[shared(defaults=True)]
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("demo", parents=[common], help="rebuild one of the worked examples")
    p.add_argument("example", type=int, choices=[1, 2, 3, 4])
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("check-basis", parents=[common], help="test an operator basis")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_basis)

    p = sub.add_parser("check-supermap-basis", parents=[common], help="test a super-map basis")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_supermap_basis)

    p = sub.add_parser("choi", parents=[common], help="Choi matrix of a map in a basis")
    p.add_argument("--map", required=True)
    p.add_argument("--basis", default=None, help="operator basis JSON (canonical if omitted)")
    p.set_defaults(func=cmd_choi)

    p = sub.add_parser("audit", parents=[common], help="run randomised property suites")
    p.add_argument("--suite", choices=["props", "theorems", "all"], default="all")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--dim", type=int, default=2)
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = DEFAULT_TOL.with_overrides(args.tol)
    except ValueError as exc:
        parser.error(str(exc))
    if getattr(args, "trials", 1) < 1:
        parser.error("--trials must be >= 1")
    try:
        return args.func(args, tol)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (BasisError, DimensionError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
