"""Command-line front end.

Subcommands: ``analyze`` (full report for one datum), ``verify`` (property
sweep over an exhaustive corpus), ``enumerate`` (stream the corpus).

Exit codes: 0 success, 1 input error, 2 property violation found,
3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ._version import __version__
from .datum import (
    CorpusBounds,
    QuasiHomBranchSpec,
    datum_to_json,
    enumerate_corpus,
    from_monomial,
    from_power,
    from_quasihomogeneous,
    parse_datum,
    serialize_datum,
)
from .errors import CurveSpecError, InternalInconsistencyError
from .report import build_analysis, report_to_json
from .sweep import run_sweep


class _Parser(argparse.ArgumentParser):
    # bad flags are an input error (exit 1), never the violation code 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="milnor-lab", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    analyze = sub.add_parser("analyze", help="analyze one curve-spec")
    analyze.add_argument("spec", nargs="?",
                         help="curve-spec path, inline JSON, or '-' for stdin")
    analyze.add_argument("--family", choices=["monomial", "power", "quasihomogeneous"])
    analyze.add_argument("--p", type=int, help="monomial exponent p")
    analyze.add_argument("--q", type=int, help="monomial exponent q")
    analyze.add_argument("--base", help="power family: base curve-spec (path or inline)")
    analyze.add_argument("--exponent", type=int, help="power family: exponent")
    analyze.add_argument("--qh-branch", action="append", metavar="A:B:M",
                         help="quasihomogeneous branch, repeatable")
    analyze.add_argument("--out", help="write the report here instead of stdout")
    analyze.add_argument("--dump-snf", action="store_true",
                         help="print Smith normal form diagonals to stderr")
    analyze.set_defaults(func=cmd_analyze)

    verify = sub.add_parser("verify", help="run the property suite over a corpus")
    _add_bounds(verify)
    verify.add_argument("--properties",
                        help="comma-separated property names (default: full suite)")
    verify.add_argument("--jobs", type=int, default=None,
                        help="worker processes (default: MILNOR_LAB_JOBS or 1)")
    verify.set_defaults(func=cmd_verify)

    enum = sub.add_parser("enumerate", help="stream the corpus, one curve-spec per line")
    _add_bounds(enum)
    enum.set_defaults(func=cmd_enumerate)
    return parser


def _add_bounds(parser):
    parser.add_argument("--max-branches", type=int, required=True)
    parser.add_argument("--max-mult", type=int, required=True)
    parser.add_argument("--max-delta", type=int, required=True)
    parser.add_argument("--max-int", type=int, required=True)


def _load_datum(args):
    if args.family:
        if args.spec is not None:
            raise CurveSpecError("give either a spec or --family, not both")
        if args.family == "monomial":
            if args.p is None or args.q is None:
                raise CurveSpecError("monomial family needs --p and --q")
            return from_monomial(args.p, args.q)
        if args.family == "power":
            if args.base is None or args.exponent is None:
                raise CurveSpecError("power family needs --base and --exponent")
            return from_power(_read_spec(args.base), args.exponent)
        branches = []
        for item in args.qh_branch or []:
            parts = item.split(":")
            if len(parts) != 3:
                raise CurveSpecError(f"bad --qh-branch {item!r}, expected A:B:M")
            try:
                a, b, m = (int(p) for p in parts)
            except ValueError as exc:
                raise CurveSpecError(f"bad --qh-branch {item!r}: {exc}") from exc
            branches.append(QuasiHomBranchSpec(a, b, m))
        if not branches:
            raise CurveSpecError("quasihomogeneous family needs --qh-branch")
        return from_quasihomogeneous(branches)
    if args.spec is None:
        raise CurveSpecError("no curve-spec given (pass a path, inline JSON, or --family)")
    return _read_spec(args.spec)


def _read_spec(source: str):
    if source == "-":
        return parse_datum(sys.stdin.read())
    stripped = source.lstrip()
    if stripped.startswith("{"):
        return parse_datum(source)
    path = Path(source)
    if not path.exists():
        raise CurveSpecError(f"no such file: {source}")
    return parse_datum(path.read_text(encoding="utf-8"))


def cmd_analyze(args) -> int:
    datum = _load_datum(args)
    report, snf_lines = build_analysis(datum, include_snf=args.dump_snf)
    text = report_to_json(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    for line in snf_lines:
        print(line, file=sys.stderr)
    return 0


def _bounds_from_args(args) -> CorpusBounds:
    return CorpusBounds(args.max_branches, args.max_mult, args.max_delta, args.max_int)


def cmd_verify(args) -> int:
    bounds = _bounds_from_args(args)
    properties = None
    if args.properties:
        properties = [p.strip() for p in args.properties.split(",") if p.strip()]
    jobs = args.jobs
    if jobs is None:
        jobs = int(os.environ.get("MILNOR_LAB_JOBS", "1"))
    if jobs < 1:
        raise CurveSpecError("--jobs must be >= 1")
    result = run_sweep(bounds, properties, jobs)
    payload = {
        "bounds": {
            "max_branches": bounds.max_branches,
            "max_multiplicity": bounds.max_multiplicity,
            "max_delta": bounds.max_delta,
            "max_intersection": bounds.max_intersection,
        },
        "properties": list(result.properties),
        "checked": result.checked,
        "violations": [
            {
                "datum": serialize_datum(v.datum),
                "property": v.prop,
                "expected": v.expected,
                "got": v.got,
                "documented": v.documented,
            }
            for v in result.violations
        ],
    }
    # elapsed goes to stderr only: stdout must be byte-identical across runs
    sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    print(
        f"checked {result.checked} datums in {result.elapsed:.2f}s "
        f"({jobs} job{'s' if jobs != 1 else ''}); "
        f"{len(result.violations)} violation{'s' if len(result.violations) != 1 else ''}",
        file=sys.stderr,
    )
    return 2 if result.violations else 0


def cmd_enumerate(args) -> int:
    bounds = _bounds_from_args(args)
    for datum in enumerate_corpus(bounds):
        sys.stdout.write(datum_to_json(datum) + "\n")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CurveSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
