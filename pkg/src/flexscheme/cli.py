"""Command line entry point: ``flexscheme <command> ...``.

Exit codes: 0 success, 1 bounded failure or mismatch, 2 timeout,
3 resource limit, 64 usage error, 65 malformed input file, 66 missing file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import classes, oracle
from .census import parse_family, run_census, summarize, symmetry_classes
from .classes import ResourceLimit
from .discovery import SearchBounds, discover
from .perms import Basis, InvalidInput, symmetry_class
from .scheme import Scheme, SchemeFormatError, TermCounter, enumerate_terms, validate

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_TIMEOUT = 2
EXIT_LIMIT = 3
EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_NOINPUT = 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _basis_from(values: list[str] | None) -> Basis:
    if not values:
        raise UsageError("--basis is required")
    pats = []
    for v in values:
        pats.extend(s for s in v.replace(" ", "").split(";") if s)
    if not pats:
        raise UsageError("empty basis")
    try:
        return Basis.parse(";".join(pats))
    except InvalidInput as exc:
        raise UsageError(str(exc)) from None


def _bounds(args) -> SearchBounds:
    try:
        return SearchBounds(args.max_depth, args.max_gap, args.time_budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(payload, out: str | None) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_scheme(path: str) -> Scheme:
    if not Path(path).is_file():
        raise FileNotFoundError(path)
    scheme = Scheme.load(path)
    problems = validate(scheme)
    if problems:
        raise SchemeFormatError("; ".join(problems))
    return scheme


def cmd_discover(args) -> int:
    basis = _basis_from(args.basis)
    mode = args.mode.upper()
    result = discover(basis, _bounds(args), mode, args.try_symmetries)
    if result.ok:
        _emit(result.scheme.dumps(), args.output)
        return EXIT_OK
    _emit(result.report(), args.report)
    return EXIT_TIMEOUT if result.status == "timeout" else EXIT_FAIL


def cmd_enumerate(args) -> int:
    scheme = _load_scheme(args.scheme)
    seq = enumerate_terms(scheme, args.n)
    if args.json:
        _emit({"basis": scheme.basis.texts(), "terms": list(seq.terms)}, None)
    else:
        sys.stdout.write("".join(f"{t}\n" for t in seq.terms))
    return EXIT_OK


def cmd_verify(args) -> int:
    scheme = _load_scheme(args.scheme)
    truth = oracle.brute_sequence(scheme.basis, args.n_max, args.cap).terms
    ours = enumerate_terms(scheme, args.n_max, TermCounter(scheme)).terms
    for n, (a, b) in enumerate(zip(ours, truth)):
        if a != b:
            print(f"MISMATCH n={n}: scheme {a} oracle {b}")
            return EXIT_FAIL
    print(f"OK 0..{args.n_max}")
    return EXIT_OK


def cmd_census(args) -> int:
    try:
        lengths = parse_family(args.family)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.classes_only:
        reps = symmetry_classes(lengths)
        _emit({"family": args.family, "sym_classes": len(reps), "classes": [b.texts() for b in reps]}, None)
        return EXIT_OK
    rows = []
    for row in run_census(lengths, _bounds(args), not args.no_symmetries, args.jobs):
        rows.append(row)
        print(json.dumps(row.as_dict()), flush=True)
    print(json.dumps(summarize(lengths, rows)), flush=True)
    return EXIT_OK


def cmd_oracle(args) -> int:
    basis = _basis_from(args.basis)
    seq = oracle.brute_sequence(basis, args.n, args.cap)
    if args.json:
        _emit({"basis": basis.texts(), "terms": list(seq.terms)}, None)
    else:
        sys.stdout.write("".join(f"{t}\n" for t in seq.terms))
    return EXIT_OK


def cmd_symmetries(args) -> int:
    basis = _basis_from(args.basis)
    members, rep = symmetry_class(basis)
    _emit({"basis": basis.texts(), "representative": rep.texts(), "class": [m.texts() for m in members]}, None)
    return EXIT_OK


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        return default


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flexscheme", description="Discover and run flexible enumeration schemes.")
    parser.add_argument("--y-cap", type=int, default=_env_int("FLEXSCHEME_Y_CAP", classes.DEFAULT_CAP),
                        help="largest gap norm brute-forced when counting (default 10)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def search_flags(p):
        p.add_argument("--max-depth", type=int, default=8)
        p.add_argument("--max-gap", type=int, default=2)
        p.add_argument("--time-budget", type=float, default=None, help="seconds")

    p = sub.add_parser("discover", help="search for a scheme")
    p.add_argument("--basis", action="append", help='patterns, e.g. "1423;2314"; may repeat')
    search_flags(p)
    p.add_argument("--mode", choices=["fs", "es", "FS", "ES"], default="fs")
    p.add_argument("--try-symmetries", action="store_true")
    p.add_argument("-o", "--output", help="scheme file to write (default stdout)")
    p.add_argument("--report", help="failure report file (default stdout)")
    p.set_defaults(func=cmd_discover)

    oracle_cap = _env_int("FLEXSCHEME_ORACLE_CAP", oracle.ORACLE_CAP)

    p = sub.add_parser("enumerate", help="count a class with a scheme")
    p.add_argument("--scheme", required=True)
    p.add_argument("-n", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="compare a scheme with the brute-force oracle")
    p.add_argument("--scheme", required=True)
    p.add_argument("--n-max", type=int, default=9)
    p.add_argument("--cap", type=int, default=oracle_cap)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census", help="ES/FS discovery over a pattern family")
    p.add_argument("--family", required=True, help='pattern lengths, e.g. "4,4"')
    search_flags(p)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-symmetries", action="store_true")
    p.add_argument("--classes-only", action="store_true", help="only count symmetry classes")
    p.set_defaults(func=cmd_census, time_budget=60.0)

    p = sub.add_parser("oracle", help="brute-force enumeration")
    p.add_argument("--basis", action="append")
    p.add_argument("-n", type=int, default=9)
    p.add_argument("--cap", type=int, default=oracle_cap)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("symmetries", help="symmetry class of a basis")
    p.add_argument("--basis", action="append")
    p.set_defaults(func=cmd_symmetries)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    classes.set_cap(args.y_cap)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"flexscheme: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"flexscheme: no such file: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except SchemeFormatError as exc:
        print(f"flexscheme: bad scheme: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    except ResourceLimit as exc:
        print(f"flexscheme: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
