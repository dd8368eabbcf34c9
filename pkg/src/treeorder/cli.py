"""Command-line interface.

Exit codes: 0 for a positive decision, 1 for a negative one, 2 for bad input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .construction import build_realization
from .errors import CapExceededError, FormatError, TreeOrderError
from .oracle import DEFAULT_CAP, brute_realizable, census, sat_bruteforce
from .reduction import Assignment, SatCase, encode, extract_assignment, is_satisfied, parse_case
from .splits import check_realization
from .structures import to_midpoints, to_triples
from .warnow import warnow_probe

OK, NO, BAD_INPUT = 0, 1, 2

DEFAULT_WARNOW_CLAUSE = "p cnf 3 1\n1 2 3 0\n"


def _read(path) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_case(args) -> SatCase:
    return parse_case(_read(args.input))


def cmd_encode(args) -> int:
    P = _load_case(args)
    m = encode(P)
    _write(args.output, io.dump_midpoints(m))
    print(f"|X| = {m.ground.n}", file=sys.stderr if args.output in (None, "-") else sys.stdout)
    return OK


def cmd_convert(args) -> int:
    text = _read(args.input)
    head = next((ln.strip() for ln in text.splitlines() if ln.strip()), "")
    if head == io.MIDPOINTS_HEADER:
        _write(args.output, io.dump_triples(to_triples(io.load_midpoints(text))))
    elif head == io.TRIPLES_HEADER:
        _write(args.output, io.dump_midpoints(to_midpoints(io.load_triples(text))))
    else:
        raise FormatError(f"not a structure file: {head!r}")
    return OK


def cmd_check(args) -> int:
    m = io.load_midpoints(_read(args.input))
    t = io.load_tree(_read(args.tree), m.ground)
    report = check_realization(m, t)
    _write(args.output, io.dump_report(report, only_violations=args.violations_only))
    if args.output not in (None, "-"):
        print(report.summary())
    return OK if report.ok else NO


def cmd_realize(args) -> int:
    P = _load_case(args)
    h = Assignment.parse(args.assignment)
    t, report = build_realization(P, h)
    _write(args.output, io.dump_tree(t))
    if args.report:
        _write(args.report, io.dump_report(report, only_violations=True))
    sat = "satisfying" if is_satisfied(P, h) else "non-satisfying"
    print(f"{sat} assignment {h}: {report.summary()}", file=sys.stderr)
    return OK if report.ok else NO


def cmd_extract(args) -> int:
    P = _load_case(args)
    t = io.load_tree(_read(args.tree))
    h = extract_assignment(t, P)
    _write(args.output, f"{h}\n")
    return OK if is_satisfied(P, h) else NO


def cmd_oracle(args) -> int:
    m = io.load_midpoints(_read(args.input))
    if m.ground.n > args.cap:
        raise CapExceededError(f"n={m.ground.n} exceeds cap {args.cap}")
    witness = brute_realizable(m, cap=args.cap)
    if witness is None:
        print("NOT_REALIZABLE")
        return NO
    print("REALIZABLE", file=sys.stderr if args.output in (None, "-") else sys.stdout)
    _write(args.output, io.dump_tree(witness))
    return OK


def cmd_census(args) -> int:
    if args.n > args.cap:
        raise CapExceededError(f"n={args.n} exceeds cap {args.cap}")
    result = census(args.n, jobs=args.jobs, sample=args.sample, seed=args.seed, cap=args.cap)
    sys.stdout.write(io.census_table([result]))
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for k, w in enumerate(result.witnesses):
            (out / f"witness_{k:05d}.tree").write_text(io.dump_tree(w))
    return OK


def cmd_sat(args) -> int:
    P = _load_case(args)
    if P.V > args.cap:
        raise CapExceededError(f"V={P.V} exceeds cap {args.cap}")
    found = sat_bruteforce(P, cap=args.cap)
    lines = [str(h) for h in found] + [f"satisfying assignments: {len(found)}"]
    _write(args.output, "\n".join(lines) + "\n")
    return OK if found else NO


def cmd_demo_warnow(args) -> int:
    text = DEFAULT_WARNOW_CLAUSE if args.input is None else _read(args.input)
    P = parse_case(text)
    probe = warnow_probe(P, cap=args.cap)
    _write(args.output, probe.narrative() + "\n")
    return OK if probe.holds else NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treeorder",
                                     description="Tree realizations of midpoints structures.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, inp="input file ('-' for stdin)", cap=None):
        p = sub.add_parser(name, help=help)
        p.add_argument("--input", "-i", help=inp)
        p.add_argument("--output", "-o", help="output path (default stdout)")
        if cap is not None:
            p.add_argument("--cap", type=int, default=cap)
        p.set_defaults(func=func)
        return p

    add("encode", cmd_encode, "encode a 3-CNF file as a midpoints structure", "DIMACS file")
    add("convert", cmd_convert, "convert between midpoints and triples structures")
    p = add("check", cmd_check, "check a tree against a structure", "structure file")
    p.add_argument("--tree", "-t", required=True, help="tree file")
    p.add_argument("--violations-only", action="store_true")
    p = add("realize", cmd_realize, "build the explicit realization for an assignment", "DIMACS file")
    p.add_argument("--assignment", "-a", required=True, help="signed variables, e.g. '1 -2 -3 4'")
    p.add_argument("--report", help="write the violated pairs here")
    p = add("extract", cmd_extract, "read an assignment off a realization", "DIMACS file")
    p.add_argument("--tree", "-t", required=True, help="tree file")
    add("oracle", cmd_oracle, "brute-force realizability of a small structure", "structure file",
        cap=DEFAULT_CAP)
    p = add("census", cmd_census, "count realizable structures on n elements", cap=DEFAULT_CAP)
    p.add_argument("n", type=int)
    p.add_argument("--jobs", "-j", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sample", type=int, help="sample this many structures instead of all")
    add("sat", cmd_sat, "list satisfying assignments by brute force", "DIMACS file", cap=24)
    add("demo-warnow", cmd_demo_warnow, "one-clause midpoints-geometry probe",
        "one-clause DIMACS file (default: 1 2 3)", cap=6)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TreeOrderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
