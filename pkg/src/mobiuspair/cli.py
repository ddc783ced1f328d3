"""Command-line front end.  JSON goes to stdout, tables and diagnostics to stderr.

Exit codes: 0 success, 1 a verified property failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import (
    RawStructure,
    cycle_path,
    intersection_profile,
    isomorphic,
    recognize,
    special_decompositions,
    subpair_sets,
)
from .autgrp import aut_report
from .checks import verify
from .config import ConfigError, build, to_dict
from .levi import export_dot, levi_graph
from .oracle import enumerate_decompositions, find_block_cycles, find_isomorphisms
from .perm import ParseError, are_conjugate, conjugacy_class_reps, parse_permutation, partition_count

EXIT_OK, EXIT_FAILED, EXIT_BAD_INPUT = 0, 1, 2


class BadInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise BadInput(message)


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _note(args, text: str) -> None:
    if args.pretty:
        sys.stderr.write(text.rstrip("\n") + "\n")


def _pair(n: int, text: str):
    try:
        phi = parse_permutation(text, n)
        return build(n, phi)
    except (ParseError, ConfigError, ValueError) as exc:
        raise BadInput(str(exc)) from exc


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_build(args) -> int:
    M = _pair(args.n, args.perm)
    text = json.dumps(to_dict(M), sort_keys=True)
    if args.json:
        _write(args.json, text + "\n")
    if args.dot:
        _write(args.dot, export_dot(levi_graph(M)))
    if not args.json and args.dot != "-":
        sys.stdout.write(text + "\n")
    _note(args, f"{M}: {2 * M.n} points, {2 * M.n} blocks")
    return EXIT_OK


def cmd_export(args) -> int:
    M = _pair(args.n, args.perm)
    _write(args.dot, export_dot(levi_graph(M)))
    return EXIT_OK


def cmd_info(args) -> int:
    M = _pair(args.n, args.perm)
    n = M.n
    prof = intersection_profile(M)
    subpairs = {str(k): [list(X) for X in subpair_sets(M, k)] for k in range(3, n)}
    payload = {
        "n": n,
        "phi": str(M.phi),
        "cycle_type": list(M.phi.cycle_type()),
        "intersection_profile": prof.to_dict(),
        "decompositions": len(enumerate_decompositions(M)),
        "special_decompositions": [list(X) for X, _ in special_decompositions(M)],
        "subpair_sets": subpairs,
        "block_cycles": list(find_block_cycles(M)),
        "cycle_paths": [[str(b) for b in cycle_path(M, list(c))] for c in M.phi.cycles() if len(c) > 1],
    }
    _emit(payload)
    _note(args, f"{M}: {payload['decompositions']} decomposition(s), block cycles {payload['block_cycles']}")
    return EXIT_OK


def cmd_iso(args) -> int:
    M1, M2 = _pair(args.n, args.perm1), _pair(args.n, args.perm2)
    alpha = are_conjugate(M1.phi, M2.phi)
    found = find_isomorphisms(M1, M2, limit=1)
    f = isomorphic(M1, M2)
    payload = {
        "isomorphic": bool(found),
        "conjugate": alpha is not None,
        "oracle_isomorphic": bool(found),
        "alpha": None if alpha is None else str(alpha),
        "witness": None if f is None else {str(k): str(v) for k, v in sorted(f.as_dict().items(), key=lambda kv: kv[0].sort_key())},
    }
    _emit(payload)
    _note(args, f"{M1} {'~' if found else '!~'} {M2}")
    return EXIT_OK if payload["conjugate"] == payload["oracle_isomorphic"] else EXIT_FAILED


def cmd_aut(args) -> int:
    M = _pair(args.n, args.perm)
    r = aut_report(M, workers=args.workers)
    payload = r.to_dict()
    payload["failures"] = r.failures
    _emit(payload)
    _note(
        args,
        f"{M}: oracle {r.oracle_order}, structured {r.structured_order}, claimed {r.claimed_order}",
    )
    return EXIT_FAILED if r.failures else EXIT_OK


def cmd_classes(args) -> int:
    if args.n < 1:
        raise BadInput(f"n must be >= 1, got {args.n}")
    reps = conjugacy_class_reps(args.n)
    _emit({"n": args.n, "p": partition_count(args.n), "reps": [str(r) for r in reps]})
    for r in reps:
        _note(args, f"{str(list(r.cycle_type())):<24} {r}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.max_n < 3:
        raise BadInput(f"--max-n must be >= 3, got {args.max_n}")
    results = verify(args.max_n, args.workers, determinism=not args.no_determinism)
    _emit({"max_n": args.max_n, "criteria": [r.to_dict() for r in results]})
    for r in results:
        sys.stderr.write(r.line() + ("" if r.internal_ok else "  (internal violation)") + "\n")
    return EXIT_OK if all(r.internal_ok for r in results) else EXIT_FAILED


def cmd_recognize(args) -> int:
    try:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
        S = RawStructure.from_json(text)
        rec = recognize(S)
    except (OSError, json.JSONDecodeError, ConfigError) as exc:
        raise BadInput(str(exc)) from exc
    _emit({"recognized": rec is not None, **({} if rec is None else rec.to_dict())})
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mobius", description="Möbius n-pairs M(n, phi): construction, analysis and verification")
    parser.add_argument("--pretty", action="store_true", help="human-readable summary on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pair_args(p):
        p.add_argument("-n", type=int, required=True)
        p.add_argument("-p", "--perm", required=True, help='one-line "2 1 3" or cycles "(1 2)(3)"')

    p = sub.add_parser("build", help="build M(n, phi) and write JSON and/or DOT")
    pair_args(p)
    p.add_argument("--dot", help="write the Levi graph in DOT to this path ('-' for stdout)")
    p.add_argument("--json", help="write the configuration JSON to this path")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("export", help="write the Levi graph")
    pair_args(p)
    p.add_argument("--dot", required=True, help="output path, '-' for stdout")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("info", help="intersections, decompositions, subpair sets, block cycles")
    pair_args(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("iso", help="decide isomorphism of two pairs")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-p1", "--perm1", required=True)
    p.add_argument("-p2", "--perm2", required=True)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("aut", help="automorphism report")
    pair_args(p)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("classes", help="p(n) and one representative per conjugacy class")
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-determinism", action="store_true", help="skip the repeated runs of criterion 12")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("recognize", help='identify a raw {"points": [...], "blocks": [[...]]} structure')
    p.add_argument("--input", default="-", help="JSON file, '-' for stdin")
    p.set_defaults(func=cmd_recognize)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except BadInput as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
