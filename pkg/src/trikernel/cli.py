"""Command-line driver: check files, query the mode theory and the lattice
solver, and run the corpus harness.

Exit codes: 0 success, 1 diagnostics or failed queries, 2 usage and I/O
errors.  With --json, diagnostics stream as one JSON object per line.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import corpus as corpus_mod
from . import lattice
from .diagnostics import Diagnostic, LineMap
from .kernel import Checker
from .modality import ModeError, cell_search, format_word, normalize, parse_word
from .prelude import ENV_VAR, load_prelude, verify_prelude

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_USAGE = 2


def _emit(diags: list[Diagnostic], as_json: bool) -> None:
    ordered = sorted(diags, key=lambda d: (d.file, d.span[0]))
    for d in ordered:
        if as_json:
            print(d.to_json())
        else:
            print(d.render())


def cmd_check(args) -> int:
    exit_code = EXIT_OK
    collected: list[Diagnostic] = []
    for path in args.files:
        if not os.path.exists(path):
            print(f"error: no such file: {path}", file=sys.stderr)
            return EXIT_USAGE
    for path in args.files:
        checker = Checker(depth=args.depth)
        prelude_diags = load_prelude(checker, args.prelude)
        if prelude_diags:
            collected.extend(prelude_diags)
            exit_code = EXIT_DIAGNOSTICS
            continue
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
        diags = checker.check_source(text, path)
        linemap = LineMap(text)
        for d in diags:
            d.located(linemap)
        if diags:
            exit_code = EXIT_DIAGNOSTICS
        collected.extend(diags)
    _emit(collected, args.json)
    return exit_code


def cmd_mode(args) -> int:
    try:
        if args.mode_command == "normalize":
            word = normalize(parse_word(args.word))
            print(format_word(word))
            return EXIT_OK
        if args.mode_command == "cell":
            src = normalize(parse_word(args.src))
            dst = normalize(parse_word(args.dst))
            found = cell_search(src, dst, depth=args.depth)
            if found is None:
                print(f"none (depth {args.depth})")
                return EXIT_DIAGNOSTICS
            print(found.describe())
            return EXIT_OK
    except ModeError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    raise AssertionError


def _parse_lattice(text: str) -> lattice.Expr:
    return lattice.parse_expr(text)


def cmd_lattice(args) -> int:
    table = lattice.AtomTable()
    try:
        if args.lattice_command == "nf":
            poly = lattice.canon(_parse_lattice(args.expr), table)
            print(lattice.format_poly(poly, table))
            return EXIT_OK
        if args.lattice_command == "eq":
            lhs = lattice.canon(_parse_lattice(args.lhs), table)
            rhs = lattice.canon(_parse_lattice(args.rhs), table)
            print("true" if lattice.eq(lhs, rhs) else "false")
            return EXIT_OK
        if args.lattice_command == "leq":
            lhs = lattice.canon(_parse_lattice(args.lhs), table)
            rhs = lattice.canon(_parse_lattice(args.rhs), table)
            print("true" if lattice.leq(lhs, rhs) else "false")
            return EXIT_OK
        if args.lattice_command == "phoa":
            poly = lattice.canon(_parse_lattice(args.expr), table)
            atom = table.intern(args.atom)
            p0, p1 = lattice.phoa_endpoints(poly, atom)
            print(f"({lattice.format_poly(p0, table)}, {lattice.format_poly(p1, table)})")
            return EXIT_OK
        if args.lattice_command == "count":
            print(lattice.count_free(args.n))
            return EXIT_OK
    except lattice.LatticeParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except lattice.LatticeSizeError as exc:
        print(f"error: E-LATTICE-SIZE: {exc.message}", file=sys.stderr)
        return EXIT_DIAGNOSTICS
    raise AssertionError


def cmd_corpus(args) -> int:
    if args.corpus_command == "run":
        report = corpus_mod.run_corpus(
            stdlib_dir=args.stdlib, prelude_path=args.prelude, depth=args.depth
        )
        if args.json:
            for result in report.results:
                for d in result.diagnostics:
                    print(d.to_json())
        print(report.render())
        return EXIT_OK if report.ok else EXIT_DIAGNOSTICS
    if args.corpus_command == "prelude":
        report = verify_prelude(args.prelude, depth=args.depth)
        print(report.render())
        return EXIT_OK if report.ok else EXIT_DIAGNOSTICS
    raise AssertionError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trikernel",
        description="Checker for a modal simplicial type theory with a directed interval",
    )
    sub = parser.add_subparsers(dest="command")

    p_check = sub.add_parser("check", help="type-check .ttt files against the prelude")
    p_check.add_argument("files", nargs="+")
    p_check.add_argument("--prelude", default=os.environ.get(ENV_VAR))
    p_check.add_argument("--json", action="store_true")
    p_check.add_argument("--depth", type=int, default=8,
                         help="2-cell search depth (default 8)")
    p_check.set_defaults(func=cmd_check)

    p_mode = sub.add_parser("mode", help="mode theory queries")
    mode_sub = p_mode.add_subparsers(dest="mode_command")
    p_norm = mode_sub.add_parser("normalize", help="normal form of a modality word")
    p_norm.add_argument("word")
    p_norm.set_defaults(func=cmd_mode)
    p_cell = mode_sub.add_parser("cell", help="search for a 2-cell between words")
    p_cell.add_argument("src")
    p_cell.add_argument("dst")
    p_cell.add_argument("--depth", type=int, default=8)
    p_cell.set_defaults(func=cmd_mode)

    p_lat = sub.add_parser("lattice", help="interval lattice queries")
    lat_sub = p_lat.add_subparsers(dest="lattice_command")
    p_nf = lat_sub.add_parser("nf", help="canonical form of an expression")
    p_nf.add_argument("expr")
    p_nf.set_defaults(func=cmd_lattice)
    p_eq = lat_sub.add_parser("eq", help="decide equality of two expressions")
    p_eq.add_argument("lhs")
    p_eq.add_argument("rhs")
    p_eq.set_defaults(func=cmd_lattice)
    p_leq = lat_sub.add_parser("leq", help="decide the lattice order")
    p_leq.add_argument("lhs")
    p_leq.add_argument("rhs")
    p_leq.set_defaults(func=cmd_lattice)
    p_phoa = lat_sub.add_parser("phoa", help="endpoint decomposition at an atom")
    p_phoa.add_argument("expr")
    p_phoa.add_argument("atom")
    p_phoa.set_defaults(func=cmd_lattice)
    p_count = lat_sub.add_parser("count", help="count canonical forms over n atoms")
    p_count.add_argument("n", type=int)
    p_count.set_defaults(func=cmd_lattice)

    p_corpus = sub.add_parser("corpus", help="run the checked corpus")
    corpus_sub = p_corpus.add_subparsers(dest="corpus_command")
    p_run = corpus_sub.add_parser("run", help="check every corpus file against the manifest")
    p_run.add_argument("--stdlib", default=None)
    p_run.add_argument("--prelude", default=os.environ.get(ENV_VAR))
    p_run.add_argument("--depth", type=int, default=8)
    p_run.add_argument("--json", action="store_true")
    p_run.set_defaults(func=cmd_corpus)
    p_pre = corpus_sub.add_parser("prelude", help="verify the prelude and its coverage")
    p_pre.add_argument("--prelude", default=os.environ.get(ENV_VAR))
    p_pre.add_argument("--depth", type=int, default=8)
    p_pre.set_defaults(func=cmd_corpus)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help()
        return EXIT_USAGE
    if args.func is cmd_mode and not getattr(args, "mode_command", None):
        parser.parse_args(["mode", "--help"])
        return EXIT_USAGE
    if args.func is cmd_lattice and not getattr(args, "lattice_command", None):
        parser.parse_args(["lattice", "--help"])
        return EXIT_USAGE
    if args.func is cmd_corpus and not getattr(args, "corpus_command", None):
        parser.parse_args(["corpus", "--help"])
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
