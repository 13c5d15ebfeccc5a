"""Command-line front end: ``coxtrans {sigma,orbits,verify,conjugate}``.

Exit codes: 0 success, 1 a verification failed, 2 bad input or usage.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from .coxeter import CoxeterError, parse_graph, parse_word
from .fixtures import FIXTURE_NAMES, fixture_problem, word_fixture
from .orbits import DEFAULT_LIMIT, DimensionTooLarge, OrbitProblem, check_slices, enumerate_orbits
from .sigma import build_sigma, to_dot
from .verify import DEFAULT_SEED, SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 as well, but keep the message short
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pi", metavar="FILE", help="Coxeter graph file: n, then one 'i j' edge per line")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--word", metavar="LITERAL", help='signed word, e.g. "-1 -2 -1" (needs --pi)')
    src.add_argument("--fixture", nargs="+", metavar="NAME", help=f"built-in input: {', '.join(FIXTURE_NAMES)} [args]")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coxtrans", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sigma", help="build the graph Sigma(i) and emit DOT")
    _add_input(p)
    p.add_argument("--dot", metavar="PATH", help="write DOT here (default: append to stdout)")
    p.add_argument("--report", metavar="PATH", help="also write the summary here")

    p = sub.add_parser("orbits", help="enumerate orbits of the F_2 transvection group")
    _add_input(p)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="largest m to enumerate (default %(default)s)")
    p.add_argument("--threads", type=int, default=1, help="worker threads over slice chunks (default 1)")
    p.add_argument("--backend", choices=("numba", "numpy"), help="orbit kernel (default from COXTRANS_NO_NUMBA)")
    p.add_argument("--slices", action="store_true", help="per-slice decomposition and checks")
    p.add_argument("--json", action="store_true", help="structured output instead of key: value lines")
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical reports)")
    p.add_argument("--report", metavar="PATH")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="recorded in the report only")

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("suite", help=f"one of {', '.join(SUITES)}, all")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="default %(default)s")
    p.add_argument("--instances", type=int, default=1000, help="random instances (default %(default)s)")
    p.add_argument("--report", metavar="PATH")
    p.add_argument("--max-examples", type=int, default=3, help="counterexamples printed per check")

    p = sub.add_parser("conjugate", help="conjugacy certificate between two words of one move graph")
    _add_input(p)
    p.add_argument("--target", required=True, metavar="LITERAL", help="target word, same graph")
    p.add_argument("--cap", type=int, default=100_000, help="move graph size cap")
    p.add_argument("--report", metavar="PATH")
    return parser


def _read_word(args):
    if args.fixture:
        name, rest = args.fixture[0], args.fixture[1:]
        if name == "e6":
            raise UsageError("fixture e6 has no word; use it with 'orbits'")
        return word_fixture(name, rest)
    if args.word is None:
        raise UsageError("give --word (with --pi) or --fixture")
    if not args.pi:
        raise UsageError("--word needs --pi")
    try:
        graph = parse_graph(Path(args.pi).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read graph file: {exc}") from exc
    return parse_word(args.word, graph)


def _emit(text: str, path: str | None) -> None:
    sys.stdout.write(text)
    if path:
        Path(path).write_text(text)


def cmd_sigma(args) -> int:
    word = _read_word(args)
    sig = build_sigma(word)
    kinds = Counter(t for _, _, t in sig.edges)
    lines = [
        f"word: {word}",
        f"m: {sig.m}",
        f"bounded: {' '.join(map(str, sorted(sig.bounded)))}",
        f"edges: {len(sig.edges)}",
    ]
    lines += [f"edges_{k}: {kinds[k]}" for k in sorted(kinds)]
    summary = "\n".join(lines) + "\n"
    dot = to_dot(sig)
    if args.report:
        Path(args.report).write_text(summary)
    if args.dot:
        Path(args.dot).write_text(dot)
        sys.stdout.write(summary)
    else:
        sys.stdout.write(summary + dot)
    return EXIT_OK


def cmd_orbits(args) -> int:
    if args.threads < 1:
        raise UsageError("--threads must be positive")
    if args.fixture and args.fixture[0] == "e6":
        problem = fixture_problem("e6", args.fixture[1:])
    else:
        problem = OrbitProblem.from_word(_read_word(args))
    try:
        rep = enumerate_orbits(problem, args.limit, args.threads, args.backend, with_slices=args.slices)
    except DimensionTooLarge as exc:
        raise UsageError(str(exc)) from exc
    ok = rep.matches_formula is not False and rep.formula.consistent
    if rep.slices is not None:
        ok = ok and check_slices(rep.slices).ok
    if args.json:
        d = rep.to_dict(args.timing)
        d["seed"] = args.seed
        d["verified"] = ok
        text = json.dumps(d, indent=2, sort_keys=True) + "\n"
    else:
        text = f"seed: {args.seed}\n" + rep.to_text(args.timing) + f"verified: {str(ok).lower()}\n"
    _emit(text, args.report)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}, all")
    if args.instances < 1:
        raise UsageError("--instances must be positive")
    lines = [f"seed: {args.seed}", f"instances: {args.instances}"]
    ok = True
    for res in run_suite(args.suite, args.seed, args.instances):
        lines.append(f"[{res.suite}]")
        for v in res.verdicts:
            lines.append(str(v))
            lines.extend(f"  counterexample: {c}" for c in v.violations[: args.max_examples])
        ok = ok and res.ok
    lines.append(f"result: {'PASS' if ok else 'FAIL'}")
    _emit("\n".join(lines) + "\n", args.report)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_conjugate(args) -> int:
    from .conjugation import conjugacy_certificate

    source = _read_word(args)
    target = parse_word(args.target, source.graph)
    cert = conjugacy_certificate(source, target, args.cap)
    verdict = cert.verify()
    _emit(cert.to_text() + str(verdict) + "\n", args.report)
    return EXIT_OK if verdict.ok else EXIT_FAIL


COMMANDS = {"sigma": cmd_sigma, "orbits": cmd_orbits, "verify": cmd_verify, "conjugate": cmd_conjugate}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, CoxeterError, ValueError) as exc:
        print(f"coxtrans: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
