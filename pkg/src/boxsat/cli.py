"""Command-line interface.

Machine-readable output follows model-counting competition conventions:
``s MODELS <count>`` for the answer, ``v <literals> 0`` per enumerated
model, and ``c ...`` for everything informational.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 timeout,
4 verification mismatch.
"""

from __future__ import annotations

import argparse
import sys
from typing import IO

from .benchgen import (
    EdgeListError,
    GenerationError,
    GraphQuerySpec,
    generate_cnf,
    read_edge_list,
)
from .cnf import DimacsError, parse_dimacs, write_dimacs
from .oracle import BRUTE_LIMIT, brute_count
from .ordering import ORDERING_STRATEGIES, build_order, compute_stats
from .solver import SolverConfig, run

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_TIMEOUT = 3
EXIT_VERIFY = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we map to 1
        raise UsageError(message)


def _open_input(path: str) -> IO:
    return sys.stdin if path == "-" else open(path, "r")


def _ratio(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError("insertion ratio must lie in [0, 1]")
    return value


def _size(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("query size must be at least 2")
    return value


def build_parser() -> _Parser:
    parser = _Parser(prog="boxsat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_solve(name: str, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="DIMACS CNF file, or - for stdin")
        p.add_argument(
            "--ordering",
            default="grouped-heuristic",
            choices=sorted(ORDERING_STRATEGIES),
        )
        p.add_argument("--insertion-ratio", type=_ratio, default=0.45)
        p.add_argument("--no-lambda-skip", action="store_true")
        p.add_argument("--timeout", type=float, default=None, metavar="SECONDS")
        p.add_argument(
            "--verify",
            action="store_true",
            help=f"cross-check the count against brute force (n <= {BRUTE_LIMIT})",
        )
        return p

    add_solve("count", "count satisfying assignments")
    add_solve("enumerate", "count and stream every satisfying assignment")

    gen = sub.add_parser("gen", help="generate CNF from an edge list")
    gen.add_argument("input", help="edge list file, or - for stdin")
    gen.add_argument("--query", required=True, choices=["clique", "path"])
    gen.add_argument("--size", required=True, type=_size, metavar="K")
    gen.add_argument("--out", default="-", help="output CNF path (default stdout)")
    gen.add_argument("--max-vars", type=int, default=64)
    gen.add_argument(
        "--simplify",
        action="store_true",
        help="merge clause pairs differing in one polarity before writing",
    )

    stats = sub.add_parser("stats", help="print instance statistics")
    stats.add_argument("input", help="DIMACS CNF file, or - for stdin")
    stats.add_argument(
        "--ordering",
        default="grouped-heuristic",
        choices=sorted(ORDERING_STRATEGIES),
    )
    return parser


def _cmd_solve(args, enumerate_models: bool) -> int:
    with _open_input(args.input) as fh:
        cnf = parse_dimacs(fh)
    config = SolverConfig(
        insertion_ratio=args.insertion_ratio,
        ordering=args.ordering,
        mode="enumerate" if enumerate_models else "count",
        lambda_skip=not args.no_lambda_skip,
        timeout=args.timeout,
    )
    out = sys.stdout
    emit = None
    if enumerate_models:
        def emit(literals):
            out.write("v " + " ".join(str(l) for l in literals) + " 0\n")
            out.flush()

    result = run(cnf, config, on_model=emit)
    if result.timed_out:
        out.write("c timeout\n")
        return EXIT_TIMEOUT
    out.write(f"c loadtime {result.load_seconds:.3f}\n")
    out.write(f"c runtime {result.run_seconds:.3f}\n")
    out.write(f"s MODELS {result.count}\n")
    if args.verify:
        if cnf.variable_count > BRUTE_LIMIT:
            out.write(f"c verify skipped (n > {BRUTE_LIMIT})\n")
        else:
            expected = brute_count(cnf)
            if expected != result.count:
                out.write(f"c verify MISMATCH expected {expected}\n")
                return EXIT_VERIFY
            out.write("c verify ok\n")
    return EXIT_OK


def _cmd_gen(args) -> int:
    with _open_input(args.input) as fh:
        graph = read_edge_list(fh)
    query = GraphQuerySpec(args.query, args.size)
    cnf = generate_cnf(graph, query, max_variables=args.max_vars, simplify=args.simplify)
    if args.out == "-":
        write_dimacs(cnf, sys.stdout)
    else:
        with open(args.out, "w") as fh:
            write_dimacs(cnf, fh)
    return EXIT_OK


def _cmd_stats(args) -> int:
    with _open_input(args.input) as fh:
        cnf = parse_dimacs(fh)
    stats = compute_stats(cnf)
    order = build_order(cnf, args.ordering)
    out = sys.stdout
    out.write(f"n {cnf.variable_count}\n")
    out.write(f"m {cnf.clause_count}\n")
    histogram: dict[int, int] = {}
    for v in range(1, cnf.variable_count + 1):
        histogram[stats.degree[v]] = histogram.get(stats.degree[v], 0) + 1
    for deg in sorted(histogram):
        out.write(f"degree {deg} {histogram[deg]}\n")
    out.write(f"ordering {args.ordering} " + " ".join(map(str, order.as_sequence())) + "\n")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "count":
            return _cmd_solve(args, enumerate_models=False)
        if args.command == "enumerate":
            return _cmd_solve(args, enumerate_models=True)
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "stats":
            return _cmd_stats(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GenerationError, ValueError) as exc:
        if isinstance(exc, (DimacsError, EdgeListError)):
            print(f"parse error: {exc}", file=sys.stderr)
            return EXIT_PARSE
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        sys.stdout.flush()
        return 130


if __name__ == "__main__":
    sys.exit(main())
