"""Command-line interface.

    cliquerad spectral --input turan:6,3 --t 3
    cliquerad bounds   --input complete:5 --t 3
    cliquerad search   --n 5 --forbidden complete:3 --objective mu --t 2
    cliquerad scaling  --r 3 --n-from 6 --n-to 9 --objective mu

Graph inputs accept generator specs (complete:n, turan:n,r,
multipartite:a,b,..., random:n,p,seed, cycle:n, path:n), a path to an
edge-list or graph6 file, or an inline graph6 string.

Exit codes: 0 success, 1 usage or parse error, 2 solver non-convergence,
3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from typing import Sequence

from .bounds import bound_report
from .graph import (
    Graph,
    GraphFormatError,
    gen_complete,
    gen_complete_multipartite,
    gen_cycle,
    gen_path,
    gen_random,
    gen_turan,
    parse_edge_list,
    parse_graph6,
)
from .search import (
    SearchBudgetError,
    SearchError,
    SearchSpec,
    clique_scaling_table,
    rows_to_csv,
    scaling_table,
    search,
)
from .solver import ConvergenceError, SolverConfig, clique_spectral_radius

EXIT_OK, EXIT_USAGE, EXIT_NONCONVERGED, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _ints(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def load_graph(source: str) -> Graph:
    """Resolve a generator spec, an edge-list/graph6 file, or a graph6 string."""
    kind, sep, args = source.partition(":")
    if sep and kind in {"complete", "turan", "multipartite", "random", "cycle", "path"}:
        try:
            if kind == "complete":
                return gen_complete(int(args))
            if kind == "cycle":
                return gen_cycle(int(args))
            if kind == "path":
                return gen_path(int(args))
            if kind == "turan":
                n, r = _ints(args)
                return gen_turan(n, r)[0]
            if kind == "multipartite":
                return gen_complete_multipartite(_ints(args))
            n, p, seed = args.split(",")
            return gen_random(int(n), float(p), int(seed))
        except ValueError as exc:
            raise GraphFormatError(f"bad generator spec {source!r}: {exc}") from None
    if os.path.isfile(source):
        with open(source) as fh:
            text = fh.read()
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines:
            raise GraphFormatError(f"{source}: empty file")
        if lines[0].isdigit():
            return parse_edge_list(text)
        return parse_graph6(lines[0])
    return parse_graph6(source)


def _config(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig(
        tolerance=args.tol,
        max_iterations=args.max_iter,
        shift=args.shift,
        restarts=args.restarts,
    )


def _emit(record: dict, fmt: str, headline: str) -> str:
    if fmt == "json":
        return json.dumps(record)
    if fmt == "plain":
        return repr(record[headline])
    scalars = {k: v for k, v in record.items() if not isinstance(v, (list, dict))}
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(scalars), lineterminator="\n")
    writer.writeheader()
    writer.writerow(scalars)
    return buf.getvalue().rstrip("\n")


def cmd_spectral(args: argparse.Namespace) -> int:
    g = load_graph(args.input)
    res = clique_spectral_radius(g, args.t, _config(args))
    print(_emit(res.to_dict(), args.format or "json", "mu"))
    return EXIT_OK if res.converged else EXIT_NONCONVERGED


def cmd_bounds(args: argparse.Namespace) -> int:
    g = load_graph(args.input)
    report = bound_report(g, args.t, _config(args))
    print(_emit(report.to_dict(), args.format or "json", "mu"))
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    forbidden = load_graph(args.forbidden)
    if args.input is not None:
        if args.input == "-":
            lines = sys.stdin.readlines()
        else:
            with open(args.input) as fh:
                lines = fh.readlines()
        spec = SearchSpec(args.n, forbidden, args.t, args.objective, "graph6-stream", lines)
    else:
        if args.n is None:
            raise UsageError("search needs --n (all-labeled) or --input (graph6 stream)")
        spec = SearchSpec(args.n, forbidden, args.t, args.objective)
    record = search(spec, _config(args), workers=args.workers)
    print(_emit(record.to_dict(), args.format or "json", "best_value"))
    return EXIT_OK


def cmd_scaling(args: argparse.Namespace) -> int:
    if args.objective == "mu":
        rows = scaling_table(args.r, args.n_from, args.n_to)
    else:
        rows = clique_scaling_table(args.r, args.n_from, args.n_to)
    fmt = args.format or "csv"
    if fmt == "json":
        print(json.dumps([row._asdict() for row in rows]))
    elif fmt == "plain":
        print("\n".join(repr(row.ratio) for row in rows))
    else:
        print(rows_to_csv(rows), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cliquerad", description="t-clique spectral radius toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def solver_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--max-iter", type=int, default=1_000_000)
        p.add_argument("--shift", type=float, default=1.0)
        p.add_argument("--restarts", type=int, default=64)
        p.add_argument("--format", choices=("json", "csv", "plain"))

    p = sub.add_parser("spectral", help="compute mu_t of a graph")
    p.add_argument("--input", required=True, help="graph spec, file, or graph6 string")
    p.add_argument("--t", type=int, required=True)
    solver_flags(p)
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("bounds", help="lower bound, mu_t and Wilf-type upper bound")
    p.add_argument("--input", required=True)
    p.add_argument("--t", type=int, required=True)
    solver_flags(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("search", help="exhaustive extremal search over H-free graphs")
    p.add_argument("--n", type=int)
    p.add_argument("--forbidden", required=True, help="the forbidden graph H")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--objective", choices=("mu", "cliques"), default="mu")
    p.add_argument("--input", help="graph6 stream file ('-' for stdin); omit for all labeled graphs")
    p.add_argument("--workers", type=int, default=1)
    solver_flags(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("scaling", help="Turan-graph scaling table as CSV")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    p.add_argument("--objective", choices=("mu", "cliques"), default="mu")
    p.add_argument("--format", choices=("json", "csv", "plain"))
    p.set_defaults(func=cmd_scaling)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except SearchBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, SearchError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
