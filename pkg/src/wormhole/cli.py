"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data error (parse, format, I/O),
3 invalid inquiry pair.  Node labels on the command line and in printed
paths are the original edge-list labels.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import __version__
from .access import AccessSession
from .bench import METHODS, export_csv, run_bench
from .chunglu import ChungLuParams, generate
from .coregen import core_gen, default_fraction, load_decomposition, save_decomposition
from .errors import FormatError, MismatchError, ParseError, RoutingError
from .graph import ingest_edge_list, load_csr, save_csr, write_edge_list
from .oracle import LabelIndexOracle, build_core_index, load_index, save_index
from .router import route

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INVALID_PAIR = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fraction(text):
    try:
        f = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < f < 1.0:
        raise argparse.ArgumentTypeError(f"fraction must lie in (0, 1), got {f}")
    return f


def _beta(text):
    b = float(text)
    if not 2.0 < b < 3.0:
        raise argparse.ArgumentTypeError(f"beta must lie in (2, 3), got {b}")
    return b


def build_parser():
    p = _Parser(prog="wormhole", description="Sublinear approximate shortest paths via an inner-ring index.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("ingest", help="convert an edge list to a binary CSR file")
    c.add_argument("input", help="edge list: 'u v' per line, '#' or '%%' comments")
    c.add_argument("output", help="CSR file to write")

    c = sub.add_parser("coregen", help="grow the inner ring and write a decomposition file")
    c.add_argument("csr")
    c.add_argument("output", help="decomposition file to write")
    c.add_argument("--fraction", type=_fraction, default=None,
                   help="inner ring size as a fraction of n (default: 0.06/0.04/0.01 by edge count)")
    c.add_argument("--seed-node", type=int, default=None,
                   help="label of the seed node (default: uniform random from --rng-seed)")
    c.add_argument("--rng-seed", type=int, default=0, help="seed for tie-breaking and seed choice (default 0)")

    c = sub.add_parser("query", help="answer one shortest-path inquiry")
    c.add_argument("csr")
    c.add_argument("dec", help="decomposition file")
    c.add_argument("s", type=int, help="source label")
    c.add_argument("t", type=int, help="target label")
    c.add_argument("--variant", choices=("E", "H", "M"), default="E")
    c.add_argument("--index", default=None, help="core label index file (variant M; built in memory if omitted)")

    c = sub.add_parser("bench", help="run a batch of random inquiries and write CSV metrics")
    c.add_argument("csr")
    c.add_argument("dec", nargs="?", default=None,
                   help="decomposition file (wormhole methods; grown in-process and timed if omitted)")
    c.add_argument("--method", choices=METHODS, default="wormhole_E")
    c.add_argument("--inquiries", type=int, default=10_000)
    c.add_argument("--ground-truth", action="store_true", help="compute exact distances by BFS (uncounted)")
    c.add_argument("--count-valid", action="store_true", help="keep sampling until --inquiries valid pairs")
    c.add_argument("--rng-seed", type=int, default=0, help="seed for pair sampling and in-process CoreGen (default 0)")
    c.add_argument("--fraction", type=_fraction, default=None, help="inner ring fraction for in-process CoreGen")
    c.add_argument("--index", default=None, help="core label index file for wormhole_M")
    c.add_argument("--threads", type=int, default=1, help="worker threads (default 1: deterministic curves)")
    c.add_argument("--record-timing", action="store_true",
                   help="write per-inquiry wall_time_ns (makes the records file run-dependent)")
    c.add_argument("--out", default="bench", help="output prefix (default 'bench')")

    c = sub.add_parser("gen-chunglu", help="generate a Chung-Lu power-law graph")
    c.add_argument("output")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--beta", type=_beta, default=2.5)
    c.add_argument("--avg-degree", type=float, default=10.0)
    c.add_argument("--rng-seed", type=int, default=0)
    c.add_argument("--format", choices=("csr", "edgelist"), default="csr")

    c = sub.add_parser("build-core-index", help="build the pruned landmark index over the inner ring")
    c.add_argument("csr")
    c.add_argument("dec")
    c.add_argument("output")
    return p


def _node(g, label):
    try:
        return g.node_of(label)
    except KeyError:
        raise UsageError(f"unknown node label {label}") from None


def cmd_ingest(args):
    g = ingest_edge_list(args.input)
    save_csr(g, args.output)
    print(f"n={g.n} m={g.m}")


def cmd_coregen(args):
    g = load_csr(args.csr)
    fraction = args.fraction if args.fraction is not None else default_fraction(g.n, g.m)
    seed = None if args.seed_node is None else _node(g, args.seed_node)
    session = AccessSession(g)
    t0 = time.perf_counter()
    dec = core_gen(session, seed, fraction, rng_seed=args.rng_seed)
    elapsed = time.perf_counter() - t0
    save_decomposition(dec, args.output)
    print(f"fraction={fraction} |L0|={dec.size} |L1|={int(dec.l1.sum())} "
          f"setup_time_s={elapsed:.4f} queries={session.query_count}"
          + (" truncated" if dec.truncated else ""))


def cmd_query(args):
    g = load_csr(args.csr)
    dec = load_decomposition(args.dec, g)
    s, t = _node(g, args.s), _node(g, args.t)
    oracle = None
    if args.variant == "M":
        index = load_index(args.index, dec) if args.index else None
        oracle = LabelIndexOracle(dec, index)
    session = AccessSession(g)
    session.absorb(dec.core_nodes)
    try:
        r = route(session, dec, s, t, oracle=oracle, variant=args.variant)
    except RoutingError as exc:
        print(f"invalid pair: {exc}", file=sys.stderr)
        return EXIT_INVALID_PAIR
    print("path=" + " ".join(str(g.label_of(v)) for v in r.path))
    print(f"length={r.length} case={r.case} queries={r.queries_used}")
    return EXIT_OK


def cmd_bench(args):
    if args.inquiries < 0:
        raise UsageError("--inquiries must be non-negative")
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    g = load_csr(args.csr)
    dec, setup_time, index = None, None, None
    if args.method != "bibfs":
        if args.dec:
            dec = load_decomposition(args.dec, g)
        else:
            fraction = args.fraction if args.fraction is not None else default_fraction(g.n, g.m)
            t0 = time.perf_counter()
            dec = core_gen(AccessSession(g), None, fraction, rng_seed=args.rng_seed)
            setup_time = time.perf_counter() - t0
        if args.method == "wormhole_M":
            if args.index:
                index = load_index(args.index, dec)
            else:
                t0 = time.perf_counter()
                index = build_core_index(dec)
                if setup_time is not None:
                    setup_time += time.perf_counter() - t0
    elif args.dec:
        raise UsageError("bibfs takes no decomposition")
    report = run_bench(g, dec, args.method, args.inquiries, rng_seed=args.rng_seed,
                       ground_truth=args.ground_truth, index=index, setup_time=setup_time,
                       count_valid=args.count_valid, threads=args.threads)
    rec_path, agg_path = export_csv(report, args.out, include_timing=args.record_timing)
    agg = report.aggregates()
    print(" ".join(f"{k}={'' if v is None else (f'{v:.4g}' if isinstance(v, float) else v)}"
                   for k, v in agg.items()))
    print(f"wrote {rec_path} {agg_path}")
    return EXIT_OK


def cmd_gen_chunglu(args):
    try:
        params = ChungLuParams(args.n, args.beta, args.avg_degree, args.rng_seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    g = generate(params)
    if args.format == "csr":
        save_csr(g, args.output)
    else:
        write_edge_list(g, args.output)
    print(f"n={g.n} m={g.m} max_degree={int(g.degrees().max(initial=0))}")


def cmd_build_core_index(args):
    g = load_csr(args.csr)
    dec = load_decomposition(args.dec, g)
    t0 = time.perf_counter()
    index = build_core_index(dec)
    elapsed = time.perf_counter() - t0
    save_index(index, args.output)
    print(f"core_size={index.size} entries={index.num_entries()} "
          f"setup_time_s={elapsed:.4f} index_bytes={index.nbytes()}")


COMMANDS = {
    "ingest": cmd_ingest,
    "coregen": cmd_coregen,
    "query": cmd_query,
    "bench": cmd_bench,
    "gen-chunglu": cmd_gen_chunglu,
    "build-core-index": cmd_build_core_index,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"wormhole {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, FormatError, MismatchError, OSError) as exc:
        print(f"wormhole {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
