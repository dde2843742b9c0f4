"""Command-line entry point: ``wsheap <subcommand> ...``.

Exit status is 0 on success, 1 on an oracle mismatch, invariant violation or
heap error raised by the replayed trace, and 2 on parse or I/O errors.
"""

import argparse
import csv
import logging
import sys
from pathlib import Path

from . import instrument
from .errors import HeapError, InfeasibleParameters, ParseError
from .indextree import build_tree
from .sssp import BENCH_HEADER, GRAPH_KINDS, HEAP_KINDS, dijkstra, load_dimacs, run_bench

log = logging.getLogger("wsheap")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _fmt(v):
    return "none" if v is None else str(v)


def run_trace(args):
    try:
        with open(args.file, encoding="utf-8") as fh:
            ops = instrument.parse_trace(fh)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    def emit(op, got):
        if op[0] in ("pop", "peek"):
            print(f"{op[0]} {_fmt(got)}")

    try:
        instrument.run_lockstep(ops, audit_every=args.audit, emit=emit)
    except instrument.Mismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except HeapError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def run_audit(args):
    failures = 0
    for t in range(args.traces):
        seed = args.seed + t
        ops = instrument.random_trace(args.ops, seed)
        try:
            instrument.run_lockstep(ops, audit_every=True)
        except (instrument.Mismatch, HeapError) as exc:
            failures += 1
            print(f"seed {seed}: {exc}", file=sys.stderr)
    print(f"audited {args.traces} trace(s) x {args.ops} ops: {failures} failure(s)")
    return EXIT_FAIL if failures else EXIT_OK


def run_emit_tree(args):
    if args.m < 1:
        print("error: --m must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    t = build_tree(args.m, subdivide=not args.no_subdivide)
    leaves = args.leaves or str(Path(args.out).with_name(Path(args.out).stem + "_leaves.csv"))
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            t.write_csv(fh)
        with open(leaves, "w", encoding="utf-8", newline="") as fh:
            t.write_leaf_table(fh)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    log.info("wrote %s and %s", args.out, leaves)
    return EXIT_OK


def run_sssp(args):
    try:
        g = load_dimacs(args.graph)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if not 1 <= args.source <= g.n:
        print(f"error: source {args.source} outside 1..{g.n}", file=sys.stderr)
        return EXIT_INPUT
    res = dijkstra(g, args.source - 1, args.heap)
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                res.write_csv(fh)
        else:
            res.write_csv(sys.stdout)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    log.info("pops=%d deckeys=%d comparisons=%d", res.pops, res.deckeys, res.counters.cmp)
    return EXIT_OK


def run_bench_cmd(args):
    workloads = GRAPH_KINDS if args.workload == "all" else (args.workload,)
    try:
        rows = run_bench(workloads, args.sizes, seed=args.seed, heaps=args.heaps)
    except InfeasibleParameters as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        fh = open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout
        try:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(BENCH_HEADER)
            w.writerows(rows)
        finally:
            if fh is not sys.stdout:
                fh.close()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def run_calibrate(args):
    consts = instrument.run_calibration()
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("# abstract ops per unit of budget, fixed-seed workloads\n")
            instrument.write_constants(consts, fh)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    instrument.write_constants(consts, sys.stdout)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="wsheap", description="Working-set heap tools")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("trace", help="replay a trace against the oracle")
    s.add_argument("file")
    s.add_argument("--audit", action="store_true", help="audit invariants after every step")
    s.set_defaults(func=run_trace)

    s = sub.add_parser("audit", help="random traces with per-step invariant audits")
    s.add_argument("--ops", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--traces", type=int, default=1)
    s.set_defaults(func=run_audit)

    s = sub.add_parser("emit-tree", help="dump the index tree as CSV")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--leaves", help="per-leaf table (default: <out>_leaves.csv)")
    s.add_argument("--no-subdivide", action="store_true")
    s.set_defaults(func=run_emit_tree)

    s = sub.add_parser("sssp", help="shortest paths on a DIMACS graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--source", type=int, default=1, help="1-based source vertex")
    s.add_argument("--heap", choices=HEAP_KINDS, default="workset")
    s.add_argument("--out")
    s.set_defaults(func=run_sssp)

    s = sub.add_parser("bench", help="compare heap kinds under Dijkstra")
    s.add_argument("--workload", choices=(*GRAPH_KINDS, "all"), default="all")
    s.add_argument("--sizes", type=int, nargs="+", default=[256, 1024])
    s.add_argument("--heaps", nargs="+", choices=HEAP_KINDS, default=list(HEAP_KINDS))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=run_bench_cmd)

    s = sub.add_parser("calibrate", help="measure amortized cost constants")
    s.add_argument("--out", required=True)
    s.set_defaults(func=run_calibrate)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(message)s",
    )
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
