"""Dijkstra's algorithm on interchangeable addressable heaps, plus graph I/O.

Vertices are ``0 .. n-1`` in memory. DIMACS files number them from 1; the
loader and writer shift by one.
"""

import csv
import math
import random
import time
from dataclasses import dataclass, field

from .counters import OpCounters
from .errors import Empty, InfeasibleParameters, KeyIncrease, ParseError
from .fibheap import FibHeap
from .heap import WorkSetHeap

HEAP_KINDS = ("workset", "binary", "fibonacci")


@dataclass
class Graph:
    n: int
    edges: list = field(default_factory=list)
    _adj: list = field(default=None, repr=False, compare=False)

    @property
    def m(self):
        return len(self.edges)

    @property
    def adj(self):
        if self._adj is None or len(self._adj) != self.n:
            adj = [[] for _ in range(self.n)]
            for u, v, w in self.edges:
                adj[u].append((v, w))
            self._adj = adj
        return self._adj

    def add_edge(self, u, v, w):
        if w <= 0:
            raise ValueError(f"edge weight must be positive, got {w}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u}, {v}) outside 0..{self.n - 1}")
        self.edges.append((u, v, w))
        self._adj = None


@dataclass
class SsspResult:
    dist: list
    order: list
    pops: int
    deckeys: int
    counters: OpCounters

    def settle_rank(self):
        rank = [None] * len(self.dist)
        for r, v in enumerate(self.order):
            rank[v] = r
        return rank

    def write_csv(self, fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["vertex", "distance", "settle_rank"])
        for v, (d, r) in enumerate(zip(self.dist, self.settle_rank())):
            w.writerow([v + 1, "" if d is None else d, "" if r is None else r])


class _BinNode:
    __slots__ = ("key", "item", "pos")

    def __init__(self, key, item, pos):
        self.key = key
        self.item = item
        self.pos = pos


class BinaryHeap:
    """Array-backed binary min-heap with position tracking for decrease-key."""

    def __init__(self, ops=None):
        self.a = []
        self.ops = ops if ops is not None else OpCounters()

    def __len__(self):
        return len(self.a)

    def _up(self, i):
        a = self.a
        ops = self.ops
        x = a[i]
        while i > 0:
            p = (i - 1) >> 1
            ops.cmp += 1
            if a[p].key <= x.key:
                break
            a[i] = a[p]
            a[i].pos = i
            ops.trav += 1
            i = p
        a[i] = x
        x.pos = i

    def _down(self, i):
        a = self.a
        ops = self.ops
        n = len(a)
        x = a[i]
        while True:
            c = 2 * i + 1
            if c >= n:
                break
            if c + 1 < n:
                ops.cmp += 1
                if a[c + 1].key < a[c].key:
                    c += 1
            ops.cmp += 1
            if x.key <= a[c].key:
                break
            a[i] = a[c]
            a[i].pos = i
            ops.trav += 1
            i = c
        a[i] = x
        x.pos = i

    def push(self, key, item=None):
        node = _BinNode(key, item, len(self.a))
        self.ops.alloc += 1
        self.a.append(node)
        self._up(node.pos)
        return node

    def peek(self):
        if not self.a:
            raise Empty("peek on empty binary heap")
        return self.a[0].key

    def pop(self):
        a = self.a
        if not a:
            raise Empty("pop from empty binary heap")
        top = a[0]
        last = a.pop()
        if a:
            a[0] = last
            self._down(0)
        top.pos = -1
        return top.key, top

    def decrease_key(self, node, key):
        if key > node.key:
            raise KeyIncrease(f"new key {key!r} exceeds current key {node.key!r}")
        node.key = key
        self._up(node.pos)


def make_heap(kind, ops=None):
    if kind == "workset":
        return WorkSetHeap(ops)
    if kind == "binary":
        return BinaryHeap(ops)
    if kind == "fibonacci":
        return FibHeap(ops)
    raise ValueError(f"unknown heap kind {kind!r}; expected one of {HEAP_KINDS}")


def dijkstra(g, source, heap="workset"):
    """Exact single-source distances; unreachable vertices get ``None``."""
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} outside 0..{g.n - 1}")
    ops = OpCounters()
    h = make_heap(heap, ops)
    adj = g.adj
    dist = [None] * g.n
    handle = [None] * g.n
    done = [False] * g.n
    order = []
    pops = deckeys = 0
    dist[source] = 0
    handle[source] = h.push(0, source)
    while len(h):
        d, node = h.pop()
        u = node.item
        pops += 1
        done[u] = True
        order.append(u)
        for v, w in adj[u]:
            if done[v]:
                continue
            nd = d + w
            dv = dist[v]
            if dv is None:
                dist[v] = nd
                handle[v] = h.push(nd, v)
            elif nd < dv:
                dist[v] = nd
                h.decrease_key(handle[v], nd)
                deckeys += 1
    return SsspResult(dist, order, pops, deckeys, ops)


# -- generators ------------------------------------------------------------

GRAPH_KINDS = ("random", "grid", "path-with-shortcuts")


def gen_graph(kind, n, m=0, weights=(1, 1000), seed=0):
    """Deterministic graph for ``seed``.

    ``random``: ``m`` arcs between uniform distinct endpoints.
    ``grid``: ``n`` must be a perfect square; arcs both ways between
    4-neighbours (``m`` ignored).
    ``path-with-shortcuts``: path ``0 -> 1 -> ... -> n-1`` plus ``m`` forward
    arcs skipping at least one vertex.
    """
    lo, hi = weights
    if n < 1:
        raise InfeasibleParameters(f"need at least one vertex, got n={n}")
    if m < 0:
        raise InfeasibleParameters(f"negative edge count {m}")
    if lo < 1 or hi < lo:
        raise InfeasibleParameters(f"weight range {weights} must be positive and nonempty")
    rng = random.Random(seed)
    g = Graph(n)
    edges = g.edges
    if kind == "random":
        if n < 2 and m > 0:
            raise InfeasibleParameters("random arcs need two distinct vertices")
        for _ in range(m):
            u = rng.randrange(n)
            v = rng.randrange(n - 1)
            if v >= u:
                v += 1
            edges.append((u, v, rng.randint(lo, hi)))
    elif kind == "grid":
        side = math.isqrt(n)
        if side * side != n:
            raise InfeasibleParameters(f"grid needs a square vertex count, got {n}")
        for r in range(side):
            for c in range(side):
                u = r * side + c
                if c + 1 < side:
                    edges.append((u, u + 1, rng.randint(lo, hi)))
                    edges.append((u + 1, u, rng.randint(lo, hi)))
                if r + 1 < side:
                    edges.append((u, u + side, rng.randint(lo, hi)))
                    edges.append((u + side, u, rng.randint(lo, hi)))
    elif kind == "path-with-shortcuts":
        if m > 0 and n < 3:
            raise InfeasibleParameters("shortcuts need at least three vertices")
        for u in range(n - 1):
            edges.append((u, u + 1, rng.randint(lo, hi)))
        for _ in range(m):
            u = rng.randrange(n - 2)
            v = rng.randrange(u + 2, n)
            edges.append((u, v, rng.randint(lo, hi)))
    else:
        raise InfeasibleParameters(f"unknown graph kind {kind!r}")
    return g


# -- DIMACS ----------------------------------------------------------------

def read_dimacs(lines):
    n = None
    declared = None
    g = None
    for no, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        if parts[0] == "p":
            if g is not None:
                raise ParseError("duplicate problem line", no)
            if len(parts) != 4 or parts[1] != "sp":
                raise ParseError(f"expected 'p sp <n> <m>', got {line!r}", no)
            try:
                n, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"bad counts in {line!r}", no) from None
            if n < 1 or declared < 0:
                raise ParseError("vertex count must be positive", no)
            g = Graph(n)
        elif parts[0] == "a":
            if g is None:
                raise ParseError("arc before problem line", no)
            if len(parts) != 4:
                raise ParseError(f"expected 'a <u> <v> <w>', got {line!r}", no)
            try:
                u, v, w = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"bad integer in {line!r}", no) from None
            if w <= 0:
                raise ParseError(f"arc weight must be positive, got {w}", no)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"arc endpoint outside 1..{n}", no)
            g.edges.append((u - 1, v - 1, w))
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", no)
    if g is None:
        raise ParseError("missing problem line")
    if g.m != declared:
        raise ParseError(f"problem line declares {declared} arcs, found {g.m}")
    return g


def load_dimacs(path):
    with open(path, encoding="utf-8") as fh:
        return read_dimacs(fh)


def write_dimacs(g, fh, comment=None):
    if comment:
        fh.write(f"c {comment}\n")
    fh.write(f"p sp {g.n} {g.m}\n")
    for u, v, w in g.edges:
        fh.write(f"a {u + 1} {v + 1} {w}\n")


# -- benchmark ---------------------------------------------------------------

BENCH_HEADER = ["workload", "heap", "comparisons", "traversals", "pops", "deckeys", "wall_ms"]


def bench_graph(workload, n, seed):
    if workload == "random":
        return gen_graph("random", n, 8 * n, seed=seed)
    if workload == "grid":
        return gen_graph("grid", n, seed=seed)
    if workload == "path-with-shortcuts":
        return gen_graph("path-with-shortcuts", n, n // 8, seed=seed)
    raise InfeasibleParameters(f"unknown workload {workload!r}")


def run_bench(workloads, sizes, seed=0, heaps=HEAP_KINDS):
    """One row per (workload, size, heap). Distances are cross-checked."""
    rows = []
    for wl in workloads:
        for n in sizes:
            g = bench_graph(wl, n, seed)
            ref = None
            for kind in heaps:
                t0 = time.perf_counter()
                res = dijkstra(g, 0, kind)
                wall = (time.perf_counter() - t0) * 1000
                if ref is None:
                    ref = res.dist
                elif res.dist != ref:
                    raise AssertionError(f"{wl} n={n}: {kind} distances differ from {heaps[0]}")
                c = res.counters
                rows.append([f"{wl}-{n}", kind, c.cmp, c.trav, res.pops, res.deckeys, f"{wall:.3f}"])
    return rows
