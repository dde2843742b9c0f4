"""Verification harness: naive oracle, age tracker, invariant auditor, traces.

Trace operations are tuples::

    ("push", key)
    ("pop",)
    ("peek",)
    ("deckey", ordinal, key)   # ordinal = 1-based push sequence number
"""

import bisect
import math
import random
from dataclasses import dataclass

from .errors import Dead, Empty, HeapError, KeyIncrease, ParseError
from .heap import WorkSetHeap
from .unionfind import find


class OracleHeap:
    """Sorted list of ``(key, ordinal)``; every operation is linear or better."""

    def __init__(self):
        self.items = []
        self.keys = {}
        self.pushes = 0

    def __len__(self):
        return len(self.items)

    def push(self, key):
        self.pushes += 1
        self.keys[self.pushes] = key
        bisect.insort(self.items, (key, self.pushes))
        return self.pushes

    def peek(self):
        return self.items[0][0] if self.items else None

    def pop(self, prefer=None):
        """Remove a minimum; among equal minima take ordinal ``prefer`` if live."""
        if not self.items:
            raise Empty("pop from empty oracle")
        key = self.items[0][0]
        if prefer is not None and self.keys.get(prefer) == key:
            i = bisect.bisect_left(self.items, (key, prefer))
            _, ordinal = self.items.pop(i)
        else:
            key, ordinal = self.items.pop(0)
        del self.keys[ordinal]
        return key, ordinal

    def decrease_key(self, ordinal, key):
        old = self.keys.get(ordinal)
        if old is None:
            if 1 <= ordinal <= self.pushes:
                raise Dead(f"element #{ordinal} was already popped")
            raise Dead(f"no element #{ordinal}")
        if key > old:
            raise KeyIncrease(f"new key {key!r} exceeds current key {old!r}")
        i = bisect.bisect_left(self.items, (old, ordinal))
        del self.items[i]
        bisect.insort(self.items, (key, ordinal))
        self.keys[ordinal] = key


def oracle_step(oracle, op):
    """Apply ``op`` to the oracle; return what the real heap must report."""
    kind = op[0]
    if kind == "push":
        oracle.push(op[1])
        return None
    if kind == "pop":
        return oracle.pop()[0]
    if kind == "peek":
        return oracle.peek()
    if kind == "deckey":
        oracle.decrease_key(op[1], op[2])
        return None
    raise ValueError(f"unknown operation {kind!r}")


class AgeTracker:
    """Records push order independently of the heap under test."""

    def __init__(self):
        self.pushes = 0
        self.seq = {}

    def on_push(self, handle):
        self.pushes += 1
        self.seq[id(handle)] = self.pushes

    def age(self, handle):
        return self.pushes - self.seq[id(handle)] + 1

    def forget(self, handle):
        del self.seq[id(handle)]


@dataclass
class Violation:
    invariant: str
    bucket: object
    detail: str

    def __str__(self):
        where = "" if self.bucket is None else f" in bucket {self.bucket}"
        return f"{self.invariant}{where}: {self.detail}"


def audit(h, deep=True):
    """Check bucket invariants of ``h``; return the first :class:`Violation` or None.

    ``deep`` additionally checks every Fibonacci heap and the whole index tree.
    """
    below = 0
    total = 0
    for b in h.buckets:
        i = b.index
        if b.heap is None:
            if i % 2 == 0:
                return Violation("vacancy", i, "even bucket is vacant")
            if h.index.value(b.slot.pos) != math.inf:
                return Violation("index-coherence", i, "vacant bucket has finite index value")
            continue
        size = b.heap.size
        total += size
        if size > 1 << (i // 2):
            return Violation("size", i, f"{size} elements, capacity {1 << (i // 2)}")
        want = math.inf if size == 0 else b.heap.min.key
        got = h.index.value(b.slot.pos)
        if got != want:
            return Violation("index-coherence", i, f"index holds {got!r}, bucket min {want!r}")
        if b.rep is None or b.rep.parent is not b.rep or b.rep.payload is not b:
            return Violation("representative", i, "bucket representative is stale")
        for node in b.heap.nodes():
            e = node.item
            if not e.alive or e.fib is not node:
                return Violation("handle", i, f"element #{e.seq} not linked to its node")
            g = h.age(e)
            if g < below:
                return Violation("age", i, f"element #{e.seq} has age {g} < {below}")
            if find(e.uf) is not b.rep:
                return Violation("payload", i, f"element #{e.seq} resolves to another set")
        if deep:
            err = b.heap.check()
            if err:
                return Violation("fibheap", i, err)
        below += 1 << (i // 2)
    if total != h.n:
        return Violation("count", None, f"buckets hold {total}, n = {h.n}")
    if deep:
        err = h.index.check()
        if err:
            return Violation("index-tree", None, err)
    return None


class Mismatch(AssertionError):
    pass


KEY_STRIDE = 1 << 20


def random_trace(n_ops, seed, key_range=10_000, mix=(0.5, 0.25, 0.25), distinct=True):
    """Well-formed random trace of push/pop/deckey (``mix`` fractions).

    Pops and deckeys on an empty heap are replaced by pushes. With
    ``distinct`` every key is ``value * KEY_STRIDE + ordinal``, so no two live
    keys tie and the trace stays valid whichever tied element a heap pops.
    """
    if distinct and n_ops >= KEY_STRIDE:
        raise ValueError("too many operations for distinct keys")
    stride = KEY_STRIDE if distinct else 1
    rng = random.Random(seed)
    alive = []  # ordinals
    where = {}  # ordinal -> index in alive
    keys = {}
    items = []
    pushes = 0
    ops = []
    p_push, p_pop = mix[0], mix[0] + mix[1]
    for _ in range(n_ops):
        r = rng.random()
        if r < p_push or not alive:
            pushes += 1
            key = rng.randrange(key_range) * stride + (pushes if distinct else 0)
            keys[pushes] = key
            where[pushes] = len(alive)
            alive.append(pushes)
            bisect.insort(items, (key, pushes))
            ops.append(("push", key))
        elif r < p_pop:
            key, o = items.pop(0)
            i = where.pop(o)
            last = alive.pop()
            if last != o:
                alive[i] = last
                where[last] = i
            del keys[o]
            ops.append(("pop",))
        else:
            o = alive[rng.randrange(len(alive))]
            old = keys[o]
            key = old - rng.randrange(key_range // 10 + 1) * stride
            i = bisect.bisect_left(items, (old, o))
            del items[i]
            bisect.insort(items, (key, o))
            keys[o] = key
            ops.append(("deckey", o, key))
    return ops


def run_lockstep(ops, heap=None, audit_every=False, tracker=None, on_pop=None, emit=None):
    """Replay ``ops`` on a working-set heap and the oracle side by side.

    The heap's peek is compared with the oracle after every operation.
    Returns the list of observables (popped key, peeked key or None).
    Raises :class:`Mismatch` on disagreement or audit failure; heap errors
    propagate only if the oracle raises the same error type.
    ``on_pop(bucket_index, element)`` is invoked after each pop and
    ``emit(op, observable)`` after each verified step.
    """
    h = heap if heap is not None else WorkSetHeap()
    oracle = OracleHeap()
    handles = [None]
    out = []
    for step, op in enumerate(ops, 1):
        kind = op[0]
        if kind == "pop" and h.n and oracle:
            # follow the heap's choice among tied minima
            prefer = h.index.peek().item.heap.min.item.seq
        else:
            prefer = None
        try:
            if prefer is not None:
                expect = oracle.pop(prefer)[0]
            else:
                expect = oracle_step(oracle, op)
            oracle_err = None
        except HeapError as exc:
            expect, oracle_err = None, exc
        try:
            if kind == "push":
                e = h.push(op[1])
                handles.append(e)
                if tracker is not None:
                    tracker.on_push(e)
                got = None
            elif kind == "pop":
                got, e = h.pop()
                if on_pop is not None:
                    on_pop(h.last_pop_bucket, e)
                if tracker is not None:
                    tracker.forget(e)
            elif kind == "peek":
                got = h.peek()
            else:
                o = op[1]
                if not 1 <= o < len(handles):
                    raise Dead(f"no element #{o}")
                h.decrease_key(handles[o], op[2])
                got = None
        except HeapError as exc:
            if oracle_err is None or type(exc) is not type(oracle_err):
                raise Mismatch(f"step {step} {op}: heap raised {exc!r}, oracle {oracle_err!r}") from exc
            raise
        if oracle_err is not None:
            raise Mismatch(f"step {step}: oracle raised {oracle_err!r}, heap did not")
        if got != expect:
            raise Mismatch(f"step {step} {op}: heap {got!r}, oracle {expect!r}")
        if h.peek() != oracle.peek():
            raise Mismatch(f"step {step} {op}: heap peek {h.peek()!r}, oracle {oracle.peek()!r}")
        if audit_every:
            v = audit(h)
            if v is not None:
                raise Mismatch(f"step {step} {op}: {v}")
        out.append(got)
        if emit is not None:
            emit(op, got)
    return out


# -- trace text format -----------------------------------------------------

def parse_trace(lines):
    ops = []
    for no, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        word = parts[0]
        try:
            if word == "push" and len(parts) == 2:
                ops.append(("push", int(parts[1])))
            elif word in ("pop", "peek") and len(parts) == 1:
                ops.append((word,))
            elif word == "deckey" and len(parts) == 3:
                o = int(parts[1])
                if o < 1:
                    raise ParseError("handle ordinal must be >= 1", no)
                ops.append(("deckey", o, int(parts[2])))
            else:
                raise ParseError(f"cannot parse {line!r}", no)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad integer in {line!r}", no) from None
    return ops


def format_trace(ops):
    return "".join(" ".join(str(x) for x in op) + "\n" for op in ops)


# -- calibration -----------------------------------------------------------

def calibrate(measured, formula):
    """Smallest ``C`` with ``measured <= C * formula``."""
    if formula <= 0:
        raise ValueError("formula must be positive")
    return measured / formula


def workload_push(n, seed=1):
    """Abstract ops attributed to push over ``n`` random-key pushes."""
    rng = random.Random(seed)
    h = WorkSetHeap()
    for _ in range(n):
        h.push(rng.randrange(1 << 40))
    return h.ops.tagged("push"), h


def workload_deckey(n, seed=2, live=100_000):
    """Push ``min(live, n)`` elements, then ``n`` random decrease-keys."""
    rng = random.Random(seed)
    h = WorkSetHeap()
    live = min(live, n)
    elems = [h.push(rng.randrange(1 << 40)) for _ in range(live)]
    for _ in range(n):
        e = elems[rng.randrange(live)]
        h.decrease_key(e, e.fib.key - rng.randrange(1, 1000))
    return h.ops.tagged("deckey"), h


def workload_pop(n, seed=3):
    """Interleaved push/pop trace; returns ``(pop ops, sum of 1 + log2 age)``."""
    rng = random.Random(seed)
    h = WorkSetHeap()
    budget = 0.0
    for _ in range(n):
        h.push(rng.randrange(1 << 40))
        if rng.random() < 0.45:
            h.push(rng.randrange(1 << 40))
        if h.n:
            _, e = h.pop()
            budget += 1 + math.log2(h.age(e))
    while h.n:
        _, e = h.pop()
        budget += 1 + math.log2(h.age(e))
    return h.ops.tagged("pop"), budget


def workload_fib(n, seed=4):
    """Random Fibonacci-heap ops; returns ``(total ops, N + P*log2(S+2))``."""
    from .fibheap import FibHeap

    rng = random.Random(seed)
    heaps = [FibHeap(), FibHeap()]
    ops = heaps[1].ops = heaps[0].ops
    nodes = [[], []]
    pops = 0
    peak = 0
    for _ in range(n):
        r = rng.random()
        side = rng.randrange(2)
        h = heaps[side]
        if r < 0.5 or not h:
            nodes[side].append(h.push(rng.randrange(1 << 30)))
        elif r < 0.7:
            _, node = h.pop()
            node.key = None  # popped marker
            pops += 1
        elif r < 0.98:
            live = nodes[side]
            x = live[rng.randrange(len(live))]
            if x.key is not None:
                h.decrease_key(x, x.key - rng.randrange(1 << 20))
        else:
            heaps[side].meld(heaps[1 - side])
            nodes[side].extend(nodes[1 - side])
            nodes[1 - side] = []
        if len(nodes[side]) > 4 * (len(h) + 8):
            nodes[side] = [x for x in nodes[side] if x.key is not None]
        peak = max(peak, len(h))
    return ops.total, n + pops * math.log2(peak + 2)


def workload_uf(n, seed=5):
    """``n`` random links over ``n`` elements, then ``n`` finds; returns total ops."""
    from .counters import OpCounters
    from .unionfind import link, make_set

    rng = random.Random(seed)
    ops = OpCounters()
    xs = [make_set(ops=ops) for _ in range(n)]
    for _ in range(n):
        a = find(xs[rng.randrange(n)], ops)
        b = find(xs[rng.randrange(n)], ops)
        if a is not b:
            link(a, b, ops)
    for _ in range(n):
        find(xs[rng.randrange(n)], ops)
    return ops.total


CALIBRATION_SIZES = {"push": 100_000, "deckey": 100_000, "pop": 50_000, "fib": 100_000, "uf": 100_000}


def run_calibration():
    """Measure the frozen constants on the fixed-seed workloads."""
    push_ops, _ = workload_push(CALIBRATION_SIZES["push"])
    dk_ops, _ = workload_deckey(CALIBRATION_SIZES["deckey"])
    pop_ops, pop_budget = workload_pop(CALIBRATION_SIZES["pop"])
    return {
        "C_push": calibrate(push_ops, CALIBRATION_SIZES["push"]),
        "C_dk": calibrate(dk_ops, 5 * CALIBRATION_SIZES["deckey"]),
        "C_pop": calibrate(pop_ops, pop_budget),
        "C_fib": calibrate(*workload_fib(CALIBRATION_SIZES["fib"])),
        # 2 finds + 1 link per union step, then 1 find per query
        "C_uf": calibrate(workload_uf(CALIBRATION_SIZES["uf"]), 4 * 5 * CALIBRATION_SIZES["uf"]),
    }


def write_constants(consts, fh):
    for k in sorted(consts):
        fh.write(f"{k} = {consts[k]:.4f}\n")


def read_constants(fh):
    out = {}
    for line in fh:
        line = line.split("#", 1)[0].strip()
        if line:
            k, v = line.split("=", 1)
            out[k.strip()] = float(v)
    return out
