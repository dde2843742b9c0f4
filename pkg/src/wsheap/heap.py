"""Working-set heap.

Live elements are partitioned into buckets ``H_0, H_1, ...``. An occupied
bucket owns a Fibonacci heap, a union-find representative and a slot in the
index tree holding the bucket minimum; a vacant bucket owns none of these.
Between operations only odd buckets may be vacant, ``|H_i| <= 2**(i // 2)``,
and younger elements live in lower buckets, so popping an element of age
``g`` touches a bucket with index ``O(log g)``.

Push frees ``H_0`` like incrementing a binary counter: an occupied even
bucket slides into an empty odd neighbour, and a full pair is melded one
level up. Decrease-key locates the element's bucket with ``find``.
"""

from .counters import OpCounters
from .errors import Dead, Empty, KeyIncrease
from .fibheap import FibHeap
from .indextree import INF, IndexTree
from .unionfind import find, link, make_set


class Element:
    """Handle returned by :meth:`WorkSetHeap.push`."""

    __slots__ = ("seq", "item", "fib", "uf", "alive")

    def __init__(self, seq, item):
        self.seq = seq
        self.item = item
        self.fib = None
        self.uf = None
        self.alive = True

    @property
    def key(self):
        return self.fib.key

    def __repr__(self):
        state = "" if self.alive else ", dead"
        return f"Element(#{self.seq}, key={self.fib.key!r}{state})"


class Bucket:
    __slots__ = ("index", "heap", "rep", "slot")

    def __init__(self, index, slot):
        self.index = index
        self.heap = None
        self.rep = None
        self.slot = slot

    @property
    def vacant(self):
        return self.heap is None

    def __repr__(self):
        if self.heap is None:
            return f"Bucket({self.index}, vacant)"
        return f"Bucket({self.index}, size={self.heap.size})"


class WorkSetHeap:
    """Min-heap whose pop cost depends on the age of the popped element.

    >>> h = WorkSetHeap()
    >>> a = h.push(5); b = h.push(9)
    >>> h.decrease_key(b, 1)
    >>> h.pop()[0], h.peek()
    (1, 5)
    """

    def __init__(self, ops=None):
        self.ops = ops if ops is not None else OpCounters()
        self.buckets = []
        self.index = IndexTree(self.ops)
        self.n = 0
        self.pushes = 0
        self.rebuilds = 0
        self.last_pop_bucket = None

    def __len__(self):
        return self.n

    @property
    def m(self):
        return len(self.buckets)

    def age(self, e):
        """Elements pushed after ``e``, counting ``e`` itself."""
        return self.pushes - e.seq + 1

    # -- internals -----------------------------------------------------

    def _bucket(self, i):
        b = self.buckets
        while len(b) <= i:
            bucket = Bucket(len(b), None)
            bucket.slot = self.index.push(INF, bucket)
            b.append(bucket)
        return b[i]

    def _update(self, bucket):
        heap = bucket.heap
        if heap is None or heap.min is None:
            v = INF
        else:
            v = heap.min.key
        self.ops.trav += 2
        self.index.change_key(bucket.slot, v)

    def _ensure_vacant(self, i):
        ops = self.ops
        ops.trav += 1
        lo = self._bucket(i)
        if lo.heap is None:
            return
        hi = self._bucket(i + 1)
        ops.trav += 1
        if hi.heap is None:
            hi.heap, hi.rep = lo.heap, lo.rep
            hi.rep.payload = hi
            lo.heap = lo.rep = None
            ops.trav += 3
            self._update(lo)
            self._update(hi)
            return
        self._ensure_vacant(i + 2)
        top = self.buckets[i + 2]
        top.heap = lo.heap.meld(hi.heap)
        top.rep = link(lo.rep, hi.rep, ops)
        top.rep.payload = top
        lo.heap = lo.rep = hi.heap = hi.rep = None
        ops.trav += 4
        self._update(lo)
        self._update(hi)
        self._update(top)

    def _insert(self, e, key):
        self._ensure_vacant(0)
        b0 = self.buckets[0]
        heap = FibHeap(self.ops)
        e.fib = heap.push(key, e)
        e.uf = make_set(b0, self.ops)
        b0.heap = heap
        b0.rep = e.uf
        self.ops.alloc += 1
        self._update(b0)
        self.n += 1

    # -- public operations ---------------------------------------------

    def push(self, key, item=None):
        """Insert ``key``; return the element handle. Amortized O(1)."""
        ops = self.ops
        snap = ops.begin()
        self.pushes += 1
        e = Element(self.pushes, item)
        ops.alloc += 1
        self._insert(e, key)
        ops.end("push", snap)
        return e

    def peek(self):
        """Minimum key, or None when empty."""
        ops = self.ops
        snap = ops.begin()
        h = self.index.peek()
        ops.end("peek", snap)
        return None if h is None else h.leaf.value

    def pop(self):
        """Remove a minimum element; return ``(key, element)``."""
        if self.n == 0:
            raise Empty("pop from empty working-set heap")
        ops = self.ops
        snap = ops.begin()
        slot = self.index.peek()
        bucket = slot.item
        key, node = bucket.heap.pop()
        self._update(bucket)
        self.n -= 1
        e = node.item
        e.alive = False
        self.last_pop_bucket = bucket.index
        ops.trav += 2
        ops.end("pop", snap)
        return key, e

    def decrease_key(self, e, key):
        if not e.alive:
            raise Dead(f"element #{e.seq} was already popped")
        if key > e.fib.key:
            raise KeyIncrease(f"new key {key!r} exceeds current key {e.fib.key!r}")
        ops = self.ops
        snap = ops.begin()
        ops.cmp += 1
        if self.m > self.n:
            self.rebuild()
            ops.end("rebuild", snap)
            snap = ops.begin()
        rep = find(e.uf, ops)
        bucket = rep.payload
        heap = bucket.heap
        heap.decrease_key(e.fib, key)
        ops.trav += 3
        self.index.decrease_key(bucket.slot, heap.min.key)
        ops.end("deckey", snap)

    def rebuild(self):
        """Rebuild from scratch, re-inserting live elements in push order.

        Element handles and push sequence numbers survive.
        """
        ops = self.ops
        live = []
        for b in self.buckets:
            if b.heap is not None:
                while b.heap.min is not None:
                    key, node = b.heap.pop()
                    live.append((node.item, key))
        live.sort(key=lambda p: p[0].seq)
        ops.cmp += len(live)
        self.buckets = []
        self.index = IndexTree(ops)
        self.n = 0
        for e, key in live:
            self._insert(e, key)
        self.rebuilds += 1

    # -- inspection ----------------------------------------------------

    def layout(self):
        """Per bucket: None if vacant, else the sorted push numbers it holds."""
        out = []
        for b in self.buckets:
            if b.heap is None:
                out.append(None)
            else:
                out.append(sorted(node.item.seq for node in b.heap.nodes()))
        return out

    def elements(self):
        for b in self.buckets:
            if b.heap is not None:
                for node in b.heap.nodes():
                    yield b, node.item
