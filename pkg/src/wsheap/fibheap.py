"""Classic (amortized) Fibonacci heap with stable node handles.

Nodes returned by :meth:`FibHeap.push` stay valid across melds, pops of other
nodes and decrease-key calls until the node itself is popped. A node does not
record which heap owns it; callers that meld heaps track ownership themselves.
"""

import math

from .counters import OpCounters
from .errors import Empty, KeyIncrease

PHI = (1 + 5 ** 0.5) / 2


def max_degree(size):
    """Largest degree a node can have in a Fibonacci heap of ``size`` nodes."""
    if size <= 1:
        return 0
    return int(math.floor(math.log(size, PHI) + 1e-9))


class FibNode:
    __slots__ = ("key", "item", "degree", "marked", "parent", "child", "left", "right")

    def __init__(self, key, item=None):
        self.key = key
        self.item = item
        self.degree = 0
        self.marked = False
        self.parent = None
        self.child = None
        self.left = self
        self.right = self

    def __repr__(self):
        return f"FibNode({self.key!r})"


def _splice(a, b):
    """Concatenate the circular lists containing ``a`` and ``b``."""
    ar = a.right
    bl = b.left
    a.right = b
    b.left = a
    ar.left = bl
    bl.right = ar


def _unlink(x):
    x.left.right = x.right
    x.right.left = x.left
    x.left = x.right = x


def _siblings(x):
    out = [x]
    y = x.right
    while y is not x:
        out.append(y)
        y = y.right
    return out


class FibHeap:
    """Min-heap supporting O(1) push/meld/decrease-key and O(log n) pop."""

    __slots__ = ("min", "size", "ops")

    def __init__(self, ops=None):
        self.min = None
        self.size = 0
        self.ops = ops if ops is not None else OpCounters()

    def __len__(self):
        return self.size

    def __bool__(self):
        return self.size > 0

    def push(self, key, item=None):
        ops = self.ops
        node = FibNode(key, item)
        ops.alloc += 1
        m = self.min
        if m is None:
            self.min = node
        else:
            _splice(m, node)
            ops.trav += 2
            ops.cmp += 1
            if key < m.key:
                self.min = node
        self.size += 1
        return node

    def peek(self):
        if self.min is None:
            raise Empty("peek on empty Fibonacci heap")
        self.ops.trav += 1
        return self.min.key

    def peek_node(self):
        return self.min

    def pop(self):
        """Remove a minimum node; return ``(key, node)``."""
        z = self.min
        if z is None:
            raise Empty("pop on empty Fibonacci heap")
        ops = self.ops
        c = z.child
        if c is not None:
            x = c
            while True:
                x.parent = None
                x.marked = False
                ops.trav += 1
                x = x.right
                if x is c:
                    break
            _splice(z, c)
            z.child = None
        nxt = z.right
        _unlink(z)
        self.size -= 1
        if nxt is z:
            self.min = None
        else:
            self.min = nxt
            self._consolidate()
        z.degree = 0
        return z.key, z

    def _consolidate(self):
        ops = self.ops
        table = [None] * (max_degree(self.size) + 2)
        roots = _siblings(self.min)
        ops.trav += len(roots)
        for x in roots:
            d = x.degree
            while True:
                y = table[d]
                if y is None:
                    break
                ops.cmp += 1
                if y.key < x.key:
                    x, y = y, x
                # y becomes a child of x
                _unlink(y)
                c = x.child
                if c is None:
                    x.child = y
                else:
                    _splice(c, y)
                y.parent = x
                y.marked = False
                x.degree += 1
                ops.trav += 3
                table[d] = None
                d += 1
            table[d] = x
        best = None
        head = None
        for x in table:
            if x is None:
                continue
            if head is None:
                head = x
                x.left = x.right = x
            else:
                # relink roots in table order; x may still point at stale siblings
                x.left = x.right = x
                _splice(head, x)
            ops.cmp += 1
            if best is None or x.key < best.key:
                best = x
        self.min = best

    def decrease_key(self, node, key):
        if key > node.key:
            raise KeyIncrease(f"new key {key!r} exceeds current key {node.key!r}")
        ops = self.ops
        ops.cmp += 1
        if key == node.key:
            return
        node.key = key
        p = node.parent
        if p is not None:
            ops.cmp += 1
            if key < p.key:
                self._cut(node, p)
                self._cascade(p)
        ops.cmp += 1
        if key < self.min.key:
            self.min = node

    def _cut(self, x, p):
        ops = self.ops
        if x.right is x:
            p.child = None
        else:
            if p.child is x:
                p.child = x.right
            _unlink(x)
        p.degree -= 1
        x.parent = None
        x.marked = False
        _splice(self.min, x)
        ops.trav += 3

    def _cascade(self, y):
        ops = self.ops
        z = y.parent
        while z is not None:
            ops.trav += 1
            if not y.marked:
                y.marked = True
                return
            self._cut(y, z)
            y = z
            z = y.parent

    def meld(self, other):
        """Absorb ``other`` into this heap; ``other`` is left empty."""
        if other is self:
            raise ValueError("cannot meld a heap with itself")
        om = other.min
        if om is not None:
            ops = self.ops
            if self.min is None:
                self.min = om
            else:
                _splice(self.min, om)
                ops.trav += 2
                ops.cmp += 1
                if om.key < self.min.key:
                    self.min = om
            self.size += other.size
        other.min = None
        other.size = 0
        return self

    def nodes(self):
        """Yield every node (root lists first, depth-first). Diagnostic use."""
        if self.min is None:
            return
        stack = [self.min]
        while stack:
            head = stack.pop()
            x = head
            while True:
                yield x
                if x.child is not None:
                    stack.append(x.child)
                x = x.right
                if x is head:
                    break

    def check(self):
        """Return a description of the first broken invariant, or None."""
        if self.min is None:
            return None if self.size == 0 else f"size {self.size} but no min"
        count = 0
        bound = max_degree(self.size)
        for x in self.nodes():
            count += 1
            if x.key < self.min.key:
                return f"min {self.min.key!r} above node {x.key!r}"
            if x.parent is None and x.marked:
                return f"marked root {x.key!r}"
            n_children = 0
            if x.child is not None:
                for c in _siblings(x.child):
                    n_children += 1
                    if c.parent is not x:
                        return "child with wrong parent pointer"
                    if c.key < x.key:
                        return f"heap order broken: {c.key!r} under {x.key!r}"
            if n_children != x.degree:
                return f"degree {x.degree} but {n_children} children"
            if x.degree > bound:
                return f"degree {x.degree} exceeds bound {bound}"
        if count != self.size:
            return f"size {self.size} but {count} nodes"
        return None

    def root_degrees(self):
        if self.min is None:
            return []
        return [x.degree for x in _siblings(self.min)]
