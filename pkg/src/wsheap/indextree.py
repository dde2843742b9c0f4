"""Index structure over an array ``A[1..m]`` with an inverse-Ackermann-depth tree.

Internal node ``(j, k)`` owns the leaf interval
``[3↑^k j, min(m+1, 3↑^k (j+1)))`` for ``j >= 2``. Level-``k`` nodes hang
below the level-``k+1`` node containing them, except ``(2, k)``, which hangs
below ``(2, k-1)``; the root is ``(2, 1)``. Leaves ``3^j .. 3^{j+1}-1`` attach
to ``(j, 1)`` and leaves ``1..8`` attach to the root. Wide nodes are then
subdivided into groups of ``ceil(k / ceil(sqrt k))`` children.

Every node keeps a reference to the minimum-valued leaf in its subtree, so
the global minimum is one hop from the root. Values may be ``math.inf``.
"""

import csv
import math
from collections import deque

from .counters import OpCounters
from .errors import KeyIncrease

INF = math.inf


def up_arrow(a, k, b, cap):
    """``min(a ↑^k b, cap)`` without materialising towers larger than ``cap``."""
    if a < 2 or k < 1 or b < 1:
        raise ValueError("up_arrow needs a >= 2, k >= 1, b >= 1")
    if k == 1:
        x = 1
        for _ in range(b):
            x *= a
            if x >= cap:
                return cap
        return x
    x = a if a < cap else cap
    for _ in range(b - 1):
        if x >= cap:
            return cap
        x = up_arrow(a, k - 1, x, cap)
    return x


def inv_ackermann_proxy(n):
    """``min{k >= 1 : 3 ↑^k 2 > n}``."""
    k = 1
    while up_arrow(3, k, 2, n + 1) <= n:
        k += 1
    return k


def degree_bound(i):
    """Children allowed on the root-to-leaf path of leaf ``i``."""
    return math.isqrt(i - 1) + 3


class IndexLeaf:
    __slots__ = ("pos", "value", "parent", "handle", "min_leaf")

    def __init__(self, pos):
        self.pos = pos
        self.value = INF
        self.parent = None
        self.handle = None
        self.min_leaf = self

    @property
    def kind(self):
        return "leaf"

    @property
    def span(self):
        return self.pos, self.pos + 1


class IndexNode:
    """Internal ``(j, k)`` node or a subdivision node (``k`` is None)."""

    __slots__ = ("k", "j", "lo", "hi", "span_lo", "span_hi", "parent", "children", "min_leaf")

    def __init__(self, k=None, j=None, lo=0, hi=0):
        self.k = k
        self.j = j
        self.lo = lo
        self.hi = hi
        self.span_lo = lo
        self.span_hi = hi
        self.parent = None
        self.children = []
        self.min_leaf = None

    @property
    def kind(self):
        return "internal" if self.k is not None else "subdivision"

    @property
    def span(self):
        return self.span_lo, self.span_hi

    def __repr__(self):
        if self.k is None:
            return f"IndexNode(sub [{self.span_lo},{self.span_hi}))"
        return f"IndexNode(({self.j},{self.k}) [{self.lo},{self.hi}))"


class IndexHandle:
    """Stable pointer to position ``pos``; survives rebuilds triggered by push."""

    __slots__ = ("pos", "leaf", "item")

    def __init__(self, pos, leaf, item=None):
        self.pos = pos
        self.leaf = leaf
        self.item = item

    @property
    def value(self):
        return self.leaf.value

    def __repr__(self):
        return f"IndexHandle({self.pos}, {self.leaf.value!r})"


def _adopt(parent, child):
    child.parent = parent
    parent.children.append(child)


def _split(u, ops):
    ch = u.children
    k = len(ch)
    size = -(-k // (math.isqrt(k - 1) + 1))
    groups = []
    for s in range(0, k, size):
        g = IndexNode()
        g.parent = u
        g.children = ch[s:s + size]
        for c in g.children:
            c.parent = g
        g.span_lo = g.children[0].span[0]
        g.span_hi = g.children[-1].span[1]
        groups.append(g)
    u.children = groups
    ops.alloc += len(groups)
    ops.trav += k
    return groups


def _refine(u, ops):
    while len(u.children) >= 4 and len(u.children) > degree_bound(u.span_lo):
        for g in _split(u, ops):
            _refine(g, ops)


def _build_structure(m, ops, subdivide=True):
    """Return ``(root, leaves)`` for ``m >= 1`` leaves, all valued ``INF``."""
    cap = m + 1
    levels = []
    k = 1
    while up_arrow(3, k, 2, cap) <= m:
        level = []
        j = 2
        while True:
            lo = up_arrow(3, k, j, cap)
            if lo > m:
                break
            level.append(IndexNode(k, j, lo, up_arrow(3, k, j + 1, cap)))
            j += 1
        levels.append(level)
        k += 1
    # the root also owns leaves 1..8, outside its own interval
    root = levels[0][0] if levels else IndexNode(1, 2, 9, 9)
    ops.alloc += 1 + sum(len(lv) for lv in levels)

    leaves = [IndexLeaf(i) for i in range(1, m + 1)]
    ops.alloc += m
    for leaf in leaves[:8]:
        _adopt(root, leaf)
    if levels:
        for node in levels[0]:
            for i in range(node.lo, node.hi):
                if i > 8:
                    _adopt(node, leaves[i - 1])
    ops.trav += m

    for upper, lower in zip(levels[1:], levels):
        it = iter(upper)
        cur = next(it)
        nxt = next(it, None)
        for node in lower[1:]:
            while nxt is not None and nxt.lo <= node.lo:
                cur, nxt = nxt, next(it, None)
            _adopt(cur, node)
        ops.trav += len(lower)
    # spine: (2, k+1) is the last child of (2, k)
    for upper, lower in zip(levels[1:], levels):
        _adopt(lower[0], upper[0])

    for u in _postorder(root):
        if isinstance(u, IndexNode):
            u.span_lo = u.children[0].span[0]
            u.span_hi = u.children[-1].span[1]
    if not subdivide:
        return root, leaves

    for level in levels:
        for node in level:
            if len(node.children) >= 4:
                for g in _split(node, ops):
                    _refine(g, ops)
            _refine(node, ops)
    if not levels and len(root.children) >= 4:
        for g in _split(root, ops):
            _refine(g, ops)
        _refine(root, ops)
    return root, leaves


def _postorder(root):
    out = []
    stack = [root]
    while stack:
        u = stack.pop()
        out.append(u)
        if isinstance(u, IndexNode):
            stack.extend(u.children)
    out.reverse()
    return out


class IndexTree:
    """Array of values with O(1) argmin, cheap decrease and O(i) change.

    Positions are 1-based. :meth:`push` rebuilds the tree in O(m); existing
    handles are re-pointed at the new leaves.
    """

    def __init__(self, ops=None):
        self.ops = ops if ops is not None else OpCounters()
        self.m = 0
        self.root = None
        self.leaves = []
        self.handles = []

    def __len__(self):
        return self.m

    def _rebuild(self, m):
        ops = self.ops
        root, leaves = _build_structure(m, ops)
        for h, leaf in zip(self.handles, leaves):
            leaf.value = h.leaf.value
            leaf.handle = h
            h.leaf = leaf
        self.root, self.leaves, self.m = root, leaves, m
        self._recompute_all()

    def _recompute_all(self):
        ops = self.ops
        for u in _postorder(self.root):
            if isinstance(u, IndexNode):
                best = None
                for c in u.children:
                    ml = c.min_leaf
                    if best is None or ml.value < best.value:
                        best = ml
                u.min_leaf = best
                ops.cmp += len(u.children)
                ops.trav += len(u.children)

    def push(self, value=INF, item=None):
        """Append ``A[m+1] = value``; return its handle."""
        pos = self.m + 1
        h = IndexHandle(pos, IndexLeaf(pos), item)
        h.leaf.value = value
        self.handles.append(h)
        self.ops.alloc += 1
        self._rebuild(pos)
        return h

    def peek(self):
        """Handle of a minimum position, or None if every value is infinite."""
        if self.root is None:
            return None
        self.ops.trav += 2
        leaf = self.root.min_leaf
        if leaf.value == INF:
            return None
        return leaf.handle

    def decrease_key(self, handle, value):
        leaf = handle.leaf
        if value > leaf.value:
            raise KeyIncrease(f"index value {value!r} exceeds {leaf.value!r}")
        leaf.value = value
        ops = self.ops
        steps = 0
        node = leaf.parent
        while node is not None:
            steps += 1
            ml = node.min_leaf
            if ml is not leaf:
                if value < ml.value:
                    node.min_leaf = leaf
                else:
                    break
            node = node.parent
        ops.cmp += steps
        ops.trav += steps

    def change_key(self, handle, value):
        leaf = handle.leaf
        leaf.value = value
        ops = self.ops
        work = 0
        node = leaf.parent
        while node is not None:
            best = None
            for c in node.children:
                ml = c.min_leaf
                if best is None or ml.value < best.value:
                    best = ml
            node.min_leaf = best
            work += len(node.children) + 1
            node = node.parent
        ops.cmp += work
        ops.trav += work

    def value(self, pos):
        return self.leaves[pos - 1].value

    # -- diagnostics ---------------------------------------------------

    def path(self, pos):
        """Nodes from the parent of leaf ``pos`` up to the root."""
        out = []
        node = self.leaves[pos - 1].parent
        while node is not None:
            out.append(node)
            node = node.parent
        return out

    def depth(self, pos):
        return len(self.path(pos))

    def walk(self):
        """Yield ``(node, depth)`` breadth-first from the root."""
        if self.root is None:
            return
        q = deque([(self.root, 0)])
        while q:
            u, d = q.popleft()
            yield u, d
            if isinstance(u, IndexNode):
                for c in u.children:
                    q.append((c, d + 1))

    def leaf_depths(self):
        """List ``[(depth, max children on path)]`` indexed by position - 1."""
        out = [None] * self.m
        if self.root is None:
            return out
        stack = [(self.root, 0, 0)]
        while stack:
            u, d, w = stack.pop()
            if isinstance(u, IndexLeaf):
                out[u.pos - 1] = (d, w)
            else:
                w2 = max(w, len(u.children))
                for c in u.children:
                    stack.append((c, d + 1, w2))
        return out

    def write_csv(self, fh):
        """Dump ``kind,k,j,lo,hi,children,depth`` for every node."""
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["kind", "k", "j", "lo", "hi", "children", "depth"])
        for u, d in self.walk():
            if isinstance(u, IndexLeaf):
                w.writerow(["leaf", "", "", u.pos, u.pos + 1, 0, d])
            elif u.k is None:
                w.writerow(["subdivision", "", "", u.span_lo, u.span_hi, len(u.children), d])
            else:
                w.writerow(["internal", u.k, u.j, u.lo, u.hi, len(u.children), d])

    def write_leaf_table(self, fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["i", "depth", "max_path_children"])
        for i, (d, wmax) in enumerate(self.leaf_depths(), 1):
            w.writerow([i, d, wmax])

    def check(self):
        """Return a description of the first broken structural invariant, or None."""
        if self.root is None:
            return None
        seen = 0
        for u in _postorder(self.root):
            if isinstance(u, IndexLeaf):
                seen += 1
                continue
            spans = [c.span for c in u.children]
            if not spans:
                return f"{u!r} has no children"
            if spans[0][0] != u.span_lo or spans[-1][1] != u.span_hi:
                return f"{u!r} children do not cover its span"
            for (a, b), (c, d) in zip(spans, spans[1:]):
                if b != c:
                    return f"{u!r} children spans not contiguous at {b}/{c}"
            if any(c.parent is not u for c in u.children):
                return f"{u!r} child with wrong parent"
            best = min(c.min_leaf.value for c in u.children)
            if u.min_leaf.value != best:
                return f"{u!r} min-leaf {u.min_leaf.value!r} but subtree min {best!r}"
            lo, hi = u.span
            if not lo <= u.min_leaf.pos < hi:
                return f"{u!r} min-leaf outside its subtree"
        if seen != self.m:
            return f"{seen} leaves for m={self.m}"
        return None


def build_tree(m, ops=None, subdivide=True):
    """Tree over positions ``1..m`` with every value infinite.

    ``subdivide=False`` skips the fan-out reduction step; such trees are only
    meant for inspecting the raw interval layout.
    """
    t = IndexTree(ops)
    if m < 1:
        return t
    root, leaves = _build_structure(m, t.ops, subdivide)
    t.root, t.leaves, t.m = root, leaves, m
    for leaf in leaves:
        h = IndexHandle(leaf.pos, leaf)
        leaf.handle = h
        t.handles.append(h)
    t._recompute_all()
    return t
