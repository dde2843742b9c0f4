"""Disjoint sets with union by rank and full path compression.

Sets are addressed through their nodes rather than integer ids, so a set can
be created for an element at any time. Only representatives carry a
meaningful ``payload``; after :func:`link` the caller moves the payload onto
the returned winner.
"""

from .counters import OpCounters
from .errors import NotRepresentative, SameSet

_NULL_OPS = OpCounters()


class UfNode:
    __slots__ = ("parent", "rank", "payload")

    def __init__(self, payload=None):
        self.parent = self
        self.rank = 0
        self.payload = payload

    def __repr__(self):
        return f"UfNode(rank={self.rank}, root={self.parent is self})"


def make_set(payload=None, ops=_NULL_OPS):
    ops.alloc += 1
    return UfNode(payload)


def find(x, ops=_NULL_OPS):
    """Return the representative of ``x``'s set, compressing the path."""
    root = x.parent
    if root is x:
        ops.trav += 1
        return x
    steps = 1
    while root.parent is not root:
        root = root.parent
        steps += 1
    # second pass: point everything on the path straight at the root
    while x.parent is not root:
        x.parent, x = root, x.parent
        steps += 1
    ops.trav += steps + 1
    return root


def link(a, b, ops=_NULL_OPS):
    """Union the sets whose representatives are ``a`` and ``b``.

    Returns the new representative. Payloads are left where they were.
    """
    if a is b:
        raise SameSet("link of a set with itself")
    if a.parent is not a or b.parent is not b:
        raise NotRepresentative("link requires two representatives")
    ops.cmp += 1
    ops.trav += 1
    if a.rank < b.rank:
        a.parent = b
        return b
    if a.rank == b.rank:
        a.rank += 1
    b.parent = a
    return a
