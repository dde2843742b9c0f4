"""Abstract-operation tallies.

One abstract operation is one key comparison, one reference traversal or one
node allocation. Structures bump the three raw totals directly; the owning
heap attributes the delta of each public operation to a tag with
:meth:`OpCounters.begin` / :meth:`OpCounters.end`.
"""

import csv

TAGS = ("push", "pop", "peek", "deckey", "rebuild")


class OpCounters:
    __slots__ = ("cmp", "trav", "alloc", "by_tag")

    def __init__(self):
        self.cmp = 0
        self.trav = 0
        self.alloc = 0
        # tag -> [comparisons, traversals, allocations, count]
        self.by_tag = {}

    @property
    def total(self):
        return self.cmp + self.trav + self.alloc

    def begin(self):
        return (self.cmp, self.trav, self.alloc)

    def end(self, tag, snap):
        rec = self.by_tag.get(tag)
        if rec is None:
            rec = self.by_tag[tag] = [0, 0, 0, 0]
        rec[0] += self.cmp - snap[0]
        rec[1] += self.trav - snap[1]
        rec[2] += self.alloc - snap[2]
        rec[3] += 1

    def tagged(self, tag):
        """Total abstract operations attributed to ``tag``."""
        rec = self.by_tag.get(tag)
        return 0 if rec is None else rec[0] + rec[1] + rec[2]

    def count(self, tag):
        rec = self.by_tag.get(tag)
        return 0 if rec is None else rec[3]

    def snapshot(self):
        return {
            "comparisons": self.cmp,
            "traversals": self.trav,
            "allocations": self.alloc,
            "by_tag": {t: tuple(r) for t, r in self.by_tag.items()},
        }

    def write_csv(self, fh):
        """Write ``op,comparisons,traversals,allocations,count`` rows."""
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["op", "comparisons", "traversals", "allocations", "count"])
        order = {t: i for i, t in enumerate(TAGS)}
        for tag in sorted(self.by_tag, key=lambda t: (order.get(t, len(TAGS)), t)):
            w.writerow([tag, *self.by_tag[tag]])

    def __repr__(self):
        return f"OpCounters(cmp={self.cmp}, trav={self.trav}, alloc={self.alloc})"
