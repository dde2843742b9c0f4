"""Working-set heap with inverse-Ackermann decrease-key, and its test harness."""

from .counters import OpCounters
from .errors import (
    Dead,
    Empty,
    HeapError,
    InfeasibleParameters,
    KeyIncrease,
    NotRepresentative,
    ParseError,
    SameSet,
)
from .fibheap import FibHeap, FibNode
from .heap import Element, WorkSetHeap
from .indextree import IndexTree, build_tree, inv_ackermann_proxy, up_arrow
from .sssp import BinaryHeap, Graph, dijkstra, gen_graph, load_dimacs

__all__ = [
    "BinaryHeap", "Dead", "Element", "Empty", "FibHeap", "FibNode", "Graph",
    "HeapError", "IndexTree", "InfeasibleParameters", "KeyIncrease",
    "NotRepresentative", "OpCounters", "ParseError", "SameSet", "WorkSetHeap",
    "build_tree", "dijkstra", "gen_graph", "inv_ackermann_proxy", "load_dimacs",
    "up_arrow",
]
