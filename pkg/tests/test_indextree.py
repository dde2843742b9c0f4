import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wsheap.counters import OpCounters
from wsheap.errors import KeyIncrease
from wsheap.indextree import (
    INF,
    IndexTree,
    build_tree,
    degree_bound,
    inv_ackermann_proxy,
    up_arrow,
)


def arrow(a, k, b):
    """Unbounded up-arrow straight from the recursive definition."""
    if k == 1:
        return a ** b
    if b == 1:
        return a
    return arrow(a, k - 1, arrow(a, k, b - 1))


def tree_with(values):
    t = IndexTree()
    hs = [t.push(v) for v in values]
    return t, hs


def scan_min(values):
    return min(values, default=INF)


# -- up-arrow ----------------------------------------------------------------

def test_up_arrow_examples():
    assert up_arrow(3, 1, 2, 10**6) == 9
    assert up_arrow(3, 2, 2, 10**6) == 27


def test_up_arrow_saturates():
    assert arrow(3, 3, 2) == 3**27 == 7625597484987
    assert up_arrow(3, 3, 2, 10**6) == 10**6


@pytest.mark.parametrize("a,k,b", [(2, 1, 10), (2, 2, 4), (3, 2, 3), (2, 3, 3), (3, 1, 1), (5, 2, 1), (2, 4, 2)])
def test_up_arrow_matches_unbounded(a, k, b):
    true = arrow(a, k, b)
    for cap in (10, 1000, 10**6, 10**20):
        assert up_arrow(a, k, b, cap) == min(true, cap)


def test_up_arrow_rejects_bad_args():
    with pytest.raises(ValueError):
        up_arrow(1, 1, 1, 10)


@pytest.mark.parametrize("n,k", [(1, 1), (8, 1), (9, 2), (26, 2), (27, 3), (10**6, 3)])
def test_inv_ackermann_proxy(n, k):
    assert inv_ackermann_proxy(n) == k


def test_inv_ackermann_proxy_against_oracle():
    towers = [arrow(3, k, 2) for k in (1, 2, 3)]  # 9, 27, 3**27
    for n in list(range(1, 200)) + [10**6, 3**27 - 1]:
        assert inv_ackermann_proxy(n) == 1 + sum(t <= n for t in towers)


# -- construction --------------------------------------------------------------

def internal_nodes(t):
    return [(u, d) for u, d in t.walk() if u.kind == "internal"]


def test_build_m8_raw():
    t = build_tree(8, subdivide=False)
    nodes = internal_nodes(t)
    assert len(nodes) == 1
    root = nodes[0][0]
    assert (root.j, root.k) == (2, 1) and len(root.children) == 8
    assert [t.depth(i) for i in range(1, 9)] == [1] * 8


def test_build_m9_raw():
    t = build_tree(9, subdivide=False)
    root = t.root
    assert (root.j, root.k, root.lo, root.hi) == (2, 1, 9, 10)
    assert [c.pos for c in root.children] == list(range(1, 10))


def test_build_m30_raw():
    t = build_tree(30, subdivide=False)
    by_name = {(u.j, u.k): u for u, _ in internal_nodes(t)}
    assert set(by_name) == {(2, 1), (3, 1), (2, 2)}
    assert (by_name[2, 1].lo, by_name[2, 1].hi) == (9, 27)
    assert (by_name[3, 1].lo, by_name[3, 1].hi) == (27, 31)
    assert (by_name[2, 2].lo, by_name[2, 2].hi) == (27, 31)
    assert by_name[3, 1].parent is by_name[2, 2]
    assert by_name[2, 2].parent is by_name[2, 1]
    assert t.depth(30) <= 4


def test_level_two_children_raw():
    # (2,2) = [27, 3^27) gathers (3,1)..(j,1) while 3^j <= m
    t = build_tree(3**7, subdivide=False)
    n22 = next(u for u, _ in internal_nodes(t) if (u.j, u.k) == (2, 2))
    assert [(c.j, c.k) for c in n22.children] == [(j, 1) for j in range(3, 8)]


@pytest.mark.parametrize("m", [1, 2, 5, 8, 9, 26, 27, 28, 80, 81, 243, 1000, 6561, 10_000])
@pytest.mark.parametrize("subdivide", [False, True])
def test_structure_checks(m, subdivide):
    t = build_tree(m, subdivide=subdivide)
    assert t.check() is None
    assert sorted(leaf.pos for leaf in t.leaves) == list(range(1, m + 1))
    for u, _ in t.walk():
        if u.kind != "leaf":
            assert [c.span for c in u.children] == sorted(c.span for c in u.children)


@pytest.mark.parametrize("m", [30, 100, 2000])
def test_depth_bound_raw_and_subdivided(m):
    raw = build_tree(m, subdivide=False).leaf_depths()
    sub = build_tree(m).leaf_depths()
    for i in range(1, m + 1):
        k = inv_ackermann_proxy(i)
        assert raw[i - 1][0] <= 2 * (k + 1) + 2
        assert sub[i - 1][0] <= 4 * (k + 1) + 4


def test_subdivision_degree_bound_exhaustive_small():
    for m in (4, 9, 27, 100, 729, 3000):
        for i, (_, widest) in enumerate(build_tree(m).leaf_depths(), 1):
            assert widest <= degree_bound(i)


def test_degree_bound_formula():
    for i in range(1, 2000):
        assert degree_bound(i) == math.ceil(math.sqrt(i)) + 2


def test_build_cost_linear():
    costs = []
    for m in (1000, 10_000, 100_000):
        ops = OpCounters()
        build_tree(m, ops)
        costs.append(ops.total / m)
    assert max(costs) < 2 * min(costs)


# -- operations ----------------------------------------------------------------

def test_push_onto_empty():
    t = IndexTree()
    assert t.peek() is None
    h = t.push(4)
    assert t.peek() is h and len(t) == 1


def test_push_infinity_leaves_peek_alone():
    t, (a,) = tree_with([7])
    t.push(INF)
    assert t.peek() is a
    u = IndexTree()
    u.push(INF)
    assert u.peek() is None


def test_sequential_pushes_track_minimum():
    t = IndexTree()
    values = []
    for v in range(100, 0, -1):
        h = t.push(v)
        values.append(v)
        assert t.peek() is h
        assert t.peek().value == scan_min(values)


def test_handles_survive_rebuilds():
    t = IndexTree()
    hs = [t.push(v) for v in (5, 3, 8)]
    for v in range(40):
        t.push(100 + v)
    assert [h.value for h in hs] == [5, 3, 8]
    assert t.peek() is hs[1]
    t.decrease_key(hs[2], 1)
    assert t.peek() is hs[2]


def test_peek_examples():
    t, hs = tree_with([5, 3, 7])
    assert t.peek() is hs[1]
    t, _ = tree_with([INF, INF])
    assert t.peek() is None
    t, hs = tree_with([4, 4])
    assert t.peek() in hs and t.peek().value == 4


def test_decrease_key_examples():
    t, hs = tree_with([5, 3])
    t.decrease_key(hs[0], 2)
    assert t.peek() is hs[0]
    t, hs = tree_with([1, 9])
    t.decrease_key(hs[1], 5)
    assert t.peek() is hs[0]


def test_decrease_key_rejects_increase():
    t, hs = tree_with([5])
    with pytest.raises(KeyIncrease):
        t.decrease_key(hs[0], 6)


def test_decrease_touches_at_most_depth():
    ops = OpCounters()
    t = build_tree(10_000, ops)
    depth = t.depth(10_000)
    assert depth <= 14
    before = ops.trav
    t.decrease_key(t.handles[-1], 0)
    assert ops.trav - before <= depth
    assert t.peek() is t.handles[-1]


def test_change_key_examples():
    t, hs = tree_with([2, 9])
    t.change_key(hs[0], INF)
    assert t.peek() is hs[1]
    t, hs = tree_with([2, 9])
    t.change_key(hs[0], 2)
    assert t.peek() is hs[0] and t.check() is None


def run_random_trace(m, steps, seed, audit=False):
    rng = random.Random(seed)
    t = IndexTree()
    hs = [t.push(rng.choice([INF, rng.randrange(1000)])) for _ in range(m)]
    values = [h.value for h in hs]
    for _ in range(steps):
        i = rng.randrange(m)
        if rng.random() < 0.5:
            v = values[i] - rng.randrange(50) if values[i] != INF else rng.randrange(1000)
            t.decrease_key(hs[i], v)
        else:
            v = rng.choice([INF, rng.randrange(-500, 1000)])
            t.change_key(hs[i], v)
        values[i] = v
        top = t.peek()
        want = scan_min(values)
        if want == INF:
            assert top is None
        else:
            assert top.value == want
        if audit:
            assert t.check() is None


def test_random_500_step_trace():
    run_random_trace(20, 500, seed=1, audit=True)


def test_peek_oracle_equivalence_long():
    for seed in range(4):
        run_random_trace(60, 2500, seed=seed)


def test_change_key_cost_bounded_by_position():
    ops = OpCounters()
    t = build_tree(5000, ops)
    for i in (1, 10, 100, 1000, 5000):
        before = ops.total
        t.change_key(t.handles[i - 1], i)
        assert ops.total - before <= 10 * (i + 8)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 40), st.one_of(st.none(), st.integers(-100, 100))), min_size=1, max_size=80))
def test_min_coherence_property(steps):
    t = IndexTree()
    hs = []
    values = []
    for pos, v in steps:
        val = INF if v is None else v
        if pos >= len(hs):
            hs.append(t.push(val))
            values.append(val)
        else:
            t.change_key(hs[pos], val)
            values[pos] = val
        assert t.check() is None
        top = t.peek()
        assert (top is None) if scan_min(values) == INF else top.value == scan_min(values)


def test_csv_dump_columns():
    import io

    t = build_tree(30, subdivide=False)
    buf = io.StringIO()
    t.write_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "kind,k,j,lo,hi,children,depth"
    assert "internal,1,2,9,27,27,0" in lines
    assert "internal,2,2,27,31,1,1" in lines
    assert "internal,1,3,27,31,4,2" in lines
    assert sum(line.startswith("leaf,") for line in lines) == 30
