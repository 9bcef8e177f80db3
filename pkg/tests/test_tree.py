import itertools

import pytest
from hypothesis import given, strategies as st

from idealgames import tree


def test_pair_unpair_known_values():
    assert tree.unpair(0) == (0, 0)
    assert tree.unpair(1) == (1, 0)
    assert tree.unpair(2) == (0, 1)
    assert tree.pair(0, 0) == 0
    assert tree.pair(1, 0) == 1
    assert tree.pair(0, 1) == 2


def test_pair_bijective_on_initial_segment():
    seen = {tree.pair(*tree.unpair(n)) for n in range(10_000)}
    assert seen == set(range(10_000))


@given(st.integers(0, 10**9), st.integers(0, 10**9))
def test_unpair_inverts_pair(k, m):
    assert tree.unpair(tree.pair(k, m)) == (k, m)


def test_branch_prefix_known_values():
    assert tree.branch_prefix(7, 2) == (2, 1)
    assert tree.branch_prefix(20, 4) == (0, 0, 0, 1)
    assert tree.branch_prefix(5, 3) == (0, 0, 1)


def test_branch_matches_prefix():
    b = tree.branch(123456)
    head = tuple(next(b) for _ in range(8))
    assert head == tree.branch_prefix(123456, 8)


def test_node_members_known_values():
    assert tree.node_members((0,), 3) == [0, 2, 5]
    assert tree.node_members((1,), 1) == [1]
    assert tree.node_members((), 4) == [0, 1, 2, 3]


@given(st.lists(st.integers(0, 6), max_size=4), st.integers(0, 200))
def test_encode_lands_in_node(s, rest):
    s = tuple(s)
    n = tree.encode(s, rest)
    assert tree.in_node(n, s)


@given(st.lists(st.integers(0, 6), max_size=4))
def test_encode_strictly_increasing(s):
    s = tuple(s)
    values = [tree.encode(s, r) for r in range(10)]
    assert values == sorted(set(values))


def test_children_partition_node():
    # Each depth-d level's nodes partition the naturals below the cutoff.
    for depth in range(1, 7):
        prefixes = [tree.branch_prefix(n, depth) for n in range(10_000)]
        assert len(prefixes) == 10_000
    # Distinct children of a node are disjoint.
    members0 = set(tree.node_members((0, 0), 50))
    members1 = set(tree.node_members((0, 1), 50))
    assert not members0 & members1
    assert members0 | members1 <= set(tree.node_members((0,), 10_000))


def test_separation_level_known_values():
    assert tree.separation_level(0, 1) == 0
    assert tree.separation_level(0, 2) == 1
    assert tree.separation_level(0, 20) == 3
    with pytest.raises(ValueError):
        tree.separation_level(4, 4)


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_separation_symmetric_and_finite(n, m):
    if n == m:
        return
    level = tree.separation_level(n, m)
    assert level == tree.separation_level(m, n)
    assert tree.branch_prefix(n, level) == tree.branch_prefix(m, level)
    assert tree.branch_prefix(n, level + 1) != tree.branch_prefix(m, level + 1)


def test_trace_tree_known_shape():
    t = tree.trace_tree({0, 2, 5}, 2)
    assert t == {(), (0,), (0, 0), (0, 1), (0, 0)} | {(0, 0), (0, 1)}
    # explicit: 0 -> (0,0), 2 -> (0,1), 5 -> (0,0) at depth 2
    assert (0,) in t and ((0, 0) in t) and ((0, 1) in t)
    assert tree.is_prefix_closed(t)


def test_trace_tree_empty():
    assert tree.trace_tree(set(), 3) == set()


@given(st.sets(st.integers(0, 10**5), max_size=8), st.integers(0, 6))
def test_trace_tree_prefix_closed(a, depth):
    assert tree.is_prefix_closed(tree.trace_tree(a, depth))


def test_small_branching_examples():
    assert tree.is_small_branching(tree.trace_tree({0, 2, 5}, 2))
    # Root has branching allowance 1: two distinct depth-1 children fail.
    wide = tree.trace_tree({0, 1}, 1)
    assert not tree.is_small_branching(wide)
    # Three distinct children of (0,) exceed its allowance of 2.
    kids = [tree.encode((0, j), 0) for j in range(3)]
    assert not tree.is_small_branching(tree.trace_tree(kids, 2))
    with pytest.raises(ValueError):
        tree.is_small_branching({(0, 1)})


def test_every_natural_on_unique_branch():
    # Injectivity of depth-d prefixes together with the residual.
    for n in range(2_000):
        for d in range(1, 5):
            s = tree.branch_prefix(n, d)
            rest = n
            for _ in range(d):
                _, rest = tree.unpair(rest)
            assert tree.encode(s, rest) == n


def test_pairwise_separation_bounded():
    worst = max(tree.separation_level(n, m)
                for n, m in itertools.combinations(range(200), 2))
    assert worst < tree.SEPARATION_DEPTH_CAP
