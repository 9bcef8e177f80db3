"""Deterministic tree partition of the naturals.

Every natural number sits on a unique infinite branch through omega^<omega,
obtained by iterating the diagonal pairing function.  The node A_s (s a finite
path) is the set of naturals whose branch starts with s; the children
{A_{s+(n,)}} partition A_s, and any two distinct naturals separate at some
finite depth.  The pairing orientation pi(k, m) = (k+m)(k+m+1)/2 + m is a
frozen constant of this artifact: changing it changes every derived value.
"""

from __future__ import annotations

from math import isqrt
from typing import Iterable, Iterator

NodePath = tuple[int, ...]

#: Iterating unpair on distinct naturals below 2**53 separates far earlier
#: than this; exceeding it indicates corrupted input.
SEPARATION_DEPTH_CAP = 64


def pair(k: int, m: int) -> int:
    """Diagonal pairing pi(k, m)."""
    if k < 0 or m < 0:
        raise ValueError("pair requires nonnegative arguments")
    s = k + m
    return s * (s + 1) // 2 + m


def unpair(n: int) -> tuple[int, int]:
    """Inverse of pair: returns (k, m) with pair(k, m) == n."""
    if n < 0:
        raise ValueError("unpair requires a nonnegative argument")
    # Largest diagonal index s with s(s+1)/2 <= n.
    s = (isqrt(8 * n + 1) - 1) // 2
    m = n - s * (s + 1) // 2
    return s - m, m


def branch(n: int) -> Iterator[int]:
    """Infinite branch of n: successive k-components of iterated unpair."""
    rest = n
    while True:
        k, rest = unpair(rest)
        yield k


def branch_prefix(n: int, depth: int) -> NodePath:
    """First `depth` coordinates of the branch of n."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    out = []
    rest = n
    for _ in range(depth):
        k, rest = unpair(rest)
        out.append(k)
    return tuple(out)


def encode(s: NodePath, rest: int) -> int:
    """The member of A_s whose residual after |s| unpair steps is `rest`.

    Strictly increasing in `rest`, so encode(s, 0), encode(s, 1), ... lists
    A_s in increasing order.
    """
    n = rest
    for k in reversed(s):
        n = pair(k, n)
    return n


def in_node(n: int, s: NodePath) -> bool:
    """Membership n in A_s."""
    return branch_prefix(n, len(s)) == tuple(s)


def node_members(s: NodePath, count: int) -> list[int]:
    """The `count` smallest members of A_s, in increasing order."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    return [encode(tuple(s), r) for r in range(count)]


def separation_level(n: int, m: int) -> int:
    """Length of the longest common prefix of the branches of n and m."""
    if n == m:
        raise ValueError("separation_level requires distinct naturals")
    rest_n, rest_m = n, m
    for level in range(SEPARATION_DEPTH_CAP):
        k_n, rest_n = unpair(rest_n)
        k_m, rest_m = unpair(rest_m)
        if k_n != k_m:
            return level
    raise RuntimeError(
        f"no separation of {n} and {m} within depth {SEPARATION_DEPTH_CAP}"
    )


def trace_tree(a: Iterable[int], depth: int) -> set[NodePath]:
    """All node paths of length <= depth that meet the finite set a.

    Prefix-closed; empty input yields the empty tree (no root node).
    """
    tree: set[NodePath] = set()
    for n in set(a):
        rest = n
        path: list[int] = []
        tree.add(())
        for _ in range(depth):
            k, rest = unpair(rest)
            path.append(k)
            tree.add(tuple(path))
    return tree


def is_prefix_closed(tree: set[NodePath]) -> bool:
    return all(s[:-1] in tree for s in tree if s)


def is_small_branching(tree: set[NodePath]) -> bool:
    """True iff every node s of the tree has at most |s|+1 successors in it."""
    tree = set(tree)
    if not is_prefix_closed(tree):
        raise ValueError("tree is not prefix-closed")
    children: dict[NodePath, int] = {}
    for s in tree:
        if s:
            children[s[:-1]] = children.get(s[:-1], 0) + 1
    return all(count <= len(s) + 1 for s, count in children.items())
