"""Exactly computable gradings for a catalog of combinatorial ideals.

Each ideal comes with a monotone grading phi on finite subsets of its ground
set; "membership at resolution B" means phi <= B.  All optimization
subroutines (minimum covers, chromatic number, clique number) are exact with
hard input-size caps: exceeding a cap raises SearchBoundExceeded, never an
approximation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import tree

INFINITY = math.inf

# Ground-set tags.
NATURALS = "NATURALS"
PAIRS = "PAIRS"
LOWER_TRIANGLE = "LOWER_TRIANGLE"
EDGE_SET = "EDGE_SET"
RATIONALS_01 = "RATIONALS_01"
CLOPEN = "CLOPEN"  # used by the Solecki-family machinery

GROUND_TAGS = (NATURALS, PAIRS, LOWER_TRIANGLE, EDGE_SET, RATIONALS_01, CLOPEN)


class GroundMismatch(ValueError):
    """An element (or set) does not belong to the expected ground set."""


class SearchBoundExceeded(ValueError):
    """Input exceeds the hard cap of an exact search."""


def _check_pairs(elements):
    for e in elements:
        if not (isinstance(e, tuple) and len(e) == 2 and all(
                isinstance(c, int) and c >= 0 for c in e)):
            raise GroundMismatch(f"not a pair of naturals: {e!r}")


def _check_lower_triangle(elements):
    _check_pairs(elements)
    for n, m in elements:
        if m > n:
            raise GroundMismatch(f"({n},{m}) is outside the lower triangle")


def _check_edges(elements):
    for e in elements:
        if not (isinstance(e, frozenset) and len(e) == 2):
            raise GroundMismatch(f"not an undirected edge: {e!r}")


def _check_naturals(elements):
    for e in elements:
        if not (isinstance(e, int) and e >= 0):
            raise GroundMismatch(f"not a natural: {e!r}")


def _check_rationals(elements):
    for e in elements:
        q = Fraction(e)
        if not (0 < q < 1):
            raise GroundMismatch(f"rational outside (0,1): {e!r}")


_CHECKERS = {
    NATURALS: _check_naturals,
    PAIRS: _check_pairs,
    LOWER_TRIANGLE: _check_lower_triangle,
    EDGE_SET: _check_edges,
    RATIONALS_01: _check_rationals,
    CLOPEN: lambda elements: None,
}


@dataclass(frozen=True)
class FiniteSubset:
    """A finite subset of one of the supported ground sets."""

    tag: str
    elements: frozenset

    def __post_init__(self):
        if self.tag not in GROUND_TAGS:
            raise GroundMismatch(f"unknown ground tag {self.tag!r}")
        _CHECKERS[self.tag](self.elements)

    @classmethod
    def of(cls, tag: str, elements: Iterable) -> "FiniteSubset":
        if tag == EDGE_SET:
            elements = [frozenset(e) for e in elements]
        if tag == RATIONALS_01:
            elements = [Fraction(e) for e in elements]
        return cls(tag, frozenset(elements))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class GrowthFunction:
    """Nondecreasing function given by a finite table plus an extension rule.

    rule "affine" continues with the last table difference; rule "factorial"
    multiplies by (n+1) at each step.  Evaluation past table + extension_limit
    is an error.
    """

    table: tuple[int, ...]
    rule: str = "affine"
    extension_limit: int = 128

    def __post_init__(self):
        if not self.table or any(v < 1 for v in self.table):
            raise ValueError("table must be nonempty with values >= 1")
        if any(a > b for a, b in zip(self.table, self.table[1:])):
            raise ValueError("table must be nondecreasing")
        if self.rule not in ("affine", "factorial"):
            raise ValueError(f"unknown extension rule {self.rule!r}")

    def __call__(self, n: int) -> int:
        if n < 0:
            raise ValueError("GrowthFunction domain is the naturals")
        if n < len(self.table):
            return self.table[n]
        if n >= len(self.table) + self.extension_limit:
            raise ValueError(f"n={n} is past the table + extension range")
        value = self.table[-1]
        if self.rule == "affine":
            step = self.table[-1] - self.table[-2] if len(self.table) > 1 else 0
            return value + step * (n - len(self.table) + 1)
        for j in range(len(self.table), n + 1):
            value *= j + 1
        return value


def min_partition(elements: Sequence, fits: Callable[[frozenset], bool],
                  bound: int | None = None) -> int | float:
    """Least number of parts in a partition of `elements` with every part
    accepted by `fits`.

    Exact search: elements are assigned in order, with the usual symmetry
    restriction that a new part may only be opened as the next index.  The
    `fits` families here are all subset-closed, so minimum cover equals
    minimum partition.  Returns INFINITY when some singleton does not fit.
    """
    elements = list(elements)
    if not elements:
        return 0
    fit_cache: dict[frozenset, bool] = {}

    def fit(part: frozenset) -> bool:
        got = fit_cache.get(part)
        if got is None:
            got = fit_cache[part] = fits(part)
        return got

    if any(not fit(frozenset([e])) for e in elements):
        return INFINITY
    limit = bound if bound is not None else len(elements)

    def assign(idx: int, parts: list[frozenset], k: int) -> bool:
        if idx == len(elements):
            return True
        e = elements[idx]
        for i, part in enumerate(parts):
            cand = part | {e}
            if fit(cand):
                parts[i] = cand
                if assign(idx + 1, parts, k):
                    return True
                parts[i] = part
        if len(parts) < k:
            parts.append(frozenset([e]))
            if assign(idx + 1, parts, k):
                return True
            parts.pop()
        return False

    for k in range(1, limit + 1):
        if assign(0, [], k):
            return k
    return INFINITY


# ---------------------------------------------------------------------------
# ED and ED_fin

def phi_ed(a: Iterable[tuple[int, int]]) -> int:
    """Least number of ED generators (columns and function graphs) covering a.

    Closed form: reserve the j largest fibers as columns, cover the rest with
    max-remaining-fiber many function graphs; minimize over j.
    """
    pts = set(a)
    _check_pairs(pts)
    if not pts:
        return 0
    fibers: dict[int, int] = {}
    for n, _ in pts:
        fibers[n] = fibers.get(n, 0) + 1
    sizes = sorted(fibers.values(), reverse=True)
    best = len(sizes)  # every fiber as its own column
    for j in range(len(sizes)):
        best = min(best, j + sizes[j])
    return best


def phi_ed_fin(a: Iterable[tuple[int, int]]) -> int:
    """phi_ed on the lower triangle {(n, m): m <= n}."""
    pts = set(a)
    _check_lower_triangle(pts)
    return phi_ed(pts)


def ed_part_fits(part: frozenset) -> bool:
    """A set fits one ED generator iff it lies in one column or is a partial
    function graph (at most one point per column)."""
    columns = {n for n, _ in part}
    return len(columns) <= 1 or len(columns) == len(part)


# ---------------------------------------------------------------------------
# Rado (random graph) ideal

def rado_edge(i: int, j: int) -> bool:
    """BIT-predicate edge relation: with a = min, b = max, bit a of b."""
    if i == j:
        raise ValueError("rado_edge requires distinct vertices")
    a, b = (i, j) if i < j else (j, i)
    return (b >> a) & 1 == 1


def is_rado_homogeneous(part: Iterable[int]) -> bool:
    vs = sorted(set(part))
    if len(vs) <= 1:
        return True
    want = rado_edge(vs[0], vs[1])
    return all(rado_edge(u, v) == want
               for u, v in itertools.combinations(vs, 2))


def phi_r(a: Iterable[int], bound: int = 20) -> int:
    """Least number of Rado-homogeneous sets (cliques or anticliques in the
    BIT graph) covering a; exact partition search."""
    pts = set(a)
    _check_naturals(pts)
    if len(pts) > bound:
        raise SearchBoundExceeded(f"|a| = {len(pts)} exceeds bound {bound}")
    return int(min_partition(sorted(pts), is_rado_homogeneous))


# ---------------------------------------------------------------------------
# PC and ED~_m

def _selector_fit(part: frozenset) -> bool:
    """True iff all elements lie in pairwise distinct children of one node,
    equivalently all pairwise separation levels agree."""
    vs = sorted(part)
    if len(vs) <= 1:
        return True
    level = tree.separation_level(vs[0], vs[1])
    return all(tree.separation_level(u, v) == level
               for u, v in itertools.combinations(vs, 2))


def auto_trace_depth(pts: set[int]) -> int:
    """Depth past the deepest pairwise separation: beyond it each element of
    the set sits on its own unary chain."""
    if len(pts) <= 1:
        return 1
    return 1 + max(tree.separation_level(u, v)
                   for u, v in itertools.combinations(sorted(pts), 2))


def phi_pc(a: Iterable[int], depth: int | None = None, bound: int = 16) -> int:
    """Least number of PC generators (selectors and small-branching traces)
    covering a."""
    pts = set(a)
    _check_naturals(pts)
    if len(pts) > bound:
        raise SearchBoundExceeded(f"|a| = {len(pts)} exceeds bound {bound}")
    if not pts:
        return 0
    d = depth if depth is not None else auto_trace_depth(pts)
    if d < auto_trace_depth(pts):
        raise ValueError("depth is below the separation depth of the set")

    def fits(part: frozenset) -> bool:
        return _selector_fit(part) or tree.is_small_branching(
            tree.trace_tree(part, d))

    return int(min_partition(sorted(pts), fits))


def phi_edm(m: int, a: Iterable[int], bound: int = 16) -> int:
    """Least number of ED~_m generators (level-(m+1) nodes and selectors)
    covering a."""
    if m < 0:
        raise ValueError("m must be a natural number")
    pts = set(a)
    _check_naturals(pts)
    if len(pts) > bound:
        raise SearchBoundExceeded(f"|a| = {len(pts)} exceeds bound {bound}")

    def fits(part: frozenset) -> bool:
        if _selector_fit(part):
            return True
        prefixes = {tree.branch_prefix(n, m + 1) for n in part}
        return len(prefixes) <= 1

    return int(min_partition(sorted(pts), fits))


# ---------------------------------------------------------------------------
# TC(f) / TB(f)

def is_f_small_trace(a: Iterable[int], f: GrowthFunction, depth: int) -> bool:
    """True iff the trace tree of a has at most f(n) nodes at each level
    n <= depth."""
    trace = tree.trace_tree(a, depth)
    for n in range(depth + 1):
        if sum(1 for s in trace if len(s) == n) > f(n):
            return False
    return True


def phi_tc(f: GrowthFunction, a: Iterable[int], depth: int,
           bound: int = 16) -> int:
    """Least number of parts in a partition of a with every part f-small
    traced to `depth`."""
    pts = set(a)
    _check_naturals(pts)
    if len(pts) > bound:
        raise SearchBoundExceeded(f"|a| = {len(pts)} exceeds bound {bound}")
    value = min_partition(sorted(pts),
                          lambda part: is_f_small_trace(part, f, depth))
    if value is INFINITY:
        # f >= 1 everywhere, so singletons always fit; unreachable.
        raise AssertionError("singleton failed f-smallness")
    return int(value)


def tb_positive_witness(a: Iterable[int], f: GrowthFunction, r: Fraction,
                        depth: int) -> bool:
    """True iff every trace node at level < depth has at least ceil(r*f(level))
    successors in the trace."""
    if r <= 0:
        raise ValueError("r must be positive")
    r = Fraction(r)
    trace = tree.trace_tree(a, depth)
    children: dict[tree.NodePath, int] = {}
    for s in trace:
        if s:
            children[s[:-1]] = children.get(s[:-1], 0) + 1
    for s in trace:
        if len(s) < depth:
            need = -(-(r * f(len(s))) // 1)  # ceil of a Fraction
            if children.get(s, 0) < need:
                return False
    return True


# ---------------------------------------------------------------------------
# Graph ideals: G_fc and K

def _edge_graph(a: Iterable[frozenset]) -> tuple[list[int], dict[int, set[int]]]:
    edges = set(a)
    _check_edges(edges)
    adj: dict[int, set[int]] = {}
    for e in edges:
        u, v = sorted(e)
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return sorted(adj), adj


def chromatic_number(a: Iterable[frozenset], bound: int = 16) -> int:
    """Exact chromatic number of the graph with edge set a (0 if edgeless)."""
    vertices, adj = _edge_graph(a)
    if not vertices:
        return 0
    if len(vertices) > bound:
        raise SearchBoundExceeded(
            f"{len(vertices)} vertices exceed bound {bound}")
    order = sorted(vertices, key=lambda v: -len(adj[v]))

    def colorable(k: int) -> bool:
        colors: dict[int, int] = {}

        def go(idx: int) -> bool:
            if idx == len(order):
                return True
            v = order[idx]
            used = {colors[u] for u in adj[v] if u in colors}
            # Symmetry break: at most one previously-unused color is tried.
            fresh = max(colors.values(), default=-1) + 1
            for c in range(min(fresh + 1, k)):
                if c not in used:
                    colors[v] = c
                    if go(idx + 1):
                        return True
                    del colors[v]
            return False

        return go(0)

    for k in range(1, len(vertices) + 1):
        if colorable(k):
            return k
    raise AssertionError("graph not colorable with |V| colors")


def phi_gfc(a: Iterable[frozenset], bound: int = 16) -> int:
    """ceil(log2 chi(a)): least k with a a union of k bipartite graphs."""
    chi = chromatic_number(a, bound=bound)
    if chi <= 1:
        return 0
    return (chi - 1).bit_length()


def clique_number(a: Iterable[frozenset], bound: int = 24) -> int:
    """Exact clique number of the graph with edge set a; 0 for empty edge set."""
    vertices, adj = _edge_graph(a)
    if not vertices:
        return 0
    if len(vertices) > bound:
        raise SearchBoundExceeded(
            f"{len(vertices)} vertices exceed bound {bound}")
    best = 1
    order = sorted(vertices, key=lambda v: -len(adj[v]))

    def extend(clique: list[int], candidates: list[int]):
        nonlocal best
        best = max(best, len(clique))
        for i, v in enumerate(candidates):
            if len(clique) + len(candidates) - i <= best:
                return
            extend(clique + [v], [u for u in candidates[i + 1:]
                                  if u in adj[v]])

    extend([], order)
    return best


def phi_k(a: Iterable[frozenset], bound: int = 24) -> int:
    """Largest n with a copy of K_n inside the edge set a (0 when empty)."""
    return clique_number(a, bound=bound)


# ---------------------------------------------------------------------------
# conv proxy

def conv_cluster_count(a: Iterable[Fraction], epsilon: Fraction) -> int:
    """Least number of closed intervals of length epsilon covering a.

    Greedy left-to-right sweep, optimal in one dimension.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    pts = sorted({Fraction(q) for q in a})
    _check_rationals(pts)
    count = 0
    i = 0
    while i < len(pts):
        count += 1
        right = pts[i] + epsilon
        while i < len(pts) and pts[i] <= right:
            i += 1
    return count


# ---------------------------------------------------------------------------
# Brute-force oracle

def brute_cover_number(a: Sequence, fits: Callable[[frozenset], bool],
                       bound: int = 14) -> int | float:
    """Exact minimum number of generator-fitting subsets covering a.

    Independent test oracle: plain exhaustive search over covers by maximal
    fitting subsets, no closed forms.  The fitting families in this module are
    subset-closed, so covers and partitions agree.
    """
    pts = list(dict.fromkeys(a))
    if len(pts) > bound:
        raise SearchBoundExceeded(f"|a| = {len(pts)} exceeds bound {bound}")
    if not pts:
        return 0
    if any(not fits(frozenset([e])) for e in pts):
        return INFINITY
    universe = frozenset(pts)

    def fitting_supersets(seed, avail: frozenset) -> list[frozenset]:
        """All maximal fitting subsets of avail containing seed."""
        results: list[frozenset] = []

        def grow(current: frozenset, rest: list):
            extended = False
            for i, e in enumerate(rest):
                cand = current | {e}
                if fits(cand):
                    extended = True
                    grow(cand, rest[i + 1:])
            if not extended:
                results.append(current)

        grow(frozenset([seed]), [e for e in pts if e in avail and e != seed])
        # Deduplicate: distinct growth orders can reach the same maximal set.
        return list(dict.fromkeys(results))

    best = [len(pts)]

    def cover(avail: frozenset, used: int):
        if used >= best[0]:
            return
        if not avail:
            best[0] = used
            return
        seed = next(e for e in pts if e in avail)
        for part in fitting_supersets(seed, avail):
            cover(avail - part, used + 1)

    cover(universe, 0)
    return best[0]


def ed_generator_fits(part: frozenset) -> bool:
    """Fit predicate for ED generators, shared by the oracle tests."""
    return ed_part_fits(part)


# ---------------------------------------------------------------------------
# Descriptors

@dataclass(frozen=True)
class IdealDescriptor:
    """An ideal with its ground tag, grading, and a seeded generator sampler.

    The sampler returns finite truncations of generating sets within a
    window, for reduction checking and batch reporting.
    """

    name: str
    tag: str
    grading: Callable[[Iterable], int | float]
    sampler: Callable[[int, int], list[frozenset]] = field(
        default=lambda seed, window: [])
    params: dict = field(default_factory=dict)

    def phi(self, elements: Iterable) -> int | float:
        return self.grading(elements)


def _ed_sampler(seed: int, window: int) -> list[frozenset]:
    side = max(2, math.isqrt(window))
    cols = [frozenset((c, r) for r in range(side)) for c in range(3)]
    diag = frozenset((n, n % side) for n in range(side))
    return cols + [diag]


def _rado_sampler(seed: int, window: int) -> list[frozenset]:
    clique, anti = [], []
    for n in range(window):
        if all(rado_edge(n, v) for v in clique):
            clique.append(n)
        if all(not rado_edge(n, v) for v in anti if v != n):
            anti.append(n)
    return [frozenset(clique), frozenset(anti)]


def _pc_sampler(seed: int, window: int) -> list[frozenset]:
    selector = frozenset(tree.encode((n,), 0) for n in range(6)
                         if tree.encode((n,), 0) < window)
    # A small-branching trace: one element peeling off the leftmost chain
    # at each depth >= 1.
    chain = frozenset(x for x in (tree.encode((0,) * i, 1) for i in range(1, 7))
                      if x < window)
    return [selector, chain]


def make_registry() -> dict[str, Callable[..., IdealDescriptor]]:
    """Factories for the named ideals; parametrized ones take keyword args."""

    def ed(**_):
        return IdealDescriptor("ed", PAIRS, phi_ed, _ed_sampler)

    def edfin(**_):
        return IdealDescriptor("edfin", LOWER_TRIANGLE, phi_ed_fin)

    def rado(**_):
        return IdealDescriptor("rado", NATURALS,
                               lambda a: phi_r(a, bound=64), _rado_sampler)

    def pc(**_):
        return IdealDescriptor("pc", NATURALS, phi_pc, _pc_sampler)

    def edm(m: int = 0, **_):
        return IdealDescriptor("edm", NATURALS,
                               lambda a: phi_edm(m, a), params={"m": m})

    def tc(f: GrowthFunction | None = None, depth: int = 3, **_):
        f = f or GrowthFunction((1, 2, 3, 4))
        return IdealDescriptor("tc", NATURALS,
                               lambda a: phi_tc(f, a, depth),
                               params={"f": f.table, "depth": depth})

    def gfc(**_):
        return IdealDescriptor("gfc", EDGE_SET, phi_gfc)

    def k(**_):
        return IdealDescriptor("k", EDGE_SET, phi_k)

    def conv(epsilon: Fraction = Fraction(1, 16), **_):
        eps = Fraction(epsilon)
        return IdealDescriptor(
            "conv", RATIONALS_01,
            lambda a: conv_cluster_count(a, eps),
            lambda seed, window: [frozenset(
                Fraction(1, 2) + Fraction(1, 8 * (j + 2)) for j in range(8))],
            params={"epsilon": str(eps)})

    return {"ed": ed, "edfin": edfin, "rado": rado, "pc": pc, "edm": edm,
            "tc": tc, "gfc": gfc, "k": k, "conv": conv}


def resolve_ideal(name: str, **params) -> IdealDescriptor:
    registry = make_registry()
    if name not in registry:
        # somega lives in clopen.py; resolved lazily to avoid an import cycle.
        if name == "somega":
            from . import clopen
            return clopen.somega_descriptor(**params)
        raise KeyError(f"unknown ideal {name!r}")
    return registry[name](**params)
