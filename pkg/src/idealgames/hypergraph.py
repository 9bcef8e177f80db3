"""Staged universal colorings: a k-coloring of n-subsets of an initial
segment of the naturals with the (n,k)-star property, built by processing
family systems and allocating fresh witness vertices.

The table is the finite rendering of a universal object: any small coloring
embeds into it color-preservingly.  Static stages explode doubly
exponentially, so embeddings may extend the table lazily, processing exactly
the family systems they need.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import tree
from .ideals import SearchBoundExceeded, min_partition

#: Cap on the number of family systems a single stage may process.
STAGE_FAMILY_CAP = 200_000


@dataclass(frozen=True)
class FamilySystem:
    """k pairwise-disjoint families of (n-1)-subsets, not all empty."""

    families: tuple  # k-tuple of frozensets of frozensets

    def __post_init__(self):
        seen = set()
        nonempty = False
        for fam in self.families:
            for e in fam:
                if e in seen:
                    raise ValueError("family systems must be disjoint")
                seen.add(e)
                nonempty = True
        if not nonempty:
            raise ValueError("family system must have a nonempty member")

    @classmethod
    def of(cls, *families) -> "FamilySystem":
        return cls(tuple(frozenset(frozenset(e) for e in fam)
                         for fam in families))


@dataclass(frozen=True)
class Coloring:
    """Total coloring of the n-subsets of [0, vertex_bound) with k colors."""

    arity: int
    colors: int
    vertex_bound: int
    table: dict

    def __post_init__(self):
        expected = {frozenset(e) for e in itertools.combinations(
            range(self.vertex_bound), self.arity)}
        if set(self.table) != expected:
            raise ValueError("coloring must be total on the n-subsets")
        if any(not 0 <= c < self.colors for c in self.table.values()):
            raise ValueError("color out of range")

    @classmethod
    def from_function(cls, arity, colors, vertex_bound, fn) -> "Coloring":
        table = {frozenset(e): fn(tuple(e)) for e in itertools.combinations(
            range(vertex_bound), arity)}
        return cls(arity, colors, vertex_bound, table)

    def color(self, subset) -> int:
        return self.table[frozenset(subset)]


class EmbeddingError(ValueError):
    def __init__(self, fam: FamilySystem):
        super().__init__("no witness for a required family system")
        self.family = fam


class RadoTable:
    """Partial k-coloring of n-subsets with a witness log.

    Every logged (family system -> j) satisfies: color({j} | e) = i for all
    e in the system's i-th family.  Unset subsets read as color 0 (the
    totalization rule); star claims rest on the log, not the default.
    """

    def __init__(self, arity: int, colors: int):
        if arity < 2 or colors < 2:
            raise ValueError("need arity >= 2 and colors >= 2")
        self.arity = arity
        self.colors = colors
        self.vertex_count = arity - 1  # X_0
        self.stage_sizes = [arity - 1]
        self.table: dict = {}
        self.witness_log: dict = {}

    def color(self, subset) -> int:
        subset = frozenset(subset)
        if len(subset) != self.arity:
            raise ValueError(f"expected an {self.arity}-subset")
        return self.table.get(subset, 0)

    def is_set(self, subset) -> bool:
        return frozenset(subset) in self.table

    def ensure_witness(self, fam: FamilySystem) -> int:
        """The logged witness for fam, processing it with a fresh vertex if
        needed."""
        if fam in self.witness_log:
            return self.witness_log[fam]
        if len(fam.families) != self.colors:
            raise ValueError("family count must equal the color count")
        j = self.vertex_count
        for i, members in enumerate(fam.families):
            for e in members:
                if len(e) != self.arity - 1:
                    raise ValueError("family members must be (n-1)-subsets")
                if any(v >= j for v in e):
                    raise ValueError("family uses an unknown vertex")
                self.table[frozenset(e) | {j}] = i
        self.vertex_count = j + 1
        self.witness_log[fam] = j
        return j


def _family_systems_over(vertices, arity, colors):
    """All family systems over the given vertex set, in a fixed order:
    (n-1)-subsets lexicographically, assignment vectors lexicographically
    (0 = unassigned, i+1 = i-th family)."""
    subsets = [frozenset(e) for e in itertools.combinations(sorted(vertices),
                                                            arity - 1)]
    total = (colors + 1) ** len(subsets) - 1
    if total > STAGE_FAMILY_CAP:
        raise SearchBoundExceeded(
            f"{total} family systems exceed the stage cap")
    for assignment in itertools.product(range(colors + 1),
                                        repeat=len(subsets)):
        if not any(assignment):
            continue
        families = [set() for _ in range(colors)]
        for e, a in zip(subsets, assignment):
            if a:
                families[a - 1].add(e)
        yield FamilySystem(tuple(frozenset(f) for f in families))


def build_rado(arity: int, colors: int, stages: int) -> RadoTable:
    """Staged table construction.

    Stage 1 is the base case: color {0..n-2, n-1+i} with i for each color i.
    Each later stage processes every family system over the previous stage's
    vertices, allocating the least fresh vertex as witness.
    """
    if stages > 3:
        raise SearchBoundExceeded("stages > 3 is never tractable")
    t = RadoTable(arity, colors)
    root = frozenset(range(arity - 1))
    for stage in range(1, stages + 1):
        previous = range(t.vertex_count)
        if stage == 1:
            for i in range(colors):
                families = [frozenset([root]) if j == i else frozenset()
                            for j in range(colors)]
                t.ensure_witness(FamilySystem(tuple(families)))
        else:
            for fam in list(_family_systems_over(previous, arity, colors)):
                if fam not in t.witness_log:
                    t.ensure_witness(fam)
        t.stage_sizes.append(t.vertex_count)
    return t


def star_witness(t: RadoTable, fam: FamilySystem, exclude=()):
    """Least table vertex satisfying every equation of fam, or None."""
    exclude = set(exclude)
    for j in range(t.vertex_count):
        if j in exclude:
            continue
        ok = True
        for i, members in enumerate(fam.families):
            for e in members:
                subset = frozenset(e) | {j}
                if j in e or len(subset) != t.arity \
                        or not t.is_set(subset) or t.table[subset] != i:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return j
    return None


def star_check_exhaustive(t: RadoTable, cap: int, vertices=None) -> list:
    """Family systems (each family of size <= cap over the given vertices,
    default the X_0 stage) that lack a witness in the table."""
    if vertices is None:
        vertices = range(t.stage_sizes[0])
    missing = []
    if cap == 0:
        return missing
    for fam in _family_systems_over(vertices, t.arity, t.colors):
        if any(len(members) > cap for members in fam.families):
            continue
        if star_witness(t, fam) is None:
            missing.append(fam)
    return missing


def embed_coloring(c: Coloring, t: RadoTable, extend: bool = True) -> dict:
    """Injective vertex map f with c(a) = table color of the f-image for
    every n-subset a.

    Built by the successor recursion: each new vertex becomes the witness of
    the family system its colors impose on the image so far.  With
    extend=True missing witnesses are processed on demand; otherwise the
    failing family system is raised.
    """
    if (c.arity, c.colors) != (t.arity, t.colors):
        raise ValueError("coloring and table disagree on arity or colors")
    f: dict = {}
    for v in range(min(c.vertex_bound, c.arity - 1)):
        f[v] = v
    for v in range(c.arity - 1, c.vertex_bound):
        families = [set() for _ in range(c.colors)]
        for e in itertools.combinations(range(v), c.arity - 1):
            i = c.color(set(e) | {v})
            families[i].add(frozenset(f[u] for u in e))
        fam = FamilySystem(tuple(frozenset(x) for x in families))
        j = star_witness(t, fam, exclude=f.values())
        if j is None:
            if not extend:
                raise EmbeddingError(fam)
            j = t.ensure_witness(fam)
        f[v] = j
    return f


def verify_embedding(c: Coloring, t: RadoTable, f: dict) -> bool:
    if len(set(f.values())) != len(f):
        return False
    return all(
        t.color({f[u] for u in e}) == c.color(e)
        for e in itertools.combinations(range(c.vertex_bound), c.arity))


def phi_rnkl(t: RadoTable, a, l: int, bound: int = 14):
    """Least number of parts covering a with each part spanning at most l
    colors among its n-subsets."""
    if not 0 < l < t.colors:
        raise ValueError("need 0 < l < color count")
    pts = sorted(set(a))
    if len(pts) > bound:
        raise SearchBoundExceeded(f"|a| = {len(pts)} exceeds bound {bound}")

    def fits(part):
        spanned = {t.color(e)
                   for e in itertools.combinations(sorted(part), t.arity)}
        return len(spanned) <= l

    return min_partition(pts, fits)


def edm_coloring(m: int, pair) -> int:
    """Color of a pair of naturals: its separation level, capped at m+1.
    Monochromatic sets then sit inside one generator (a selector for colors
    <= m, a level-(m+1) node for color m+1)."""
    a, b = pair
    if a == b:
        raise ValueError("edm_coloring requires distinct naturals")
    return min(tree.separation_level(a, b), m + 1)


def table_to_json(t: RadoTable) -> dict:
    return {
        "arity": t.arity, "colors": t.colors,
        "vertex_count": t.vertex_count,
        "stage_sizes": list(t.stage_sizes),
        "table": sorted([sorted(e), c] for e, c in t.table.items()),
        "witnesses": sorted(
            ([sorted(sorted(e) for e in fam) for fam in key.families], j)
            for key, j in t.witness_log.items()),
    }


def table_from_json(obj: dict) -> RadoTable:
    t = RadoTable(obj["arity"], obj["colors"])
    t.vertex_count = obj["vertex_count"]
    t.stage_sizes = list(obj["stage_sizes"])
    t.table = {frozenset(e): c for e, c in obj["table"]}
    t.witness_log = {FamilySystem.of(*families): j
                     for families, j in obj["witnesses"]}
    return t


def write_coloring(c: Coloring, path):
    """Text format: header "n k V", then one line "v1 ... vn c" per subset."""
    with open(path, "w") as fh:
        fh.write(f"{c.arity} {c.colors} {c.vertex_bound}\n")
        for e in sorted(sorted(s) for s in c.table):
            fh.write(" ".join(map(str, e))
                     + f" {c.table[frozenset(e)]}\n")


def read_coloring(path) -> Coloring:
    with open(path) as fh:
        lines = [ln.split() for ln in fh if ln.strip()]
    arity, colors, bound = map(int, lines[0])
    table = {frozenset(map(int, parts[:-1])): int(parts[-1])
             for parts in lines[1:]}
    return Coloring(arity, colors, bound, table)


def find_homogeneous(c: Coloring, size: int, l: int,
                     budget: int = 2_000_000):
    """Lexicographically least size-`size` subset of the coloring's vertices
    spanning at most l colors, or None."""
    import math
    if math.comb(c.vertex_bound, size) > budget:
        raise SearchBoundExceeded("search space exceeds the budget")
    for combo in itertools.combinations(range(c.vertex_bound), size):
        spanned = set()
        for e in itertools.combinations(combo, c.arity):
            spanned.add(c.color(e))
            if len(spanned) > l:
                break
        else:
            return list(combo)
    return None
