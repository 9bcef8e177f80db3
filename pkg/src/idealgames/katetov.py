"""Finite-resolution reduction checking between ideals.

A reduction is a map from the target ground to the source ground whose
preimages of source-ideal generators stay small in the target.  At finite
resolution we can only watch grading trajectories over growing windows, so
verdicts here are observational evidence, never proofs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from . import clopen, hypergraph
from .gamesets import Ground, ground_for_tag, ClopenSliceGround
from .ideals import (CLOPEN, NATURALS, IdealDescriptor, SearchBoundExceeded,
                     resolve_ideal)


@dataclass
class ReductionSpec:
    """A candidate Katětov map between two graded ideals.

    `mapping` sends target ground elements to source ground elements and must
    be total on every tested window.  `consistency` (optional) receives each
    window's elements and raises if a side condition fails.
    """

    name: str
    source: IdealDescriptor
    target: IdealDescriptor
    mapping: Callable
    ground: Optional[Ground] = None
    consistency: Optional[Callable[[list], None]] = None

    def target_ground(self) -> Ground:
        if self.ground is not None:
            return self.ground
        return ground_for_tag(self.target.tag)


@dataclass
class GeneratorReport:
    label: str
    trajectory: list
    verdict: str  # "bounded" | "growing" | "error"
    error: Optional[str] = None

    def to_json(self) -> dict:
        return {"label": self.label, "trajectory": list(self.trajectory),
                "verdict": self.verdict, "error": self.error}


@dataclass
class ReductionReport:
    name: str
    windows: list
    generators: list = field(default_factory=list)
    note: str = "observational; no proof claims"

    def to_json(self) -> dict:
        return {"name": self.name, "windows": list(self.windows),
                "note": self.note,
                "generators": [g.to_json() for g in self.generators]}


def _in_generator(g, x) -> bool:
    return g(x) if callable(g) else x in g


def check_reduction(r: ReductionSpec, generators, windows) -> ReductionReport:
    """Trajectories of the target grading over the generator preimages.

    A generator is a finite truncation of a source generating set (membership
    by containment) or a membership predicate.  "bounded" means the last two
    windows agree; a grading cap blows up one generator's report, not the run.
    """
    if len(windows) < 2 or sorted(windows) != list(windows):
        raise ValueError("windows must be increasing, at least two")
    ground = r.target_ground()
    report = ReductionReport(r.name, list(windows))
    for idx, g in enumerate(generators):
        label = getattr(g, "label", None) or f"generator-{idx}"
        trajectory, error = [], None
        for w in windows:
            elements = ground.enumerate(w)
            if r.consistency is not None:
                r.consistency(elements)
            preimage = [x for x in elements
                        if _in_generator(g, r.mapping(x))]
            try:
                trajectory.append(r.target.phi(preimage))
            except SearchBoundExceeded as exc:
                error = str(exc)
                break
        if error is not None:
            verdict = "error"
        elif trajectory[-1] == trajectory[-2]:
            verdict = "bounded"
        else:
            verdict = "growing"
        report.generators.append(GeneratorReport(label, trajectory, verdict,
                                                 error))
    return report


def sample_generators(d: IdealDescriptor, seed: int, window: int) -> list:
    return d.sampler(seed, window)


# ---------------------------------------------------------------------------
# The bundled reductions

def _omega_slices(max_level: int = 3) -> list:
    out = []
    for level in range(1, max_level + 1):
        out.extend(clopen.enum_omega(level))
    return out


def conv_to_somega() -> ReductionSpec:
    """Clopen sets map to the rational value of their flattened string; near
    rationals pull back to near clopen sets, which concentrate in cylinders."""
    return ReductionSpec(
        name="conv-to-somega",
        source=resolve_ideal("conv"),
        target=resolve_ideal("somega", n=0, bound=64),
        mapping=clopen.y_u,
        ground=ClopenSliceGround(_omega_slices()))


def coloring_reduction(c: hypergraph.Coloring, t: hypergraph.RadoTable,
                       target: Optional[IdealDescriptor] = None,
                       l: int = 1) -> ReductionSpec:
    """The embedding of c into t, packaged as a reduction whose source
    grading is the l-chromatic cover number on table vertices.

    Window elements are the coloring's own vertices; every window re-verifies
    that c agrees with the table on the embedded image.
    """
    f = hypergraph.embed_coloring(c, t)
    source = IdealDescriptor(
        "rnkl", NATURALS, lambda a: hypergraph.phi_rnkl(t, a, l),
        params={"n": t.arity, "k": t.colors, "l": l})
    if target is None:
        target = IdealDescriptor("window", NATURALS, len)
    spec = ReductionSpec(name="coloring-embedding", source=source,
                         target=target, mapping=lambda v: f[v])

    def consistency(elements):
        if any(v >= c.vertex_bound for v in elements):
            raise ValueError("window exceeds the coloring's vertex bound")
        image = {v: spec.mapping(v) for v in elements}
        for a in itertools.combinations(elements, c.arity):
            if c.color(a) != t.color({image[v] for v in a}):
                raise ValueError(f"embedding inconsistent on {a}")

    spec.consistency = consistency
    return spec


# ---------------------------------------------------------------------------
# Clique re-embedding

def k_blocks(count: int) -> list:
    """Edge set of disjoint complete blocks K_1, ..., K_count, block j on
    the vertices [j(j-1)/2, j(j+1)/2)."""
    edges = []
    for j in range(1, count + 1):
        lo = j * (j - 1) // 2
        edges.extend(frozenset(e)
                     for e in itertools.combinations(range(lo, lo + j), 2))
    return edges


def k_uniform_witness(x, budget: int, vertices=None) -> list:
    """Pairwise-disjoint cliques of sizes 1..budget inside the edge set x,
    as vertex lists indexed by block (exact backtracking search).

    `vertices` may add isolated vertices beyond those touched by an edge.
    """
    edges = {frozenset(e) for e in x}
    if any(len(e) != 2 for e in edges):
        raise ValueError("x must be a set of 2-element edges")
    pool = sorted({v for e in edges for v in e}
                  | (set(vertices) if vertices is not None else set()))

    def cliques(size, avail):
        for combo in itertools.combinations(avail, size):
            if all(frozenset(p) in edges
                   for p in itertools.combinations(combo, 2)):
                yield combo

    def solve(sizes, avail):
        if not sizes:
            return []
        for combo in cliques(sizes[0], avail):
            rest = solve(sizes[1:], [v for v in avail if v not in combo])
            if rest is not None:
                return [list(combo)] + rest
        return None

    solution = solve(list(range(budget, 0, -1)), pool)
    if solution is None:
        raise ValueError(f"insufficient cliques for budget {budget}")
    return solution[::-1]
