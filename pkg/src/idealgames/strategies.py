"""Playable strategies: the winning strategies for the cut-and-choose games
plus the stock adversaries used to exercise them.

Strategies are stateless between moves: everything is rebuilt from the move
context (history, arena, outcome).  Side selection by choosers prefers a
provably infinite side over any finite one — a finite piece is never big, no
matter how it scores inside the current window.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import clopen as clopen_mod
from . import ideals, tree
from .engine import MoveContext, NeedWindow, Resign
from .gamesets import Cut, ExplicitSet, Predicate, view


@dataclass(frozen=True)
class BignessParams:
    window: int = 64
    depth: int = 2
    theta: int = 1

    def __post_init__(self):
        if self.window < 1 or self.depth < 1 or self.theta < 1:
            raise ValueError("window, depth, theta must all be >= 1")


def big_below_score(piece, s: tree.NodePath, p: BignessParams) -> int:
    """Heuristic bigness of `piece` below node s: the minimum, along a
    best-child descent of depth p.depth, of the number of children holding at
    least p.theta elements of the piece."""
    s = tuple(s)
    members = [x for x in piece if tree.in_node(x, s)][:p.window]
    if not members:
        return 0

    def score(node, depth):
        groups = {}
        for x in members:
            if tree.in_node(x, node):
                child = tree.branch_prefix(x, len(node) + 1)
                groups.setdefault(child, 0)
                groups[child] += 1
        good = [c for c, count in sorted(groups.items()) if count >= p.theta]
        if depth <= 1 or not good:
            return len(good)
        return min(len(good), max(score(c, depth - 1) for c in good))

    return score(s, p.depth)


class Strategy:
    name = "strategy"

    def __init__(self, **params):
        self.params = params

    def move(self, ctx: MoveContext) -> tuple[str, dict]:
        raise NotImplementedError


def _ranked_sides(ctx: MoveContext, score_fn):
    """Candidate side indices, best first.

    A provably infinite side always outranks a finite one, and a finite side
    is dropped entirely when an infinite one exists: a low score on an
    infinite side is curable by window growth, while walking into a finite
    side is irreversible.  Among equals, higher score wins, then side 0."""
    flags = [ctx.sides[i].surely_infinite() for i in range(2)]
    candidates = [i for i in range(2) if flags[i] == max(flags)]
    return sorted(candidates, key=lambda i: (score_fn(ctx.sides[i]), -i),
                  reverse=True)


# ---------------------------------------------------------------------------
# Player I cutters

class EdCutter(Strategy):
    """G_1 over pairs: walls off the columns up to II's last pick, leaving the
    column tail.  As long as II keeps the tail, every picked column is fresh
    and the outcome is a partial function graph (phi_ed <= 1).  Choosing a
    walled-off block is the losing branch for II; the cutter then isolates
    single columns and stays legal."""

    name = "ed-cutter"

    def move(self, ctx):
        lo, hi = -1, None  # current arena is columns (lo, hi]
        for cut_rec, choice in zip(ctx.history[::2], ctx.history[1::2]):
            mid = cut_rec.payload["predicate"]["params"]["hi"]
            if choice.payload["side"] == 0:
                hi = mid
            else:
                lo = mid
        if hi is None:
            picks = [c for c, _ in ctx.outcome]
            mid = picks[-1] if picks else 0
            mid = max(mid, lo + 1)
        else:
            mid = min(lo + 1, hi)
        pred = Predicate("col-range", {"lo": lo, "hi": mid})
        return "cut", Cut.where(pred).to_json(ctx.ground)


class RadoCutter(Strategy):
    """G_1 over naturals: splits by adjacency to II's last pick in the BIT
    graph, so every earlier pick has a fixed adjacency to all later ones and
    the outcome is one clique plus one anticlique (phi_r <= 2)."""

    name = "rado-cutter"

    def move(self, ctx):
        if not ctx.outcome:
            return "cut", Cut.explicit([]).to_json(ctx.ground)
        pred = Predicate("rado-nonadjacent", {"v": ctx.outcome[-1]})
        return "cut", Cut.where(pred).to_json(ctx.ground)


class ConvCutter(Strategy):
    """G_fin over the rationals in (0,1): halves the live interval each
    round, so all blocks from round r on sit inside one interval of length
    2^-r."""

    name = "conv-cutter"

    def move(self, ctx):
        lo, hi = Fraction(0), Fraction(1)
        for cut_rec, choice in zip(ctx.history[::2], ctx.history[1::2]):
            params = cut_rec.payload["predicate"]["params"]
            mid = Fraction(params["hi"])
            if choice.payload["side"] == 0:
                hi = mid
            else:
                lo = mid
        mid = (lo + hi) / 2
        pred = Predicate("interval", {"lo": f"{lo.numerator}/{lo.denominator}"
                                      if lo else "0",
                                      "hi": f"{mid.numerator}/{mid.denominator}"})
        return "cut", Cut.where(pred).to_json(ctx.ground)


class SomegaCutter(Strategy):
    """G_fin over a finite slice of the measure-1/2 clopen sets: round n
    splits by bit n of the majority branch, fixing ever longer x-prefixes."""

    name = "somega-cutter"

    def move(self, ctx):
        pred = Predicate("xu-bit", {"i": ctx.round, "bit": "0"})
        return "cut", Cut.where(pred).to_json(ctx.ground)


class RandomCutter(Strategy):
    """Uniformly random split of the windowed arena: one side is a random
    explicit subset of the view, the other the symbolic remainder.  In G_3 it
    plays a random finite set."""

    name = "random-cutter"

    def move(self, ctx):
        v = ctx.arena_view()
        if ctx.phase == "ideal_play":
            if not v:
                raise NeedWindow
            size = ctx.rng.randint(0, max(1, len(v) // 2))
            played = ctx.rng.sample(v, size) if size else []
            return "ideal_play", {"set": [ctx.ground.to_json(x)
                                          for x in played]}
        side0 = [x for x in v if ctx.rng.random() < 0.5]
        return "cut", Cut.explicit(side0).to_json(ctx.ground)


class BisectCutter(Strategy):
    """Splits the windowed arena into lower and upper halves by element
    order."""

    name = "bisect-cutter"

    def move(self, ctx):
        v = ctx.arena_view()
        if not v:
            raise NeedWindow
        median = v[(len(v) - 1) // 2]
        tag = ctx.ground.tag
        if tag == ideals.NATURALS:
            cut = Cut.where(Predicate("le", {"t": median}))
        elif tag in (ideals.PAIRS, ideals.LOWER_TRIANGLE):
            cut = Cut.where(Predicate("col-range",
                                      {"lo": -1, "hi": median[0]}))
        elif tag == ideals.RATIONALS_01:
            cut = Cut.where(Predicate(
                "interval",
                {"lo": "0",
                 "hi": f"{median.numerator}/{median.denominator}"}))
        else:
            cut = Cut.explicit(v[:len(v) // 2 + 1])
        return "cut", cut.to_json(ctx.ground)


# ---------------------------------------------------------------------------
# Player II choosers on the tree of naturals

def _phase_of(r: int, quotas) -> tuple[int, int]:
    """(phase index, first pick of that phase) for pick number r under the
    cumulative quota schedule."""
    start = 0
    for k in itertools.count():
        q = quotas(k)
        if r < start + q:
            return k, start
        start += q


class _TreeChooser(Strategy):
    """Shared skeleton: pick quota(k) points in pairwise-distinct children of
    a focus node per phase, descending into the child of the phase's first
    pick.  Phase k >= 1 picks sit under a depth-(k-1) focus; phase 0 is free."""

    bigness = BignessParams()

    def quotas(self, k: int) -> int:
        raise NotImplementedError

    def focus_depth(self, k: int) -> int:
        return max(0, k - 1)

    def move(self, ctx):
        r = len(ctx.outcome)
        k, start = _phase_of(r, self.quotas)
        depth = self.focus_depth(k)
        focus = self._focus(ctx, k)
        used = {tree.branch_prefix(x, depth + 1) for x in ctx.outcome[start:r]}
        score = lambda side: big_below_score(
            view(side, ctx.ground, ctx.window), focus, self.bigness)
        for side_idx in _ranked_sides(ctx, score):
            element = self._find(ctx, ctx.sides[side_idx], focus, used, k)
            if element is not None:
                return "choose", {"side": side_idx,
                                  "element": ctx.ground.to_json(element)}
        raise NeedWindow

    def _focus(self, ctx, k: int) -> tree.NodePath:
        """The focus node for phase k: the branch prefix of the previous
        phase's first pick (that pick landed in the child the focus descends
        into)."""
        depth = self.focus_depth(k)
        if depth == 0:
            return ()
        start_prev = sum(self.quotas(d) for d in range(k - 1))
        if start_prev >= len(ctx.outcome):
            raise AssertionError("focus requested before its anchor pick")
        return tree.branch_prefix(ctx.outcome[start_prev], depth)

    def _find(self, ctx, side, focus, used, phase):
        if phase == 0:
            v = view(side, ctx.ground, ctx.window)
            return v[0] if v else None
        child_limit = max(16, math.isqrt(ctx.window))
        rest_limit = max(32, ctx.window // 8)
        for j in range(child_limit):
            child = focus + (j,)
            if child in used:
                continue
            for rest in range(rest_limit):
                cand = tree.encode(child, rest)
                if side.contains(cand):
                    return cand
        return None


class PcChooser(_TreeChooser):
    """G_1 chooser whose outcome trace has at least (k+1)! nodes on each
    completed level k: one free pick, then (k+1)! picks in distinct children
    of a depth-(k-1) focus."""

    name = "pc-chooser"

    def __init__(self, window: int = 64, depth: int = 2, theta: int = 1):
        super().__init__(window=window, depth=depth, theta=theta)
        self.bigness = BignessParams(window, depth, theta)

    def quotas(self, k):
        return 1 if k == 0 else math.factorial(k + 1)


class TbChooser(_TreeChooser):
    """G_1 chooser targeting a growth-function floor: stage n makes
    (n+1)*f(n) picks in distinct children of a depth-n focus, so level n+1 of
    the outcome trace holds at least (n+1)*f(n) nodes."""

    name = "tb-chooser"

    def __init__(self, f=(1, 2, 3, 4), g=None,
                 window: int = 64, depth: int = 2, theta: int = 1):
        g = list(g) if g is not None else list(f)
        super().__init__(f=list(f), g=g, window=window, depth=depth,
                         theta=theta)
        self.f = ideals.GrowthFunction(tuple(f))
        self.bigness = BignessParams(window, depth, theta)

    def quotas(self, k):
        return (k + 1) * self.f(k)

    def focus_depth(self, k):
        return k


class NontallChooser(Strategy):
    """G_1 chooser that stays inside a witness set (evens, a tree node, or an
    explicit list); the outcome is always a subset of the witness."""

    name = "nontall-chooser"

    def __init__(self, witness: str = "evens", path=(), elements=()):
        super().__init__(witness=witness, path=list(path),
                         elements=list(elements))
        if witness == "evens":
            self._member = lambda x: x % 2 == 0
        elif witness == "node":
            node = tuple(path)
            self._member = lambda x: tree.in_node(x, node)
        elif witness == "list":
            pool = set(elements)
            self._member = lambda x: x in pool
        else:
            raise ValueError(f"unknown witness kind {witness!r}")

    def move(self, ctx):
        overlaps = [[x for x in view(side, ctx.ground, ctx.window)
                     if self._member(x)] for side in ctx.sides]
        order = sorted(range(2),
                       key=lambda i: (len(overlaps[i]),
                                      ctx.sides[i].surely_infinite(), -i),
                       reverse=True)
        for i in order:
            if overlaps[i]:
                return "choose", {"side": i,
                                  "element": ctx.ground.to_json(overlaps[i][0])}
        raise NeedWindow


# ---------------------------------------------------------------------------
# Player II choosers for G_fin / G_3

class FsigmaChooser(Strategy):
    """G_fin chooser that forces the submeasure up: in round r it picks a
    block of value at least r+1 on the better side, so the trajectory
    dominates the round number."""

    name = "fsigma-chooser"

    def __init__(self, ideal: str = "ed", **ideal_params):
        super().__init__(ideal=ideal, **ideal_params)
        self.grading = ideals.resolve_ideal(ideal, **ideal_params).phi

    def move(self, ctx):
        target = ctx.round + 1

        def score(side):
            # Rank by growth under window enlargement first: a side of
            # bounded capacity (e.g. finitely many columns) saturates, while
            # a full side keeps growing and can reach any target later.
            near = self.grading(view(side, ctx.ground, ctx.window))
            far = self.grading(view(side, ctx.ground, 4 * ctx.window))
            return (far - near, far)

        for side_idx in _ranked_sides(ctx, score):
            block = self._grow_block(
                view(ctx.sides[side_idx], ctx.ground, ctx.window), target)
            if block is not None:
                return "choose_block", {
                    "side": side_idx,
                    "block": [ctx.ground.to_json(x) for x in block]}
            if score(ctx.sides[side_idx])[0] > 0:
                # Still growing with the window: wait for a larger view
                # rather than settling for a saturated side.
                raise NeedWindow
        raise NeedWindow

    def _grow_block(self, candidates, target):
        block = []
        for x in candidates:
            block.append(x)
            if self.grading(block) >= target:
                return block
        return None


class G3SomegaChooser(Strategy):
    """G_3 over a clopen slice: each round dodges player I's set with a
    member disjoint from the round's reference set of measure 2^-(n+1)."""

    name = "g3-somega-chooser"

    def __init__(self, n: int = 1, m: int = 2):
        super().__init__(n=n, m=m)
        self.n = n
        self.m = m
        if m < n + 1:
            raise ValueError("need m >= n+1 for measure-2^-(n+1) references")

    def reference(self, k: int) -> clopen_mod.ClopenSet:
        cells = ["".join(b) for b in itertools.product("01", repeat=self.m)]
        pick = 1 << (self.m - self.n - 1)
        combos = list(itertools.combinations(cells, pick))
        return clopen_mod.ClopenSet.of(combos[k % len(combos)])

    def move(self, ctx):
        u_k = self.reference(ctx.round)
        for v in ctx.arena_view():
            if v in ctx.played:
                continue
            if v.disjoint_from(u_k):
                return "point_play", {"element": ctx.ground.to_json(v)}
        raise Resign("no-disjoint-member")


class RandomChooser(Strategy):
    """Uniform adversary: random nonempty side and random element/block; in
    G_3, a random point outside the played set."""

    name = "random-chooser"

    def move(self, ctx):
        if ctx.phase == "point_play":
            v = [x for x in ctx.arena_view() if x not in ctx.played]
            if not v:
                raise NeedWindow
            return "point_play", {"element":
                                  ctx.ground.to_json(ctx.rng.choice(v))}
        views = [view(side, ctx.ground, ctx.window) for side in ctx.sides]
        nonempty = [i for i in range(2) if views[i]]
        if not nonempty:
            raise NeedWindow
        side_idx = ctx.rng.choice(nonempty)
        if ctx.phase == "choose":
            element = ctx.rng.choice(views[side_idx])
            return "choose", {"side": side_idx,
                              "element": ctx.ground.to_json(element)}
        size = ctx.rng.randint(1, min(4, len(views[side_idx])))
        block = ctx.rng.sample(views[side_idx], size)
        return "choose_block", {"side": side_idx,
                                "block": [ctx.ground.to_json(x)
                                          for x in block]}


# ---------------------------------------------------------------------------
# Registry

def _factory(cls):
    return lambda **params: cls(**params)


REGISTRY = {
    "ed-cutter": _factory(EdCutter),
    "rado-cutter": _factory(RadoCutter),
    "pc-chooser": _factory(PcChooser),
    "tb-chooser": _factory(TbChooser),
    "nontall-chooser": _factory(NontallChooser),
    "fsigma-chooser": _factory(FsigmaChooser),
    "conv-cutter": _factory(ConvCutter),
    "somega-cutter": _factory(SomegaCutter),
    "g3-somega-chooser": _factory(G3SomegaChooser),
    "random-cutter": _factory(RandomCutter),
    "random-chooser": _factory(RandomChooser),
    "bisect-cutter": _factory(BisectCutter),
}


def make_strategy(name: str, **params) -> Strategy:
    if name not in REGISTRY:
        raise KeyError(f"unknown strategy {name!r}")
    return REGISTRY[name](**params)


def ed_flagged_round(t) -> int | None:
    """First round where II chose a walled-off column block against the ED
    cutter (the recorded losing branch), or None."""
    for i, rec in enumerate(t.moves):
        if rec.kind == "choose" and rec.payload["side"] == 0:
            return i // 2
    return None
