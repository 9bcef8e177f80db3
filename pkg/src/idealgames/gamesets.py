"""Ground sets, serializable cut predicates, and symbolic arena sets.

A game arena is in principle infinite; the engine represents it as a set
expression (everything / explicit finite set / difference / predicate
restriction) that supports exact membership tests plus finite views through
a window.  Cuts therefore never need to materialize an infinite side: one
side may be a small explicit set with the other side the symbolic remainder,
or both sides come from a named predicate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import clopen as clopen_mod
from . import ideals, tree


class Ground:
    """A countable ground set with a fixed enumeration and JSON element codec."""

    tag: str

    def enumerate(self, count: int) -> list:
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def to_json(self, x):
        return x

    def from_json(self, obj):
        return obj

    def describe(self) -> dict:
        return {"tag": self.tag}


class NaturalsGround(Ground):
    tag = ideals.NATURALS

    def enumerate(self, count):
        return list(range(count))

    def contains(self, x):
        return isinstance(x, int) and x >= 0


class PairsGround(Ground):
    """Pairs of naturals enumerated along the pairing diagonal."""

    tag = ideals.PAIRS

    def enumerate(self, count):
        return [tree.unpair(i) for i in range(count)]

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) == 2
                and all(isinstance(c, int) and c >= 0 for c in x))

    def to_json(self, x):
        return list(x)

    def from_json(self, obj):
        return (int(obj[0]), int(obj[1]))


class LowerTriangleGround(PairsGround):
    tag = ideals.LOWER_TRIANGLE

    def enumerate(self, count):
        out = []
        for n in itertools.count():
            for m in range(n + 1):
                if len(out) == count:
                    return out
                out.append((n, m))
        return out

    def contains(self, x):
        return super().contains(x) and x[1] <= x[0]


class RationalsGround(Ground):
    """Rationals in (0,1), enumerated by denominator then numerator."""

    tag = ideals.RATIONALS_01

    def enumerate(self, count):
        out = []
        for q in itertools.count(2):
            for p in range(1, q):
                if Fraction(p, q).denominator != q:
                    continue  # not in lowest terms; already enumerated
                if len(out) == count:
                    return out
                out.append(Fraction(p, q))
        return out

    def contains(self, x):
        return isinstance(x, Fraction) and 0 < x < 1

    def to_json(self, x):
        return f"{x.numerator}/{x.denominator}"

    def from_json(self, obj):
        return Fraction(obj)


class ClopenSliceGround(Ground):
    """A finite, explicitly listed arena of clopen sets."""

    tag = ideals.CLOPEN

    def __init__(self, members: Iterable[clopen_mod.ClopenSet]):
        self.members = list(members)
        self._index = {u: i for i, u in enumerate(self.members)}

    def enumerate(self, count):
        return self.members[:count]

    def contains(self, x):
        return x in self._index

    def to_json(self, x):
        return x.serialize()

    def from_json(self, obj):
        return clopen_mod.ClopenSet.parse(obj)

    def describe(self):
        return {"tag": self.tag, "members": [u.serialize() for u in self.members]}


def ground_for_tag(tag: str, **kwargs) -> Ground:
    if tag == ideals.NATURALS:
        return NaturalsGround()
    if tag == ideals.PAIRS:
        return PairsGround()
    if tag == ideals.LOWER_TRIANGLE:
        return LowerTriangleGround()
    if tag == ideals.RATIONALS_01:
        return RationalsGround()
    if tag == ideals.CLOPEN:
        levels = kwargs.get("levels", 2)
        return ClopenSliceGround(clopen_mod.enum_omega(levels))
    raise ValueError(f"no ground for tag {tag!r}")


# ---------------------------------------------------------------------------
# Predicates

@dataclass(frozen=True)
class Predicate:
    """Named membership test, serializable into transcripts."""

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _PREDICATE_EVAL:
            raise ValueError(f"unknown predicate kind {self.kind!r}")

    def eval(self, x) -> bool:
        return _PREDICATE_EVAL[self.kind](self.params, x)

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params)}

    @classmethod
    def from_json(cls, obj) -> "Predicate":
        return cls(obj["kind"], dict(obj["params"]))


def _eval_le(p, x):
    return x <= p["t"]


def _eval_col_range(p, x):
    return p["lo"] < x[0] <= p["hi"]


def _eval_col_gt(p, x):
    return x[0] > p["t"]


def _eval_interval(p, x):
    return Fraction(p["lo"]) < x <= Fraction(p["hi"])


def _eval_rado_nonadjacent(p, x):
    v = p["v"]
    return x == v or not ideals.rado_edge(x, v)


def _eval_xu_bit(p, x):
    i = p["i"]
    return clopen_mod.x_u(x, i + 1)[i] == p["bit"]


def _eval_in_node(p, x):
    return tree.in_node(x, tuple(p["path"]))


_PREDICATE_EVAL = {
    "le": _eval_le,
    "col-range": _eval_col_range,
    "col-gt": _eval_col_gt,
    "interval": _eval_interval,
    "rado-nonadjacent": _eval_rado_nonadjacent,
    "xu-bit": _eval_xu_bit,
    "in-node": _eval_in_node,
}

#: Whether the (keep=True, keep=False) sides of each predicate kind are
#: provably infinite when restricted from an infinite base set.  Choosers use
#: this to avoid walking into a finite side: a finite piece is never "big".
_PREDICATE_SIDE_INFINITE = {
    "le": (False, True),
    "col-range": (True, True),
    "col-gt": (True, True),
    "interval": (True, True),
    "rado-nonadjacent": (True, True),
    "xu-bit": (False, False),
    "in-node": (True, True),
}


# ---------------------------------------------------------------------------
# Set expressions

class SetExpr:
    def contains(self, x) -> bool:
        raise NotImplementedError

    def surely_infinite(self) -> bool:
        """Conservative: True only when the expression provably describes an
        infinite set."""
        return False


@dataclass(frozen=True)
class AllSet(SetExpr):
    ground: Ground

    def contains(self, x):
        return self.ground.contains(x)

    def surely_infinite(self):
        return self.ground.tag != ideals.CLOPEN


@dataclass(frozen=True)
class ExplicitSet(SetExpr):
    elements: frozenset

    def contains(self, x):
        return x in self.elements


@dataclass(frozen=True)
class DiffSet(SetExpr):
    base: SetExpr
    removed: frozenset

    def contains(self, x):
        return x not in self.removed and self.base.contains(x)

    def surely_infinite(self):
        return self.base.surely_infinite()


@dataclass(frozen=True)
class FilterSet(SetExpr):
    base: SetExpr
    predicate: Predicate
    keep: bool

    def contains(self, x):
        return self.base.contains(x) and self.predicate.eval(x) == self.keep

    def surely_infinite(self):
        side = _PREDICATE_SIDE_INFINITE[self.predicate.kind][0 if self.keep
                                                             else 1]
        return side and self.base.surely_infinite()


def view(expr: SetExpr, ground: Ground, window: int) -> list:
    """The members of expr among the first `window` ground elements, in
    enumeration order.  Explicit sets are listed in full.  Interval-restricted
    sets of rationals are sampled densely inside the interval instead (plain
    enumeration would need astronomically large windows to reach short
    intervals)."""
    if isinstance(expr, ExplicitSet):
        return sorted_elements(expr.elements, ground)
    if ground.tag == ideals.RATIONALS_01:
        interval = _interval_of(expr)
        if interval is not None and interval != (Fraction(0), Fraction(1)):
            lo, hi = interval
            if lo >= hi:
                return []
            count = min(window, 128)
            seen = []
            for i in range(1, count + 1):
                q = lo + (hi - lo) * Fraction(i, count + 1)
                if expr.contains(q) and q not in seen:
                    seen.append(q)
            return seen
    return [x for x in ground.enumerate(window) if expr.contains(x)]


def _interval_of(expr: SetExpr):
    """The half-open interval (lo, hi] an expression restricts to, when it is
    built purely from interval filters; None when another shape intervenes."""
    if isinstance(expr, AllSet):
        return Fraction(0), Fraction(1)
    if isinstance(expr, DiffSet):
        return _interval_of(expr.base)
    if isinstance(expr, FilterSet) and expr.predicate.kind == "interval":
        base = _interval_of(expr.base)
        if base is None:
            return None
        lo, hi = base
        plo = Fraction(expr.predicate.params["lo"])
        phi = Fraction(expr.predicate.params["hi"])
        if expr.keep:
            return max(lo, plo), min(hi, phi)
        # Complement of (plo, phi]: keep whichever end survives the base.
        if plo <= lo:
            return max(lo, phi), hi
        if phi >= hi:
            return lo, min(hi, plo)
        return lo, plo  # keep the left remnant deterministically
    return None


def sorted_elements(elements: Iterable, ground: Ground) -> list:
    if ground.tag == ideals.CLOPEN:
        return sorted(elements, key=lambda u: u.generators)
    return sorted(elements)


# ---------------------------------------------------------------------------
# Cuts

@dataclass(frozen=True)
class Cut:
    """A partition of the arena into side 0 and side 1.

    Explicit mode: side 0 is the given finite set, side 1 the remainder.
    Predicate mode: side 0 is where the predicate holds.
    """

    mode: str  # "explicit" | "predicate"
    side0: frozenset | None = None
    predicate: Predicate | None = None

    def __post_init__(self):
        if self.mode == "explicit":
            if self.side0 is None or self.predicate is not None:
                raise ValueError("explicit cut takes side0 only")
        elif self.mode == "predicate":
            if self.predicate is None or self.side0 is not None:
                raise ValueError("predicate cut takes a predicate only")
        else:
            raise ValueError(f"unknown cut mode {self.mode!r}")

    @classmethod
    def explicit(cls, side0: Iterable) -> "Cut":
        return cls("explicit", side0=frozenset(side0))

    @classmethod
    def where(cls, predicate: Predicate) -> "Cut":
        return cls("predicate", predicate=predicate)

    def sides(self, arena: SetExpr) -> tuple[SetExpr, SetExpr]:
        if self.mode == "explicit":
            return (ExplicitSet(frozenset(
                        x for x in self.side0 if arena.contains(x))),
                    DiffSet(arena, self.side0))
        return (FilterSet(arena, self.predicate, True),
                FilterSet(arena, self.predicate, False))

    def to_json(self, ground: Ground) -> dict:
        if self.mode == "explicit":
            return {"mode": "explicit",
                    "side0": [ground.to_json(x)
                              for x in sorted_elements(self.side0, ground)]}
        return {"mode": "predicate", "predicate": self.predicate.to_json()}

    @classmethod
    def from_json(cls, obj, ground: Ground) -> "Cut":
        if obj["mode"] == "explicit":
            return cls.explicit(ground.from_json(x) for x in obj["side0"])
        return cls.where(Predicate.from_json(obj["predicate"]))
