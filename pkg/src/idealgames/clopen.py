"""Exact dyadic algebra of clopen subsets of Cantor space.

A clopen set is stored as a reduced finite antichain of generator bit
strings (no generator a prefix of another, no two siblings both present).
The full space is the single empty generator; the empty set has no
generators.  All measures are exact dyadic rationals.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .ideals import IdealDescriptor, SearchBoundExceeded, CLOPEN

BitString = str

ENUM_DEPTH_CAP = 4
#: Hard cap on the number of candidate small-measure sets enumerated by
#: s_plus_check.
SPLUS_CANDIDATE_CAP = 2_000_000


class DyadicRational(Fraction):
    """Exact rational whose denominator is a power of two."""

    def __new__(cls, value=0, exponent: int | None = None):
        if exponent is not None:
            value = Fraction(value, 1 << exponent)
        self = super().__new__(cls, value)
        if self.denominator & (self.denominator - 1):
            raise ValueError(f"{value} is not dyadic")
        return self

    @property
    def exponent(self) -> int:
        return self.denominator.bit_length() - 1


def _check_bits(s: str):
    if not all(c in "01" for c in s):
        raise ValueError(f"not a bit string: {s!r}")


def _reduce(generators: Iterable[str]) -> tuple[str, ...]:
    gens = set(generators)
    for g in gens:
        _check_bits(g)
    changed = True
    while changed:
        changed = False
        # Prefix absorption: drop any generator extending another.
        for g in sorted(gens, key=len, reverse=True):
            if any(h != g and g.startswith(h) for h in gens):
                gens.remove(g)
                changed = True
        # Sibling merge.
        for g in sorted(gens, key=len, reverse=True):
            if g and g[:-1] + ("1" if g[-1] == "0" else "0") in gens:
                gens.remove(g[:-1] + "0")
                gens.remove(g[:-1] + "1")
                gens.add(g[:-1])
                changed = True
                break
    return tuple(sorted(gens, key=lambda g: (len(g), g)))


@dataclass(frozen=True)
class ClopenSet:
    """Clopen subset of Cantor space as a reduced generator antichain."""

    generators: tuple[str, ...]

    @classmethod
    def of(cls, generators: Iterable[str]) -> "ClopenSet":
        return cls(_reduce(generators))

    @classmethod
    def full(cls) -> "ClopenSet":
        return cls(("",))

    @classmethod
    def empty(cls) -> "ClopenSet":
        return cls(())

    def __post_init__(self):
        if self.generators != _reduce(self.generators):
            raise ValueError("generators are not reduced; use ClopenSet.of")

    @property
    def depth(self) -> int:
        return max((len(g) for g in self.generators), default=0)

    def measure(self) -> DyadicRational:
        return DyadicRational(sum(Fraction(1, 1 << len(g))
                                  for g in self.generators))

    def cells(self, depth: int) -> frozenset[str]:
        """All depth-`depth` cells contained in the set (depth >= self.depth)."""
        if depth < self.depth:
            raise ValueError("depth below generator depth")
        out = []
        for g in self.generators:
            for tail in itertools.product("01", repeat=depth - len(g)):
                out.append(g + "".join(tail))
        return frozenset(out)

    def contains_cylinder(self, x: str) -> bool:
        """True iff the basic set of x is contained in this set."""
        _check_bits(x)
        return any(x.startswith(g) for g in self.generators)

    def meets_cylinder(self, x: str) -> bool:
        _check_bits(x)
        return any(x.startswith(g) or g.startswith(x)
                   for g in self.generators)

    def cylinder_mass(self, x: str) -> Fraction:
        """Measure of the intersection with the basic set of x."""
        _check_bits(x)
        total = Fraction(0)
        for g in self.generators:
            if x.startswith(g):
                return Fraction(1, 1 << len(x))
            if g.startswith(x):
                total += Fraction(1, 1 << len(g))
        return total

    def disjoint_from(self, other: "ClopenSet") -> bool:
        return not any(
            g.startswith(h) or h.startswith(g)
            for g in self.generators for h in other.generators)

    def serialize(self) -> str:
        # "-" is the empty set, "." the root (full space) generator.
        if not self.generators:
            return "-"
        return ",".join(g or "." for g in self.generators)

    @classmethod
    def parse(cls, text: str) -> "ClopenSet":
        text = text.strip()
        if text in ("", "-"):
            return cls.empty()
        return cls.of("" if g.strip() == "." else g.strip()
                      for g in text.split(","))


def reduce(generators: Iterable[str]) -> ClopenSet:
    return ClopenSet.of(generators)


def measure(u: ClopenSet) -> DyadicRational:
    return u.measure()


def tilde(u: ClopenSet, n: int) -> ClopenSet:
    """Truncate every generator by n trailing bits, then reduce."""
    if n < 0:
        raise ValueError("n must be a natural number")
    return ClopenSet.of(g[:max(0, len(g) - n)] for g in u.generators)


def enum_omega(levels: int) -> list[ClopenSet]:
    """All reduced clopen sets of measure 1/2 with generator depth <= levels.

    Equivalently: unions of exactly half of the depth-`levels` cells.
    """
    if levels > ENUM_DEPTH_CAP:
        raise SearchBoundExceeded(
            f"levels={levels} exceeds cap {ENUM_DEPTH_CAP}")
    if levels == 0:
        return []
    cells = ["".join(bits) for bits in itertools.product("01", repeat=levels)]
    out = [ClopenSet.of(combo)
           for combo in itertools.combinations(cells, len(cells) // 2)]
    out.sort(key=lambda u: (len(u.generators), u.generators))
    return out


def i_x_slice(x: str, n: int, levels: int) -> list[ClopenSet]:
    """The U in enum_omega(levels) whose n-fattening contains the basic set
    of x."""
    _check_bits(x)
    if len(x) < levels:
        raise ValueError("x must be at least `levels` bits long")
    return [u for u in enum_omega(levels)
            if tilde(u, n).contains_cylinder(x)]


def phi_sn(n: int, x_family: Iterable[ClopenSet], bound: int = 20) -> int:
    """Least number of points hitting the n-fattening of every member.

    Candidate points are the refinement cells of the fattened members: any
    point is interchangeable with any other point in its cell, so cells
    suffice.  Exact set-cover search.
    """
    members = list(dict.fromkeys(x_family))
    if len(members) > bound:
        raise SearchBoundExceeded(f"|X| = {len(members)} exceeds {bound}")
    if not members:
        return 0
    fattened = [tilde(u, n) for u in members]
    depth = max(u.depth for u in fattened)
    cells = ["".join(b) for b in itertools.product("01", repeat=depth)]
    signatures = {
        frozenset(i for i, u in enumerate(fattened)
                  if u.contains_cylinder(cell))
        for cell in cells}
    signatures = [s for s in signatures if s]
    universe = frozenset(range(len(members)))
    best = [len(members)]

    def cover(remaining: frozenset, used: int):
        if used >= best[0]:
            return
        if not remaining:
            best[0] = used
            return
        target = min(remaining)
        for sig in signatures:
            if target in sig:
                cover(remaining - sig, used + 1)

    cover(universe, 0)
    return best[0]


def s_plus_check(x_family: Iterable[ClopenSet], n: int, m: int) -> bool:
    """Positivity probe at resolution m.

    True iff every clopen set of measure 2^-n with generator depth <= m is
    disjoint from some member of the family.  A finite family is never
    genuinely positive at infinite resolution, so a True here only certifies
    the enumerated prefix.
    """
    members = list(x_family)
    if not members:
        return False
    if m < n:
        raise ValueError("resolution m must be at least n")
    cell_count = 1 << m
    pick = 1 << (m - n)
    if math.comb(cell_count, pick) > SPLUS_CANDIDATE_CAP:
        raise SearchBoundExceeded(
            f"C({cell_count},{pick}) candidate sets exceed the cap")
    cells = ["".join(b) for b in itertools.product("01", repeat=m)]
    for combo in itertools.combinations(cells, pick):
        v = ClopenSet.of(combo)
        if not any(u.disjoint_from(v) for u in members):
            return False
    return True


def x_u(u: ClopenSet, depth: int) -> str:
    """Greedy majority branch of u to the given depth; ties go to 0."""
    prefix = ""
    for _ in range(depth):
        left = u.cylinder_mass(prefix + "0")
        right = u.cylinder_mass(prefix + "1")
        prefix += "0" if left >= right else "1"
    return prefix


def y_u(u: ClopenSet) -> Fraction:
    """Rational code of u: majority branch to generator depth, flattened.

    Trailing zeros are stripped (past the generator depth every comparison
    ties to 0), and the finite string s maps to
    v(s) = sum s_i 2^-(i+1) + 2^-(|s|+1), which is order-compatible with the
    lexicographic order on branches.
    """
    s = x_u(u, u.depth).rstrip("0")
    value = Fraction(1, 1 << (len(s) + 1))
    for i, bit in enumerate(s):
        if bit == "1":
            value += Fraction(1, 1 << (i + 1))
    return value


def string_value(s: str) -> Fraction:
    """v(s) as used by y_u, exposed for the order tests."""
    _check_bits(s)
    value = Fraction(1, 1 << (len(s) + 1))
    for i, bit in enumerate(s):
        if bit == "1":
            value += Fraction(1, 1 << (i + 1))
    return value


def somega_descriptor(n: int = 0, bound: int = 20, **_) -> IdealDescriptor:
    """Hitting-number ideal on the measure-1/2 clopen sets."""

    def sampler(seed: int, window: int) -> list[frozenset]:
        levels = min(3, max(1, window.bit_length() // 2))
        omega = enum_omega(levels)
        left = frozenset(u for u in omega if u.contains_cylinder("0" * levels))
        return [left]

    return IdealDescriptor("somega", CLOPEN, lambda xs: phi_sn(n, xs, bound),
                           sampler, params={"n": n})
