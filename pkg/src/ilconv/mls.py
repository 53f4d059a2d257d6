"""Metric-like spaces over exact symbolic points.

Points are tagged values rather than floats: the ``example1`` distance
depends on whether a point is an integer or irrational, which binary floats
cannot answer.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from .verdict import AxiomWitness, Counts, Table, Verdict, fails, holds


class PointError(ValueError):
    """A point outside the space's sort, or a malformed point literal."""


# -- points -----------------------------------------------------------------

@dataclass(frozen=True)
class IntegerPt:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise PointError(f"integer points are non-negative, got {self.n}")

    def render(self) -> str:
        return f"int {self.n}"


@dataclass(frozen=True)
class RationalPt:
    p: int
    q: int

    def __post_init__(self):
        if self.q <= 1:
            raise PointError(f"rational points need a denominator above 1, got {self.p}/{self.q}")
        if gcd(self.p, self.q) != 1:
            raise PointError(f"fraction not reduced: {self.p}/{self.q}")

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def render(self) -> str:
        return f"rat {self.p}/{self.q}"


@dataclass(frozen=True)
class IrrationalPt:
    symbol: str

    def render(self) -> str:
        return f"irr {self.symbol}"


@dataclass(frozen=True)
class LabelPt:
    """A named point of a finite table space."""

    label: str

    def render(self) -> str:
        return f"pt {self.label}"


PointValue = Union[IntegerPt, RationalPt, IrrationalPt, LabelPt]


def number(x: PointValue) -> Fraction:
    if isinstance(x, IntegerPt):
        return Fraction(x.n)
    if isinstance(x, RationalPt):
        return x.value
    raise PointError(f"{x.render()} has no rational value")


def point_from_fraction(v: Fraction) -> PointValue:
    v = Fraction(v)
    if v.denominator == 1:
        return IntegerPt(v.numerator)
    return RationalPt(v.numerator, v.denominator)


# -- spaces -----------------------------------------------------------------

class Space:
    """A metric-like space: exact distance plus optional structural hooks.

    Hooks return ``None`` when the space offers no certificate.
    """

    kind = "abstract"

    def in_sort(self, x: PointValue) -> bool:
        raise NotImplementedError

    def _delta(self, x: PointValue, y: PointValue) -> Fraction:
        raise NotImplementedError

    def check_point(self, x: PointValue) -> None:
        if not self.in_sort(x):
            raise PointError(f"{x.render()} is not a point of {self.kind}")

    def delta(self, x: PointValue, y: PointValue) -> Fraction:
        self.check_point(x)
        self.check_point(y)
        return self._delta(x, y)

    def deviation(self, x: PointValue, center: PointValue) -> Fraction:
        """``|δ(x, c) − δ(c, c)|``, the quantity every ball and limit is built on."""
        return abs(self.delta(x, center) - self.delta(center, center))

    def sample(self) -> list[PointValue]:
        raise NotImplementedError

    def ball_pick(self, center: PointValue, radius: Fraction) -> PointValue | None:
        """A point of the ball around ``center`` other than ``center`` itself."""
        return None

    def eventual_deviation(self, tail, target: PointValue) -> tuple[Fraction, int] | None:
        """``(c, j0)``: the tail's value on every cell ``j ≥ j0`` deviates from ``target`` by exactly ``c``."""
        return None

    def isolation_radius(self, x: PointValue) -> Fraction | None:
        """Largest certified radius whose ball around ``x`` is ``{x}``."""
        return None

    def render(self) -> str:
        return self.kind


@dataclass(frozen=True, eq=True)
class Example1Space(Space):
    """Non-negative reals with distance 0 on equal irrationals, 2 between integers, 3 otherwise."""

    kind = "example1"

    def in_sort(self, x):
        if isinstance(x, RationalPt):
            return x.p > 0
        return isinstance(x, (IntegerPt, IrrationalPt))

    def _delta(self, x, y):
        if x == y and isinstance(x, IrrationalPt):
            return Fraction(0)
        if isinstance(x, IntegerPt) and isinstance(y, IntegerPt):
            return Fraction(2)
        return Fraction(3)

    def sample(self):
        # ordered so the first reflexivity failure is at 1 and the first p1 failure is (1/2, 1/3)
        rats = [RationalPt(1, 2), RationalPt(1, 3)]
        for q in range(4, 30):
            for p in range(1, q, 2):
                pt = RationalPt(p, q) if gcd(p, q) == 1 else None
                if pt and pt not in rats and len(rats) < 20:
                    rats.append(pt)
        ints = [IntegerPt(0)] + [IntegerPt(n) for n in range(2, 20)]
        irrs = [IrrationalPt(s) for s in ("sqrt2", "sqrt3", "sqrt5", "pi", "e", "phi", "ln2", "sqrt7", "gamma", "zeta3")]
        return [IntegerPt(1)] + rats + ints + irrs

    def ball_pick(self, center, radius):
        self.check_point(center)
        if isinstance(center, IntegerPt):
            # every integer sits at deviation 0 from every other integer
            return IntegerPt(center.n + 1)
        if isinstance(center, RationalPt):
            return IntegerPt(0)
        # an irrational's ball of radius ≤ 3 is a singleton
        return IntegerPt(0) if radius > 3 else None

    def eventual_deviation(self, tail, target):
        from .conv import HarmonicApproach, IntegerRamp

        self.check_point(target)
        if isinstance(tail, IntegerRamp):
            # δ(j, t) is 2 for integer t and 3 otherwise, constant in j
            return self.deviation(IntegerPt(1), target), 1
        if isinstance(tail, HarmonicApproach):
            picked = self.ball_pick(tail.target, Fraction(1))
            if picked is None:
                return None
            return self.deviation(picked, target), 1
        return None

    def isolation_radius(self, x):
        self.check_point(x)
        return Fraction(3) if isinstance(x, IrrationalPt) else None


@dataclass(frozen=True, eq=True)
class HarmonicSpace(Space):
    """``{0} ∪ {1/j}`` with the usual distance."""

    kind = "harmonic"

    def in_sort(self, x):
        if isinstance(x, IntegerPt):
            return x.n in (0, 1)
        return isinstance(x, RationalPt) and x.p == 1

    def _delta(self, x, y):
        return abs(number(x) - number(y))

    def sample(self):
        return [IntegerPt(0), IntegerPt(1)] + [RationalPt(1, j) for j in range(2, 21)]

    def ball_pick(self, center, radius):
        self.check_point(center)
        c = number(center)
        if c == 0:
            # least j with 1/(j+1) < r
            j = max(1, int(1 / Fraction(radius)))
            while Fraction(1, j + 1) >= radius:
                j += 1
            return point_from_fraction(Fraction(1, j + 1))
        m = c.denominator
        neighbours = [Fraction(1, m + 1)] + ([Fraction(1, m - 1)] if m > 1 else [])
        best = min(neighbours, key=lambda v: abs(v - c))
        return point_from_fraction(best) if abs(best - c) < radius else None

    def isolation_radius(self, x):
        self.check_point(x)
        c = number(x)
        if c == 0:
            return None
        m = c.denominator
        return c - Fraction(1, m + 1)


@dataclass(frozen=True, eq=True)
class TableSpace(Space):
    """A finite space given by a full symmetric distance table."""

    labels: tuple[str, ...]
    table: tuple[tuple[str, str, Fraction], ...]

    kind = "table"

    def __post_init__(self):
        entries = {}
        for a, b, v in self.table:
            for key in ((a, b), (b, a)):
                if key in entries and entries[key] != v:
                    raise ValueError(f"table is not symmetric at {a},{b}")
                entries[key] = Fraction(v)
            if v < 0:
                raise ValueError(f"negative distance between {a} and {b}")
        missing = [(a, b) for a in self.labels for b in self.labels if (a, b) not in entries]
        if missing:
            a, b = missing[0]
            raise ValueError(f"missing distance between {a} and {b}")
        object.__setattr__(self, "_entries", entries)

    @classmethod
    def from_entries(cls, labels: Sequence[str], entries: dict[tuple[str, str], Fraction]) -> TableSpace:
        rows, seen = [], set()
        for a in labels:
            for b in labels:
                if (b, a) in seen or (a, b) not in entries:
                    continue
                seen.add((a, b))
                rows.append((a, b, Fraction(entries[(a, b)])))
        # surface asymmetry explicitly
        for (a, b), v in entries.items():
            if (b, a) in entries and entries[(b, a)] != v:
                raise ValueError(f"table is not symmetric at {a},{b}")
        return cls(tuple(labels), tuple(rows))

    def in_sort(self, x):
        return isinstance(x, LabelPt) and x.label in self.labels

    def _delta(self, x, y):
        return self._entries[(x.label, y.label)]

    def points(self) -> list[PointValue]:
        return [LabelPt(a) for a in self.labels]

    def sample(self):
        return self.points()

    def ball_pick(self, center, radius):
        self.check_point(center)
        for y in self.points():
            if y != center and self.deviation(y, center) < radius:
                return y
        return None

    def eventual_deviation(self, tail, target):
        from .conv import HarmonicApproach

        if not isinstance(tail, HarmonicApproach):
            return None
        a = tail.target
        devs = [self.deviation(y, a) for y in self.points() if y != a]
        if not any(d == 0 for d in devs):
            return None
        positive = [d for d in devs if d > 0]
        # from radius ≤ min positive deviation on, only zero-deviation points qualify
        j0 = math.ceil(1 / min(positive)) if positive else 1
        picked = self.ball_pick(a, Fraction(1, j0))
        return self.deviation(picked, target), j0

    def isolation_radius(self, x):
        self.check_point(x)
        devs = [self.deviation(y, x) for y in self.points() if y != x]
        if not devs:
            return Fraction(1)
        m = min(devs)
        return m if m > 0 else None

    def render(self) -> str:
        body = ["points " + ",".join(self.labels)]
        body += [f"delta {a} {b} = {v}" for a, b, v in self.table]
        return "table { " + "; ".join(body) + " }"


EXAMPLE1 = Example1Space()
HARMONIC = HarmonicSpace()


# -- balls --------------------------------------------------------------------

@dataclass(frozen=True)
class BallSpec:
    center: PointValue
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise ValueError("ball radius must be positive")


def delta(space: Space, x: PointValue, y: PointValue) -> Fraction:
    return space.delta(x, y)


def in_ball(space: Space, x: PointValue, ball: BallSpec) -> bool:
    return space.deviation(x, ball.center) < ball.radius


# -- axiom checks -------------------------------------------------------------

def _distinct(points: Iterable[PointValue]) -> list[PointValue]:
    out = []
    for p in points:
        if p not in out:
            out.append(p)
    if not out:
        raise ValueError("need at least one point")
    return out


def _pairs(pts):
    # j outer, i inner: pairs among the first k points come before any pair using point k+1
    for j in range(len(pts)):
        for i in range(j):
            yield pts[i], pts[j]


def _metric_like_violation(space, pts):
    d = space.delta
    for x in pts:
        for y in pts:
            v = d(x, y)
            if v < 0:
                return AxiomWitness("non-negative", (x, y), v, 0)
    for x, y in _pairs(pts):
        if d(x, y) == 0:
            return AxiomWitness("delta1", (x, y), d(x, y), 0)
    for x, y in _pairs(pts):
        if d(x, y) != d(y, x):
            return AxiomWitness("delta2", (x, y), d(x, y), d(y, x))
    for x, y, z in itertools.product(pts, repeat=3):
        lhs, rhs = d(x, y), d(x, z) + d(z, y)
        if lhs > rhs:
            return AxiomWitness("delta3", (x, y, z), lhs, rhs)
    return None


def check_metric_like_axioms(space: Space, points: Iterable[PointValue]) -> Verdict:
    """Exhaustive δ1–δ3 over pairs and triples drawn from ``points``."""
    pts = _distinct(points)
    bad = _metric_like_violation(space, pts)
    if bad:
        return fails(bad, f"{bad.axiom} violated")
    n = len(pts)
    return holds(Counts((("points", n), ("pairs", n * (n - 1) // 2), ("triples", n**3))), "metric-like on sample")


def check_partial_metric_axioms(space: Space, points: Iterable[PointValue]) -> Verdict:
    pts = _distinct(points)
    d = space.delta
    for x, y in _pairs(pts):
        if d(x, x) == d(x, y) == d(y, y):
            return fails(AxiomWitness("p1", (x, y), d(x, y), None), "p1 violated: distinct points look equal")
    for x in pts:
        for y in pts:
            if not (0 <= d(x, x) <= d(x, y)):
                return fails(AxiomWitness("p2", (x, y), d(x, x), d(x, y)), "p2 violated")
    for x, y in _pairs(pts):
        if d(x, y) != d(y, x):
            return fails(AxiomWitness("p3", (x, y), d(x, y), d(y, x)), "p3 violated")
    for x, y, z in itertools.product(pts, repeat=3):
        lhs, rhs = d(x, y), d(x, z) + d(z, y) - d(z, z)
        if lhs > rhs:
            return fails(AxiomWitness("p4", (x, y, z), lhs, rhs), "p4 violated")
    n = len(pts)
    return holds(Counts((("points", n), ("pairs", n * (n - 1) // 2), ("triples", n**3))), "partial metric on sample")


def check_metric_axioms(space: Space, points: Iterable[PointValue]) -> Verdict:
    pts = _distinct(points)
    for x in pts:
        v = space.delta(x, x)
        if v != 0:
            return fails(AxiomWitness("reflexive", (x, x), v, 0), f"δ({x.render()}, {x.render()}) = {v} ≠ 0")
    bad = _metric_like_violation(space, pts)
    if bad:
        return fails(bad, f"{bad.axiom} violated")
    n = len(pts)
    return holds(Counts((("points", n), ("pairs", n * (n - 1) // 2), ("triples", n**3))), "metric on sample")


AXIOM_LEVELS = {
    "metric": check_metric_axioms,
    "partial": check_partial_metric_axioms,
    "metric-like": check_metric_like_axioms,
}


# -- topology -----------------------------------------------------------------

@dataclass(frozen=True)
class LimitPoint:
    witnesses: tuple[tuple[Fraction, PointValue], ...]


@dataclass(frozen=True)
class Isolated:
    radius: Fraction


@dataclass(frozen=True)
class Unclassified:
    horizon: int


def classify_point(space: Space, x: PointValue, probe: Iterable[PointValue] | None = None, j_probe: int = 64):
    """Probe the balls of radius ``1/j`` around ``x`` for other points.

    A singleton ball only counts as isolation when the space certifies a
    radius at least that large; a finite probe alone proves nothing about an
    infinite space.
    """
    space.check_point(x)
    probe = list(space.sample() if probe is None else probe)
    cert = space.isolation_radius(x)
    witnesses = []
    for j in range(1, j_probe + 1):
        r = Fraction(1, j)
        ball = BallSpec(x, r)
        w = space.ball_pick(x, r)
        if w is None or w == x or not in_ball(space, w, ball):
            w = next((y for y in probe if y != x and space.in_sort(y) and in_ball(space, y, ball)), None)
        if w is None:
            if cert is not None and r <= cert:
                return Isolated(r)
            return Unclassified(j_probe)
        if cert is not None and r <= cert:
            raise AssertionError(f"{space.kind}: isolation certificate contradicts witness {w.render()}")
        witnesses.append((r, w))
    if cert is not None:
        # the certified radius lies below every probe radius
        return Isolated(cert)
    return LimitPoint(tuple(witnesses))


def check_t0(space: Space, points: Iterable[PointValue]) -> Verdict:
    """Search the sample's balls for one that separates each pair.

    A ball around ``c`` separates ``x`` and ``y`` exactly when their
    deviations from ``c`` differ; the larger deviation is then a radius that
    admits one point and not the other.
    """
    pts = list(points)
    if not pts:
        raise ValueError("need at least one point")
    if len(set(pts)) != len(pts):
        raise ValueError("points must be pairwise distinct")
    rows = []
    for x, y in _pairs(pts):
        for c in pts:
            dx, dy = space.deviation(x, c), space.deviation(y, c)
            if dx != dy:
                inside = x if dx < dy else y
                rows.append((x, y, c, max(dx, dy), inside))
                break
        else:
            return fails(AxiomWitness("T0", (x, y)), f"no ball on the sample separates {x.render()} and {y.render()}")
    return holds(Table(tuple(rows)), f"all {len(rows)} pairs separated")
