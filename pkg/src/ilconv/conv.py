"""Cell-structured sequences and convergence deciders.

A :class:`CellSequence` takes one value per dyadic cell (overrides, then a
tail rule) plus finitely many per-index exceptions.  For such sequences the
deviation set ``A(ε) = {n : |δ(x_n, x0) − δ(x0, x0)| ≥ ε}`` is always a
:class:`~ilconv.natset.SymbolicNatSet`, so classical, statistical, ideal and
ideal-star convergence become exact questions about finitely many regimes.

Completeness of the ideal-star search: for a cell-constant sequence the
cells carrying positive deviation are the only obstruction.  Any witnessing
filter set ``M`` must, for each such cell, meet it in only finitely many
indices, so its complement contains that cell up to a finite set; hence the
union of positive-deviation cells belongs to the ideal whenever any witness
does, and its complement is itself a witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from . import mls
from .ideals import (
    DECOMPOSITION,
    DENSITY0,
    APDecomposition,
    APFamily,
    Ideal,
    IdealKind,
    ap_decompose,
    in_filter,
    member,
    verify_ap_decomposition,
)
from .mls import PointValue, Space
from .natset import (
    CellSelection,
    CofiniteCells,
    FiniteCells,
    SymbolicNatSet,
    cell_of,
    density,
    enumerate_prefix,
    next_member,
)
from .verdict import CellWitness, FilterSet, SymbolicSet, Verdict, fails, holds, unknown

J_PROBE = 64
HORIZON = 2**12
# explicit cell evaluation beyond this is refused rather than attempted
MAX_CELLS = 2**16


class ConvergenceError(Exception):
    """Base class for refusals raised by the deciders."""


class UncertifiedTail(ConvergenceError):
    """The tail rule gives no certificate for cells beyond the probe."""


class PreconditionError(ConvergenceError):
    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


class APUnsupportedError(ConvergenceError):
    pass


# -- sequences ----------------------------------------------------------------

@dataclass(frozen=True)
class ConstPoint:
    point: PointValue

    def render(self) -> str:
        return f"const {self.point.render()}"


@dataclass(frozen=True)
class IntegerRamp:
    def render(self) -> str:
        return "integer-ramp"


@dataclass(frozen=True)
class HarmonicApproach:
    target: PointValue

    def render(self) -> str:
        return f"approach {self.target.render()}"


Tail = Union[ConstPoint, IntegerRamp, HarmonicApproach]


@dataclass(frozen=True)
class CellSequence:
    """``x_n`` = per-index exception, else cell override, else tail rule on ``cell_of(n)``."""

    space: Space
    tail: Tail
    overrides: Mapping[int, PointValue] = field(default_factory=dict)
    point_overrides: Mapping[int, PointValue] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "overrides", dict(sorted(self.overrides.items())))
        object.__setattr__(self, "point_overrides", dict(sorted(self.point_overrides.items())))
        for j in list(self.overrides) + list(self.point_overrides):
            if j < 1:
                raise ValueError("cell and index numbers start at 1")
        for p in list(self.overrides.values()) + list(self.point_overrides.values()):
            self.space.check_point(p)
        if isinstance(self.tail, ConstPoint):
            self.space.check_point(self.tail.point)
        if isinstance(self.tail, IntegerRamp):
            for j in (1, 2, 3):
                self.space.check_point(mls.IntegerPt(j))
        if isinstance(self.tail, HarmonicApproach):
            self.space.check_point(self.tail.target)
            t = self.tail.target
            if self.space.isolation_radius(t) is not None or self.space.ball_pick(t, Fraction(1)) is None:
                raise mls.PointError(f"{self.space.kind} cannot pick points near {t.render()}")

    def tail_value(self, j: int) -> PointValue:
        t = self.tail
        if isinstance(t, ConstPoint):
            return t.point
        if isinstance(t, IntegerRamp):
            p = mls.IntegerPt(j)
            self.space.check_point(p)
            return p
        r = Fraction(1, j)
        p = self.space.ball_pick(t.target, r)
        if p is None or p == t.target or not mls.in_ball(self.space, p, mls.BallSpec(t.target, r)):
            raise ConvergenceError(f"no valid point in the ball of radius {r} around {t.target.render()}")
        return p

    def cell_value(self, j: int) -> PointValue:
        if j in self.overrides:
            return self.overrides[j]
        return self.tail_value(j)

    def value(self, n: int) -> PointValue:
        if n in self.point_overrides:
            return self.point_overrides[n]
        return self.cell_value(cell_of(n))


# -- deviation profiles ---------------------------------------------------------

@dataclass(frozen=True)
class EventuallyConstant:
    """Every non-overridden cell ``j ≥ j0`` has deviation exactly ``c``."""

    c: Fraction
    j0: int


@dataclass(frozen=True)
class DecaysBelow:
    """Every non-overridden cell ``j`` has deviation strictly below ``1/j``."""


class DeviationProfile:
    """Exact per-cell deviations from ``x0`` plus a certified tail."""

    def __init__(self, seq: CellSequence, x0: PointValue, j_probe: int = J_PROBE):
        seq.space.check_point(x0)
        self.seq, self.x0, self.j_probe = seq, x0, j_probe
        self._cache: dict[int, Fraction] = {}
        t = seq.tail
        if isinstance(t, ConstPoint):
            self.tail = EventuallyConstant(seq.space.deviation(t.point, x0), 1)
        else:
            ev = seq.space.eventual_deviation(t, x0)
            if ev is not None:
                self.tail = EventuallyConstant(Fraction(ev[0]), int(ev[1]))
            elif isinstance(t, HarmonicApproach) and t.target == x0:
                self.tail = DecaysBelow()
            else:
                raise UncertifiedTail(
                    f"no certificate for tail '{t.render()}' against target {x0.render()} beyond cell {j_probe}"
                )
        # re-check the certificate on every probed cell
        for j in range(1, j_probe + 1):
            if j in seq.overrides:
                continue
            d = self.cell_dev(j)
            if isinstance(self.tail, EventuallyConstant) and j >= self.tail.j0 and d != self.tail.c:
                raise ConvergenceError(f"tail certificate wrong at cell {j}: {d} != {self.tail.c}")
            if isinstance(self.tail, DecaysBelow) and not d < Fraction(1, j):
                raise ConvergenceError(f"tail certificate wrong at cell {j}: {d} >= 1/{j}")
        self.index_devs = {n: seq.space.deviation(p, x0) for n, p in seq.point_overrides.items()}

    def cell_dev(self, j: int) -> Fraction:
        if j not in self._cache:
            self._cache[j] = self.seq.space.deviation(self.seq.cell_value(j), self.x0)
        return self._cache[j]

    def dev(self, n: int) -> Fraction:
        if n in self.index_devs:
            return self.index_devs[n]
        return self.cell_dev(cell_of(n))

    def explicit_cells(self, upto: int = 0) -> list[int]:
        """Cells whose deviation is not described by the tail certificate."""
        cells = set(self.seq.overrides)
        if isinstance(self.tail, EventuallyConstant):
            cells.update(range(1, self.tail.j0))
        else:
            cells.update(range(1, max(upto, self.j_probe) + 1))
        return sorted(cells)

    def cells_table(self, upto: int) -> list[tuple[int, Fraction]]:
        return [(j, self.cell_dev(j)) for j in range(1, upto + 1)]

    def positive_cells(self) -> CellSelection | None:
        """Cells with positive deviation, or None when the tail leaves it open."""
        explicit = self.explicit_cells()
        pos = {j for j in explicit if self.cell_dev(j) > 0}
        if isinstance(self.tail, EventuallyConstant):
            if self.tail.c > 0:
                return CofiniteCells(set(explicit) - pos)
            return FiniteCells(pos)
        # δ(x0, x0) = 0 and δ1 force a positive deviation at every picked point
        if self.seq.space.delta(self.x0, self.x0) == 0:
            return CofiniteCells(set(self.seq.overrides) - pos)
        return None

    def regime_values(self) -> list[Fraction]:
        """Realized positive deviation values when finitely many exist, ascending."""
        if not isinstance(self.tail, EventuallyConstant):
            raise UncertifiedTail("infinitely many deviation values")
        vals = {self.cell_dev(j) for j in self.explicit_cells()}
        vals.add(self.tail.c)
        vals.update(self.index_devs.values())
        return sorted(v for v in vals if v > 0)


def deviation_profile(seq: CellSequence, x0: PointValue, j_probe: int = J_PROBE) -> DeviationProfile:
    return DeviationProfile(seq, x0, j_probe)


def deviation(seq: CellSequence, x0: PointValue, n: int) -> Fraction:
    """``|δ(x_n, x0) − δ(x0, x0)|`` for a single index."""
    return seq.space.deviation(seq.value(n), x0)


def _deviation_set(prof: DeviationProfile, eps: Fraction) -> SymbolicNatSet:
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("ε must be positive")
    t = prof.tail
    if isinstance(t, EventuallyConstant):
        explicit = prof.explicit_cells()
        if t.c >= eps:
            base = CofiniteCells(j for j in explicit if prof.cell_dev(j) < eps)
        else:
            base = FiniteCells(j for j in explicit if prof.cell_dev(j) >= eps)
    else:
        # beyond ⌈1/ε⌉ every tail cell has deviation < 1/j ≤ ε
        bound = math.ceil(1 / eps)
        if bound > MAX_CELLS:
            raise UncertifiedTail(f"ε = {eps} needs {bound} explicit cells")
        cells = set(prof.seq.overrides) | set(range(1, bound))
        base = FiniteCells(j for j in cells if prof.cell_dev(j) >= eps)
    plus = {n for n, d in prof.index_devs.items() if d >= eps}
    minus = set(prof.index_devs) - plus
    return SymbolicNatSet(base, frozenset(plus), frozenset(minus))


def deviation_set(seq: CellSequence, x0: PointValue, eps: Fraction, j_probe: int = J_PROBE) -> SymbolicNatSet:
    """The exact set ``A(ε)`` of indices deviating by at least ``ε``."""
    return _deviation_set(DeviationProfile(seq, x0, j_probe), eps)


def probe_epsilon(value: Fraction, below: Fraction = Fraction(0)) -> Fraction:
    """An ε strictly inside ``(below, value)``: the largest ``1/k`` there, else the midpoint.

    Reported refutation radii sit inside their regime, never on its boundary.
    """
    k = math.floor(1 / value) + 1
    eps = Fraction(1, k)
    return eps if eps > below else (below + value) / 2


# -- deciders -------------------------------------------------------------------

def _first_positive_cell(prof: DeviationProfile, avoid: CellSelection = FiniteCells()) -> int | None:
    pos = prof.positive_cells()
    if pos is None:
        return None
    j = 1
    while True:
        if pos.has(j) and not avoid.has(j):
            return j
        if not pos.cofinite and j > max(pos.cells, default=0):
            return None
        j += 1


def classical_converges(seq: CellSequence, x0: PointValue, j_probe: int = J_PROBE) -> Verdict:
    prof = DeviationProfile(seq, x0, j_probe)
    if prof.positive_cells() is None:
        p = next((j for j in prof.explicit_cells() if prof.cell_dev(j) > 0), None)
    else:
        p = _first_positive_cell(prof)
    if p is not None:
        r = prof.cell_dev(p)
        return fails(CellWitness(p, r), f"infinitely many terms on D({p}) deviate by {r}", epsilon=r)
    if prof.positive_cells() is None:
        return unknown(j_probe, f"no deviating cell up to {j_probe}; the tail gives no lower bound")
    # only per-index exceptions deviate, and there are finitely many
    exceptional = SymbolicNatSet.finite(n for n, d in prof.index_devs.items() if d > 0)
    return holds(SymbolicSet(exceptional), "deviation vanishes outside a finite set")


def _member_regimes(prof: DeviationProfile, I: Ideal) -> Verdict:
    """Check ``A(ε) ∈ I`` on every distinct regime, from large ε to small."""
    vals = prof.regime_values()
    worst = SymbolicNatSet.empty()
    prev = Fraction(0)
    bounds = []
    for v in vals:
        bounds.append((prev, v))
        prev = v
    for below, v in reversed(bounds):
        A = _deviation_set(prof, v)
        if not member(I, A):
            eps = probe_epsilon(v, below)
            return fails(SymbolicSet(A), f"A(ε) ∉ {I.name} for ε in ({below}, {v}]", epsilon=eps)
        worst = A
    return holds(SymbolicSet(worst), f"A(ε) ∈ {I.name} for every ε > 0", regimes=vals)


def i_converges(seq: CellSequence, x0: PointValue, I: Ideal, j_probe: int = J_PROBE) -> Verdict:
    prof = DeviationProfile(seq, x0, j_probe)
    return _i_converges(prof, I)


def _i_converges(prof: DeviationProfile, I: Ideal) -> Verdict:
    if isinstance(prof.tail, EventuallyConstant):
        return _member_regimes(prof, I)
    # decaying tail: A(ε) only ever touches the cells below ⌈1/ε⌉
    if I.kind is IdealKind.DECOMPOSITION:
        sample = _deviation_set(prof, Fraction(1, prof.j_probe))
        return holds(SymbolicSet(sample), "A(ε) meets only the cells below ⌈1/ε⌉", epsilon=Fraction(1, prof.j_probe))
    explicit = prof.explicit_cells()
    pos = [j for j in explicit if prof.cell_dev(j) > 0]
    if I.kind in (IdealKind.FIN, IdealKind.DENSITY0):
        if pos:
            p = pos[0]
            v = prof.cell_dev(p)
            A = _deviation_set(prof, v)
            return fails(SymbolicSet(A), f"D({p}) deviates by {v}", epsilon=probe_epsilon(v))
        return unknown(prof.j_probe, "every probed cell has zero deviation")
    for v in sorted({prof.cell_dev(j) for j in pos}, reverse=True):
        A = _deviation_set(prof, v)
        if not member(I, A):
            return fails(SymbolicSet(A), f"A(ε) ∉ {I.name}", epsilon=v)
    return unknown(prof.j_probe, f"{I.name} checked on probed regimes only")


def statistically_converges(seq: CellSequence, x0: PointValue, j_probe: int = J_PROBE) -> Verdict:
    v = i_converges(seq, x0, DENSITY0, j_probe)
    if v.fails:
        d = density(v.certificate.set)
        return fails(v.certificate, f"density of A(ε) is {d}, not 0", epsilon=v.values["epsilon"], density=d)
    return v


def i_star_converges(seq: CellSequence, x0: PointValue, I: Ideal, j_probe: int = J_PROBE) -> Verdict:
    prof = DeviationProfile(seq, x0, j_probe)
    pos = prof.positive_cells()
    if pos is None:
        return unknown(j_probe, "cannot certify which tail cells deviate")
    H = SymbolicNatSet(pos)
    if member(I, H):
        M = ~H
        # along M every cell has deviation 0; only finitely many indices deviate
        return holds(FilterSet(M), f"the subsequence along M converges; ℕ − M ∈ {I.name}")
    if I.kind is IdealKind.CUSTOM:
        return unknown(j_probe, f"no filter set of cell form for {I.name}")
    p = _first_positive_cell(prof)
    r = prof.cell_dev(p)
    return fails(
        CellWitness(p, r),
        f"every H ∈ {I.name} misses some deviating cell, e.g. D({p}) with r_p = {r}",
    )


def i_star_refute(
    seq: CellSequence,
    x0: PointValue,
    I: Ideal = DECOMPOSITION,
    tested: SymbolicNatSet | None = None,
    j_probe: int = J_PROBE,
) -> Verdict:
    """Refute ideal-star convergence under the decomposition ideal by a cell argument.

    ``tested`` is a candidate ``H ∈ I`` (default ``∅``).  Since ``H`` meets
    only finitely many cells, some cell ``D(p)`` lies inside ``M = ℕ − H``; if
    it carries constant deviation ``r_p > 0`` the subsequence along ``M`` keeps
    returning to distance ``r_p``.  Fails means the refutation succeeded.
    """
    if I.kind is not IdealKind.DECOMPOSITION:
        raise ValueError(f"cell refutation needs the decomposition ideal, not {I.name}")
    H = SymbolicNatSet.empty() if tested is None else tested
    if not member(I, H):
        raise ValueError("the tested set is not a member of the ideal")
    prof = DeviationProfile(seq, x0, j_probe)
    pos = prof.positive_cells()
    if pos is None:
        return unknown(j_probe, "cannot certify which tail cells deviate")
    if not pos.cofinite:
        M = ~SymbolicNatSet(pos)
        return holds(FilterSet(M), "deviating cells are finitely many; no refutation")
    p = _first_positive_cell(prof, avoid=H.base.union(FiniteCells(cell_of(n) for n in H.plus)))
    r = prof.cell_dev(p)
    return fails(CellWitness(p, r), f"D({p}) ⊂ ℕ − H and deviates by r_p = {r} > 0", tested=H)


# -- constructions from the proofs ------------------------------------------------

def extract_subsequence(
    seq: CellSequence,
    x0: PointValue,
    K: int,
    I: Ideal | None = None,
    j_probe: int = J_PROBE,
) -> list[int]:
    """Greedy indices ``n_1 < n_2 < …`` with ``dev(n_k) < 1/k``.

    ``n_k`` is the least element above ``n_{k-1}`` of ``{n : dev(n) < 1/k}``.
    """
    prof = DeviationProfile(seq, x0, j_probe)
    if I is not None:
        v = _i_converges(prof, I)
        if not v.holds:
            raise PreconditionError("not-i-convergent", f"sequence is not {I.name}-convergent to {x0.render()}")
    out, prev = [], 0
    for k in range(1, K + 1):
        good = ~_deviation_set(prof, Fraction(1, k))
        n = next_member(good, prev)
        if n is None:
            raise PreconditionError("finite-good-set", f"{{n : dev < 1/{k}}} has nothing above {prev}")
        assert prof.dev(n) < Fraction(1, k)
        out.append(n)
        prev = n
    return out


@dataclass(frozen=True)
class Witness:
    eps0: Fraction
    S: SymbolicNatSet


def refutation_subsequence(seq: CellSequence, x0: PointValue, I: Ideal, j_probe: int = J_PROBE) -> Witness | None:
    """Index set of a subsequence none of whose subsequences ideal-converge to ``x0``.

    Every term indexed by ``S = A(ε0)`` deviates by at least ``ε0``, and
    ``S ∉ I``.  Returns None when the sequence does ideal-converge.
    """
    v = i_converges(seq, x0, I, j_probe)
    if v.holds:
        return None
    if v.unknown:
        raise UncertifiedTail("ideal convergence is undecided; no witness available")
    eps0 = v.values["epsilon"]
    S = deviation_set(seq, x0, eps0, j_probe)
    return Witness(eps0, S)


def _crossovers(prof: DeviationProfile, M: SymbolicNatSet, horizon: int) -> dict[str, int | None]:
    """For each ε, the first position k along ``M ∩ [1, horizon]`` after which every term is within ε."""
    idx = enumerate_prefix(M, horizon)
    devs = [prof.dev(n) for n in idx]
    out = {}
    for eps in (Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)):
        last_bad = max((k for k, d in enumerate(devs, 1) if d >= eps), default=0)
        out[str(eps)] = last_bad + 1 if last_bad < len(devs) else None
    return out


def ap_promote(seq: CellSequence, x0: PointValue, I: Ideal, j_probe: int = J_PROBE, horizon: int = HORIZON) -> Verdict:
    """Turn ideal convergence into ideal-star convergence through (AP).

    Builds the annuli ``A_1 = {dev ≥ 1}``, ``A_j = {1/j ≤ dev < 1/(j−1)}``,
    asks the ideal for finite perturbations ``B_j`` with union ``B ∈ I``, and
    returns ``M = ℕ − B``.
    """
    prof = DeviationProfile(seq, x0, j_probe)
    v = _i_converges(prof, I)
    if not v.holds:
        raise PreconditionError("not-i-convergent", f"sequence is not {I.name}-convergent to {x0.render()}")
    if not isinstance(prof.tail, EventuallyConstant):
        raise APUnsupportedError("annuli are only finitely many for eventually constant tails")
    vals = prof.regime_values()
    # past 1/J ≤ min deviation every annulus is empty
    J = math.ceil(1 / vals[0]) if vals else 1
    annuli, outer = [], SymbolicNatSet.empty()
    for j in range(1, J + 1):
        A = _deviation_set(prof, Fraction(1, j))
        annuli.append(A - outer)
        outer = A
    for j, A in enumerate(annuli, 1):
        if not member(I, A):
            raise PreconditionError("annulus-not-member", f"A_{j} = {A.to_expr()} is not in {I.name}")
    fam = APFamily(tuple(annuli))
    dec = ap_decompose(I, fam)
    if not isinstance(dec, APDecomposition):
        raise APUnsupportedError(dec.reason)
    check = verify_ap_decomposition(I, fam, dec.blocks)
    if not check.holds:
        raise ConvergenceError(f"ideal returned an invalid decomposition: {check.description}")
    M = ~dec.union
    for val in vals:
        if not (M & _deviation_set(prof, val)).is_finite:
            raise ConvergenceError(f"terms along M deviate by {val} infinitely often")
    return holds(
        FilterSet(M),
        f"B = {dec.union.to_expr()} ∈ {I.name}; terms along M converge",
        annuli=len(annuli),
        crossover=_crossovers(prof, M, horizon),
    )


def equal_set(seq: CellSequence, x0: PointValue) -> SymbolicNatSet:
    """``{n : x_n = x0}`` as a symbolic set."""
    t = seq.tail
    explicit = set(seq.overrides)
    if isinstance(t, ConstPoint):
        same = [j for j in explicit if seq.overrides[j] == x0]
        base = CofiniteCells(explicit - set(same)) if t.point == x0 else FiniteCells(same)
    elif isinstance(t, IntegerRamp):
        cells = {j for j in explicit if seq.overrides[j] == x0}
        if isinstance(x0, mls.IntegerPt) and x0.n >= 1 and x0.n not in explicit:
            cells.add(x0.n)
        base = FiniteCells(cells)
    else:
        # picked points always differ from the approached target
        if t.target == x0:
            cells = {j for j in explicit if seq.overrides[j] == x0}
        else:
            raise UncertifiedTail("cannot locate an approached point in closed form")
        base = FiniteCells(cells)
    plus = {n for n, p in seq.point_overrides.items() if p == x0}
    minus = set(seq.point_overrides) - plus
    return SymbolicNatSet(base, frozenset(plus), frozenset(minus))


def isolated_promote(seq: CellSequence, x0: PointValue, I: Ideal, j_probe: int = J_PROBE) -> Verdict:
    """At an isolated point, ideal convergence upgrades with ``M = {n : x_n = x0}``."""
    cls = mls.classify_point(seq.space, x0, j_probe=j_probe)
    if not isinstance(cls, mls.Isolated):
        raise PreconditionError("not-isolated", f"{x0.render()} is not a certified isolated point")
    prof = DeviationProfile(seq, x0, j_probe)
    if not _i_converges(prof, I).holds:
        raise PreconditionError("not-i-convergent", f"sequence is not {I.name}-convergent to {x0.render()}")
    M = equal_set(seq, x0)
    # inside the isolating ball, small deviation means equality
    if M != ~_deviation_set(prof, cls.radius):
        raise ConvergenceError("isolating ball contains points other than its center")
    if not in_filter(I, M):
        raise ConvergenceError("M is not in the filter")
    return holds(FilterSet(M), f"x_n = {x0.render()} on M; isolating radius {cls.radius}", radius=cls.radius)


def build_separating_sequence(space: Space, x0: PointValue, probe=None, j_probe: int = J_PROBE) -> CellSequence:
    """Sequence that ideal-converges to ``x0`` under the decomposition ideal but not ideal-star.

    Cell ``j`` carries a point picked from the ball of radius ``1/j`` around
    ``x0``; both halves of the conclusion are re-verified before returning.
    """
    space.check_point(x0)
    if space.ball_pick(x0, Fraction(1)) is None:
        raise PreconditionError("no-ball-pick", f"{space.kind} cannot pick points near {x0.render()}")
    cls = mls.classify_point(space, x0, probe, j_probe=j_probe)
    if not isinstance(cls, mls.LimitPoint):
        raise PreconditionError("not-limit-point", f"{x0.render()} is not a limit point of {space.kind}")
    t0 = mls.check_t0(space, space.sample() if probe is None else probe)
    if not t0.holds:
        raise PreconditionError("not-t0", f"{space.kind} is not T0 on the sample: {t0.description}")
    seq = CellSequence(space, HarmonicApproach(x0))
    if not i_converges(seq, x0, DECOMPOSITION, j_probe).holds:
        raise ConvergenceError("constructed sequence is not ideal-convergent")
    if not i_star_refute(seq, x0, DECOMPOSITION, j_probe=j_probe).fails:
        raise ConvergenceError("constructed sequence was not refuted")
    return seq
