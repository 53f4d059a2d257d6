"""Admissible ideals over the naturals, their filters, and (AP) hooks."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Callable

from .natset import SymbolicNatSet, cells_hit, density, random_natset
from .verdict import Counts, IndexWitness, SetWitness, Verdict, fails, holds


class IdealKind(enum.Enum):
    FIN = "fin"
    DENSITY0 = "density0"
    DECOMPOSITION = "decomposition"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Ideal:
    name: str
    kind: IdealKind
    rule: Callable[[SymbolicNatSet], bool] | None = field(default=None, compare=False)

    @classmethod
    def custom(cls, name: str, rule: Callable[[SymbolicNatSet], bool]) -> Ideal:
        """Wrap an arbitrary membership rule; nothing guarantees it is an ideal."""
        return cls(name, IdealKind.CUSTOM, rule)

    def __contains__(self, S: SymbolicNatSet) -> bool:
        return member(self, S)


FIN = Ideal("fin", IdealKind.FIN)
DENSITY0 = Ideal("density0", IdealKind.DENSITY0)
DECOMPOSITION = Ideal("decomposition", IdealKind.DECOMPOSITION)

BUILTIN = {i.name: i for i in (FIN, DENSITY0, DECOMPOSITION)}


def member(I: Ideal, S: SymbolicNatSet) -> bool:
    if I.kind is IdealKind.FIN:
        return S.is_finite
    if I.kind is IdealKind.DENSITY0:
        return density(S) == 0
    if I.kind is IdealKind.DECOMPOSITION:
        return cells_hit(S).is_finite
    return bool(I.rule(S))


def in_filter(I: Ideal, S: SymbolicNatSet) -> bool:
    """Membership in the dual filter: ``S`` is co-small."""
    return member(I, ~S)


def check_ideal_axioms(I: Ideal, trials: int = 200, seed: int = 0) -> Verdict:
    """Randomized check of the ideal laws plus non-triviality and admissibility.

    Fails on the first violated law, carrying the offending set(s).
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    empty, everything = SymbolicNatSet.empty(), SymbolicNatSet.all()
    if not member(I, empty):
        return fails(SetWitness("empty-member", (empty,)), "the empty set is not in the ideal")
    if member(I, everything):
        return fails(SetWitness("non-trivial", (everything,)), "the ideal contains every natural")
    singles = list(range(1, 9)) + [rng.randint(1, 2**16) for _ in range(trials)]
    for n in singles:
        s = SymbolicNatSet.finite([n])
        if not member(I, s):
            return fails(SetWitness("admissible", (s,)), f"singleton {{{n}}} is not in the ideal")
    unions = subsets = 0
    for _ in range(trials):
        A, B = random_natset(rng), random_natset(rng)
        if member(I, A):
            subsets += 1
            if not member(I, A & B):
                return fails(SetWitness("downward-closed", (A, A & B)), "a subset of a member is not a member")
            if member(I, B):
                unions += 1
                if not member(I, A | B):
                    return fails(SetWitness("union-closed", (A, B)), "the union of two members is not a member")
    counts = (("trials", trials), ("singletons", len(singles)), ("subset-checks", subsets), ("union-checks", unions))
    return holds(Counts(counts), f"ideal laws held on {trials} random pairs")


@dataclass(frozen=True)
class APFamily:
    """Pairwise-disjoint ideal members ``A_1..A_J``; every later ``A_j`` is empty."""

    sets: tuple[SymbolicNatSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))

    def validate(self, I: Ideal) -> None:
        for j, A in enumerate(self.sets, 1):
            if not member(I, A):
                raise ValueError(f"A_{j} = {A.to_expr()} is not a member of {I.name}")
        for i, A in enumerate(self.sets, 1):
            for j in range(i + 1, len(self.sets) + 1):
                if not (A & self.sets[j - 1]).is_empty:
                    raise ValueError(f"A_{i} and A_{j} are not disjoint")


@dataclass(frozen=True)
class APDecomposition:
    blocks: tuple[SymbolicNatSet, ...]
    union: SymbolicNatSet


@dataclass(frozen=True)
class Unsupported:
    reason: str


def ap_decompose(I: Ideal, fam: APFamily) -> APDecomposition | Unsupported:
    """Finite perturbations ``B_j`` of the family whose union stays in ``I``.

    Inside this set algebra every member of ``fin`` or ``density0`` is a
    finite set, so ``B_j = ∅`` always works.  The decomposition ideal has no
    hook: it is exactly the ideal that separates the two convergence modes.
    """
    fam.validate(I)
    if I.kind in (IdealKind.FIN, IdealKind.DENSITY0):
        blocks = tuple(SymbolicNatSet.empty() for _ in fam.sets)
        return APDecomposition(blocks, SymbolicNatSet.empty())
    return Unsupported(f"AP unsupported for {I.name}")


def verify_ap_decomposition(I: Ideal, fam: APFamily, candidate) -> Verdict:
    candidate = tuple(candidate)
    if len(candidate) != len(fam.sets):
        raise ValueError("need exactly one candidate block per family member")
    B = SymbolicNatSet.empty()
    for j, (A, Bj) in enumerate(zip(fam.sets, candidate), 1):
        if not (A ^ Bj).is_finite:
            return fails(IndexWitness(j, (A, Bj)), f"A_{j} and B_{j} differ on an infinite set")
        B = B | Bj
    if not member(I, B):
        return fails(SetWitness("union-in-ideal", (B,)), "the union of the blocks leaves the ideal")
    return holds(Counts((("blocks", len(candidate)),)), "every block is a finite perturbation", B=B)
