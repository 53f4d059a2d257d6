"""Exact subsets of the positive naturals.

Every set here is a union of dyadic cells ``D(j) = {n : v2(n) = j - 1}`` with
finitely many elements added or removed.  That family is a boolean algebra,
every member has a natural density, and the density is an exact dyadic
rational.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np


def cell_of(n: int) -> int:
    """Return ``v2(n) + 1``, the index of the dyadic cell holding ``n``."""
    if n < 1:
        raise ValueError(f"indices start at 1, got {n}")
    return (n & -n).bit_length()


@dataclass(frozen=True)
class CellSelection:
    """A finite set of cells, or the complement of one.

    ``cofinite=False`` reads as "exactly the cells in ``cells``";
    ``cofinite=True`` as "every cell except those in ``cells``".
    """

    cells: frozenset[int]
    cofinite: bool = False

    def __post_init__(self):
        object.__setattr__(self, "cells", frozenset(self.cells))
        if any(j < 1 for j in self.cells):
            raise ValueError("cell indices start at 1")

    def has(self, j: int) -> bool:
        return (j in self.cells) != self.cofinite

    def complement(self) -> CellSelection:
        return CellSelection(self.cells, not self.cofinite)

    def union(self, other: CellSelection) -> CellSelection:
        a, b = self, other
        if not a.cofinite and not b.cofinite:
            return CellSelection(a.cells | b.cells, False)
        if a.cofinite and b.cofinite:
            return CellSelection(a.cells & b.cells, True)
        if a.cofinite:
            a, b = b, a
        # a finite, b cofinite
        return CellSelection(b.cells - a.cells, True)

    def intersect(self, other: CellSelection) -> CellSelection:
        return self.complement().union(other.complement()).complement()

    @property
    def is_finite(self) -> bool:
        return not self.cofinite

    def __repr__(self) -> str:
        kind = "CofiniteCells" if self.cofinite else "FiniteCells"
        return f"{kind}({sorted(self.cells)})"


def FiniteCells(cells: Iterable[int] = ()) -> CellSelection:
    return CellSelection(frozenset(cells), False)


def CofiniteCells(cells: Iterable[int] = ()) -> CellSelection:
    return CellSelection(frozenset(cells), True)


@dataclass(frozen=True)
class SymbolicNatSet:
    """``(cells in base) + plus - minus``, kept normalized.

    Normal form: ``plus`` only holds numbers whose cell is outside ``base``
    and ``minus`` only numbers whose cell is inside it, so two sets are equal
    as sets exactly when their fields are equal.
    """

    base: CellSelection
    plus: frozenset[int] = frozenset()
    minus: frozenset[int] = frozenset()

    def __post_init__(self):
        plus = frozenset(self.plus)
        minus = frozenset(self.minus)
        for n in plus | minus:
            if not isinstance(n, (int, np.integer)) or n < 1:
                raise ValueError(f"set elements must be positive integers, got {n!r}")
        # drop redundant exceptions
        plus = frozenset(int(n) for n in plus if not self.base.has(cell_of(int(n))))
        minus = frozenset(int(n) for n in minus if self.base.has(cell_of(int(n))))
        minus = minus - plus
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    # -- constructors ------------------------------------------------------

    @classmethod
    def cell(cls, j: int) -> SymbolicNatSet:
        return cls(FiniteCells([j]))

    @classmethod
    def cells(cls, js: Iterable[int]) -> SymbolicNatSet:
        return cls(FiniteCells(js))

    @classmethod
    def finite(cls, elements: Iterable[int]) -> SymbolicNatSet:
        return cls(FiniteCells(), frozenset(elements))

    @classmethod
    def empty(cls) -> SymbolicNatSet:
        return cls(FiniteCells())

    @classmethod
    def all(cls) -> SymbolicNatSet:
        return cls(CofiniteCells())

    # -- queries -----------------------------------------------------------

    def __contains__(self, n: int) -> bool:
        return contains(self, n)

    @property
    def is_finite(self) -> bool:
        return self.base == FiniteCells()

    @property
    def is_empty(self) -> bool:
        return self.is_finite and not self.plus

    def elements(self) -> list[int]:
        """Sorted elements of a finite set."""
        if not self.is_finite:
            raise ValueError("set is infinite")
        return sorted(self.plus)

    # -- operators ---------------------------------------------------------

    def __or__(self, other: SymbolicNatSet) -> SymbolicNatSet:
        return union(self, other)

    def __and__(self, other: SymbolicNatSet) -> SymbolicNatSet:
        return intersect(self, other)

    def __xor__(self, other: SymbolicNatSet) -> SymbolicNatSet:
        return symdiff(self, other)

    def __sub__(self, other: SymbolicNatSet) -> SymbolicNatSet:
        return intersect(self, complement(other))

    def __invert__(self) -> SymbolicNatSet:
        return complement(self)

    def to_expr(self) -> str:
        """Canonical set expression that the scenario parser reads back."""
        b = self.base
        cells = " | ".join(f"D({j})" for j in sorted(b.cells))
        if b.cofinite:
            text = f"!({cells})" if len(b.cells) > 1 else (f"!{cells}" if cells else "all")
        else:
            text = cells or "empty"
        if self.plus:
            lit = "finite{" + ",".join(map(str, sorted(self.plus))) + "}"
            text = lit if text == "empty" else f"{text} | {lit}"
        if self.minus:
            lit = "finite{" + ",".join(map(str, sorted(self.minus))) + "}"
            text = f"({text}) & !{lit}" if " " in text else f"{text} & !{lit}"
        return text

    def __repr__(self) -> str:
        return f"SymbolicNatSet({self.to_expr()})"


def contains(S: SymbolicNatSet, n: int) -> bool:
    if n in S.plus:
        return True
    if n in S.minus:
        return False
    return S.base.has(cell_of(n))


def _combine(S: SymbolicNatSet, T: SymbolicNatSet, base: CellSelection, op) -> SymbolicNatSet:
    # outside the listed exceptions, membership is decided by the bases alone
    plus, minus = set(), set()
    for n in S.plus | S.minus | T.plus | T.minus:
        inside = op(contains(S, n), contains(T, n))
        if inside and not base.has(cell_of(n)):
            plus.add(n)
        elif not inside and base.has(cell_of(n)):
            minus.add(n)
    return SymbolicNatSet(base, frozenset(plus), frozenset(minus))


def union(S: SymbolicNatSet, T: SymbolicNatSet) -> SymbolicNatSet:
    return _combine(S, T, S.base.union(T.base), lambda a, b: a or b)


def intersect(S: SymbolicNatSet, T: SymbolicNatSet) -> SymbolicNatSet:
    return _combine(S, T, S.base.intersect(T.base), lambda a, b: a and b)


def complement(S: SymbolicNatSet) -> SymbolicNatSet:
    return SymbolicNatSet(S.base.complement(), S.minus, S.plus)


def symdiff(S: SymbolicNatSet, T: SymbolicNatSet) -> SymbolicNatSet:
    a, b = S.base, T.base
    base = a.intersect(b.complement()).union(b.intersect(a.complement()))
    return _combine(S, T, base, lambda x, y: x != y)


def density(S: SymbolicNatSet) -> Fraction:
    """Exact natural density; finite perturbations contribute nothing."""
    listed = sum((Fraction(1, 2**j) for j in S.base.cells), Fraction(0))
    return 1 - listed if S.base.cofinite else listed


def cells_hit(S: SymbolicNatSet) -> CellSelection:
    """Cells ``j`` with ``S & D(j)`` nonempty.

    A selected cell stays hit after removing finitely many elements, because
    every cell is infinite.
    """
    extra = {cell_of(n) for n in S.plus}
    return S.base.union(FiniteCells(extra))


def _cell_span(j: int, N: int) -> slice:
    # D(j) ∩ [1, N] is the progression 2^(j-1), 2^(j-1) + 2^j, ...
    return slice(2 ** (j - 1), N + 1, 2**j)


def prefix_mask(S: SymbolicNatSet, N: int) -> np.ndarray:
    """Boolean array ``m`` of length ``N + 1`` with ``m[n] == (n in S)``; ``m[0]`` is False."""
    if N < 1:
        raise ValueError("horizon must be at least 1")
    b = S.base
    mask = np.zeros(N + 1, dtype=np.bool_)
    if b.cofinite:
        mask[1:] = True
    for j in b.cells:
        if 2 ** (j - 1) <= N:
            mask[_cell_span(j, N)] = not b.cofinite
    for n in S.plus:
        if n <= N:
            mask[n] = True
    for n in S.minus:
        if n <= N:
            mask[n] = False
    return mask


def enumerate_prefix(S: SymbolicNatSet, N: int) -> list[int]:
    """``[n for n in 1..N if n in S]``, ascending."""
    return (np.flatnonzero(prefix_mask(S, N))).tolist()


def _next_in_cell(j: int, after: int) -> int:
    start, step = 2 ** (j - 1), 2**j
    if after < start:
        return start
    return start + ((after - start) // step + 1) * step


def next_member(S: SymbolicNatSet, after: int) -> int | None:
    """Least element of ``S`` strictly greater than ``after``, or None.

    Works by cell arithmetic, so it stays fast for astronomically large
    answers (e.g. the first multiple of ``2**99`` past some bound).
    """
    b = S.base
    cur = after
    while True:
        candidates = [n for n in S.plus if n > cur]
        if b.cofinite:
            top = max(b.cells, default=0)
            candidates.extend(_next_in_cell(j, cur) for j in range(1, top + 1) if j not in b.cells)
            # every multiple of 2**top sits in a cell beyond the excluded ones
            step = 2**top
            candidates.append((cur // step + 1) * step)
        else:
            candidates.extend(_next_in_cell(j, cur) for j in b.cells)
        if not candidates:
            return None
        n = min(candidates)
        if n not in S.minus:
            return n
        cur = n


def random_natset(rng: random.Random, max_cell: int = 8, max_elem: int = 64) -> SymbolicNatSet:
    """A random set in the algebra; used by randomized law checks."""
    k = rng.randint(0, 3)
    cells = rng.sample(range(1, max_cell + 1), k)
    base = CellSelection(frozenset(cells), rng.random() < 0.4)
    plus = {rng.randint(1, max_elem) for _ in range(rng.randint(0, 3))}
    minus = {rng.randint(1, max_elem) for _ in range(rng.randint(0, 3))} - plus
    return SymbolicNatSet(base, frozenset(plus), frozenset(minus))
