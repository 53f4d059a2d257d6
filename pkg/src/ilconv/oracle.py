"""Brute-force recomputation on a finite prefix of the naturals.

Nothing here touches the cell algebra in :mod:`ilconv.natset`: cells come
from a direct valuation scan, sequence terms from the raw tail rules, and set
expressions are evaluated as bit vectors.  Agreement with the symbolic side
is evidence, not tautology.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

import numpy as np

from . import _kernels
from .conv import ConstPoint, IntegerRamp
from .mls import IntegerPt, PointValue
from .natset import SymbolicNatSet, enumerate_prefix
from .setexpr import BinOp, Cell, Everything, Finite, Not, Nothing, Ref, SetExpr
from .verdict import Counts, IndexWitness, Verdict, fails, holds


@dataclass(frozen=True)
class PrefixWitness:
    """Bit vector over ``[1, N]``; ``bits[i]`` is membership of ``i + 1``."""

    N: int
    bits: np.ndarray
    note: str = ""

    def __post_init__(self):
        if self.bits.shape != (self.N,):
            raise ValueError("bit vector length must equal the horizon")


@lru_cache(maxsize=8)
def _cells(N: int) -> np.ndarray:
    out = _kernels.cell_indices(N)
    out.setflags(write=False)
    return out


def cells(N: int) -> np.ndarray:
    """``cells(N)[i]`` is the dyadic cell of ``i + 1``."""
    return _cells(N)


def _raw_value(seq, n: int, cell: int) -> PointValue:
    if n in seq.point_overrides:
        return seq.point_overrides[n]
    if cell in seq.overrides:
        return seq.overrides[cell]
    tail = seq.tail
    if isinstance(tail, ConstPoint):
        return tail.point
    if isinstance(tail, IntegerRamp):
        return IntegerPt(cell)
    return seq.space.ball_pick(tail.target, Fraction(1, cell))


def scan_deviations(seq, x0: PointValue, N: int) -> list[Fraction]:
    """Exact ``|δ(x_n, x0) − δ(x0, x0)|`` for ``n = 1..N``, one δ evaluation per term."""
    if N < 1:
        raise ValueError("horizon must be at least 1")
    space = seq.space
    cs = cells(N)
    self_dist = space.delta(x0, x0)
    out = []
    for i in range(N):
        n = i + 1
        x = _raw_value(seq, n, int(cs[i]))
        out.append(abs(space.delta(x, x0) - self_dist))
    return out


Predicate = Union[Callable[[int], bool], np.ndarray, PrefixWitness]


def witness(predicate: Predicate, N: int, note: str = "") -> PrefixWitness:
    if isinstance(predicate, PrefixWitness):
        if predicate.N < N:
            raise ValueError("witness shorter than horizon")
        return PrefixWitness(N, predicate.bits[:N], predicate.note)
    if isinstance(predicate, np.ndarray):
        return PrefixWitness(N, np.asarray(predicate[:N], dtype=np.bool_), note)
    bits = np.fromiter((bool(predicate(n)) for n in range(1, N + 1)), dtype=np.bool_, count=N)
    return PrefixWitness(N, bits, note)


def equiv_on_prefix(S: SymbolicNatSet, predicate: Predicate, N: int) -> Verdict:
    """Does ``S`` agree with ``predicate`` on every ``n ≤ N``?"""
    w = witness(predicate, N)
    sym = np.zeros(N, dtype=np.bool_)
    idx = np.asarray(enumerate_prefix(S, N), dtype=np.int64)
    sym[idx - 1] = True
    k = _kernels.first_mismatch(sym, w.bits)
    if k < 0:
        return holds(Counts((("horizon", N),)), f"agree on [1, {N}]")
    n = k + 1
    return fails(IndexWitness(n, (bool(sym[k]), bool(w.bits[k]))), f"disagree at n = {n}")


def empirical_density(predicate: Predicate, N: int) -> Fraction:
    if N < 1:
        raise ValueError("horizon must be at least 1")
    w = witness(predicate, N)
    return Fraction(int(w.bits.sum()), N)


def cell_mask(cell_set, N: int, cofinite: bool = False) -> np.ndarray:
    """Bits for ``n ≤ N`` whose cell is (or, if ``cofinite``, is not) in ``cell_set``."""
    cs = cells(N)
    top = max(cell_set, default=0)
    table = np.zeros(max(top + 1, int(cs.max()) + 1 if N else 1), dtype=np.bool_)
    for j in cell_set:
        table[j] = True
    if cofinite:
        table = ~table
    return _kernels.select_cells(cs, table, cofinite)


def expr_mask(expr: SetExpr, N: int, env: dict[str, np.ndarray] | None = None) -> np.ndarray:
    """Bitwise evaluation of a set expression on ``[1, N]``."""
    if isinstance(expr, Cell):
        return cell_mask([expr.j], N)
    if isinstance(expr, Finite):
        bits = np.zeros(N, dtype=np.bool_)
        for n in expr.elements:
            if 1 <= n <= N:
                bits[n - 1] = True
        return bits
    if isinstance(expr, Everything):
        return np.ones(N, dtype=np.bool_)
    if isinstance(expr, Nothing):
        return np.zeros(N, dtype=np.bool_)
    if isinstance(expr, Ref):
        return env[expr.name][:N]
    if isinstance(expr, Not):
        return ~expr_mask(expr.arg, N, env)
    if isinstance(expr, BinOp):
        a, b = expr_mask(expr.left, N, env), expr_mask(expr.right, N, env)
        return {"|": np.logical_or, "&": np.logical_and, "^": np.logical_xor}[expr.op](a, b)
    raise TypeError(f"not a set expression: {expr!r}")
