"""Set-expression trees: ``D(j)``, ``finite{...}``, ``all``, ``empty``, ``!``, ``&``, ``^``, ``|``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Union

from .natset import SymbolicNatSet


@dataclass(frozen=True)
class Cell:
    j: int


@dataclass(frozen=True)
class Finite:
    elements: tuple[int, ...]


@dataclass(frozen=True)
class Everything:
    pass


@dataclass(frozen=True)
class Nothing:
    pass


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "SetExpr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of "|", "&", "^"
    left: "SetExpr"
    right: "SetExpr"


SetExpr = Union[Cell, Finite, Everything, Nothing, Ref, Not, BinOp]

# binding strength; "!" binds tighter than all of these
PRECEDENCE = {"|": 1, "^": 2, "&": 3}


def evaluate(expr: SetExpr, env: dict[str, SymbolicNatSet] | None = None) -> SymbolicNatSet:
    if isinstance(expr, Cell):
        return SymbolicNatSet.cell(expr.j)
    if isinstance(expr, Finite):
        return SymbolicNatSet.finite(expr.elements)
    if isinstance(expr, Everything):
        return SymbolicNatSet.all()
    if isinstance(expr, Nothing):
        return SymbolicNatSet.empty()
    if isinstance(expr, Ref):
        if env is None or expr.name not in env:
            raise KeyError(f"unknown set {expr.name!r}")
        return env[expr.name]
    if isinstance(expr, Not):
        return ~evaluate(expr.arg, env)
    if isinstance(expr, BinOp):
        a, b = evaluate(expr.left, env), evaluate(expr.right, env)
        if expr.op == "|":
            return a | b
        if expr.op == "&":
            return a & b
        if expr.op == "^":
            return a ^ b
    raise TypeError(f"not a set expression: {expr!r}")


def render(expr: SetExpr, parent: int = 0) -> str:
    """Minimal-parenthesis text form; parses back to the same tree."""
    if isinstance(expr, Cell):
        return f"D({expr.j})"
    if isinstance(expr, Finite):
        return "finite{" + ",".join(str(n) for n in expr.elements) + "}"
    if isinstance(expr, Everything):
        return "all"
    if isinstance(expr, Nothing):
        return "empty"
    if isinstance(expr, Ref):
        return expr.name
    if isinstance(expr, Not):
        return "!" + render(expr.arg, 4)
    if isinstance(expr, BinOp):
        p = PRECEDENCE[expr.op]
        # operators are left-associative: a right operand of equal strength needs parens
        text = f"{render(expr.left, p)} {expr.op} {render(expr.right, p + 1)}"
        return f"({text})" if p < parent else text
    raise TypeError(f"not a set expression: {expr!r}")


def random_expr(rng: random.Random, depth: int = 4, max_cell: int = 8, max_elem: int = 64) -> SetExpr:
    if depth <= 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.6:
            return Cell(rng.randint(1, max_cell))
        if r < 0.85:
            k = rng.randint(1, 4)
            return Finite(tuple(sorted({rng.randint(1, max_elem) for _ in range(k)})))
        return Everything() if r < 0.93 else Nothing()
    if rng.random() < 0.2:
        return Not(random_expr(rng, depth - 1, max_cell, max_elem))
    op = rng.choice("|&^")
    return BinOp(op, random_expr(rng, depth - 1, max_cell, max_elem), random_expr(rng, depth - 1, max_cell, max_elem))
