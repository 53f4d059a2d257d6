"""Three-valued verdicts and their certificates."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Union

from .natset import SymbolicNatSet


class Outcome(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


def exact(value: Any) -> Any:
    """JSON-safe form: rationals and points become strings, containers recurse."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, SymbolicNatSet):
        return value.to_expr()
    if isinstance(value, (list, tuple)):
        return [exact(v) for v in value]
    if isinstance(value, dict):
        return {str(k): exact(v) for k, v in value.items()}
    if hasattr(value, "render"):
        return value.render()
    return str(value)


@dataclass(frozen=True)
class SymbolicSet:
    set: SymbolicNatSet

    def to_json(self):
        return {"kind": "symbolic-set", "set": exact(self.set)}


@dataclass(frozen=True)
class IndexWitness:
    n: int
    values: tuple = ()

    def to_json(self):
        return {"kind": "index", "n": self.n, "values": exact(self.values)}


@dataclass(frozen=True)
class CellWitness:
    """Cell ``p`` on which the deviation is the constant ``r_p``."""

    p: int
    r_p: Fraction

    def to_json(self):
        return {"kind": "cell", "p": self.p, "r_p": exact(self.r_p)}


@dataclass(frozen=True)
class FilterSet:
    M: SymbolicNatSet

    def to_json(self):
        return {"kind": "filter-set", "M": exact(self.M)}


@dataclass(frozen=True)
class Horizon:
    N: int

    def to_json(self):
        return {"kind": "horizon", "N": self.N}


@dataclass(frozen=True)
class Counts:
    """Bookkeeping for exhaustive or randomized checks that passed."""

    counts: tuple[tuple[str, int], ...]

    def to_json(self):
        return {"kind": "counts", "counts": dict(self.counts)}


@dataclass(frozen=True)
class AxiomWitness:
    axiom: str
    points: tuple
    lhs: Any = None
    rhs: Any = None

    def to_json(self):
        return {
            "kind": "axiom",
            "axiom": self.axiom,
            "points": exact(self.points),
            "lhs": exact(self.lhs),
            "rhs": exact(self.rhs),
        }


@dataclass(frozen=True)
class SetWitness:
    law: str
    sets: tuple[SymbolicNatSet, ...]

    def to_json(self):
        return {"kind": "sets", "law": self.law, "sets": exact(self.sets)}


@dataclass(frozen=True)
class Table:
    rows: tuple

    def to_json(self):
        return {"kind": "table", "rows": exact(self.rows)}


Certificate = Union[
    SymbolicSet, IndexWitness, CellWitness, FilterSet, Horizon, Counts, AxiomWitness, SetWitness, Table
]


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    certificate: Certificate
    description: str = ""
    values: dict = field(default_factory=dict, compare=False)
    horizon: int | None = None

    def __post_init__(self):
        if self.outcome is Outcome.UNKNOWN and self.horizon is None:
            raise ValueError("an Unknown verdict must record its horizon")

    @property
    def holds(self) -> bool:
        return self.outcome is Outcome.HOLDS

    @property
    def fails(self) -> bool:
        return self.outcome is Outcome.FAILS

    @property
    def unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "certificate": self.certificate.to_json(),
            "description": self.description,
            "values": exact(self.values),
            "horizon": self.horizon,
        }


def holds(certificate: Certificate, description: str = "", **values) -> Verdict:
    return Verdict(Outcome.HOLDS, certificate, description, values)


def fails(certificate: Certificate, description: str = "", **values) -> Verdict:
    return Verdict(Outcome.FAILS, certificate, description, values)


def unknown(horizon: int, description: str = "", **values) -> Verdict:
    return Verdict(Outcome.UNKNOWN, Horizon(horizon), description, values, horizon)
