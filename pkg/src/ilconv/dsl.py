"""Scenario files (``.ilconv``): declarations of ideals, spaces, sets and sequences, then queries.

Parsing is all-or-nothing: any error means no :class:`Scenario`, and every
error carries the 1-based line and column of its offending token.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union

from . import __version__, mls, natset, oracle, setexpr
from .conv import (
    HORIZON,
    J_PROBE,
    CellSequence,
    ConstPoint,
    HarmonicApproach,
    IntegerRamp,
    ap_promote,
    build_separating_sequence,
    classical_converges,
    deviation,
    extract_subsequence,
    i_converges,
    i_star_converges,
    i_star_refute,
    isolated_promote,
    refutation_subsequence,
    statistically_converges,
)
from .ideals import BUILTIN, Ideal, member
from .mls import PointValue, Space, TableSpace
from .setexpr import SetExpr
from .verdict import Verdict, exact

QUERY_KINDS = (
    "converges",
    "stat-converges",
    "i-converges",
    "i-star-converges",
    "extract",
    "refute-subsequence",
    "ap-promote",
    "isolated-promote",
    "separate",
    "density",
    "member",
    "axioms",
)
UNDER_REQUIRED = {"i-converges", "i-star-converges", "refute-subsequence", "ap-promote", "isolated-promote"}
LEVELS = ("metric", "partial", "metric-like")


@dataclass(frozen=True)
class ParseError:
    line: int
    column: int
    message: str
    token: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message} (at {self.token!r})"


class ScenarioError(Exception):
    """Raised by :func:`parse`; ``errors`` lists every problem found."""

    def __init__(self, errors: list[ParseError]):
        super().__init__("\n".join(map(str, errors)))
        self.errors = errors


# -- tokens -------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # WORD, INT, SYM, NL, EOF
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>\n)"
    r"|(?P<word>[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z0-9_]+)*)"
    r"|(?P<int>[0-9]+)|(?P<sym>->|[=;,{}()/|&!^])"
)


class _Fail(Exception):
    def __init__(self, tok: Token, message: str):
        self.error = ParseError(tok.line, tok.column, message, tok.text)


class _Skip(Exception):
    """A statement depends on a declaration that already failed; stay quiet."""


def tokenize(text: str) -> Iterator[Token]:
    line, col, pos, depth = 1, 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            yield Token("BAD", text[pos], line, col)
            pos, col = pos + 1, col + 1
            continue
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            if depth == 0:
                yield Token("NL", "", line, col)
            line, col = line + 1, 1
        elif kind in ("ws", "comment"):
            col += len(s)
        else:
            if s == "{":
                depth += 1
            elif s == "}":
                depth = max(0, depth - 1)
            yield Token({"word": "WORD", "int": "INT", "sym": "SYM"}[kind], s, line, col)
            col += len(s)
        pos = m.end()
    yield Token("NL", "", line, col)
    yield Token("EOF", "", line, col)


def _describe(tok: Token) -> str:
    if tok.kind == "NL":
        return "end of line"
    if tok.kind == "EOF":
        return "end of input"
    return repr(tok.text)


# -- scenario model -------------------------------------------------------------------

@dataclass(frozen=True)
class IdealDecl:
    name: str
    ideal: Ideal

    def render(self) -> str:
        return f"ideal {self.name} = {self.ideal.name}"


@dataclass(frozen=True)
class SpaceDecl:
    name: str
    space: Space

    def render(self) -> str:
        return f"space {self.name} = {self.space.render()}"


@dataclass(frozen=True)
class SetDecl:
    name: str
    expr: SetExpr

    def render(self) -> str:
        return f"set {self.name} = {setexpr.render(self.expr)}"


@dataclass(frozen=True)
class SequenceDecl:
    name: str
    space: str
    sequence: CellSequence

    def render(self) -> str:
        seq = self.sequence
        entries = [f"{j} -> {p.render()}" for j, p in seq.overrides.items()]
        entries += [f"at {n} -> {p.render()}" for n, p in seq.point_overrides.items()]
        entries.append(f"default {seq.tail.render()}")
        return f"sequence {self.name} in {self.space} = cellwise {{ {'; '.join(entries)} }}"


Declaration = Union[IdealDecl, SpaceDecl, SetDecl, SequenceDecl]


@dataclass(frozen=True)
class Query:
    kind: str
    seq: str | None = None
    point: PointValue | None = None
    ideal: str | None = None
    k: int | None = None
    space: str | None = None
    expr: SetExpr | None = None
    level: str | None = None

    def render(self) -> str:
        parts = ["query", self.kind]
        if self.kind == "separate":
            parts += [self.space, "at", self.point.render()]
        elif self.kind == "density":
            parts.append(setexpr.render(self.expr))
        elif self.kind == "member":
            parts += [self.ideal, setexpr.render(self.expr)]
        elif self.kind == "axioms":
            parts.append(self.space)
            if self.level:
                parts += ["level", self.level]
        else:
            parts += [self.seq, "to", self.point.render()]
            if self.k is not None:
                parts += ["k", str(self.k)]
            if self.ideal is not None:
                parts += ["under", self.ideal]
        return " ".join(parts)


@dataclass(frozen=True)
class Scenario:
    declarations: tuple[Declaration, ...]
    queries: tuple[Query, ...]

    def lookup(self, cls, name: str):
        for d in self.declarations:
            if isinstance(d, cls) and d.name == name:
                return d
        raise KeyError(name)

    def render(self) -> str:
        lines = [d.render() for d in self.declarations] + [q.render() for q in self.queries]
        return "\n".join(lines) + "\n"


def render(sc: Scenario) -> str:
    return sc.render()


# -- parser ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = list(tokenize(text))
        self.i = 0
        self.decls: list[Declaration] = []
        self.queries: list[Query] = []
        self.names: dict[str, Declaration] = {}
        # names whose declaration failed; references to them add no further errors
        self.poisoned: set[str] = set()
        self.pending: str | None = None

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "EOF":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("WORD", "SYM") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise _Fail(self.tok, f"expected {text!r}, found {_describe(self.tok)}")
        return self.advance()

    def word(self, what: str = "a name") -> Token:
        if self.tok.kind != "WORD":
            raise _Fail(self.tok, f"expected {what}, found {_describe(self.tok)}")
        return self.advance()

    def name(self) -> Token:
        t = self.word()
        self.pending = t.text
        return t

    def close(self, opener: Token, closer: str) -> Token:
        if self.tok.kind in ("NL", "EOF"):
            raise _Fail(opener, f"unclosed {opener.text!r}")
        return self.expect(closer)

    def integer(self, what: str = "an integer") -> tuple[int, Token]:
        if self.tok.kind != "INT":
            raise _Fail(self.tok, f"expected {what}, found {_describe(self.tok)}")
        t = self.advance()
        return int(t.text), t

    def end_of_statement(self):
        if self.tok.kind not in ("NL", "EOF"):
            raise _Fail(self.tok, f"expected end of line, found {_describe(self.tok)}")

    def reject_bad_characters(self):
        k = self.i
        while self.tokens[k].kind not in ("NL", "EOF"):
            if self.tokens[k].kind == "BAD":
                raise _Fail(self.tokens[k], f"unexpected character {self.tokens[k].text!r}")
            k += 1

    def skip_statement(self):
        while self.tok.kind not in ("NL", "EOF"):
            self.advance()

    # driver
    def parse(self) -> Scenario:
        errors = []
        while self.tok.kind != "EOF":
            if self.tok.kind == "NL":
                self.advance()
                continue
            self.pending = None
            try:
                self.reject_bad_characters()
                self.statement()
                self.end_of_statement()
            except (_Fail, _Skip) as f:
                if isinstance(f, _Fail):
                    errors.append(f.error)
                if self.pending and self.pending not in self.names:
                    self.poisoned.add(self.pending)
                self.skip_statement()
        if errors:
            raise ScenarioError(errors)
        return Scenario(tuple(self.decls), tuple(self.queries))

    def declare(self, name_tok: Token, decl: Declaration):
        if name_tok.text in self.names:
            raise _Fail(name_tok, f"duplicate declaration {name_tok.text!r}")
        self.names[name_tok.text] = decl
        self.decls.append(decl)

    def resolve(self, tok: Token, cls, what: str):
        if tok.text in self.poisoned:
            raise _Skip()
        d = self.names.get(tok.text)
        if not isinstance(d, cls):
            raise _Fail(tok, f"unknown {what} {tok.text!r}")
        return d

    def statement(self):
        t = self.tok
        if self.at("ideal"):
            self.advance()
            self.ideal_decl()
        elif self.at("space"):
            self.advance()
            self.space_decl()
        elif self.at("set"):
            self.advance()
            name = self.name()
            self.expect("=")
            self.declare(name, SetDecl(name.text, self.set_expr()))
        elif self.at("sequence"):
            self.advance()
            self.sequence_decl()
        elif self.at("query"):
            self.advance()
            self.queries.append(self.query())
        else:
            raise _Fail(t, "expected a declaration or query")

    def ideal_decl(self):
        name = self.name()
        self.expect("=")
        kind = self.word("an ideal kind")
        if kind.text not in BUILTIN:
            raise _Fail(kind, "unknown ideal kind")
        self.declare(name, IdealDecl(name.text, BUILTIN[kind.text]))

    def space_decl(self):
        name = self.name()
        self.expect("=")
        kind = self.word("a space kind")
        if kind.text == "example1":
            space = mls.EXAMPLE1
        elif kind.text == "harmonic":
            space = mls.HARMONIC
        elif kind.text == "table":
            space = self.table_body(kind)
        else:
            raise _Fail(kind, "unknown space kind")
        self.declare(name, SpaceDecl(name.text, space))

    def table_body(self, kw: Token) -> TableSpace:
        opener = self.expect("{")
        self.expect("points")
        labels = [self.word("a point label")]
        while self.at(","):
            self.advance()
            labels.append(self.word("a point label"))
        seen = set()
        for lt in labels:
            if lt.text in seen:
                raise _Fail(lt, f"duplicate point {lt.text!r}")
            seen.add(lt.text)
        entries: dict[tuple[str, str], Fraction] = {}
        while self.at(";"):
            self.advance()
            if self.at("}"):
                break
            self.expect("delta")
            a, b = self.word("a point label"), self.word("a point label")
            for lt in (a, b):
                if lt.text not in seen:
                    raise _Fail(lt, f"unknown point {lt.text!r}")
            self.expect("=")
            value, vt = self.rational()
            for key in ((a.text, b.text), (b.text, a.text)):
                if key in entries and entries[key] != value:
                    raise _Fail(vt, f"table is not symmetric at {a.text},{b.text}")
            entries[(a.text, b.text)] = entries[(b.text, a.text)] = value
        self.close(opener, "}")
        names = [lt.text for lt in labels]
        for x in names:
            for y in names:
                if (x, y) not in entries:
                    raise _Fail(kw, f"missing distance between {x} and {y}")
        return TableSpace.from_entries(names, entries)

    def rational(self) -> tuple[Fraction, Token]:
        p, pt = self.integer("a non-negative rational")
        if self.at("/"):
            self.advance()
            q, qt = self.integer("a denominator")
            if q == 0:
                raise _Fail(qt, "zero denominator")
            return Fraction(p, q), pt
        return Fraction(p), pt

    def point(self, space: Space | None = None) -> PointValue:
        head = self.word("a point")
        try:
            if head.text == "int":
                n, _ = self.integer()
                pt = mls.IntegerPt(n)
            elif head.text == "rat":
                p, p_tok = self.integer("a numerator")
                self.expect("/")
                q, _ = self.integer("a denominator")
                if q == 0:
                    raise _Fail(p_tok, "zero denominator")
                if q == 1:
                    raise _Fail(p_tok, f"type mismatch: rat {p}/1 is an integer, write int {p}")
                try:
                    pt = mls.RationalPt(p, q)
                except mls.PointError:
                    raise _Fail(p_tok, "fraction not reduced") from None
            elif head.text == "irr":
                pt = mls.IrrationalPt(self.word("a symbol").text)
            elif head.text == "pt":
                pt = mls.LabelPt(self.word("a point label").text)
            else:
                raise _Fail(head, "expected a point (int, rat, irr or pt)")
        except mls.PointError as e:
            raise _Fail(head, str(e)) from None
        if space is not None and not space.in_sort(pt):
            raise _Fail(head, f"{pt.render()} is not a point of {space.kind}")
        return pt

    def sequence_decl(self):
        name = self.name()
        self.expect("in")
        sp_tok = self.word("a space name")
        space = self.resolve(sp_tok, SpaceDecl, "space").space
        self.expect("=")
        self.expect("cellwise")
        open_tok = self.expect("{")
        overrides, point_overrides, tail, tail_tok = {}, {}, None, None
        while True:
            if self.at("default"):
                if tail is not None:
                    raise _Fail(self.tok, "default given twice")
                tail_tok = self.advance()
                tail = self.tail(space)
            elif self.at("at"):
                self.advance()
                n, nt = self.integer("an index")
                if n < 1:
                    raise _Fail(nt, "indices start at 1")
                if n in point_overrides:
                    raise _Fail(nt, f"index {n} assigned twice")
                self.expect("->")
                point_overrides[n] = self.point(space)
            elif self.tok.kind == "INT":
                j, jt = self.integer()
                if j < 1:
                    raise _Fail(jt, "cell indices start at 1")
                if j in overrides:
                    raise _Fail(jt, f"cell {j} assigned twice")
                self.expect("->")
                overrides[j] = self.point(space)
            else:
                raise _Fail(self.tok, f"expected a cell entry or default, found {_describe(self.tok)}")
            if self.at(";"):
                self.advance()
                if self.at("}"):
                    break
                continue
            break
        self.close(open_tok, "}")
        if tail is None:
            raise _Fail(open_tok, "sequence needs a default tail")
        try:
            seq = CellSequence(space, tail, overrides, point_overrides)
        except (mls.PointError, ValueError) as e:
            raise _Fail(tail_tok, str(e)) from None
        self.declare(name, SequenceDecl(name.text, sp_tok.text, seq))

    def tail(self, space: Space):
        kw = self.word("a tail rule")
        if kw.text == "const":
            return ConstPoint(self.point(space))
        if kw.text == "integer-ramp":
            if not space.in_sort(mls.IntegerPt(2)):
                raise _Fail(kw, f"integer-ramp leaves the points of {space.kind}")
            return IntegerRamp()
        if kw.text == "approach":
            pt_tok = self.tok
            target = self.point(space)
            if space.isolation_radius(target) is not None or space.ball_pick(target, Fraction(1)) is None:
                raise _Fail(pt_tok, f"{space.kind} cannot approach {target.render()}")
            return HarmonicApproach(target)
        raise _Fail(kw, "unknown tail rule")

    # set expressions: ! > & > ^ > |
    def set_expr(self, min_prec: int = 1) -> SetExpr:
        left = self.set_unary()
        while self.tok.kind == "SYM" and self.tok.text in setexpr.PRECEDENCE:
            op = self.tok.text
            prec = setexpr.PRECEDENCE[op]
            if prec < min_prec:
                break
            self.advance()
            right = self.set_expr(prec + 1)
            left = setexpr.BinOp(op, left, right)
        return left

    def set_unary(self) -> SetExpr:
        if self.at("!"):
            self.advance()
            return setexpr.Not(self.set_unary())
        if self.at("("):
            opener = self.advance()
            e = self.set_expr()
            self.close(opener, ")")
            return e
        t = self.word("a set expression")
        if t.text == "D":
            opener = self.expect("(")
            j, jt = self.integer("a cell index")
            if j < 1:
                raise _Fail(jt, "cell indices start at 1")
            self.close(opener, ")")
            return setexpr.Cell(j)
        if t.text == "finite":
            opener = self.expect("{")
            elems = []
            if not self.at("}"):
                while True:
                    n, nt = self.integer("an element")
                    if n < 1:
                        raise _Fail(nt, "elements start at 1")
                    elems.append(n)
                    if not self.at(","):
                        break
                    self.advance()
            self.close(opener, "}")
            return setexpr.Finite(tuple(sorted(set(elems))))
        if t.text == "all":
            return setexpr.Everything()
        if t.text == "empty":
            return setexpr.Nothing()
        self.resolve(t, SetDecl, "set")
        return setexpr.Ref(t.text)

    def query(self) -> Query:
        kt = self.word("a query kind")
        kind = kt.text
        if kind not in QUERY_KINDS:
            raise _Fail(kt, "unknown query kind")
        if kind == "density":
            return Query(kind, expr=self.set_expr())
        if kind == "member":
            it = self.word("an ideal name")
            self.resolve(it, IdealDecl, "ideal")
            return Query(kind, ideal=it.text, expr=self.set_expr())
        if kind == "axioms":
            st = self.word("a space name")
            self.resolve(st, SpaceDecl, "space")
            level = None
            if self.at("level"):
                self.advance()
                lt = self.word("an axiom level")
                if lt.text not in LEVELS:
                    raise _Fail(lt, "unknown axiom level")
                level = lt.text
            return Query(kind, space=st.text, level=level)
        if kind == "separate":
            st = self.word("a space name")
            space = self.resolve(st, SpaceDecl, "space").space
            self.expect("at")
            return Query(kind, space=st.text, point=self.point(space))
        sq = self.word("a sequence name")
        space = self.resolve(sq, SequenceDecl, "sequence").sequence.space
        self.expect("to")
        pt = self.point(space)
        k = None
        if kind == "extract":
            self.expect("k")
            k, kt2 = self.integer("a count")
            if k < 1:
                raise _Fail(kt2, "count must be at least 1")
        ideal = None
        if self.at("under"):
            ut = self.advance()
            if kind in ("converges", "stat-converges"):
                raise _Fail(ut, f"{kind} takes no ideal")
            it = self.word("an ideal name")
            self.resolve(it, IdealDecl, "ideal")
            ideal = it.text
        elif kind in UNDER_REQUIRED:
            raise _Fail(self.tok, f"{kind} needs 'under <ideal>'")
        return Query(kind, seq=sq.text, point=pt, k=k, ideal=ideal)


def parse(text: str) -> Scenario:
    """Parse scenario source; raises :class:`ScenarioError` listing every error."""
    return _Parser(text).parse()


def parse_set_expr(text: str) -> SetExpr:
    """Parse a standalone set expression (no named sets)."""
    try:
        p = _Parser(text)
        p.reject_bad_characters()
        e = p.set_expr()
        if p.tok.kind not in ("NL", "EOF"):
            raise _Fail(p.tok, "unexpected trailing input")
    except _Fail as f:
        raise ScenarioError([f.error]) from None
    return e


# -- execution ------------------------------------------------------------------------

@dataclass(frozen=True)
class QueryRecord:
    query: str
    outcome: str  # holds | fails | unknown | answered | error
    certificate: dict | None = None
    horizon: int | None = None
    description: str = ""
    values: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "query": self.query,
            "outcome": self.outcome,
            "certificate": self.certificate,
            "horizon": self.horizon,
            "description": self.description,
            "values": exact(self.values),
        }


@dataclass(frozen=True)
class Report:
    version: str
    digest: str
    settings: dict
    records: tuple[QueryRecord, ...]

    def to_json(self) -> dict:
        return {
            "tool": "ilconv",
            "version": self.version,
            "scenario_digest": self.digest,
            "settings": self.settings,
            "queries": [r.to_json() for r in self.records],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def render_text(self) -> str:
        rows = [(str(i), r.outcome, r.query) for i, r in enumerate(self.records, 1)]
        w0 = max((len(a) for a, _, _ in rows), default=1)
        w1 = max((len(b) for _, b, _ in rows), default=1)
        w2 = max((len(c) for _, _, c in rows), default=1)
        out = [f"scenario {self.digest[:12]}  (jprobe {self.settings['jprobe']}, horizon {self.settings['horizon']})"]
        for (i, oc, q), r in zip(rows, self.records):
            line = f"{i:>{w0}}  {oc:<{w1}}  {q:<{w2}}"
            if r.description:
                line += f"  : {r.description}"
            out.append(line.rstrip())
        return "\n".join(out) + "\n"

    @property
    def exit_code(self) -> int:
        outcomes = {r.outcome for r in self.records}
        if "error" in outcomes:
            return 4
        if outcomes & {"fails", "unknown"}:
            return 2
        return 0


def _from_verdict(text: str, v: Verdict, **extra) -> QueryRecord:
    values = dict(v.values)
    values.update(extra)
    return QueryRecord(text, v.outcome.value, v.certificate.to_json(), v.horizon, v.description, values)


def digest(sc: Scenario) -> str:
    return hashlib.sha256(sc.render().encode("utf-8")).hexdigest()


def _run_query(sc: Scenario, q: Query, env: dict, j_probe: int, horizon: int) -> QueryRecord:
    text = q.render()
    if q.kind == "density":
        S = setexpr.evaluate(q.expr, env)
        bits = natset.prefix_mask(S, horizon)[1:]
        emp = oracle.empirical_density(bits, horizon)
        return QueryRecord(
            text, "answered", None, horizon, f"density {natset.density(S)}",
            {"exact": natset.density(S), "empirical": emp, "set": S},
        )
    if q.kind == "member":
        I = sc.lookup(IdealDecl, q.ideal).ideal
        S = setexpr.evaluate(q.expr, env)
        m = member(I, S)
        return QueryRecord(text, "answered", None, None, f"{'in' if m else 'not in'} {I.name}", {"member": m, "set": S})
    if q.kind == "axioms":
        space = sc.lookup(SpaceDecl, q.space).space
        level = q.level or "metric-like"
        return _from_verdict(text, mls.AXIOM_LEVELS[level](space, space.sample()), level=level)
    if q.kind == "separate":
        space = sc.lookup(SpaceDecl, q.space).space
        seq = build_separating_sequence(space, q.point, j_probe=j_probe)
        refute = i_star_refute(seq, q.point, j_probe=j_probe)
        picks = [seq.cell_value(j) for j in range(1, 6)]
        return QueryRecord(
            text, "holds", refute.certificate.to_json(), None,
            "constructed sequence ideal-converges but is refuted for ideal-star",
            {"sequence": seq.tail.render(), "v_j": picks, "i_converges": "holds", "i_star_refute": "fails"},
        )
    seq = sc.lookup(SequenceDecl, q.seq).sequence
    I = sc.lookup(IdealDecl, q.ideal).ideal if q.ideal else None
    x0 = q.point
    if q.kind == "converges":
        return _from_verdict(text, classical_converges(seq, x0, j_probe))
    if q.kind == "stat-converges":
        return _from_verdict(text, statistically_converges(seq, x0, j_probe))
    if q.kind == "i-converges":
        return _from_verdict(text, i_converges(seq, x0, I, j_probe))
    if q.kind == "i-star-converges":
        return _from_verdict(text, i_star_converges(seq, x0, I, j_probe))
    if q.kind == "extract":
        idx = extract_subsequence(seq, x0, q.k, I, j_probe)
        devs = [deviation(seq, x0, n) for n in idx]
        return QueryRecord(text, "answered", None, None, f"{len(idx)} indices", {"indices": idx, "deviations": devs})
    if q.kind == "refute-subsequence":
        w = refutation_subsequence(seq, x0, I, j_probe)
        if w is None:
            return QueryRecord(text, "holds", None, None, f"{I.name}-convergent; nothing to refute")
        return QueryRecord(
            text, "fails", {"kind": "symbolic-set", "set": w.S.to_expr()}, None,
            f"every term on S deviates by at least {w.eps0}; S not in {I.name}", {"eps0": w.eps0},
        )
    if q.kind == "ap-promote":
        return _from_verdict(text, ap_promote(seq, x0, I, j_probe, horizon))
    if q.kind == "isolated-promote":
        return _from_verdict(text, isolated_promote(seq, x0, I, j_probe))
    raise AssertionError(q.kind)


def run(sc: Scenario, j_probe: int = J_PROBE, horizon: int = HORIZON) -> Report:
    """Execute the queries in order; a refusal becomes an error record, never an abort."""
    env: dict = {}
    for d in sc.declarations:
        if isinstance(d, SetDecl):
            env[d.name] = setexpr.evaluate(d.expr, env)
    records = []
    for q in sc.queries:
        try:
            rec = _run_query(sc, q, env, j_probe, horizon)
        except Exception as e:  # noqa: BLE001 - every refusal is reported, none aborts
            reason = getattr(e, "reason", type(e).__name__)
            rec = QueryRecord(q.render(), "error", None, None, str(e), {"reason": reason})
        records.append(rec)
    return Report(__version__, digest(sc), {"horizon": horizon, "jprobe": j_probe}, tuple(records))
