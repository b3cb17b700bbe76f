"""Terms and statements over FLe-algebras: syntax tree, parser, printer, evaluation.

Grammar (ASCII)::

    stmt  := atom {"," atom} "|-" atom  |  atom
    atom  := term ("=" | "<=") term
    term  := arrows; binding from loosest to tightest:
             -> <-> cm cp cmd cpd   (right associative)
             \\/                     (left)
             /\\                     (left)
             *                      (left)
             ~t  dm(t)  delta(t)  bdiam(t)  0  1  variables  (t)

``cm``/``cp`` are the connexive arrows built from double negation,
``cmd``/``cpd`` the same arrows built from a bound unary map.  ``1 <= t`` at
the top of an atom is read as an assertion of ``t``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import ClassVar, Iterator, Optional, Union

import numpy as np

from .algebra import FleAlgebra, UnaryMap, cnx_meet_table, cnx_prod_table
from .errors import ParseError, UnboundDelta, UnboundVariable, UnknownIdentifier, UnknownName
from .report import CheckReport, failed, passed

# ---------------------------------------------------------------- syntax tree


@dataclass(frozen=True)
class Term:
    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class One(Term):
    pass


@dataclass(frozen=True)
class Unary(Term):
    arg: Term
    keyword: ClassVar[str] = ""


@dataclass(frozen=True)
class Neg(Unary):
    keyword: ClassVar[str] = "~"


@dataclass(frozen=True)
class Dm(Unary):
    keyword: ClassVar[str] = "dm"


@dataclass(frozen=True)
class Delta(Unary):
    keyword: ClassVar[str] = "delta"


@dataclass(frozen=True)
class BDiamond(Unary):
    keyword: ClassVar[str] = "bdiam"


@dataclass(frozen=True)
class Binary(Term):
    left: Term
    right: Term
    keyword: ClassVar[str] = ""
    prec: ClassVar[int] = 0


@dataclass(frozen=True)
class Prod(Binary):
    keyword: ClassVar[str] = "*"
    prec: ClassVar[int] = 4


@dataclass(frozen=True)
class Meet(Binary):
    keyword: ClassVar[str] = "/\\"
    prec: ClassVar[int] = 3


@dataclass(frozen=True)
class Join(Binary):
    keyword: ClassVar[str] = "\\/"
    prec: ClassVar[int] = 2


@dataclass(frozen=True)
class Arrow(Binary):
    keyword: ClassVar[str] = "->"
    prec: ClassVar[int] = 1


@dataclass(frozen=True)
class BiArrow(Binary):
    keyword: ClassVar[str] = "<->"
    prec: ClassVar[int] = 1


@dataclass(frozen=True)
class CnxMeet(Binary):
    keyword: ClassVar[str] = "cm"
    prec: ClassVar[int] = 1


@dataclass(frozen=True)
class CnxProd(Binary):
    keyword: ClassVar[str] = "cp"
    prec: ClassVar[int] = 1


@dataclass(frozen=True)
class CnxMeetDelta(Binary):
    keyword: ClassVar[str] = "cmd"
    prec: ClassVar[int] = 1


@dataclass(frozen=True)
class CnxProdDelta(Binary):
    keyword: ClassVar[str] = "cpd"
    prec: ClassVar[int] = 1


UNARY = {c.keyword: c for c in (Neg, Dm, Delta, BDiamond)}
BINARY = {c.keyword: c for c in (Prod, Meet, Join, Arrow, BiArrow, CnxMeet, CnxProd, CnxMeetDelta, CnxProdDelta)}
ARROW_KINDS = {"res": Arrow, "cm": CnxMeet, "cp": CnxProd, "cmd": CnxMeetDelta, "cpd": CnxProdDelta}


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Inequation:
    lhs: Term
    rhs: Term

    def __str__(self):
        return f"{self.lhs} <= {self.rhs}"


@dataclass(frozen=True)
class Assertional:
    term: Term

    @property
    def lhs(self) -> Term:
        return One()

    @property
    def rhs(self) -> Term:
        return self.term

    def __str__(self):
        return f"1 <= {self.term}"


Atom = Union[Identity, Inequation, Assertional]


@dataclass(frozen=True)
class QuasiIdentity:
    premises: tuple
    conclusion: Atom

    def __str__(self):
        return ", ".join(str(p) for p in self.premises) + f" |- {self.conclusion}"


Statement = Union[Identity, Inequation, Assertional, QuasiIdentity]


def atoms(stmt: Statement) -> tuple:
    if isinstance(stmt, QuasiIdentity):
        return (*stmt.premises, stmt.conclusion)
    return (stmt,)


def subterms(t: Term) -> Iterator[Term]:
    """Post-order traversal."""
    if isinstance(t, Unary):
        yield from subterms(t.arg)
    elif isinstance(t, Binary):
        yield from subterms(t.left)
        yield from subterms(t.right)
    yield t


def variables(x) -> list:
    found = set()
    terms = [x] if isinstance(x, Term) else [s for a in atoms(x) for s in (a.lhs, a.rhs)]
    for t in terms:
        found.update(s.name for s in subterms(t) if isinstance(s, Var))
    return sorted(found)


# ---------------------------------------------------------------- printing


def show(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Neg):
        inner = show(t.arg)
        return "~" + (f"({inner})" if isinstance(t.arg, Binary) else inner)
    if isinstance(t, Unary):
        return f"{t.keyword}({show(t.arg)})"
    left, right = show(t.left), show(t.right)
    lp = t.left.prec if isinstance(t.left, Binary) else 99
    rp = t.right.prec if isinstance(t.right, Binary) else 99
    right_assoc = t.prec == 1
    if lp < t.prec or (lp == t.prec and right_assoc):
        left = f"({left})"
    if rp < t.prec or (rp == t.prec and not right_assoc):
        right = f"({right})"
    return f"{left} {t.keyword} {right}"


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(<->|->|<=|\|-|/\\|\\/|[~*(),=])|([a-z][a-z0-9_]*)|([0-9]+))")


def tokenize(text: str) -> list:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastindex)
        if m.group(3) is not None and m.group(3) not in ("0", "1"):
            raise UnknownIdentifier(f"numeral {m.group(3)!r} is not a constant", start)
        tokens.append((m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("<eof>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def advance(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        if self.peek() != tok:
            raise ParseError(f"expected {tok!r}, found {self.peek()!r}", self.pos())
        self.advance()

    def statement(self) -> Statement:
        first = [self.atom()]
        while self.peek() == ",":
            self.advance()
            first.append(self.atom())
        if self.peek() == "|-":
            self.advance()
            conclusion = self.atom()
            stmt = QuasiIdentity(tuple(first), conclusion)
        elif len(first) > 1:
            raise ParseError("premise list without '|-'", self.pos())
        else:
            stmt = first[0]
        if self.peek() != "<eof>":
            raise ParseError(f"unexpected {self.peek()!r}", self.pos())
        return stmt

    def atom(self) -> Atom:
        lhs = self.term(1)
        op = self.peek()
        if op not in ("=", "<="):
            raise ParseError(f"expected '=' or '<=', found {op!r}", self.pos())
        self.advance()
        rhs = self.term(1)
        if op == "=":
            return Identity(lhs, rhs)
        if lhs == One():
            return Assertional(rhs)
        return Inequation(lhs, rhs)

    def term(self, min_prec: int) -> Term:
        left = self.unary()
        while self.peek() in BINARY and BINARY[self.peek()].prec >= min_prec:
            cls = BINARY[self.advance()]
            right = self.term(cls.prec if cls.prec == 1 else cls.prec + 1)
            left = cls(left, right)
        return left

    def unary(self) -> Term:
        tok, at = self.peek(), self.pos()
        if tok == "~":
            self.advance()
            return Neg(self.unary())
        if tok == "(":
            self.advance()
            t = self.term(1)
            self.expect(")")
            return t
        if tok == "0":
            self.advance()
            return Zero()
        if tok == "1":
            self.advance()
            return One()
        if tok in UNARY:
            self.advance()
            self.expect("(")
            t = self.term(1)
            self.expect(")")
            return UNARY[tok](t)
        if tok in BINARY or tok in ("=", "<=", "|-", ",", ")", "<eof>"):
            raise ParseError(f"expected a term, found {tok!r}", at)
        self.advance()
        if self.peek() == "(":
            raise UnknownIdentifier(f"unknown function {tok!r}", at)
        return Var(tok)


def parse(text: str) -> Statement:
    return _Parser(text).statement()


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term(1)
    if p.peek() != "<eof>":
        raise ParseError(f"unexpected {p.peek()!r}", p.pos())
    return t


# ---------------------------------------------------------------- expansion


def expand(t: Term) -> Term:
    """Rewrite derived connectives into the primitive signature."""
    if isinstance(t, (Var, Zero, One)):
        return t
    if isinstance(t, Unary):
        a = expand(t.arg)
        if isinstance(t, Neg):
            return Arrow(a, Zero())
        if isinstance(t, Dm):
            return Arrow(Arrow(a, Zero()), Zero())
        return type(t)(a)
    s, u = expand(t.left), expand(t.right)
    if isinstance(t, BiArrow):
        return Meet(Arrow(s, u), Arrow(u, s))
    dms = Arrow(Arrow(s, Zero()), Zero())
    if isinstance(t, CnxMeet):
        return Meet(Arrow(s, u), Arrow(u, dms))
    if isinstance(t, CnxProd):
        return Prod(Arrow(s, u), Arrow(u, dms))
    if isinstance(t, CnxMeetDelta):
        return Meet(Arrow(s, u), Arrow(u, Delta(s)))
    if isinstance(t, CnxProdDelta):
        return Prod(Arrow(s, u), Arrow(u, Delta(s)))
    return type(t)(s, u)


def expand_statement(stmt: Statement) -> Statement:
    if isinstance(stmt, QuasiIdentity):
        return QuasiIdentity(tuple(expand_statement(p) for p in stmt.premises), expand_statement(stmt.conclusion))
    if isinstance(stmt, Assertional):
        return Assertional(expand(stmt.term))
    return type(stmt)(expand(stmt.lhs), expand(stmt.rhs))


# ---------------------------------------------------------------- evaluation


def _table(m) -> Optional[np.ndarray]:
    if m is None:
        return None
    return m.table if isinstance(m, UnaryMap) else np.asarray(m, dtype=np.intp)


class TableBackend:
    """Vectorised evaluation on a finite algebra by table lookups."""

    def __init__(self, alg: FleAlgebra, delta=None, bdiamond=None):
        self.alg = alg
        self.delta = _table(delta)
        self.bdiamond = _table(bdiamond) if bdiamond is not None else self.delta
        self._cnx = {}

    def const(self, which, shape):
        return np.full(shape, self.alg.zero if which == 0 else self.alg.unit, dtype=np.intp)

    def unary(self, t, a):
        if isinstance(t, Neg):
            return self.alg.neg_table[a]
        if isinstance(t, Dm):
            return self.alg.dm_table[a]
        table = self.delta if isinstance(t, Delta) else self.bdiamond
        if table is None:
            raise UnboundDelta(f"{t.keyword}(...) needs a bound unary map")
        return table[a]

    def cnx(self, kind):
        if kind not in self._cnx:
            if kind in (CnxMeetDelta, CnxProdDelta) and self.delta is None:
                raise UnboundDelta(f"'{kind.keyword}' needs a bound unary map")
            d = self.delta if kind in (CnxMeetDelta, CnxProdDelta) else None
            f = cnx_meet_table if kind in (CnxMeet, CnxMeetDelta) else cnx_prod_table
            self._cnx[kind] = f(self.alg, d)
        return self._cnx[kind]

    def binary(self, t, a, b):
        alg = self.alg
        if isinstance(t, Meet):
            return alg.meet[a, b]
        if isinstance(t, Join):
            return alg.join[a, b]
        if isinstance(t, Prod):
            return alg.prod[a, b]
        if isinstance(t, Arrow):
            return alg.arrow[a, b]
        if isinstance(t, BiArrow):
            return alg.meet[alg.arrow[a, b], alg.arrow[b, a]]
        return self.cnx(type(t))[a, b]

    def leq(self, a, b):
        return self.alg.leq[a, b]

    def label(self, v) -> Union[int, str]:
        return int(v)


def evaluate_with(backend, t: Term, env: dict, shape=()):
    if isinstance(t, Var):
        if t.name not in env:
            raise UnboundVariable(t.name)
        return env[t.name]
    if isinstance(t, Zero):
        return backend.const(0, shape)
    if isinstance(t, One):
        return backend.const(1, shape)
    if isinstance(t, Unary):
        return backend.unary(t, evaluate_with(backend, t.arg, env, shape))
    return backend.binary(t, evaluate_with(backend, t.left, env, shape), evaluate_with(backend, t.right, env, shape))


def evaluate(alg: FleAlgebra, t: Term, assignment: dict, delta=None, bdiamond=None) -> int:
    env = {k: np.intp(alg.element(v)) for k, v in assignment.items()}
    return int(evaluate_with(TableBackend(alg, delta, bdiamond), t, env))


def atom_holds(backend, atom: Atom, env: dict, shape=()):
    lhs = evaluate_with(backend, atom.lhs, env, shape)
    rhs = evaluate_with(backend, atom.rhs, env, shape)
    if isinstance(atom, Identity):
        return np.asarray(lhs == rhs)
    return np.asarray(backend.leq(lhs, rhs))


def holds_mask(backend, stmt: Statement, env: dict, shape=()) -> np.ndarray:
    """Boolean array: the statement holds at each assignment in ``env``."""
    if isinstance(stmt, QuasiIdentity):
        premise = np.ones(shape, dtype=bool)
        for p in stmt.premises:
            premise &= atom_holds(backend, p, env, shape)
        return ~premise | atom_holds(backend, stmt.conclusion, env, shape)
    return np.broadcast_to(atom_holds(backend, stmt, env, shape), shape)


def trace_at(backend, stmt: Statement, env: dict) -> dict:
    out = {}
    for a in atoms(stmt):
        for side in (a.lhs, a.rhs):
            for s in subterms(side):
                if not isinstance(s, (Var, Zero, One)):
                    out.setdefault(str(s), backend.label(evaluate_with(backend, s, env)))
    return out


def check_grid(backend, stmt: Statement, domain: np.ndarray) -> CheckReport:
    """Check ``stmt`` over all assignments of its variables into ``domain``.

    Assignments are enumerated lexicographically (variables sorted by name,
    values in domain order); a failure reports the least one.
    """
    names = variables(stmt)
    k = len(names)
    grid = domain[np.indices((len(domain),) * k).reshape(k, -1)] if k else np.zeros((0, 1), dtype=domain.dtype)
    shape = (grid.shape[1],)
    env = {name: grid[i] for i, name in enumerate(names)}
    ok = holds_mask(backend, stmt, env, shape)
    if ok.all():
        return passed(statement=stmt)
    first = int(np.argmin(ok))
    point = {name: grid[i][first] for i, name in enumerate(names)}
    witness = {name: backend.label(v) for name, v in point.items()}
    return failed(witness, statement=stmt, trace=trace_at(backend, stmt, point))


def check(alg: FleAlgebra, stmt: Statement, delta=None, bdiamond=None) -> CheckReport:
    if isinstance(stmt, str):
        stmt = parse(stmt)
    backend = TableBackend(alg, delta, bdiamond)
    return check_grid(backend, stmt, np.arange(alg.size, dtype=np.intp))


# ---------------------------------------------------------------- named statements

_ARROW_TEMPLATES = {
    "AT": "1 <= ~(x A ~x)",
    "AT'": "1 <= ~(~x A x)",
    "BT": "1 <= (x A y) A ~(x A ~y)",
    "BT'": "1 <= (x A ~y) A ~(x A y)",
    "BTw": "1 <= x A y |- 1 <= ~(x A ~y)",
    "BTw'": "1 <= x A ~y |- 1 <= ~(x A y)",
    "BT*": "1 <= (x A y) A ((y A z) A ~(x A ~z))",
    "P1": "1 <= x A ~~x",
    "P2": "~~(x A y) = ~(x A ~y)",
    "P3": "~(x A y) = x A ~y",
    "REFL": "1 <= x A x",
    "SYM": "x A y = y A x",
}

_PLAIN = {
    "PC": "x /\\ ~x <= 0",
    "SPC": "~x /\\ ~(x -> y) <= 0",
    "GLV_A": "~(x * y) = ~(x /\\ y)",
    "GLV_B": "1 <= dm(dm(x) -> x)",
    "GLV_B_ALT": "~(x -> y) = ~(~x \\/ y)",
    "EFQ_Q": "1 <= 0 |- 1 <= x",
    "TOP_DM1": "x <= dm(1)",
    "A1_BDIAMOND": "bdiam(~x) <= ~bdiam(x)",
    "A2_BDIAMOND": "~~x <= bdiam(x)",
    "INVOLUTIVE": "~~x = x",
    "INTEGRAL": "x <= 1",
    "ZERO_BOUNDED": "0 <= x",
    "ZERO_GREATEST": "x <= 0",
    "ONE_LEQ_ZERO": "1 <= 0",
    "NEG_CONSTANT": "~x = ~y",
    "BOOL_PROD": "x * y = x /\\ y",
    "BOOL_ARROW": "x -> y = ~x \\/ y",
    "RL1": "x * (y \\/ z) = x * y \\/ x * z",
    "RL2": "x -> y /\\ z = (x -> y) /\\ (x -> z)",
    "RL3": "x \\/ y -> z = (x -> z) /\\ (y -> z)",
    "RL4": "1 -> x = x",
    "RL5": "x -> (y -> z) = y * x -> z",
    "DM1": "x <= dm(x)",
    "DM2": "x <= y |- dm(x) <= dm(y)",
    "DM3": "dm(dm(x)) = dm(x)",
    "DM4": "dm(x) * dm(y) <= dm(x * y)",
    "DM5": "dm(x) /\\ dm(y) = dm(dm(x) /\\ dm(y))",
    "DM6A": "dm(x) -> dm(y) = x -> dm(y)",
    "DM6B": "x -> dm(y) = dm(x -> dm(y))",
    "WHEN_DM_INT": "x -> y = x cm (dm(x) /\\ y)",
}

REGISTRY = tuple(_ARROW_TEMPLATES) + tuple(_PLAIN)


def named_statement(name: str, arrow: str = "cm") -> Statement:
    """Statement from the registry, with the arrow kind substituted."""
    if name in _ARROW_TEMPLATES:
        if arrow not in ARROW_KINDS:
            raise UnknownName(f"unknown arrow kind {arrow!r}")
        return parse(re.sub(r"\bA\b", ARROW_KINDS[arrow].keyword, _ARROW_TEMPLATES[name]))
    if name in _PLAIN:
        return parse(_PLAIN[name])
    raise UnknownName(f"no statement named {name!r}")


def arrow_term(kind: str, left: Term, right: Term) -> Term:
    return ARROW_KINDS[kind](left, right)
