"""Named example algebras with their expected verdicts.

Each fixture carries a list of :class:`Expectation` records.  Loading a
fixture only builds (and thereby validates) the algebra; :func:`verify_fixture`
re-derives every expected verdict and witness.

Labels use ``⊥`` for the lattice bottom; ``bot`` is accepted as an alias
when naming elements.  In ``z(n)`` the constant written ``1`` is the integer
0 (the monoid unit) and the constant ``0`` is the integer ``n``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Optional, Union

import numpy as np

from .algebra import FleAlgebra, UnaryMap, algebra_to_json, nucleus_image, validate
from .errors import ExpectationMismatch, UnknownFixture
from .integers import ComputableAlgebra, check_window, eval_computable
from .properties import (
    classify,
    delta_forcing,
    holds,
    increasing_tables,
    non_symmetry_witness,
    proto_connexive,
    statement,
    strong_connexivity_refutation,
    weakly_connexive,
)
from .report import CheckReport, passed
from .terms import evaluate, parse_term

BOT = "⊥"


@dataclass(frozen=True)
class Expectation:
    """One expected verdict.

    ``kind`` is one of ``stmt`` (registry statement), ``flag``
    (classification flag), ``proto``/``weak`` (connexivity for ``arrow``),
    ``ns`` (non-symmetry present), ``eval`` (term value at ``at``) or
    ``custom`` (named procedure in the fixture's ``customs``).
    """

    kind: str
    target: str
    expected: Any
    arrow: str = "cm"
    witness: Optional[dict] = None
    at: Optional[dict] = None

    def describe(self) -> str:
        if self.kind in ("stmt", "proto", "weak", "ns", "window"):
            return f"{self.kind}:{self.target}[{self.arrow}]"
        return f"{self.kind}:{self.target}"


@dataclass
class Fixture:
    name: str
    algebra: Union[FleAlgebra, ComputableAlgebra]
    expected: list
    provenance: str
    customs: dict = field(default_factory=dict)
    delta: Optional[list] = None
    notes: str = ""

    @property
    def finite(self) -> bool:
        return isinstance(self.algebra, FleAlgebra)

    def to_json(self) -> dict:
        if not self.finite:
            return {"name": self.name, "computable": f"Z({self.algebra.zero_param})", "provenance": self.provenance}
        out = {**algebra_to_json(self.algebra), "name": self.name, "provenance": self.provenance}
        if self.delta is not None:
            out["delta"] = self.delta
        return out


# ---------------------------------------------------------------- builders


def _chain_leq(n: int) -> np.ndarray:
    return np.triu(np.ones((n, n), dtype=bool))


def fig1_algebra() -> FleAlgebra:
    """The chain ⊥ < 0 < 1, integral, with 0·0 = 0 and 0·⊥ = ⊥."""
    prod = [[0, 0, 0], [0, 1, 1], [0, 1, 2]]
    return FleAlgebra.build(prod, 2, 1, leq=_chain_leq(3), labels=[BOT, "0", "1"])


FIG1_ARROW = [[2, 2, 2], [0, 2, 2], [0, 1, 2]]


def btstar_six_algebra() -> FleAlgebra:
    """Carrier ⊥ < 0 < b, c < a < 1 with the stated product laws."""
    labels = [BOT, "0", "b", "c", "a", "1"]
    bot, zero, b, c, a, one = range(6)
    le = np.eye(6, dtype=bool)
    for x, y in ((bot, zero), (zero, b), (zero, c), (b, a), (c, a), (a, one)):
        le[x, y] = True
    for _ in range(6):
        le = le | ((le.astype(int) @ le.astype(int)) > 0)
    prod = np.zeros((6, 6), dtype=np.intp)
    for x in range(6):
        for y in range(x, 6):
            if bot in (x, y):
                v = bot
            elif x == one or y == one:
                v = y if x == one else x
            elif x == y:
                v = bot if x == zero else x
            elif zero in (x, y):
                v = bot
            elif x == a or y == a:
                v = y if x == a else x
            else:  # b·c
                v = bot
            prod[x, y] = prod[y, x] = v
    return FleAlgebra.build(prod, one, zero, leq=le, labels=labels)


def delta_four_algebra() -> FleAlgebra:
    """Chain ⊥ < 1 < a < 0, idempotent product, ⊥ absorbing, 0·x = 0 for x ≠ ⊥."""
    bot, one, a, zero = range(4)
    prod = np.zeros((4, 4), dtype=np.intp)
    for x in range(4):
        for y in range(4):
            prod[x, y] = bot if bot in (x, y) else max(x, y)
    return FleAlgebra.build(prod, one, zero, leq=_chain_leq(4), labels=[BOT, "1", "a", "0"])


DELTA_FOUR_DELTA = [3, 3, 2, 3]  # a ↦ a, everything else ↦ 0


def heyting_chain_algebra(k: int) -> FleAlgebra:
    """The ``k``-element Heyting chain: product is meet, 0 is the bottom."""
    if k < 1:
        raise UnknownFixture("heyting_chain needs k >= 1")
    meet = np.minimum.outer(np.arange(k), np.arange(k))
    if k == 1:
        labels = ["1"]
    else:
        labels = [BOT] + [f"a{i}" for i in range(1, k - 1)] + ["1"]
    return FleAlgebra.build(meet, k - 1, 0, leq=_chain_leq(k), labels=labels)


def heyting_star_algebra() -> FleAlgebra:
    """Three-element Heyting chain ⊥ < a < 1 with the constant 0 moved to a."""
    base = heyting_chain_algebra(3)
    return FleAlgebra.build(base.prod, 2, 1, leq=base.leq, labels=[BOT, "0", "1"])


def boolean_algebra(m: int) -> FleAlgebra:
    """The powerset Boolean algebra with ``m = 2**k`` elements."""
    k = int(m).bit_length() - 1
    if m < 1 or 2**k != m:
        raise UnknownFixture(f"boolean algebra size must be a power of two, got {m}")
    idx = np.arange(m)
    meet = idx[:, None] & idx[None, :]
    leq = meet == idx[:, None]
    labels = ["{" + ",".join(str(i) for i in range(k) if e >> i & 1) + "}" for e in idx]
    if m == 2:
        labels = ["0", "1"]
    return FleAlgebra.build(meet, m - 1, 0, leq=leq, labels=labels)


# ---------------------------------------------------------------- expectations

E = Expectation


def _fig1() -> Fixture:
    alg = fig1_algebra()
    bt = "(x cm y) cm ~(x cm ~y)"
    return Fixture(
        "fig1_pc_not_spc",
        alg,
        [
            E("custom", "arrow_table_matches_figure", True),
            E("stmt", "PC", "pass"),
            E("stmt", "SPC", "fail", witness={"x": "0", "y": BOT}),
            E("eval", "~x /\\ ~(x -> y)", "1", at={"x": "0", "y": BOT}),
            E("eval", "~x", "1", at={"x": "0"}),
            E("eval", "dm(x)", "0", at={"x": "0"}),
            E("stmt", "AT", "pass"),
            E("stmt", "BT", "fail", witness={"x": "0", "y": BOT}),
            E("eval", bt, "0", at={"x": "0", "y": BOT}),
            E("flag", "integral", True),
            E("flag", "zero_bounded", False),
            E("flag", "glivenko_ba", False),
            E("flag", "spc", False),
            E("custom", "dm_image_is_boolean2", True),
        ],
        "3-chain with 1 as unit and top: pseudo-complemented but not strongly so",
        customs={
            "arrow_table_matches_figure": lambda a: a.arrow.tolist() == FIG1_ARROW,
            "dm_image_is_boolean2": lambda a: _is_boolean(nucleus_image(a, a.dm)) and nucleus_image(a, a.dm).size == 2,
        },
    )


def _is_boolean(a: FleAlgebra) -> bool:
    return all(holds(a, n).passed for n in ("INTEGRAL", "INVOLUTIVE", "PC"))


def _z(n: int) -> Fixture:
    model = ComputableAlgebra(n)
    exp = [E("window", "INVOLUTIVE", "pass")]
    if n < 0:
        exp += [
            E("window", "AT", "fail", arrow="cp"),
            E("eval", "~(x cp ~x)", n, at={"x": 0}),
            E("eval", "~(x cp ~x)", n, at={"x": 3}),
        ]
    if n != 0:
        exp += [
            E("window", "P2", "fail", arrow="cp"),
            E("eval", "~(x cp ~y)", n, at={"x": 0, "y": 0}),
            E("eval", "dm(x cp y)", 0, at={"x": 0, "y": 0}),
        ]
    if n == 0:
        exp += [
            E("window", "P2", "pass", arrow="cp"),
            E("window", "BT", "fail", arrow="cm"),
            E("eval", "(x cm y) cm ~(x cm ~y)", -2, at={"x": 0, "y": 1}),
        ]
    exp += [E("eval", "x cp y", 0, at={"x": 2, "y": -3})] if n == 0 else []
    return Fixture(
        f"z({n})",
        model,
        exp,
        "integers with min, max, addition and y - x as residual, pointed at n; window-checked",
        customs={},
    )


def _btstar_six() -> Fixture:
    alg = btstar_six_algebra()
    return Fixture(
        "btstar_six",
        alg,
        [
            E("eval", "~x", "b", at={"x": "c"}),
            E("eval", "~x", "c", at={"x": "b"}),
            E("eval", "x -> y", "a", at={"x": "0", "y": BOT}),
            E("stmt", "SPC", "pass"),
            E("flag", "integral", True),
            E("flag", "glivenko_ba", True),
            E("proto", "cp", "pass", arrow="cp"),
            E("stmt", "BT*", "pass", arrow="cm"),
            E("stmt", "BT*", "fail", arrow="cp"),
            E("eval", "(x cp y) cp ((y cp z) cp ~(x cp ~z))", "a", at={"x": "0", "y": "1", "z": "b"}),
            E("custom", "instance_below_one", True),
        ],
        "six-element integral algebra where the product arrow is proto-connexive but fails BT*",
        customs={
            "instance_below_one": lambda a: not a.leq[a.unit, a.element("a")],
        },
    )


def _delta_four() -> Fixture:
    alg = delta_four_algebra()
    d = UnaryMap.of(alg, DELTA_FOUR_DELTA)
    return Fixture(
        "delta_four",
        alg,
        [
            E("flag", "zero_greatest", True),
            E("custom", "delta_increasing", True),
            E("custom", "delta_idempotent", True),
            E("custom", "delta_differs_from_dm", True),
            E("custom", "cpd_proto_for_all_increasing", False),
            E("custom", "cpd_proto_deltas", True),
            E("custom", "named_delta_cpd_bt_fails", True),
            E("custom", "cpd_bt_not_forced", True),
            E("proto", "cp", "pass", arrow="cp"),
        ],
        "four-element chain with 0 on top and a non-double-negation increasing idempotent map",
        notes="⊥·0 = ⊥, so x·0 = 0 fails at ⊥ and the product δ-arrow is proto-connexive for 2 of the 24 increasing maps",
        customs={
            "delta_increasing": lambda a: d.is_increasing,
            "delta_idempotent": lambda a: d.is_idempotent,
            "delta_differs_from_dm": lambda a: d != a.dm,
            "cpd_proto_for_all_increasing": lambda a: all(
                proto_connexive(a, "cpd", t).passed for t in increasing_tables(a)
            ),
            "cpd_bt_not_forced": lambda a: len(delta_forcing(a, "cpd").passing) > 1,
            # only δ = ◇ and δ = (0, a, 0, 0) keep the product arrow proto-connexive
            "cpd_proto_deltas": lambda a: [t.tolist() for t in increasing_tables(a)
                                           if proto_connexive(a, "cpd", t).passed] == [[3, 2, 3, 3], [3, 3, 3, 3]],
            "named_delta_cpd_bt_fails": lambda a: holds(a, "BT", "cpd", d).witness == {"x": 2, "y": 2},
        },
        delta=DELTA_FOUR_DELTA,
    )


def _heyting_star() -> Fixture:
    alg = heyting_star_algebra()
    return Fixture(
        "heyting_star",
        alg,
        [
            E("stmt", "AT", "pass"),
            E("stmt", "AT'", "pass"),
            E("stmt", "BTw", "pass"),
            E("stmt", "BTw'", "pass"),
            E("weak", "cm", "pass"),
            E("stmt", "P3", "fail", witness={"x": "0", "y": BOT}),
            E("proto", "cm", "fail"),
        ],
        "three-element Heyting chain with the constant 0 moved to the middle element",
    )


def _heyting_chain(k: int) -> Fixture:
    alg = heyting_chain_algebra(k)
    exp = [
        E("flag", "glivenko_ba", True),
        E("flag", "pc", True),
        E("flag", "boolean", k == 2),
        E("proto", "cm", "pass"),
    ]
    if k >= 3:
        exp += [E("ns", "cm", True), E("custom", "no_strong_refutation", True)]
    return Fixture(
        f"heyting_chain({k})",
        alg,
        exp,
        "finite Heyting chain; every Heyting algebra lies in the Glivenko variety",
        customs={"no_strong_refutation": lambda a: strong_connexivity_refutation(a, "cm") is None},
    )


def _boolean(m: int) -> Fixture:
    alg = boolean_algebra(m)
    exp = [E("flag", "boolean", True), E("flag", "glivenko_ba", True), E("proto", "cm", "pass"), E("proto", "cp", "pass")]
    if m > 1:
        exp += [E("ns", "cm", False), E("ns", "cp", False)]
    return Fixture(f"boolean({m})", alg, exp, "powerset Boolean algebra")


# ---------------------------------------------------------------- registry

STATIC = ("fig1_pc_not_spc", "btstar_six", "delta_four", "heyting_star")
DEFAULT_FAMILY = ("z(-1)", "z(0)", "z(5)", "heyting_chain(2)", "heyting_chain(3)", "heyting_chain(4)",
                  "boolean(2)", "boolean(4)", "boolean(8)")
ALL_NAMES = STATIC + DEFAULT_FAMILY

PROVENANCE = {
    "fig1_pc_not_spc": "figure with a pseudo-complemented algebra that is not strongly pseudo-complemented",
    "z(n)": "example: the integers pointed at n, involutive",
    "btstar_six": "example separating BT from BT* for the product arrow",
    "delta_four": "example: increasing idempotent map other than double negation",
    "heyting_star": "example: weakly connexive but not proto-connexive",
    "heyting_chain(k)": "remark: Heyting algebras lie in the Glivenko variety",
    "boolean(m)": "proposition characterising Boolean algebras",
}

_FAMILY = re.compile(r"^(z|heyting_chain|boolean)\s*\(?\s*(-?\d+)\s*\)?$")


def canonical_name(name: str) -> str:
    name = name.strip()
    if name in STATIC:
        return name
    m = _FAMILY.match(name)
    if not m:
        raise UnknownFixture(f"no fixture named {name!r}")
    return f"{m.group(1)}({int(m.group(2))})"


@lru_cache(maxsize=None)
def fixture(name: str) -> Fixture:
    """Build a fixture by name, e.g. ``fig1_pc_not_spc``, ``z(-1)``, ``boolean4``."""
    name = canonical_name(name)
    if name in STATIC:
        return {"fig1_pc_not_spc": _fig1, "btstar_six": _btstar_six, "delta_four": _delta_four,
                "heyting_star": _heyting_star}[name]()
    family, arg = name[:-1].split("(")
    arg = int(arg)
    if family == "z":
        return _z(arg)
    if family == "heyting_chain":
        return _heyting_chain(arg)
    return _boolean(arg)


def list_fixtures() -> list:
    return [(n, PROVENANCE[n]) for n in PROVENANCE]


def finite_fixtures(names=ALL_NAMES) -> list:
    return [f for f in (fixture(n) for n in names) if f.finite]


# ---------------------------------------------------------------- verification


def _label(alg, v):
    return alg.label(int(v)) if isinstance(alg, FleAlgebra) else int(v)


def observe(fx: Fixture, e: Expectation):
    """The observed verdict (and witness) for one expectation."""
    alg = fx.algebra
    if e.kind == "window":
        r = check_window(alg, statement(e.target, e.arrow))
        return r.status, r.witness
    if e.kind == "eval":
        term = parse_term(e.target)
        if isinstance(alg, ComputableAlgebra):
            return eval_computable(alg, term, e.at), None
        return _label(alg, evaluate(alg, term, _resolve(alg, e.at))), None
    if e.kind == "stmt":
        r = holds(alg, e.target, e.arrow)
        return r.status, _labels(alg, r.witness)
    if e.kind == "flag":
        return classify(alg).flags[e.target], None
    if e.kind == "proto":
        r = proto_connexive(alg, e.arrow)
        return r.status, _labels(alg, r.witness)
    if e.kind == "weak":
        r = weakly_connexive(alg, e.arrow)
        return r.status, _labels(alg, r.witness)
    if e.kind == "ns":
        return non_symmetry_witness(alg, e.arrow) is not None, None
    if e.kind == "custom":
        return bool(fx.customs[e.target](alg)), None
    raise ValueError(f"unknown expectation kind {e.kind!r}")


def _resolve(alg: FleAlgebra, at: dict) -> dict:
    return {k: alg.element(BOT if v == "bot" else v) for k, v in at.items()}


def _labels(alg, witness):
    if witness is None:
        return None
    return {k: _label(alg, v) for k, v in witness.items()}


def verify_fixture(name: str) -> CheckReport:
    """Re-derive every expectation; raises :class:`ExpectationMismatch` on any difference."""
    fx = fixture(name)
    diffs = []
    if fx.finite:
        v = validate(fx.algebra)
        if not v.passed:
            diffs.append({"expectation": "validate", "expected": "pass", "observed": v.detail})
    for e in fx.expected:
        verdict, witness = observe(fx, e)
        if verdict != e.expected or (e.witness is not None and witness != e.witness):
            diffs.append(
                {"expectation": e.describe(), "expected": e.expected, "observed": verdict,
                 "expected_witness": e.witness, "observed_witness": witness}
            )
    if diffs:
        raise ExpectationMismatch(fx.name, diffs)
    return passed(detail=f"{fx.name}: {len(fx.expected)} expectations reproduced")


def export_fixture(name: str, path) -> None:
    with open(path, "w") as fh:
        json.dump(fixture(name).to_json(), fh, ensure_ascii=False, indent=1)
        fh.write("\n")
