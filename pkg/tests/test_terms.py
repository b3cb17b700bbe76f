import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from flecnx.enumerator import enumerate_upto
from flecnx.errors import ParseError, UnboundDelta, UnboundVariable, UnknownIdentifier, UnknownName
from flecnx.fixtures import fig1_algebra, heyting_chain_algebra
from flecnx.terms import (
    REGISTRY,
    Arrow,
    Assertional,
    CnxMeet,
    Identity,
    Inequation,
    Meet,
    Neg,
    Prod,
    QuasiIdentity,
    TableBackend,
    Var,
    check,
    evaluate,
    evaluate_with,
    expand,
    named_statement,
    parse,
    parse_term,
    show,
    variables,
)

CORPUS = enumerate_upto(4).algebras
x, y = Var("x"), Var("y")


def test_precedence():
    t = parse_term("x * y /\\ z \\/ w -> v")
    assert isinstance(t, Arrow)
    assert show(t) == "x * y /\\ z \\/ w -> v"
    assert parse_term("x -> y -> z") == Arrow(x, Arrow(y, Var("z")))
    assert parse_term("~x * y") == Prod(Neg(x), y)


def test_statement_kinds():
    assert isinstance(parse("x = y"), Identity)
    assert isinstance(parse("x <= y"), Inequation)
    assert isinstance(parse("1 <= x cm y"), Assertional)
    q = parse("x <= y, dm(x) = dm(y) |- z cm x <= z cm y")
    assert isinstance(q, QuasiIdentity) and len(q.premises) == 2


@pytest.mark.parametrize("text", ["x ->", "x = ", "(x = y", "x <= y, y <= x", "x = y y"])
def test_parse_errors_carry_positions(text):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.position is not None


def test_unknown_identifiers():
    with pytest.raises(UnknownIdentifier):
        parse("x <= 2")
    with pytest.raises(UnknownIdentifier):
        parse("foo(x) = x")
    with pytest.raises(ParseError):
        parse("x # y = x")


def test_expansion_of_derived_connectives():
    assert expand(parse_term("x cm y")) == Meet(Arrow(x, y), Arrow(y, Arrow(Arrow(x, parse_term("0")), parse_term("0"))))
    assert expand(parse_term("~x")) == Arrow(x, parse_term("0"))


@pytest.mark.parametrize("text", ["x cm y", "x cp y", "x <-> y", "dm(x) cm ~y", "(x cp y) cm ~(x cp ~y)",
                                  "x cmd y", "x cpd (y -> delta(x))"])
def test_derived_equals_expansion_everywhere(text):
    t = parse_term(text)
    e = expand(t)
    for alg in CORPUS[::7]:
        backend = TableBackend(alg, alg.dm, alg.dm)
        for vx, vy in itertools.product(range(alg.size), repeat=2):
            env = {"x": np.intp(vx), "y": np.intp(vy)}
            assert evaluate_with(backend, t, env) == evaluate_with(backend, e, env)


def test_round_trip_through_show():
    for name in REGISTRY:
        stmt = named_statement(name)
        assert parse(str(stmt)) == stmt


def test_fig1_spc_witness_and_value():
    a = fig1_algebra()
    r = check(a, "~x /\\ ~(x -> y) <= 0")
    assert not r.passed
    assert {k: a.label(v) for k, v in r.witness.items()} == {"x": "0", "y": "⊥"}
    assert a.label(evaluate(a, parse_term("~x /\\ ~(x -> y)"), {"x": "0", "y": "⊥"})) == "1"


def test_fig1_bt_instance():
    a = fig1_algebra()
    assert a.label(evaluate(a, parse_term("(x cm y) cm ~(x cm ~y)"), {"x": "0", "y": "⊥"})) == "0"


def test_witness_is_lexicographic_least():
    a = heyting_chain_algebra(3)
    r = check(a, "x <= y")
    assert r.witness == {"x": 1, "y": 0}


@given(st.sampled_from(CORPUS), st.permutations(["x", "y", "z"]))
def test_verdict_independent_of_variable_names(a, names):
    stmt = "x * (y \\/ z) <= x * y"
    renamed = stmt.replace("x", "A").replace("y", "B").replace("z", "C")
    for old, new in zip("ABC", names):
        renamed = renamed.replace(old, new)
    assert check(a, stmt).passed == check(a, renamed).passed


def test_unbound_delta_and_variable():
    a = fig1_algebra()
    with pytest.raises(UnboundDelta):
        check(a, "x cmd y <= 1")
    with pytest.raises(UnboundVariable):
        evaluate(a, parse_term("x * y"), {"x": "0"})


def test_named_statement_lookup():
    assert named_statement("AT", "cp") == parse("1 <= ~(x cp ~x)")
    with pytest.raises(UnknownName):
        named_statement("NOPE")
    with pytest.raises(UnknownName):
        named_statement("AT", "zz")


def test_variables_sorted():
    assert variables(parse("z cm x <= y")) == ["x", "y", "z"]


@given(st.sampled_from(CORPUS))
def test_boethius_equivalences_for_meet_arrow(a):
    verdicts = {n: check(a, named_statement(n)).passed for n in ("BT", "BT'", "P2", "P3")}
    assert len(set(verdicts.values())) == 1


@given(st.sampled_from(CORPUS))
def test_cnx_order_properties(a):
    for arrow in ("cm", "cp"):
        assert check(a, f"x <= y, dm(x) = dm(y) |- z {arrow} x <= z {arrow} y").passed
        assert check(a, f"x <= y, dm(x) = dm(y) |- y {arrow} z <= x {arrow} z").passed


def test_p1_holds_for_connexive_arrows():
    for a in CORPUS:
        assert check(a, named_statement("P1", "cm")).passed
        assert check(a, named_statement("P1", "cp")).passed
