import pytest
from hypothesis import given, strategies as st

from flecnx.integers import ComputableAlgebra, check_window, eval_computable, search_witness
from flecnx.properties import statement
from flecnx.terms import parse, parse_term

ints = st.integers(-50, 50)


@given(st.integers(-20, 20), ints)
def test_involutive(n, x):
    z = ComputableAlgebra(n)
    assert z.neg(x) == n - x
    assert z.dm(x) == x


def test_neg_examples():
    z = ComputableAlgebra(5)
    assert z.neg(3) == 2 and z.dm(3) == 3


@given(st.integers(-20, 20).filter(lambda n: n != 0), ints, ints)
def test_p2_fails_for_product_arrow(n, x, y):
    z = ComputableAlgebra(n)
    assert eval_computable(z, parse_term("~(x cp ~y)"), {"x": x, "y": y}) == n
    assert eval_computable(z, parse_term("dm(x cp y)"), {"x": x, "y": y}) == 0


@given(st.integers(-20, -1), ints)
def test_at_fails_for_negative_n(n, x):
    assert eval_computable(ComputableAlgebra(n), parse_term("~(x cp ~x)"), {"x": x}) == n


@given(ints, ints)
def test_product_arrow_is_unit_on_z0(x, y):
    assert eval_computable(ComputableAlgebra(0), parse_term("x cp y"), {"x": x, "y": y}) == 0


def test_window_checks_are_labelled():
    r = check_window(ComputableAlgebra(0), statement("P2", "cp"))
    assert r.passed and "window" in r.detail


def test_bt_meet_fails_on_z0():
    r = check_window(ComputableAlgebra(0), statement("BT", "cm"))
    assert not r.passed
    assert eval_computable(ComputableAlgebra(0), parse_term("(x cm y) cm ~(x cm ~y)"), {"x": 0, "y": 1}) == -2


def test_search_witness():
    assert search_witness(ComputableAlgebra(3), parse("x = x"), 5) is None
    assert search_witness(ComputableAlgebra(3), parse("x <= 0"), 5) is not None
