import numpy as np
import pytest
from hypothesis import given, strategies as st

from flecnx.algebra import (
    FiniteLattice,
    FleAlgebra,
    UnaryMap,
    algebra_from_json,
    algebra_to_json,
    cnx_meet,
    cnx_meet_table,
    cnx_prod,
    cnx_prod_table,
    dm,
    identity_map,
    neg,
    nucleus_image,
    residual_from_product,
    validate,
)
from flecnx.enumerator import canonicalize, enumerate_upto
from flecnx.errors import InvalidAlgebra, MalformedTable, NotALattice, NotANucleus, NotResiduated
from flecnx.fixtures import fig1_algebra, heyting_chain_algebra
from flecnx.oracles import naive_residual

CORPUS = enumerate_upto(4).algebras
algebras = st.sampled_from(CORPUS)


def test_fig1_arrow_table():
    a = fig1_algebra()
    bot, zero, one = (a.element(s) for s in ("⊥", "0", "1"))
    assert a.arrow[zero, bot] == bot
    assert a.arrow[bot, bot] == one
    assert [a.arrow[one, x] for x in range(3)] == [0, 1, 2]


def test_meet_product_residual_is_relative_pseudocomplement():
    a = heyting_chain_algebra(4)
    assert all(a.arrow[a.unit, x] == x for x in range(4))


def test_two_chain_with_bottom_unit_is_rejected():
    lat = FiniteLattice.from_leq(np.triu(np.ones((2, 2), dtype=bool)))
    with pytest.raises(NotResiduated) as exc:
        residual_from_product(lat, np.array([[0, 1], [1, 1]]), 0)
    assert (exc.value.x, exc.value.y) == (1, 0)


def test_validate_accepts_fig1_and_trivial():
    assert validate(fig1_algebra()).passed
    assert validate(FleAlgebra.build([[0]], 0, 0, leq=[[True]])).passed


def test_altered_arrow_fails_residuation():
    a = fig1_algebra()
    arrow = a.arrow.copy()
    arrow[a.element("1"), a.element("0")] = a.element("1")
    r = validate(FleAlgebra(a.lattice, a.prod, a.unit, a.zero, arrow))
    assert not r.passed and r.statement == "residuation"
    with pytest.raises(InvalidAlgebra):
        FleAlgebra.build(a.prod, a.unit, a.zero, leq=a.leq, arrow=arrow)


def test_malformed_inputs():
    with pytest.raises(MalformedTable):
        FleAlgebra.build([[0, 5], [5, 1]], 1, 0, leq=np.triu(np.ones((2, 2), dtype=bool)))
    with pytest.raises(NotALattice):
        FiniteLattice.from_leq(np.eye(2, dtype=bool))


def test_neg_and_dm_on_fig1():
    a = fig1_algebra()
    zero = a.element("0")
    assert a.label(neg(a, zero)) == "1"
    assert a.label(dm(a, zero)) == "0"


def test_connexive_arrows_on_fig1():
    a = fig1_algebra()
    zero, bot = a.element("0"), a.element("⊥")
    assert a.label(cnx_meet(a, None, zero, bot)) == "⊥"


@given(algebras)
def test_residual_matches_naive_oracle(a):
    assert (naive_residual(a.leq, a.join, a.prod, a.bottom) == a.arrow).all()


@given(algebras)
def test_residuation_law(a):
    le = a.leq
    lhs = le[a.prod[:, :, None], np.arange(a.size)[None, None, :]]
    rhs = le[np.arange(a.size)[:, None, None], a.arrow[None, :, :]]
    assert (lhs == rhs).all()


@given(algebras)
def test_tables_agree_with_pointwise_arrows(a):
    n = a.size
    assert all(cnx_meet_table(a)[x, y] == cnx_meet(a, None, x, y) for x in range(n) for y in range(n))
    assert all(cnx_prod_table(a)[x, y] == cnx_prod(a, None, x, y) for x in range(n) for y in range(n))


@given(algebras)
def test_reflexivity_of_meet_arrow(a):
    f = cnx_meet_table(a)
    assert all(a.leq[a.unit, f[x, x]] for x in range(a.size))


@given(algebras)
def test_charlanfcnxone(a):
    f = cnx_meet_table(a)
    d = a.dm_table
    for x in range(a.size):
        for y in range(a.size):
            assert a.leq[a.unit, f[x, y]] == (a.leq[x, y] and d[x] == d[y])


@given(algebras)
def test_dm_is_a_nucleus_with_involutive_image(a):
    assert a.dm.is_nucleus
    image = nucleus_image(a, a.dm)
    assert validate(image).passed
    assert (image.dm_table == np.arange(image.size)).all()


@given(algebras)
def test_identity_nucleus_returns_isomorphic_copy(a):
    assert canonicalize(nucleus_image(a, identity_map(a))) == canonicalize(a)


def test_non_nucleus_rejected():
    a = heyting_chain_algebra(3)
    with pytest.raises(NotANucleus):
        nucleus_image(a, UnaryMap.of(a, [1, 1, 1]))


def test_fig1_dm_image_is_boolean_two():
    image = nucleus_image(fig1_algebra(), fig1_algebra().dm)
    assert image.size == 2 and image.zero != image.unit


@given(algebras, st.integers(0, 10**6))
def test_relabel_preserves_canonical_form(a, seed):
    perm = np.random.default_rng(seed).permutation(a.size).tolist()
    b = a.relabel(perm)
    assert validate(b).passed
    assert canonicalize(b) == canonicalize(a)


@given(algebras)
def test_json_round_trip(a):
    b = algebra_from_json(algebra_to_json(a))
    assert (b.prod == a.prod).all() and (b.arrow == a.arrow).all() and b.zero == a.zero


def test_json_from_meet_join():
    a = fig1_algebra()
    obj = algebra_to_json(a)
    del obj["leq"]
    obj["meet"], obj["join"] = a.meet.tolist(), a.join.tolist()
    assert (algebra_from_json(obj).leq == a.leq).all()


def test_unary_map_flags_recomputed():
    a = heyting_chain_algebra(3)
    m = UnaryMap.of(a, [2, 2, 2])
    assert m.is_increasing and m.is_monotone and m.is_idempotent
    assert not UnaryMap.of(a, [0, 0, 2]).is_increasing
