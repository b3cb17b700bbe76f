import numpy as np
import pytest

from flecnx.errors import NotIntegral, PreconditionViolated
from flecnx.fixtures import (
    boolean_algebra,
    delta_four_algebra,
    fig1_algebra,
    heyting_chain_algebra,
    heyting_star_algebra,
)
from flecnx.properties import (
    bdiamond_expansions,
    classify,
    delta_forcing,
    holds,
    increasing_tables,
    interval_analysis,
    parse_interval_mode,
    proto_connexive,
    weakly_connexive,
)


def test_boolean_two_flags():
    c = classify(boolean_algebra(2))
    assert c.boolean and c.glivenko_ba and c.proto_cnx_meet and c.proto_cnx_prod
    assert not c.ns_meet and not c.zero_greatest


def test_fig1_flags_carry_witnesses():
    a = fig1_algebra()
    c = classify(a)
    assert c.pc and not c.spc and not c.glivenko_ba
    assert c.witnesses["spc"] == {"x": a.element("0"), "y": a.element("⊥")}
    js = c.to_json(a)
    assert js["spc_witness"] == {"x": "0", "y": "⊥"}


def test_cross_checks_hold_over_corpus(corpus4):
    for alg in corpus4.algebras:
        c = classify(alg)
        assert all(c.cross_checks.values()), c.cross_checks


def test_equivalence_batteries(corpus4):
    for alg in corpus4.algebras:
        c = classify(alg)
        bt = [holds(alg, s, "cm").passed for s in ("BT", "BT'", "P2", "P3")]
        assert len(set(bt + [c.proto_cnx_meet])) == 1
        assert c.proto_cnx_meet == c.glivenko_ba
        assert c.proto_cnx_meet == (c.proto_cnx_prod and holds(alg, "TOP_DM1").passed)
        assert holds(alg, "AT", "res").passed == c.zero_greatest


def test_weak_but_not_proto():
    a = heyting_star_algebra()
    assert weakly_connexive(a).passed
    assert not proto_connexive(a).passed


@pytest.mark.parametrize("alg,count", [(heyting_chain_algebra(3), 6), (boolean_algebra(2), 2),
                                       (delta_four_algebra(), 24)])
def test_increasing_map_counts(alg, count):
    tables = increasing_tables(alg)
    assert len(tables) == count
    assert all((alg.leq[np.arange(alg.size), t]).all() for t in tables)


@pytest.mark.parametrize("alg", [boolean_algebra(2), boolean_algebra(4), heyting_chain_algebra(3)])
def test_bt_forces_double_negation(alg):
    r = delta_forcing(alg, "cmd")
    assert r.forced and r.passing == [r.dm]


def test_delta_forcing_needs_glivenko():
    with pytest.raises(PreconditionViolated):
        delta_forcing(fig1_algebra())


def test_interval_modes():
    assert parse_interval_mode("endpoints") == ("endpoints",)
    assert parse_interval_mode("sampled:50") == ("sampled", 50)
    assert parse_interval_mode("exhaustive") == ("exhaustive", 2**20)
    with pytest.raises(ValueError):
        parse_interval_mode("bogus")


def test_interval_matches_pc(corpus4):
    for alg in corpus4.algebras:
        if not (holds(alg, "INTEGRAL").passed and holds(alg, "ZERO_BOUNDED").passed):
            continue
        pc = holds(alg, "PC").passed
        r = interval_analysis(alg, None, "sampled:200", seed=1)
        assert r.all_proto == pc
        assert r.any_at == pc


def test_interval_reports_failure_member():
    r = interval_analysis(fig1_algebra(), None, "exhaustive")
    assert not r.all_proto and r.first_failure["thesis"] == "BT"


def test_interval_needs_integral(corpus4):
    alg = next(a for a in corpus4.algebras if not holds(a, "INTEGRAL").passed)
    with pytest.raises(NotIntegral):
        interval_analysis(alg)


def test_bdiamond_unique():
    r = bdiamond_expansions(heyting_chain_algebra(3))
    assert r.unique_is_dm and r.passed
