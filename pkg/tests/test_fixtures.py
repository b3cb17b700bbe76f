import json

import pytest

from flecnx.algebra import load_algebra, validate
from flecnx.errors import UnknownFixture
from flecnx.fixtures import (
    ALL_NAMES,
    DELTA_FOUR_DELTA,
    canonical_name,
    export_fixture,
    finite_fixtures,
    fixture,
    list_fixtures,
    verify_fixture,
)


@pytest.mark.parametrize("name", ALL_NAMES)
def test_every_fixture_verifies(name):
    assert verify_fixture(name).passed


@pytest.mark.parametrize("name", [n for n in ALL_NAMES if fixture(n).finite])
def test_finite_fixtures_validate(name):
    assert validate(fixture(name).algebra).passed


@pytest.mark.parametrize("alias,name", [("boolean4", "boolean(4)"), ("heyting_chain3", "heyting_chain(3)"),
                                        ("z(-1)", "z(-1)"), ("z 5", "z(5)")])
def test_aliases(alias, name):
    assert canonical_name(alias) == name


def test_family_members_outside_default():
    assert fixture("z(7)").name == "z(7)"
    assert verify_fixture("boolean(16)").passed


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        fixture("nope")


def test_listing_has_provenance():
    rows = dict(list_fixtures())
    assert {"fig1_pc_not_spc", "btstar_six", "delta_four", "heyting_star", "z(n)"} <= set(rows)
    assert all(rows.values())


def test_export_round_trip(tmp_path):
    path = tmp_path / "fx.json"
    export_fixture("delta_four", path)
    data = json.loads(path.read_text())
    assert data["name"] == "delta_four" and data["delta"] == DELTA_FOUR_DELTA
    alg = load_algebra(path)
    ref = fixture("delta_four").algebra
    assert alg.labels == ref.labels and alg.zero == ref.zero
    assert (alg.prod == ref.prod).all() and (alg.leq == ref.leq).all()


def test_finite_fixtures_exclude_computable():
    names = {fx.name for fx in finite_fixtures()}
    assert "fig1_pc_not_spc" in names and not any(n.startswith("z(") for n in names)
