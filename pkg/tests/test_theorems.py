import json

import pytest

from flecnx.errors import UnknownCheck
from flecnx.fixtures import ALL_NAMES, fig1_algebra, heyting_chain_algebra
from flecnx.theorems import CHECKS, SuiteConfig, explain, run_suite


@pytest.fixture(scope="module")
def report4(corpus4):
    return run_suite(corpus4, ALL_NAMES, SuiteConfig())


def test_registry_complete():
    assert [c.id for c in CHECKS] == [f"T{i}" for i in range(1, 24)]


def test_suite_size_four_clean(report4):
    assert report4.failures == 0
    assert report4.passed
    assert all(c.in_scope >= 1 for c in report4.checks)
    assert report4.algebras == 75 + sum(1 for _ in ALL_NAMES if not _.startswith("z("))


def test_explain():
    text = explain("T13")
    assert "T13" in text and "scope" in text
    assert explain("t8").startswith("T8")
    with pytest.raises(UnknownCheck):
        explain("T99")


def test_out_of_scope_is_not_vacuous_pass():
    r = run_suite([fig1_algebra(), heyting_chain_algebra(3)], [], SuiteConfig(checks=("T14", "T22")))
    t14, t22 = r.checks
    assert t14.scanned == 2 and t14.in_scope == 1 and t14.passed
    assert t22.in_scope == 0 and not t22.passed


def test_t18_note_for_weak_only_algebra():
    r = run_suite(None, ["heyting_star"], SuiteConfig(checks=("T18",)))
    (t18,) = r.checks
    assert t18.in_scope == 0
    assert t18.notes and t18.notes[0]["algebra"] == "heyting_star"


def test_report_independent_of_threads(corpus4):
    a = run_suite(corpus4, ALL_NAMES, SuiteConfig(threads=1, checks=("T1", "T12", "T13", "T20")))
    b = run_suite(corpus4, ALL_NAMES, SuiteConfig(threads=3, checks=("T1", "T12", "T13", "T20")))
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())


def test_table_lists_every_check(report4):
    table = report4.table()
    assert all(c.id in table for c in CHECKS)
