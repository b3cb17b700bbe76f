import json

import pytest

from flecnx.algebra import validate
from flecnx.enumerator import (
    canonicalize,
    enumerate_fle,
    enumerate_lattices,
    enumerate_upto,
    extend_to_crl,
    extend_to_fle,
    load_corpus,
)
from flecnx.errors import SizeCapExceeded
from flecnx.fixtures import fig1_algebra
from flecnx.oracles import brute_force_forms, naive_lattice_forms


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 5), (6, 15)])
def test_lattice_counts(n, count):
    assert len(enumerate_lattices(n)) == count


def test_lattices_match_naive_oracle_at_five():
    from flecnx.enumerator import lattice_form
    assert {lattice_form(l) for l in enumerate_lattices(5)} == naive_lattice_forms(5)


def test_two_chain_extensions():
    (lat,) = enumerate_lattices(2)
    assert len(extend_to_crl(lat)) == 1
    fles = extend_to_fle(lat)
    assert len(fles) == 2
    assert all(validate(a).passed for a in fles)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 9), (4, 63), (5, 492)])
def test_fle_counts(n, count):
    assert len(enumerate_fle(n)) == count


@pytest.mark.parametrize("n", [1, 2, 3])
def test_matches_brute_force_oracle_small(n):
    assert {e.form for e in enumerate_fle(n)} == brute_force_forms(n)


def test_fig1_in_three_chain_extensions():
    (lat,) = enumerate_lattices(3)
    target = canonicalize(fig1_algebra())
    assert target in {canonicalize(a) for a in extend_to_fle(lat)}


def test_corpus_sound_iso_free_and_sorted():
    corpus = enumerate_upto(4)
    forms = [e.form for e in corpus]
    assert len(set(forms)) == len(forms)
    assert forms == sorted(forms, key=lambda f: (f[0], f))
    assert all(validate(a).passed for a in corpus.algebras)


def test_thread_count_does_not_change_corpus():
    a = [e.form for e in enumerate_upto(5, threads=1)]
    b = [e.form for e in enumerate_upto(5, threads=4)]
    assert a == b


def test_size_cap():
    with pytest.raises(SizeCapExceeded):
        enumerate_upto(7)


def test_persist_and_resume(tmp_path):
    first = enumerate_upto(4, corpus_dir=tmp_path)
    index = json.loads((tmp_path / "index.json").read_text())
    assert index["counts"]["4"]["fle"] == 63
    again = enumerate_upto(4, corpus_dir=tmp_path, resume=True)
    assert [e.form for e in again] == [e.form for e in first]
    assert len(load_corpus(tmp_path)) == 75


def test_crl_counts_reported():
    counts = enumerate_upto(5).report.counts
    assert [counts[n]["crls"] for n in range(1, 6)] == [1, 1, 3, 16, 100]
