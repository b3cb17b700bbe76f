import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from flecnx import kernels
from flecnx.enumerator import enumerate_lattices, enumerate_upto

compiled = pytest.mark.skipif(kernels.compiled_kernels is None, reason="compiled kernels not built")
ALGEBRAS = enumerate_upto(5).algebras


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")


@compiled
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_monoid_tables_agree(n):
    for lat in enumerate_lattices(n):
        for unit in range(n):
            py = kernels.python_kernels.monoid_tables(lat.leq, lat.join, unit, lat.bottom)
            cc = kernels.compiled_kernels.monoid_tables(lat.leq, lat.join, unit, lat.bottom)
            assert len(py) == len(cc)
            assert all((a == b).all() for a, b in zip(py, cc))


@compiled
@given(st.sampled_from(ALGEBRAS), st.integers(0, 2**32 - 1))
def test_canonical_form_agrees_and_is_invariant(a, seed):
    args = (a.leq, a.prod, a.unit, a.zero)
    form = kernels.python_kernels.canonical_form(*args)
    assert kernels.compiled_kernels.canonical_form(*args) == form
    b = a.relabel(np.random.default_rng(seed).permutation(a.size).tolist())
    assert kernels.compiled_kernels.canonical_form(b.leq, b.prod, b.unit, b.zero) == form


def test_canonical_form_separates_zero_choice():
    a = ALGEBRAS[3]
    forms = {kernels.canonical_form(a.leq, a.prod, a.unit, z) for z in range(a.size)}
    assert len(forms) >= 2


def test_monoid_tables_are_commutative_monoids():
    for lat in enumerate_lattices(4):
        for unit in range(4):
            for p in kernels.monoid_tables(lat.leq, lat.join, unit, lat.bottom):
                assert (p == p.T).all()
                assert (p[unit] == np.arange(4)).all()
                assert (p[p, :][:, :, None].squeeze() is not None)
                lhs = p[p[:, :, None], np.arange(4)[None, None, :]]
                rhs = p[np.arange(4)[:, None, None], p[None, :, :]]
                assert (lhs == rhs).all()


def test_pure_fallback_selected_by_environment():
    env = dict(os.environ, FLECNX_PURE="1")
    code = "from flecnx import kernels, enumerator; print(kernels.BACKEND, len(enumerator.enumerate_upto(4)))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.split() == ["python", "75"], out.stderr
