"""Independent brute-force oracles used to cross-check the fast paths.

Nothing here shares search logic with :mod:`flecnx.enumerator`; the only
shared piece is the canonical-form function used to compare result sets.
"""
from __future__ import annotations

import itertools

import numpy as np

from .kernels import python_kernels


def naive_residual(leq, join, prod, bottom):
    """``x -> y`` as the join of every ``z`` with ``x*z <= y``, scanning all ``z``."""
    n = len(leq)
    out = np.full((n, n), -1, dtype=np.intp)
    for x in range(n):
        for y in range(n):
            acc, seen = bottom, False
            for z in range(n):
                if leq[prod[x][z]][y]:
                    acc = join[acc][z] if seen else z
                    seen = True
            out[x, y] = acc if seen else -1
    return out


def all_posets(n: int):
    """Every partial order on ``range(n)`` as a boolean matrix."""
    pairs = list(itertools.combinations(range(n), 2))
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        le = np.eye(n, dtype=bool)
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                le[i, j] = True
            elif c == 2:
                le[j, i] = True
        if not ((le.astype(int) @ le.astype(int) > 0) & ~le).any():
            yield le


def lattice_ops(le):
    """``(meet, join)`` or ``None`` when some pair lacks a bound."""
    n = len(le)
    meet = np.empty((n, n), dtype=np.intp)
    join = np.empty((n, n), dtype=np.intp)
    for x in range(n):
        for y in range(n):
            lo = [z for z in range(n) if le[z, x] and le[z, y]]
            hi = [z for z in range(n) if le[x, z] and le[y, z]]
            glb = [z for z in lo if all(le[w, z] for w in lo)]
            lub = [z for z in hi if all(le[z, w] for w in hi)]
            if not glb or not lub:
                return None
            meet[x, y], join[x, y] = glb[0], lub[0]
    return meet, join


def _commutative_tables(n: int) -> np.ndarray:
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    vals = np.indices((n,) * len(cells)).reshape(len(cells), -1).T
    tables = np.empty((len(vals), n, n), dtype=np.intp)
    for k, (i, j) in enumerate(cells):
        tables[:, i, j] = vals[:, k]
        tables[:, j, i] = vals[:, k]
    return tables


def brute_force_forms(n: int) -> set:
    """Canonical forms of all FLe-algebras of size ``n`` by raw filtering.

    Every poset, every commutative table and every pair of constants is
    tried; survivors must be lattices, monoids with the chosen unit,
    associative and residuated in the naive sense.
    """
    if n > 4:
        raise ValueError("the brute-force oracle is only feasible for n <= 4")
    tables = _commutative_tables(n)
    idx = np.arange(n)
    forms = set()
    for le in all_posets(n):
        ops = lattice_ops(le)
        if ops is None:
            continue
        meet, join = ops
        bottom = int(np.flatnonzero(le.all(axis=1))[0])
        for unit in range(n):
            t = tables[(tables[:, unit, :] == idx).all(axis=1)]
            assoc = (t[np.arange(len(t))[:, None, None, None], t[:, :, :, None], idx[None, None, None, :]]
                     == t[np.arange(len(t))[:, None, None, None], idx[None, :, None, None], t[:, None, :, :]])
            t = t[assoc.reshape(len(t), -1).all(axis=1)]
            for prod in t:
                arrow = naive_residual(le, join, prod, bottom)
                if (arrow < 0).any():
                    continue
                law = le[prod[:, :, None], idx[None, None, :]] == le[idx[:, None, None], arrow[None, :, :]]
                if not law.all():
                    continue
                for zero in range(n):
                    forms.add(python_kernels.canonical_form(le, prod, unit, zero))
    return forms


def naive_lattice_forms(n: int) -> set:
    """Canonical forms of all ``n``-element lattices from the full poset list."""
    return {python_kernels.canonical_form(le) for le in all_posets(n) if lattice_ops(le) is not None}
