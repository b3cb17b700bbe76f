"""Pure-Python hot kernels.  ``_ckernels.pyx`` mirrors these exactly."""
from __future__ import annotations

import itertools

import numpy as np


def monoid_tables(leq, join, unit: int, bottom: int) -> list:
    """All commutative monoid tables with identity ``unit`` that preserve
    binary joins and fix ``bottom`` as an absorbing element.

    On a finite lattice these are exactly the residuated commutative
    products.  Tables come out in lexicographic order of their free cells.
    """
    le = np.asarray(leq, dtype=bool).tolist()
    jn = np.asarray(join, dtype=np.intp).tolist()
    n = len(le)
    p = [[-1] * n for _ in range(n)]
    for x in range(n):
        for a, b, v in ((bottom, x, bottom), (unit, x, x)):
            for r, c in ((a, b), (b, a)):
                if p[r][c] not in (-1, v):
                    return []
                p[r][c] = v
    cells = [(i, j) for i in range(n) for j in range(i, n) if p[i][j] < 0]
    out = []

    def assoc_ok(a, b, c):
        s = p[a][b]
        t = p[b][c]
        if s < 0 or t < 0:
            return True
        l, r = p[s][c], p[a][t]
        return l < 0 or r < 0 or l == r

    def consistent(i, j, v):
        for r, c in ((i, j), (j, i)):
            row = p[r]
            lec, row_c = le[c], le
            for k in range(n):
                w = row[k]
                if w < 0:
                    continue
                if lec[k] and not le[v][w]:
                    return False
                if row_c[k][c] and not le[w][v]:
                    return False
            for k in range(n):
                a = row[k]
                if a < 0:
                    continue
                for l in range(k, n):
                    b = row[l]
                    if b < 0:
                        continue
                    m = row[jn[k][l]]
                    if m >= 0 and m != jn[a][b]:
                        return False
        for a, b in ((i, j), (j, i)):
            for c in range(n):
                if not assoc_ok(a, b, c) or not assoc_ok(c, a, b):
                    return False
        for s, c in ((i, j), (j, i)):
            for a in range(n):
                for b in range(n):
                    if p[a][b] == s and not assoc_ok(a, b, c):
                        return False
                    if p[a][b] == c and not assoc_ok(s, a, b):
                        return False
        return True

    def search(d):
        if d == len(cells):
            out.append(np.array(p, dtype=np.intp))
            return
        i, j = cells[d]
        for v in range(n):
            p[i][j] = p[j][i] = v
            if consistent(i, j, v):
                search(d + 1)
        p[i][j] = p[j][i] = -1

    if cells:
        search(0)
    else:
        out.append(np.array(p, dtype=np.intp))
    return [t for t in out if _full_check(t, le, jn)]


def _full_check(p, le, jn) -> bool:
    n = len(le)
    idx = np.arange(n)
    if not (p[p[:, :, None], idx[None, None, :]] == p[idx[:, None, None], p[None, :, :]]).all():
        return False
    jn = np.asarray(jn)
    return bool((p[:, jn] == jn[p[:, :, None], p[:, None, :]]).all())


def canonical_form(leq, prod=None, unit: int = 0, zero: int = 0) -> bytes:
    """Size byte followed by the least encoding over all relabellings.

    The encoding is ``leq`` row-major (0/1 bytes), then, when ``prod`` is
    given, ``prod`` row-major, ``unit`` and ``zero``.
    """
    le = np.asarray(leq, dtype=np.uint8)
    n = le.shape[0]
    if n <= 1:
        body = le.ravel().tolist() + ([0] * (n * n) + [0, 0] if prod is not None else [])
        return bytes([n] + body)
    inv = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    sigma = np.argsort(inv, axis=1)
    rows, cols = inv[:, :, None], inv[:, None, :]
    parts = [le[rows, cols].reshape(len(inv), -1)]
    if prod is not None:
        p = np.asarray(prod, dtype=np.intp)
        parts.append(np.take_along_axis(sigma, p[rows, cols].reshape(len(inv), -1), axis=1))
        parts.append(sigma[:, [unit, zero]])
    enc = np.concatenate(parts, axis=1).astype(np.uint8)
    best = np.lexsort(enc.T[::-1])[0]
    return bytes([n]) + enc[best].tobytes()
