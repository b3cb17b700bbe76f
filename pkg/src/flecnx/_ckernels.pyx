# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.  Same algorithms and output order as ``_kernels_py``."""
import numpy as np

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy


cdef struct Ctx:
    int n
    unsigned char *le
    int *jn
    int *p
    int *cells
    int ncells


cdef inline bint assoc_ok(Ctx *c, int a, int b, int d) noexcept nogil:
    cdef int n = c.n
    cdef int s = c.p[a * n + b]
    cdef int t = c.p[b * n + d]
    if s < 0 or t < 0:
        return True
    cdef int l = c.p[s * n + d]
    cdef int r = c.p[a * n + t]
    return l < 0 or r < 0 or l == r


cdef bint consistent(Ctx *c, int i, int j, int v) noexcept nogil:
    cdef int n = c.n
    cdef int *p = c.p
    cdef unsigned char *le = c.le
    cdef int *jn = c.jn
    cdef int pair[4]
    cdef int q, r, col, k, l, w, a, b, m, s, d
    pair[0] = i; pair[1] = j; pair[2] = j; pair[3] = i
    for q in range(2):
        r = pair[2 * q]
        col = pair[2 * q + 1]
        for k in range(n):
            w = p[r * n + k]
            if w < 0:
                continue
            if le[col * n + k] and not le[v * n + w]:
                return False
            if le[k * n + col] and not le[w * n + v]:
                return False
        for k in range(n):
            a = p[r * n + k]
            if a < 0:
                continue
            for l in range(k, n):
                b = p[r * n + l]
                if b < 0:
                    continue
                m = p[r * n + jn[k * n + l]]
                if m >= 0 and m != jn[a * n + b]:
                    return False
    for q in range(2):
        a = pair[2 * q]
        b = pair[2 * q + 1]
        for d in range(n):
            if not assoc_ok(c, a, b, d) or not assoc_ok(c, d, a, b):
                return False
    for q in range(2):
        s = pair[2 * q]
        d = pair[2 * q + 1]
        for a in range(n):
            for b in range(n):
                if p[a * n + b] == s and not assoc_ok(c, a, b, d):
                    return False
                if p[a * n + b] == d and not assoc_ok(c, s, a, b):
                    return False
    return True


cdef void search(Ctx *c, int depth, list out):
    cdef int n = c.n
    cdef int i, j, v
    if depth == c.ncells:
        arr = np.empty((n, n), dtype=np.intp)
        for i in range(n):
            for j in range(n):
                arr[i, j] = c.p[i * n + j]
        out.append(arr)
        return
    i = c.cells[2 * depth]
    j = c.cells[2 * depth + 1]
    for v in range(n):
        c.p[i * n + j] = v
        c.p[j * n + i] = v
        if consistent(c, i, j, v):
            search(c, depth + 1, out)
    c.p[i * n + j] = -1
    c.p[j * n + i] = -1


def monoid_tables(leq, join, int unit, int bottom):
    from ._kernels_py import _full_check

    le_np = np.ascontiguousarray(np.asarray(leq, dtype=bool), dtype=np.uint8)
    jn_np = np.ascontiguousarray(join, dtype=np.intc)
    cdef int n = le_np.shape[0]
    cdef unsigned char[:, ::1] le_v = le_np
    cdef int[:, ::1] jn_v = jn_np
    cdef Ctx c
    cdef int x, q, r, col, val, k
    cdef int trip[6]
    out = []
    c.n = n
    c.le = &le_v[0, 0] if n else NULL
    c.jn = &jn_v[0, 0] if n else NULL
    c.p = <int *> malloc(sizeof(int) * (n * n + 1))
    c.cells = <int *> malloc(sizeof(int) * (n * n + 1))
    try:
        for k in range(n * n):
            c.p[k] = -1
        for x in range(n):
            trip[0] = bottom; trip[1] = x; trip[2] = bottom
            trip[3] = unit; trip[4] = x; trip[5] = x
            for q in range(2):
                val = trip[3 * q + 2]
                for r, col in ((trip[3 * q], trip[3 * q + 1]), (trip[3 * q + 1], trip[3 * q])):
                    if c.p[r * n + col] != -1 and c.p[r * n + col] != val:
                        return []
                    c.p[r * n + col] = val
        c.ncells = 0
        for r in range(n):
            for col in range(r, n):
                if c.p[r * n + col] < 0:
                    c.cells[2 * c.ncells] = r
                    c.cells[2 * c.ncells + 1] = col
                    c.ncells += 1
        search(&c, 0, out)
    finally:
        free(c.p)
        free(c.cells)
    le_list = le_np.astype(bool).tolist()
    jn_list = jn_np.tolist()
    return [t for t in out if _full_check(t, le_list, jn_list)]


cdef inline int next_perm(int *a, int n) noexcept nogil:
    cdef int i = n - 2
    cdef int j, t
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return 0
    j = n - 1
    while a[j] <= a[i]:
        j -= 1
    t = a[i]; a[i] = a[j]; a[j] = t
    i += 1
    j = n - 1
    while i < j:
        t = a[i]; a[i] = a[j]; a[j] = t
        i += 1
        j -= 1
    return 1


def canonical_form(leq, prod=None, int unit=0, int zero=0):
    le_np = np.ascontiguousarray(np.asarray(leq, dtype=bool), dtype=np.uint8)
    cdef int n = le_np.shape[0]
    cdef bint has_prod = prod is not None
    if n <= 1:
        body = le_np.ravel().tolist() + ([0] * (n * n) + [0, 0] if has_prod else [])
        return bytes([n] + body)
    p_np = np.ascontiguousarray(prod if has_prod else np.zeros((n, n)), dtype=np.intc)
    cdef unsigned char[:, ::1] le = le_np
    cdef int[:, ::1] p = p_np
    cdef int length = n * n + (n * n + 2 if has_prod else 0)
    cdef unsigned char *best = <unsigned char *> malloc(length)
    cdef unsigned char *cur = <unsigned char *> malloc(length)
    cdef int *inv = <int *> malloc(sizeof(int) * n)
    cdef int *sig = <int *> malloc(sizeof(int) * n)
    cdef int k, a, b, pos, cmp, first = 1
    cdef unsigned char byte
    try:
        with nogil:
            for k in range(n):
                inv[k] = k
            while True:
                for k in range(n):
                    sig[inv[k]] = k
                # cmp: 0 = equal so far, -1 = smaller (keep writing), 1 = larger (abort)
                cmp = -1 if first else 0
                pos = 0
                for a in range(n):
                    for b in range(n):
                        byte = le[inv[a], inv[b]]
                        if cmp == 0:
                            if byte > best[pos]:
                                cmp = 1
                                break
                            if byte < best[pos]:
                                cmp = -1
                        cur[pos] = byte
                        pos += 1
                    if cmp == 1:
                        break
                if cmp != 1 and has_prod:
                    for a in range(n):
                        for b in range(n):
                            byte = <unsigned char> sig[p[inv[a], inv[b]]]
                            if cmp == 0:
                                if byte > best[pos]:
                                    cmp = 1
                                    break
                                if byte < best[pos]:
                                    cmp = -1
                            cur[pos] = byte
                            pos += 1
                        if cmp == 1:
                            break
                    if cmp != 1:
                        for k in range(2):
                            byte = <unsigned char> sig[unit if k == 0 else zero]
                            if cmp == 0:
                                if byte > best[pos]:
                                    cmp = 1
                                    break
                                if byte < best[pos]:
                                    cmp = -1
                            cur[pos] = byte
                            pos += 1
                if cmp == -1:
                    memcpy(best, cur, length)
                first = 0
                if not next_perm(inv, n):
                    break
        return bytes([n]) + best[:length]
    finally:
        free(best)
        free(cur)
        free(inv)
        free(sig)
