"""Finite FLe-algebras: lattices, residuated commutative monoids, and a pointed zero.

Elements are dense indices ``0 .. size-1``.  Every operation is a table lookup,
so all tables are stored as read-only ``numpy`` arrays of dtype ``intp``
(booleans for the order).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidAlgebra, MalformedTable, NotALattice, NotANucleus, NotResiduated
from .report import CheckReport, failed, passed


def _frozen(a, dtype=np.intp) -> np.ndarray:
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


def _square(table, n, name, dtype=np.intp) -> np.ndarray:
    try:
        arr = np.asarray(table, dtype=dtype)
    except (TypeError, ValueError) as exc:
        raise MalformedTable(f"{name}: not a numeric table ({exc})") from None
    if arr.shape != (n, n):
        raise MalformedTable(f"{name}: expected shape ({n}, {n}), got {arr.shape}")
    if dtype is not bool and n and (arr.min() < 0 or arr.max() >= n):
        bad = np.argwhere((arr < 0) | (arr >= n))[0]
        raise MalformedTable(f"{name}: entry {tuple(int(i) for i in bad)} out of range")
    return arr


# ---------------------------------------------------------------- lattices


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    size: int
    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray

    @classmethod
    def from_leq(cls, leq) -> "FiniteLattice":
        n = len(leq)
        le = _square(leq, n, "leq", dtype=bool)
        _check_partial_order(le)
        meet = np.empty((n, n), dtype=np.intp)
        join = np.empty((n, n), dtype=np.intp)
        for x in range(n):
            for y in range(x, n):
                lower = np.flatnonzero(le[:, x] & le[:, y])
                upper = np.flatnonzero(le[x, :] & le[y, :])
                glb = [z for z in lower if le[lower, z].all()]
                lub = [z for z in upper if le[z, upper].all()]
                if not glb or not lub:
                    raise NotALattice(f"elements {x} and {y} have no {'meet' if not glb else 'join'}")
                meet[x, y] = meet[y, x] = glb[0]
                join[x, y] = join[y, x] = lub[0]
        return cls(n, _frozen(le, bool), _frozen(meet), _frozen(join))

    @classmethod
    def from_ops(cls, meet, join) -> "FiniteLattice":
        n = len(meet)
        m = _square(meet, n, "meet")
        j = _square(join, n, "join")
        le = m == np.arange(n)[:, None]
        lat = cls.from_leq(le)
        if not (np.array_equal(lat.meet, m) and np.array_equal(lat.join, j)):
            raise NotALattice("meet and join tables disagree with the order they induce")
        return lat

    @classmethod
    def from_tables(cls, leq=None, meet=None, join=None) -> "FiniteLattice":
        if leq is not None:
            lat = cls.from_leq(leq)
            if meet is not None and not np.array_equal(lat.meet, np.asarray(meet)):
                raise NotALattice("supplied meet table disagrees with leq")
            if join is not None and not np.array_equal(lat.join, np.asarray(join)):
                raise NotALattice("supplied join table disagrees with leq")
            return lat
        if meet is None or join is None:
            raise MalformedTable("need either leq or both meet and join")
        return cls.from_ops(meet, join)

    @cached_property
    def bottom(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=1))[0])

    @cached_property
    def top(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=0))[0])

    def upset(self, x: int) -> np.ndarray:
        return np.flatnonzero(self.leq[x])

    def join_all(self, elements) -> int:
        acc = self.bottom
        for e in elements:
            acc = self.join[acc, e]
        return int(acc)

    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())


def _check_partial_order(le: np.ndarray) -> None:
    n = le.shape[0]
    if not le.diagonal().all():
        raise NotALattice(f"leq not reflexive at {int(np.flatnonzero(~le.diagonal())[0])}")
    anti = le & le.T & ~np.eye(n, dtype=bool)
    if anti.any():
        x, y = np.argwhere(anti)[0]
        raise NotALattice(f"leq not antisymmetric at ({x}, {y})")
    comp = (le.astype(np.int64) @ le.astype(np.int64)) > 0
    if (comp & ~le).any():
        x, y = np.argwhere(comp & ~le)[0]
        raise NotALattice(f"leq not transitive at ({x}, {y})")


# ---------------------------------------------------------------- algebras


@dataclass(frozen=True, eq=False)
class FleAlgebra:
    """A pointed commutative residuated lattice.

    Construct through :meth:`build`, which recomputes the residual and
    validates.  The raw constructor performs no checks; :func:`validate`
    reports on such raw instances.
    """

    lattice: FiniteLattice
    prod: np.ndarray
    unit: int
    zero: int
    arrow: np.ndarray
    labels: Optional[tuple] = None

    @classmethod
    def build(cls, prod, unit, zero, leq=None, meet=None, join=None, arrow=None, labels=None) -> "FleAlgebra":
        lat = FiniteLattice.from_tables(leq, meet, join)
        n = lat.size
        p = _square(prod, n, "prod")
        for name, v in (("unit", unit), ("zero", zero)):
            if not (0 <= int(v) < n):
                raise MalformedTable(f"{name} index {v} out of range")
        if labels is not None and len(labels) != n:
            raise MalformedTable("labels length differs from size")
        computed = residual_from_product(lat, p, int(unit))
        given = computed if arrow is None else _square(arrow, n, "arrow")
        alg = cls(lat, _frozen(p), int(unit), int(zero), _frozen(given), tuple(labels) if labels is not None else None)
        report = validate(alg)
        if not report.passed:
            raise InvalidAlgebra(report)
        return alg

    @property
    def size(self) -> int:
        return self.lattice.size

    @property
    def leq(self) -> np.ndarray:
        return self.lattice.leq

    @property
    def meet(self) -> np.ndarray:
        return self.lattice.meet

    @property
    def join(self) -> np.ndarray:
        return self.lattice.join

    @property
    def top(self) -> int:
        return self.lattice.top

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @cached_property
    def neg_table(self) -> np.ndarray:
        return _frozen(self.arrow[:, self.zero])

    @cached_property
    def dm_table(self) -> np.ndarray:
        return _frozen(self.neg_table[self.neg_table])

    @cached_property
    def dm(self) -> "UnaryMap":
        return UnaryMap.of(self, self.dm_table)

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def element(self, name) -> int:
        """Index of an element given by label or index."""
        if isinstance(name, (int, np.integer)):
            return int(name)
        if self.labels is not None and name in self.labels:
            return self.labels.index(name)
        return int(name)

    def with_zero(self, zero: int) -> "FleAlgebra":
        return FleAlgebra(self.lattice, self.prod, self.unit, int(zero), self.arrow, self.labels)

    def relabel(self, perm: Sequence[int]) -> "FleAlgebra":
        """Isomorphic copy in which old element ``i`` becomes ``perm[i]``."""
        perm = np.asarray(perm, dtype=np.intp)
        inv = np.argsort(perm)
        leq = self.leq[np.ix_(inv, inv)]
        prod = perm[self.prod[np.ix_(inv, inv)]]
        labels = tuple(self.labels[i] for i in inv) if self.labels is not None else None
        return FleAlgebra.build(prod, int(perm[self.unit]), int(perm[self.zero]), leq=leq, labels=labels)

    def __repr__(self) -> str:
        return f"FleAlgebra(size={self.size}, unit={self.unit}, zero={self.zero})"


def residual_from_product(lattice: FiniteLattice, prod, unit: int) -> np.ndarray:
    """Residual ``x -> y`` as the join of ``{z : x*z <= y}``.

    Raises :class:`NotResiduated` when that set is empty, or when its join
    does not satisfy the residuation law.
    """
    n = lattice.size
    p = np.asarray(prod, dtype=np.intp)
    le = lattice.leq
    arrow = np.empty((n, n), dtype=np.intp)
    for x in range(n):
        below = le[p[x]]  # below[z, y] == (x*z <= y)
        for y in range(n):
            zs = np.flatnonzero(below[:, y])
            if zs.size == 0:
                raise NotResiduated(x, y, f"{{z : {x}*z <= {y}}} is empty")
            arrow[x, y] = lattice.join_all(zs)
    # prod(x, y) <= z  iff  x <= arrow(y, z)
    lhs = le[p[:, :, None], np.arange(n)[None, None, :]]
    rhs = le[np.arange(n)[:, None, None], arrow[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        x, y, z = (int(v) for v in bad[0])
        raise NotResiduated(y, z, f"residuation fails for x={x}, y={y}, z={z}")
    return _frozen(arrow)


def validate(alg: FleAlgebra) -> CheckReport:
    """Re-check every FLe-algebra axiom on raw tables."""
    n = alg.size
    lat = alg.lattice
    _square(lat.leq, n, "leq", dtype=bool)
    for name, t in (("meet", lat.meet), ("join", lat.join), ("prod", alg.prod), ("arrow", alg.arrow)):
        _square(t, n, name)
    for name, v in (("unit", alg.unit), ("zero", alg.zero)):
        if not (0 <= v < n):
            raise MalformedTable(f"{name} index {v} out of range")
    le, meet, join, p, a = lat.leq, lat.meet, lat.join, alg.prod, alg.arrow
    idx = np.arange(n)

    def fail(axiom, w, detail):
        return failed(w, statement=axiom, detail=detail)

    try:
        _check_partial_order(le)
    except NotALattice as exc:
        return fail("partial order", {}, str(exc))
    for x in range(n):
        for y in range(n):
            lower = le[:, x] & le[:, y]
            upper = le[x, :] & le[y, :]
            m, j = meet[x, y], join[x, y]
            if not (lower[m] and le[lower, m].all()):
                return fail("meet", {"x": x, "y": y}, f"meet({x},{y}) = {m} is not the greatest lower bound")
            if not (upper[j] and le[j, upper].all()):
                return fail("join", {"x": x, "y": y}, f"join({x},{y}) = {j} is not the least upper bound")
    bad = np.argwhere(p != p.T)
    if bad.size:
        x, y = bad[0]
        return fail("commutativity", {"x": int(x), "y": int(y)}, f"{x}*{y} != {y}*{x}")
    bad = np.flatnonzero(p[:, alg.unit] != idx)
    if bad.size:
        return fail("unit", {"x": int(bad[0])}, f"{bad[0]}*1 != {bad[0]}")
    assoc = p[p[:, :, None], idx[None, None, :]] != p[idx[:, None, None], p[None, :, :]]
    bad = np.argwhere(assoc)
    if bad.size:
        x, y, z = (int(v) for v in bad[0])
        return fail("associativity", {"x": x, "y": y, "z": z}, f"({x}*{y})*{z} != {x}*({y}*{z})")
    lhs = le[p[:, :, None], idx[None, None, :]]
    rhs = le[idx[:, None, None], a[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        x, y, z = (int(v) for v in bad[0])
        return fail(
            "residuation",
            {"x": x, "y": y, "z": z},
            f"residuation fails at arrow({y}, {z}): {x}*{y} = {p[x, y]}, arrow({y},{z}) = {a[y, z]}",
        )
    for x in range(n):
        for y in range(n):
            zs = np.flatnonzero(le[p[x], y])
            if zs.size == 0 or a[x, y] != lat.join_all(zs):
                return fail("residual", {"x": x, "y": y}, f"arrow({x},{y}) is not the join of {{z : {x}*z <= {y}}}")
    return passed(statement="FLe-algebra")


# ---------------------------------------------------------------- unary maps


@dataclass(frozen=True, eq=False)
class UnaryMap:
    table: np.ndarray
    is_increasing: bool
    is_monotone: bool
    is_idempotent: bool
    is_nucleus: bool

    @classmethod
    def of(cls, alg: FleAlgebra, table) -> "UnaryMap":
        n = alg.size
        t = np.asarray(table, dtype=np.intp)
        if t.shape != (n,) or (n and (t.min() < 0 or t.max() >= n)):
            raise MalformedTable(f"unary table must have {n} entries in range")
        le = alg.leq
        idx = np.arange(n)
        inc = bool(le[idx, t].all())
        mono = bool((~le | le[t[:, None], t[None, :]]).all())
        idem = bool((t[t] == t).all())
        sub = bool(le[alg.prod[t[:, None], t[None, :]], t[alg.prod]].all())
        return cls(_frozen(t), inc, mono, idem, inc and mono and idem and sub)

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other) -> bool:
        if isinstance(other, UnaryMap):
            return np.array_equal(self.table, other.table)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        return f"UnaryMap({self.table.tolist()})"


def identity_map(alg: FleAlgebra) -> UnaryMap:
    return UnaryMap.of(alg, np.arange(alg.size))


# ---------------------------------------------------------------- derived operations


def neg(alg: FleAlgebra, x: int) -> int:
    return int(alg.arrow[x, alg.zero])


def dm(alg: FleAlgebra, x: int) -> int:
    return neg(alg, neg(alg, x))


def _delta_table(alg: FleAlgebra, delta) -> np.ndarray:
    if delta is None:
        return alg.dm_table
    if isinstance(delta, UnaryMap):
        return delta.table
    return np.asarray(delta, dtype=np.intp)


def cnx_meet(alg: FleAlgebra, delta, x: int, y: int) -> int:
    d = _delta_table(alg, delta)
    return int(alg.meet[alg.arrow[x, y], alg.arrow[y, d[x]]])


def cnx_prod(alg: FleAlgebra, delta, x: int, y: int) -> int:
    d = _delta_table(alg, delta)
    return int(alg.prod[alg.arrow[x, y], alg.arrow[y, d[x]]])


def cnx_meet_table(alg: FleAlgebra, delta=None) -> np.ndarray:
    d = _delta_table(alg, delta)
    return alg.meet[alg.arrow, alg.arrow[:, d].T]


def cnx_prod_table(alg: FleAlgebra, delta=None) -> np.ndarray:
    d = _delta_table(alg, delta)
    return alg.prod[alg.arrow, alg.arrow[:, d].T]


def nucleus_image(alg: FleAlgebra, gamma: UnaryMap) -> FleAlgebra:
    """The algebra on ``gamma[A]`` with join and product closed by ``gamma``."""
    if not gamma.is_nucleus:
        raise NotANucleus(f"{gamma!r} is not a nucleus")
    g = gamma.table
    carrier = np.unique(g)
    pos = {int(e): i for i, e in enumerate(carrier)}
    sub = np.ix_(carrier, carrier)
    remap = np.vectorize(lambda e: pos[int(e)], otypes=[np.intp])
    leq = alg.leq[sub]
    prod = remap(g[alg.prod[sub]])
    arrow = remap(alg.arrow[sub])
    labels = tuple(alg.label(int(e)) for e in carrier) if alg.labels is not None else None
    return FleAlgebra.build(prod, pos[int(g[alg.unit])], pos[int(g[alg.zero])], leq=leq, arrow=arrow, labels=labels)


# ---------------------------------------------------------------- JSON


def algebra_to_json(alg: FleAlgebra) -> dict:
    out = {
        "size": alg.size,
        "leq": alg.leq.astype(bool).tolist(),
        "prod": alg.prod.tolist(),
        "unit": alg.unit,
        "zero": alg.zero,
        "arrow": alg.arrow.tolist(),
    }
    if alg.labels is not None:
        out["labels"] = list(alg.labels)
    return out


def algebra_from_json(obj: dict) -> FleAlgebra:
    n = obj["size"]
    if "leq" not in obj and not ("meet" in obj and "join" in obj):
        raise MalformedTable('need "leq" or both "meet" and "join"')
    alg = FleAlgebra.build(
        obj["prod"],
        obj["unit"],
        obj["zero"],
        leq=obj.get("leq"),
        meet=obj.get("meet"),
        join=obj.get("join"),
        arrow=obj.get("arrow"),
        labels=obj.get("labels"),
    )
    if alg.size != n:
        raise MalformedTable(f"size {n} disagrees with tables of size {alg.size}")
    return alg


def load_algebra(path) -> FleAlgebra:
    with open(path) as fh:
        return algebra_from_json(json.load(fh))


def save_algebra(alg: FleAlgebra, path) -> None:
    Path(path).write_text(json.dumps(algebra_to_json(alg)) + "\n")
