"""Semantic predicates over a single finite FLe-algebra.

Everything returns data: flags, :class:`CheckReport` objects or small report
dataclasses.  Witnesses are element indices; ``to_json`` methods map them to
labels.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from .algebra import FleAlgebra, UnaryMap, cnx_meet_table, cnx_prod_table
from .errors import DeltaNotIncreasing, NotIntegral, PreconditionViolated
from .report import CheckReport, failed, passed
from .terms import check, named_statement

THESES = ("AT", "AT'", "BT", "BT'")
DELTA_ARROWS = ("cmd", "cpd")


@lru_cache(maxsize=None)
def statement(name: str, arrow: str = "cm"):
    return named_statement(name, arrow)


def holds(alg: FleAlgebra, name: str, arrow: str = "cm", delta=None) -> CheckReport:
    """Check a registry statement; ``delta`` binds ``delta(...)`` and the δ-arrows."""
    return check(alg, statement(name, arrow), delta=delta, bdiamond=delta)


def _delta(alg: FleAlgebra, delta) -> Optional[UnaryMap]:
    if delta is None:
        return None
    return delta if isinstance(delta, UnaryMap) else UnaryMap.of(alg, delta)


def _require_increasing(alg: FleAlgebra, arrow: str, delta) -> Optional[UnaryMap]:
    d = _delta(alg, delta)
    if arrow in DELTA_ARROWS:
        if d is None:
            raise DeltaNotIncreasing(f"arrow {arrow!r} needs an increasing map")
        if not d.is_increasing:
            raise DeltaNotIncreasing(f"{d!r} is not increasing")
    return d


def arrow_table(alg: FleAlgebra, arrow: str, delta=None) -> np.ndarray:
    """The full table of a connective: ``res``, ``cm``, ``cp``, ``cmd`` or ``cpd``."""
    if arrow == "res":
        return alg.arrow
    d = None
    if arrow in DELTA_ARROWS:
        d = _delta(alg, delta)
        if d is None:
            raise DeltaNotIncreasing(f"arrow {arrow!r} needs a map")
    return (cnx_meet_table if arrow in ("cm", "cmd") else cnx_prod_table)(alg, d)


# ---------------------------------------------------------------- connexivity


def proto_connexive(alg: FleAlgebra, arrow: str = "cm", delta=None) -> CheckReport:
    """AT, AT', BT and BT' for the given arrow; the first failure is reported."""
    d = _require_increasing(alg, arrow, delta)
    for name in THESES:
        r = holds(alg, name, arrow, d)
        if not r.passed:
            return failed(r.witness, statement=r.statement, trace=r.trace, detail=f"{name} fails")
    return passed(detail=f"AT, AT', BT, BT' hold for {arrow}")


def weakly_connexive(alg: FleAlgebra, arrow: str = "cm", delta=None) -> CheckReport:
    """AT, AT', BTw and BTw'.  Also asserts that BTw and BTw' agree."""
    d = _require_increasing(alg, arrow, delta)
    reports = {name: holds(alg, name, arrow, d) for name in ("AT", "AT'", "BTw", "BTw'")}
    if arrow in ("cm", "cp") and reports["BTw"].passed != reports["BTw'"].passed:
        raise AssertionError(f"BTw and BTw' disagree for {arrow}")
    for name, r in reports.items():
        if not r.passed:
            return failed(r.witness, statement=r.statement, trace=r.trace, detail=f"{name} fails")
    return passed(detail=f"AT, AT', BTw, BTw' hold for {arrow}")


def non_symmetry_witness(alg: FleAlgebra, arrow: str = "cm", delta=None) -> Optional[tuple]:
    """Least ``(x, y)`` with ``x => y`` and ``y => x`` different, or None."""
    f = arrow_table(alg, arrow, delta)
    diff = np.argwhere(f != f.T)
    return (int(diff[0][0]), int(diff[0][1])) if len(diff) else None


def k_witnesses(alg: FleAlgebra, arrow: str = "cm", delta=None) -> tuple:
    """Least refutations of K1 and of K2 (each a dict or None)."""
    f = arrow_table(alg, arrow, delta)
    neg = alg.neg_table
    one = alg.leq[alg.unit]
    k1 = None
    for x in range(alg.size):
        if one[f[x, neg[x]]]:
            k1 = {"form": "x => ~x", "x": x}
        elif one[f[neg[x], x]]:
            k1 = {"form": "~x => x", "x": x}
        if k1:
            break
    hits = np.argwhere(one[f] & one[f[:, neg]])
    k2 = {"form": "x => y and x => ~y", "x": int(hits[0][0]), "y": int(hits[0][1])} if len(hits) else None
    return k1, k2


def strong_connexivity_refutation(alg: FleAlgebra, arrow: str = "cm", delta=None) -> Optional[dict]:
    """A witness satisfying ``x => ~x``, ``~x => x`` or both ``x => y`` and ``x => ~y``.

    Returns None when K1 and K2 both hold.
    """
    k1, k2 = k_witnesses(alg, arrow, delta)
    if k1:
        return {"kind": "K1", **k1}
    if k2:
        return {"kind": "K2", **k2}
    return None


# ---------------------------------------------------------------- table-level theses


def thesis_masks(alg: FleAlgebra, tables: np.ndarray, names=THESES) -> dict:
    """For a batch of binary tables ``(k, n, n)``, which members satisfy each thesis.

    Each entry is a ``(k, n)`` or ``(k, n, n)`` boolean array indexed by the
    assignment; the member passes when the array is all true on its row.
    """
    f = np.asarray(tables, dtype=np.intp)
    if f.ndim == 2:
        f = f[None]
    k = np.arange(len(f))[:, None]
    kk = k[:, :, None]
    neg = alg.neg_table
    one = alg.leq[alg.unit]
    idx = np.arange(alg.size)
    out = {}
    for name in names:
        if name == "AT":
            out[name] = one[neg[f[k, idx, neg[idx]]]]
        elif name == "AT'":
            out[name] = one[neg[f[k, neg[idx], idx]]]
        elif name == "BT":
            out[name] = one[f[kk, f, neg[f[:, :, neg]]]]
        elif name == "BT'":
            out[name] = one[f[kk, f[:, :, neg], neg[f]]]
        elif name == "P2":
            out[name] = alg.dm_table[f] == neg[f[:, :, neg]]
        elif name == "P1":
            out[name] = one[f[k, idx, alg.dm_table[idx]]]
        else:
            raise ValueError(f"no table-level form for {name!r}")
    return out


def tables_pass(alg: FleAlgebra, tables: np.ndarray, names=THESES) -> np.ndarray:
    """``(k,)`` booleans: member satisfies every named thesis."""
    masks = thesis_masks(alg, tables, names)
    ok = None
    for m in masks.values():
        row = m.reshape(len(m), -1).all(axis=1)
        ok = row if ok is None else ok & row
    return ok


def check_table(alg: FleAlgebra, table: np.ndarray, name: str) -> CheckReport:
    """A thesis on an arbitrary binary table, with the least failing assignment."""
    mask = thesis_masks(alg, table, (name,))[name][0]
    if mask.all():
        return passed(detail=f"{name} holds for the table")
    pos = np.unravel_index(int(np.argmin(mask.ravel())), mask.shape)
    witness = dict(zip(("x", "y"), (int(p) for p in pos)))
    return failed(witness, detail=f"{name} fails for the table")


# ---------------------------------------------------------------- classification

_FLAGS = (
    "integral",
    "zero_bounded",
    "involutive",
    "pc",
    "spc",
    "boolean",
    "zero_greatest",
    "dm1_greatest",
    "glivenko_ba",
    "glivenko_ba_int_route",
    "proto_cnx_meet",
    "proto_cnx_prod",
    "weakly_cnx_meet",
    "weakly_cnx_prod",
    "ns_meet",
    "ns_prod",
    "k1_refuted",
    "k2_refuted",
    "k1_refuted_prod",
    "k2_refuted_prod",
    "one_leq_zero",
)


@dataclass
class Classification:
    """Boolean flags, each false flag paired with a witness.

    ``ns_*`` and ``k*_refuted*`` flags are existential: for them the witness
    accompanies the true value.  ``glivenko_ba_int_route`` is None outside
    the integral case.
    """

    flags: dict
    witnesses: dict = field(default_factory=dict)
    cross_checks: dict = field(default_factory=dict)

    def __getattr__(self, name):
        flags = self.__dict__.get("flags", {})
        if name in flags:
            return flags[name]
        raise AttributeError(name)

    def to_json(self, alg: Optional[FleAlgebra] = None) -> dict:
        def lab(v):
            if isinstance(v, dict):
                return {k: lab(x) for k, x in v.items()}
            if isinstance(v, (list, tuple)):
                return [lab(x) for x in v]
            if isinstance(v, (int, np.integer)) and not isinstance(v, bool) and alg is not None:
                return alg.label(int(v))
            return v

        out = {}
        for name in _FLAGS:
            out[name] = self.flags.get(name)
            if name in self.witnesses:
                out[f"{name}_witness"] = lab(self.witnesses[name])
        for name, ok in self.cross_checks.items():
            out[f"crosscheck_{name}"] = ok
        return out


def classify(alg: FleAlgebra) -> Classification:
    flags, wit, cross = {}, {}, {}

    def stmt_flag(flag, name, arrow="cm"):
        r = holds(alg, name, arrow)
        flags[flag] = r.passed
        if not r.passed:
            wit[flag] = r.witness
        return r

    stmt_flag("integral", "INTEGRAL")
    stmt_flag("zero_bounded", "ZERO_BOUNDED")
    stmt_flag("involutive", "INVOLUTIVE")
    stmt_flag("pc", "PC")
    stmt_flag("spc", "SPC")
    stmt_flag("zero_greatest", "ZERO_GREATEST")
    stmt_flag("dm1_greatest", "TOP_DM1")
    stmt_flag("one_leq_zero", "ONE_LEQ_ZERO")

    flags["boolean"] = flags["integral"] and flags["involutive"] and flags["pc"]
    if not flags["boolean"]:
        first = next(f for f in ("integral", "involutive", "pc") if not flags[f])
        wit["boolean"] = {"via": first, **wit[first]}
    direct = holds(alg, "BOOL_PROD").passed and holds(alg, "BOOL_ARROW").passed
    cross["boolean_direct"] = direct == flags["boolean"]
    cross["zero_greatest_neg_constant"] = holds(alg, "NEG_CONSTANT").passed == flags["zero_greatest"]

    a, b = holds(alg, "GLV_A"), holds(alg, "GLV_B")
    flags["glivenko_ba"] = a.passed and b.passed
    if not flags["glivenko_ba"]:
        wit["glivenko_ba"] = {"via": "GLV_A" if not a.passed else "GLV_B", **(a if not a.passed else b).witness}
    if flags["integral"]:
        flags["glivenko_ba_int_route"] = flags["spc"]
        cross["glivenko_ba_spc"] = flags["spc"] == flags["glivenko_ba"]
        cross["glivenko_ba_alt"] = holds(alg, "GLV_B_ALT").passed == flags["glivenko_ba"]
    else:
        flags["glivenko_ba_int_route"] = None

    for suffix, arrow in (("meet", "cm"), ("prod", "cp")):
        for kind, fn in (("proto", proto_connexive), ("weakly", weakly_connexive)):
            r = fn(alg, arrow)
            flags[f"{kind}_cnx_{suffix}"] = r.passed
            if not r.passed:
                wit[f"{kind}_cnx_{suffix}"] = {"statement": str(r.statement), **r.witness}
        ns = non_symmetry_witness(alg, arrow)
        flags[f"ns_{suffix}"] = ns is not None
        if ns is not None:
            wit[f"ns_{suffix}"] = {"x": ns[0], "y": ns[1]}
        tail = "" if arrow == "cm" else "_prod"
        for k, w in zip(("k1", "k2"), k_witnesses(alg, arrow)):
            flags[f"{k}_refuted{tail}"] = w is not None
            if w is not None:
                wit[f"{k}_refuted{tail}"] = w
    return Classification(flags, wit, cross)


# ---------------------------------------------------------------- δ analyses


def increasing_tables(alg: FleAlgebra) -> np.ndarray:
    """All increasing unary tables as a ``(k, n)`` array, lexicographic order."""
    ups = [alg.lattice.upset(x) for x in range(alg.size)]
    grids = np.indices([len(u) for u in ups]).reshape(alg.size, -1)
    return np.stack([ups[x][grids[x]] for x in range(alg.size)], axis=1)


def increasing_maps(alg: FleAlgebra):
    """Every map with ``x <= delta(x)``; the count is the product of upset sizes."""
    for t in increasing_tables(alg):
        yield UnaryMap.of(alg, t)


def _batched_arrow(alg: FleAlgebra, arrow: str, deltas: np.ndarray) -> np.ndarray:
    """``(k, n, n)`` tables of a δ-arrow for a batch of δ tables."""
    back = alg.arrow[:, deltas]  # back[y, k, x] = y -> delta_k(x)
    back = np.transpose(back, (1, 2, 0))
    fwd = np.broadcast_to(alg.arrow, back.shape)
    op = alg.meet if arrow in ("cm", "cmd") else alg.prod
    return op[fwd, back]


@dataclass
class DeltaForcingReport:
    arrow: str
    maps_checked: int
    passing: list
    dm: list

    @property
    def forced(self) -> bool:
        return all(p == self.dm for p in self.passing)

    def to_json(self) -> dict:
        return {
            "arrow": self.arrow,
            "maps_checked": self.maps_checked,
            "passing": self.passing,
            "dm": self.dm,
            "forced": self.forced,
        }


def delta_forcing(alg: FleAlgebra, arrow: str = "cmd", statement_name: str = "BT") -> DeltaForcingReport:
    """Which increasing δ make the δ-arrow satisfy BT.  Requires Glivenko membership."""
    if not (holds(alg, "GLV_A").passed and holds(alg, "GLV_B").passed):
        raise PreconditionViolated("algebra is not in the Glivenko variety relative to Boolean algebras")
    deltas = increasing_tables(alg)
    ok = tables_pass(alg, _batched_arrow(alg, arrow, deltas), (statement_name,))
    return DeltaForcingReport(arrow, len(deltas), deltas[ok].tolist(), alg.dm_table.tolist())


# ---------------------------------------------------------------- interval analysis


@dataclass
class IntervalReport:
    mode: str
    member_count: int
    checked: int
    all_proto: bool
    capped_out: bool = False
    any_bt: bool = False
    any_at: bool = False
    first_failure: Optional[dict] = None
    endpoints: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.all_proto and not self.capped_out

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "member_count": self.member_count,
            "checked": self.checked,
            "all_proto": self.all_proto,
            "capped_out": self.capped_out,
            "any_bt": self.any_bt,
            "any_at": self.any_at,
            "first_failure": self.first_failure,
            "endpoints": self.endpoints,
        }


def parse_interval_mode(mode) -> tuple:
    """``endpoints``, ``sampled:<n>`` or ``exhaustive:<cap>`` (or the tuple forms)."""
    if isinstance(mode, tuple):
        return mode
    if mode == "endpoints":
        return ("endpoints",)
    kind, _, arg = str(mode).partition(":")
    if kind == "sampled":
        return ("sampled", int(arg or 1000))
    if kind in ("exhaustive", "exhaustive_capped"):
        return ("exhaustive", int(arg or 2**20))
    raise ValueError(f"unknown interval mode {mode!r}")


def interval_cells(alg: FleAlgebra, delta=None) -> list:
    """Per cell ``(x, y)``, the elements between the product and meet δ-arrows."""
    d = _delta(alg, delta)
    lo = cnx_prod_table(alg, d)
    hi = cnx_meet_table(alg, d)
    le = alg.leq
    return [np.flatnonzero(le[lo[x, y]] & le[:, hi[x, y]]) for x in range(alg.size) for y in range(alg.size)]


def _summarise(alg, members, ok_proto, ok_bt, ok_at, report):
    report.checked += len(members)
    report.any_bt |= bool(ok_bt.any())
    report.any_at |= bool(ok_at.any())
    if not ok_proto.all() and report.first_failure is None:
        bad = members[int(np.argmin(ok_proto))]
        for name in THESES:
            r = check_table(alg, bad, name)
            if not r.passed:
                report.first_failure = {"thesis": name, "witness": r.witness, "member": bad.tolist()}
                break
        report.all_proto = False


def _check_batch(alg, members, report):
    masks = thesis_masks(alg, members)
    rows = {k: v.reshape(len(members), -1).all(axis=1) for k, v in masks.items()}
    proto = rows["AT"] & rows["AT'"] & rows["BT"] & rows["BT'"]
    _summarise(alg, members, proto, rows["BT"], rows["AT"], report)


def interval_analysis(alg: FleAlgebra, delta=None, mode="endpoints", seed: int = 0, chunk: int = 4096) -> IntervalReport:
    """Proto-connexivity across the interval between the δ-arrows.

    Requires an integral algebra, where the product δ-arrow lies below the
    meet δ-arrow pointwise.
    """
    if not holds(alg, "INTEGRAL").passed:
        raise NotIntegral("interval analysis needs an integral algebra")
    d = _delta(alg, delta)
    if d is not None and not d.is_increasing:
        raise DeltaNotIncreasing(f"{d!r} is not increasing")
    m = parse_interval_mode(mode)
    n = alg.size
    cells = interval_cells(alg, d)
    count = int(np.prod([len(c) for c in cells], dtype=object))
    lo = cnx_prod_table(alg, d)
    hi = cnx_meet_table(alg, d)
    report = IntervalReport(mode=":".join(str(p) for p in m), member_count=count, checked=0, all_proto=True)
    for name, t in (("lower", lo), ("upper", hi)):
        report.endpoints[name] = bool(tables_pass(alg, t)[0])
    if m[0] == "endpoints" or (m[0] == "exhaustive" and count > m[1]):
        report.capped_out = m[0] == "exhaustive"
        _check_batch(alg, np.stack([lo, hi]), report)
        return report
    if m[0] == "sampled":
        rng = np.random.default_rng(seed)
        picks = np.stack([c[rng.integers(0, len(c), size=m[1])] for c in cells], axis=1)
        members = np.concatenate([np.stack([lo, hi]), picks.reshape(-1, n, n)])
        for start in range(0, len(members), chunk):
            _check_batch(alg, members[start : start + chunk], report)
        return report
    it = itertools.product(*cells)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            break
        _check_batch(alg, np.array(block, dtype=np.intp).reshape(-1, n, n), report)
    return report


# ---------------------------------------------------------------- ♦-expansions


@dataclass
class BDiamondReport:
    admissible: list
    dm: list
    bounded_samples: int
    weakest_violations: int
    prod_within_bounds: Optional[bool]

    @property
    def unique_is_dm(self) -> bool:
        return self.admissible == [self.dm]

    @property
    def passed(self) -> bool:
        return self.unique_is_dm and self.weakest_violations == 0 and self.prod_within_bounds is not False

    def to_json(self) -> dict:
        return {
            "admissible": self.admissible,
            "dm": self.dm,
            "unique_is_dm": self.unique_is_dm,
            "bounded_samples": self.bounded_samples,
            "weakest_violations": self.weakest_violations,
            "prod_within_bounds": self.prod_within_bounds,
        }


def bdiamond_expansions(alg: FleAlgebra, samples: int = 100, seed: int = 0) -> BDiamondReport:
    """All ♦ tables satisfying A1 and A2, plus the weakest-arrow check.

    A2 forces ``♦x`` into the upset of ``◇x``, which bounds the search.
    """
    n = alg.size
    dmt, neg, le = alg.dm_table, alg.neg_table, alg.leq
    ups = [alg.lattice.upset(int(dmt[x])) for x in range(n)]
    grids = np.indices([len(u) for u in ups]).reshape(n, -1)
    cand = np.stack([ups[x][grids[x]] for x in range(n)], axis=1)
    idx = np.arange(n)
    a1 = le[cand[:, neg[idx]], neg[cand]].all(axis=1)
    a2 = le[dmt[idx], cand].all(axis=1)
    admissible = cand[a1 & a2].tolist()

    upper_a = alg.arrow
    upper_b = alg.arrow[:, dmt].T  # y -> ◇x at [x, y]
    cm = cnx_meet_table(alg)
    rng = np.random.default_rng(seed)
    violations = 0
    allowed = [[np.flatnonzero(le[:, upper_a[x, y]] & le[:, upper_b[x, y]]) for y in range(n)] for x in range(n)]
    for _ in range(samples):
        f = np.array([[rng.choice(allowed[x][y]) for y in range(n)] for x in range(n)])
        violations += int(not le[f, cm].all())
    prod_ok = None
    if holds(alg, "INTEGRAL").passed:
        cp = cnx_prod_table(alg)
        prod_ok = bool(le[cp, upper_a].all() and le[cp, upper_b].all() and le[cp, cm].all())
    return BDiamondReport(admissible, dmt.tolist(), samples, violations, prod_ok)
