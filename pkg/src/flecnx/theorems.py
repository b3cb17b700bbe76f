"""Registry of theorem checks run over a corpus of finite algebras.

Each :class:`TheoremCheck` states a per-algebra claim, a hypothesis scope and
a body.  :func:`run_suite` applies every check to every in-scope algebra and
collects failures as data.  Scope membership is decided twice, once from the
defining statements and once from the classification flags; a disagreement
raises :class:`ScopeViolation`.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from .algebra import FleAlgebra, nucleus_image
from .enumerator import canonicalize, form_hash
from .errors import ExpectationMismatch, ScopeViolation, UnknownCheck
from .properties import (
    _batched_arrow,
    bdiamond_expansions,
    classify,
    delta_forcing,
    holds,
    increasing_tables,
    interval_analysis,
    interval_cells,
    proto_connexive,
    thesis_masks,
    weakly_connexive,
)
from .report import CheckReport, failed, passed


@dataclass(frozen=True)
class SuiteConfig:
    threads: int = 1
    seed: int = 0
    samples: int = 1000
    exhaustive_max_size: int = 3
    cap: int = 2**20
    member_samples: int = 4
    bdiamond_samples: int = 100
    checks: Optional[tuple] = None


# ---------------------------------------------------------------- per-algebra context


class Item:
    """One algebra under test, with lazily computed shared data."""

    def __init__(self, key: str, alg: FleAlgebra, order: tuple, config: SuiteConfig):
        self.key = key
        self.alg = alg
        self.order = order
        self.config = config

    @cached_property
    def flags(self) -> dict:
        return classify(self.alg).flags

    def holds(self, name, arrow="cm") -> bool:
        return holds(self.alg, name, arrow).passed

    def proto(self, arrow) -> bool:
        return proto_connexive(self.alg, arrow).passed

    @cached_property
    def deltas(self) -> np.ndarray:
        return increasing_tables(self.alg)

    @cached_property
    def delta_members(self) -> tuple:
        """``(members, deltas)``: both δ-arrow endpoints plus a few seeded interval samples, per δ."""
        alg, cfg = self.alg, self.config
        n = alg.size
        rng = np.random.default_rng(cfg.seed)
        lo = _batched_arrow(alg, "cpd", self.deltas)
        hi = _batched_arrow(alg, "cmd", self.deltas)
        members, owners = [], []
        for k, d in enumerate(self.deltas):
            members += [lo[k], hi[k]]
            cells = interval_cells(alg, d)
            for _ in range(cfg.member_samples):
                members.append(np.array([c[rng.integers(len(c))] for c in cells]).reshape(n, n))
            owners += [k] * (2 + cfg.member_samples)
        return np.stack(members), self.deltas[np.array(owners)]

    @cached_property
    def interval(self):
        cfg = self.config
        mode = f"exhaustive:{cfg.cap}" if self.alg.size <= cfg.exhaustive_max_size else f"sampled:{cfg.samples}"
        return interval_analysis(self.alg, mode=mode, seed=cfg.seed)


# ---------------------------------------------------------------- scopes

# scope name -> (defining statements, classification route)
_SCOPES = {
    "all": ((), lambda f: True),
    "integral": (("INTEGRAL",), lambda f: f["integral"]),
    "integral_zero_bounded": (("INTEGRAL", "ZERO_BOUNDED"), lambda f: f["integral"] and f["zero_bounded"]),
    "dm_integral": (("TOP_DM1",), lambda f: f["dm1_greatest"]),
    "glivenko_ba": (("GLV_A", "GLV_B"), lambda f: f["glivenko_ba"]),
    "zero_greatest": (("ZERO_GREATEST",), lambda f: f["zero_greatest"]),
    "proto_cm": ((), lambda f: f["proto_cnx_meet"]),
}


def in_scope(item: Item, scope: str) -> bool:
    names, route = _SCOPES[scope]
    if scope == "proto_cm":
        direct = item.proto("cm")
    else:
        direct = all(item.holds(n) for n in names)
    if direct != route(item.flags):
        raise ScopeViolation(f"{item.key}: scope {scope} disagrees between statements and flags")
    return direct


# ---------------------------------------------------------------- helpers


def _equiv(**values) -> CheckReport:
    if len(set(values.values())) <= 1:
        return passed(detail=" <=> ".join(values))
    return failed({k: bool(v) for k, v in values.items()}, detail="equivalence broken")


def _implies(cases: dict) -> CheckReport:
    """``cases`` maps a label to (premise, conclusion)."""
    for label, (p, q) in cases.items():
        if p and not q:
            return failed({"case": label}, detail=f"{label}: premise holds, conclusion fails")
    return passed(detail=", ".join(cases))


def _all(names, item: Item, arrow="cm") -> CheckReport:
    for name in names:
        r = holds(item.alg, name, arrow)
        if not r.passed:
            return failed({"statement": name, **r.witness})
    return passed(detail=", ".join(names))


# ---------------------------------------------------------------- bodies


def _t1(it):
    return _all(("RL1", "RL2", "RL3", "RL4", "RL5"), it)


def _t2(it):
    r = _all(("DM1", "DM2", "DM3", "DM4", "DM5", "DM6A", "DM6B"), it)
    if not r.passed:
        return r
    image = nucleus_image(it.alg, it.alg.dm)
    if not holds(image, "INVOLUTIVE").passed:
        return failed({"statement": "image involutive"})
    return passed(detail="double-negation laws; image involutive")


def _t3(it):
    f = it.flags
    return _equiv(integral_involutive_pc=f["integral"] and f["involutive"] and f["pc"],
                  prod_is_meet_and_arrow_classical=it.holds("BOOL_PROD") and it.holds("BOOL_ARROW"))


def _is_boolean(alg) -> bool:
    return all(holds(alg, n).passed for n in ("INTEGRAL", "INVOLUTIVE", "PC"))


def _t4(it):
    f = it.flags
    glv_b = it.holds("GLV_B")
    image = nucleus_image(it.alg, it.alg.dm)
    return _equiv(glivenko_ba=f["glivenko_ba"], pc_glvb_dm1_top=f["pc"] and glv_b and f["dm1_greatest"],
                  image_boolean_glvb=_is_boolean(image) and glv_b)


def _t5(it):
    return _equiv(glivenko_ba=it.flags["glivenko_ba"], spc=it.flags["spc"], glv_b_alt=it.holds("GLV_B_ALT"))


def _t6(it):
    return _equiv(proto_res=it.proto("res"), at_res=it.holds("AT", "res"), zero_greatest=it.flags["zero_greatest"])


def _t7(it):
    return _equiv(proto=it.flags["proto_cnx_meet"], **{n.replace("'", "_dual"): it.holds(n) for n in ("BT", "BT'", "P2", "P3")})


def _t8(it):
    return _equiv(proto_cm=it.flags["proto_cnx_meet"], glivenko_ba=it.flags["glivenko_ba"])


def _t9(it):
    return _equiv(proto_cp=it.flags["proto_cnx_prod"], bt_cp=it.holds("BT", "cp"), bt_dual_cp=it.holds("BT'", "cp"),
                  p2_cp=it.holds("P2", "cp"), proto_cm=it.flags["proto_cnx_meet"])


def _t10(it):
    f = it.flags
    return _equiv(proto_cm=f["proto_cnx_meet"], proto_cp_and_dm1_top=f["proto_cnx_prod"] and f["dm1_greatest"])


def _t11(it):
    f = it.flags
    return _equiv(symmetric_cm=not f["ns_meet"], symmetric_cp=not f["ns_prod"], boolean=f["boolean"])


def _member_masks(it):
    members, owners = it.delta_members
    masks = thesis_masks(it.alg, members, ("AT", "AT'", "BT"))
    rows = {k: v.reshape(len(members), -1).all(axis=1) for k, v in masks.items()}
    return members, owners, rows


def _t12(it):
    alg = it.alg
    members, owners, rows = _member_masks(it)
    idx = np.arange(alg.size)
    unit_law = (members[:, alg.unit, :] == idx).all(axis=1) & (members[:, :, alg.unit] == owners).all(axis=1)
    if not unit_law.all():
        k = int(np.argmin(unit_law))
        return failed({"clause": 1, "member": k, "delta": owners[k].tolist()})
    at = rows["AT"] | rows["AT'"]
    if at.any() and not it.flags["pc"]:
        k = int(np.argmax(at))
        return failed({"clause": 2, "member": k, "delta": owners[k].tolist()})
    for k in np.flatnonzero(rows["BT"]):
        f, d = members[k], owners[k]
        if not ((f[:, alg.zero] == alg.neg_table).all() and (d == alg.dm_table).all() and it.flags["glivenko_ba"]):
            return failed({"clause": 3, "member": int(k), "delta": d.tolist()})
    return passed(detail=f"{len(members)} members over {len(it.deltas)} increasing maps")


def _t13(it):
    iv = it.interval
    if iv.capped_out:
        return failed({"interval": "capped out"})
    _, _, rows = _member_masks(it)
    return _equiv(spc=it.flags["spc"], interval_all_proto=iv.all_proto, some_member_bt=bool(rows["BT"].any()))


def _t14(it):
    iv = it.interval
    if iv.capped_out:
        return failed({"interval": "capped out"})
    # some member satisfies AT iff the product endpoint does, since ¬ reverses order
    lower = _batched_arrow(it.alg, "cpd", it.deltas)
    some_at = bool(thesis_masks(it.alg, lower, ("AT",))["AT"].reshape(len(lower), -1).all(axis=1).any())
    return _equiv(pc=it.flags["pc"], interval_all_proto=iv.all_proto, some_delta_at=some_at)


def _t15(it):
    return _equiv(bt=it.holds("BT"), bt_star=it.holds("BT*"))


def _t16(it):
    r = delta_forcing(it.alg, "cmd")
    if not r.forced:
        return failed({"delta": next(p for p in r.passing if p != r.dm)})
    return passed(detail=f"{r.maps_checked} increasing maps; only double negation passes")


def _t17(it):
    cases = {}
    for arrow in ("cm", "cp"):
        btw, btw_d = it.holds("BTw", arrow), it.holds("BTw'", arrow)
        if btw != btw_d:
            return failed({"clause": 1, "arrow": arrow})
        cases[f"BTw gives AT, AT' ({arrow})"] = (btw, it.holds("AT", arrow) and it.holds("AT'", arrow))
    bt_cm = it.holds("BT") or it.holds("BT'")
    cases["BT gives BTw (cm)"] = (bt_cm, it.holds("BTw") and it.holds("BTw'"))
    if it.flags["dm1_greatest"]:
        bt_cp = it.holds("BT", "cp") or it.holds("BT'", "cp")
        cases["BT gives BTw (cp, dm-integral)"] = (bt_cp, it.holds("BTw", "cp") and it.holds("BTw'", "cp"))
    return _implies(cases)


def _t18(it):
    alg = it.alg
    for arrow, flag in (("cm", "proto_cnx_meet"), ("cp", "proto_cnx_prod")):
        r = _equiv(**{f"weak_{arrow}": weakly_connexive(alg, arrow).passed, f"proto_{arrow}": it.flags[flag]})
        if not r.passed:
            return r
    return passed(detail="weak <=> proto for both arrows")


def _t18_note(it) -> Optional[str]:
    f = it.flags
    if f["weakly_cnx_meet"] and not f["proto_cnx_meet"]:
        return "weakly but not proto-connexive (meet arrow); outside the weakening scope"
    return None


def _t19(it):
    f = it.flags
    return _equiv(k_refuted=f["k1_refuted"] or f["k2_refuted"], zero_greatest=f["zero_greatest"])


def _t20(it):
    r = bdiamond_expansions(it.alg, samples=it.config.bdiamond_samples, seed=it.config.seed)
    if not r.passed:
        return failed({"admissible": r.admissible, "violations": r.weakest_violations})
    return passed(detail="unique admissible map is double negation")


def _t21(it):
    return _implies({arrow: (it.holds("P1", arrow) and it.holds("P2", arrow), it.proto(arrow)) for arrow in ("cm", "cp")})


def _t22(it):
    a = it.alg.arrow
    return _equiv(res_symmetric=bool((a == a.T).all()), trivial=it.alg.size == 1)


def _t23(it):
    return _all(("WHEN_DM_INT",), it)


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class TheoremCheck:
    id: str
    name: str
    statement: str
    scope: str
    body: Callable
    evidence: str = "exhaustive"
    note: Optional[Callable] = None

    def explain(self) -> str:
        hyp = "every algebra" if self.scope == "all" else self.scope.replace("_", " ") + " algebras"
        return "\n".join([f"{self.id}: {self.name}", f"  claim: {self.statement}", f"  scope: {hyp}",
                          f"  evidence: {self.evidence}"])


_T13_EVIDENCE = ("exhaustive over the interval for size <= 3; above that both endpoints plus 1000 seeded "
                 "samples (capped at 2^20 members); existence side over all increasing maps, endpoints and samples")

CHECKS = (
    TheoremCheck("T1", "basic residuation identities",
                 "x(y∨z)=xy∨xz, x→(y∧z)=(x→y)∧(x→z), (x∨y)→z=(x→z)∧(y→z), 1→x=x, x→(y→z)=yx→z", "all", _t1),
    TheoremCheck("T2", "double-negation laws",
                 "◇ is an extensive, monotone, idempotent nucleus with the stated meet and arrow laws; its image is involutive",
                 "all", _t2),
    TheoremCheck("T3", "Boolean characterisation",
                 "integral, involutive and pc iff product is meet and x→y = ¬x∨y", "all", _t3),
    TheoremCheck("T4", "Glivenko-Boolean characterisation",
                 "Glivenko-Boolean iff (pc, GLV_B, ◇1 greatest) iff (◇-image Boolean and GLV_B)", "all", _t4),
    TheoremCheck("T5", "integral Glivenko-Boolean characterisation",
                 "Glivenko-Boolean iff spc iff ¬(x→y) = ¬(¬x∨y)", "integral", _t5),
    TheoremCheck("T6", "connexive residual arrow",
                 "→ proto-connexive iff → satisfies AT iff 0 is greatest", "all", _t6),
    TheoremCheck("T7", "Boethius equivalences for the meet arrow",
                 "proto(⇒∧) iff BT iff BT' iff P2 iff P3", "all", _t7),
    TheoremCheck("T8", "characterisation of proto-connexivity for the meet arrow",
                 "proto(⇒∧) iff Glivenko-Boolean", "all", _t8),
    TheoremCheck("T9", "meet-like arrows, product case",
                 "with ◇A integral: proto(⇒∘) iff BT iff BT' iff P2 (all for ⇒∘) iff proto(⇒∧)", "dm_integral", _t9),
    TheoremCheck("T10", "product arrow versus meet arrow",
                 "proto(⇒∧) iff proto(⇒∘) and x ≤ ◇1", "all", _t10),
    TheoremCheck("T11", "non-symmetry inside the Glivenko variety",
                 "⇒∧ symmetric iff ⇒∘ symmetric iff Boolean", "glivenko_ba", _t11),
    TheoremCheck("T12", "δ-arrows over integral algebras",
                 "for ⇒ in [⇒∘δ, ⇒∧δ]: 1⇒x = x and x⇒1 = δx; AT or AT' gives pc; "
                 "BT gives ¬x = x⇒0, δ = ◇ and Glivenko-Boolean",
                 "integral", _t12, "all increasing maps; endpoints plus seeded interval samples"),
    TheoremCheck("T13", "interval theorem, strong pseudo-complement",
                 "spc iff every ⇒ in [⇒∘, ⇒∧] is proto-connexive iff some increasing δ and ⇒ in [⇒∘δ, ⇒∧δ] satisfy BT",
                 "integral", _t13, _T13_EVIDENCE),
    TheoremCheck("T14", "interval theorem with weakening",
                 "pc iff every ⇒ in [⇒∘, ⇒∧] is proto-connexive iff some increasing δ and ⇒ in [⇒∘δ, ⇒∧δ] satisfy AT",
                 "integral_zero_bounded", _t14,
                 "as T13 for the universal side; the AT side is exact via the product endpoint"),
    TheoremCheck("T15", "transitive Boethius thesis",
                 "BT iff BT* for ⇒∧", "all", _t15),
    TheoremCheck("T16", "uniqueness of δ",
                 "inside the Glivenko variety, if ⇒∧δ satisfies BT for increasing δ then δ = ◇", "glivenko_ba", _t16,
                 "exhaustive over all increasing maps"),
    TheoremCheck("T17", "weak Boethius theses",
                 "BTw iff BTw'; BT for ⇒∧ gives BTw; with ◇A integral BT for ⇒∘ gives BTw; BTw gives AT and AT' (both arrows)",
                 "all", _t17),
    TheoremCheck("T18", "weak equals proto under weakening",
                 "weakly connexive iff proto-connexive, both arrows", "integral_zero_bounded", _t18,
                 note=_t18_note),
    TheoremCheck("T19", "strong connexivity refutation",
                 "when ⇒∧ is proto-connexive: K1 or K2 refuted iff x ≤ 0", "proto_cm", _t19),
    TheoremCheck("T20", "♦-expansions",
                 "♦¬x ≤ ¬♦x and ¬¬x ≤ ♦x force ♦ = ◇; any f below x→y and y→◇x lies below ⇒∧",
                 "all", _t20, "exhaustive over ♦; 100 seeded bounded tables"),
    TheoremCheck("T21", "P1 and P2 suffice",
                 "P1 and P2 give proto-connexivity, both arrows", "all", _t21),
    TheoremCheck("T22", "symmetry with 0 greatest",
                 "→ symmetric iff the algebra is trivial", "zero_greatest", _t22),
    TheoremCheck("T23", "residual from the meet arrow",
                 "with ◇A integral: x→y = x ⇒∧ (◇x ∧ y)", "dm_integral", _t23),
)

_BY_ID = {c.id: c for c in CHECKS}


def get_check(check_id: str) -> TheoremCheck:
    key = check_id.strip().upper()
    if key not in _BY_ID:
        raise UnknownCheck(f"no check {check_id!r}")
    return _BY_ID[key]


def explain(check_id: str) -> str:
    return get_check(check_id).explain()


# ---------------------------------------------------------------- running


@dataclass
class CheckResult:
    id: str
    name: str
    scope: str
    evidence: str
    scanned: int = 0
    in_scope: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures and self.in_scope > 0

    def to_json(self) -> dict:
        return {"id": self.id, "name": self.name, "scope": self.scope, "evidence": self.evidence,
                "scanned": self.scanned, "in_scope": self.in_scope, "failures": self.failures,
                "notes": self.notes, "passed": self.passed}


@dataclass
class SuiteReport:
    checks: list
    algebras: int
    fixtures: dict
    corpus_counts: dict
    timing: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and all(v == "pass" for v in self.fixtures.values())

    @property
    def failures(self) -> int:
        return sum(len(c.failures) for c in self.checks)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "passed": self.passed,
            "algebras": self.algebras,
            "corpus_counts": self.corpus_counts,
            "fixtures": self.fixtures,
            "checks": [c.to_json() for c in self.checks],
            "failures": self.failures,
        }
        if timing:
            out["timing"] = self.timing
        return out

    def table(self) -> str:
        rows = [f"{'check':<5} {'in scope':>8} {'fails':>5}  name"]
        for c in self.checks:
            rows.append(f"{c.id:<5} {c.in_scope:>8} {len(c.failures):>5}  {c.name}")
        rows.append(f"fixtures: {sum(v == 'pass' for v in self.fixtures.values())}/{len(self.fixtures)} reproduced")
        rows.append("suite " + ("PASSED" if self.passed else "FAILED"))
        return "\n".join(rows)


def _label_witness(alg, w):
    if not isinstance(w, dict):
        return w
    return {k: alg.label(int(v)) if k in ("x", "y", "z") and isinstance(v, (int, np.integer)) else v
            for k, v in w.items()}


def _run_item(item: Item, checks) -> list:
    out = []
    for c in checks:
        start = time.perf_counter()
        if not in_scope(item, c.scope):
            note = c.note(item) if c.note else None
            note = {"algebra": item.key, "note": note} if note else None
            out.append((c.id, item.order, False, None, note, time.perf_counter() - start))
            continue
        r = c.body(item)
        fail = None if r.passed else {"algebra": item.key, "witness": _label_witness(item.alg, r.witness),
                                      "detail": r.detail}
        out.append((c.id, item.order, True, fail, None, time.perf_counter() - start))
    return out


def _items(corpus, fixtures, config) -> list:
    from .fixtures import fixture

    items = []
    for i, alg in enumerate(getattr(corpus, "algebras", corpus or [])):
        form = canonicalize(alg)
        items.append(Item(f"n{alg.size}:{form_hash(form)}", alg, (0, alg.size, form, i), config))
    for j, name in enumerate(fixtures or []):
        fx = fixture(name)
        if fx.finite:
            items.append(Item(fx.name, fx.algebra, (1, j), config))
    return items


def run_suite(corpus=None, fixtures=None, config: Optional[SuiteConfig] = None) -> SuiteReport:
    """Run every registered check on every corpus algebra and finite fixture.

    Results are merged by (check id, algebra order), so the report does not
    depend on ``config.threads``.
    """
    from .fixtures import verify_fixture

    config = config or SuiteConfig()
    checks = [get_check(c) for c in config.checks] if config.checks else list(CHECKS)
    t0 = time.perf_counter()
    items = _items(corpus, fixtures, config)
    if config.threads > 1:
        with ThreadPoolExecutor(config.threads) as pool:
            parts = list(pool.map(lambda it: _run_item(it, checks), items))
    else:
        parts = [_run_item(it, checks) for it in items]
    rows = sorted((r for p in parts for r in p), key=lambda r: (int(r[0][1:]), r[1]))
    results = {c.id: CheckResult(c.id, c.name, c.scope, c.evidence) for c in checks}
    for cid, _, scoped, fail, note, secs in rows:
        res = results[cid]
        res.scanned += 1
        res.in_scope += scoped
        res.seconds += secs
        if fail:
            res.failures.append(fail)
        if note:
            res.notes.append(note)
    fx_status = {}
    for name in fixtures or []:
        try:
            verify_fixture(name)
            fx_status[name] = "pass"
        except ExpectationMismatch as exc:
            fx_status[name] = f"mismatch: {exc}"
    counts = dict(getattr(getattr(corpus, "report", None), "counts", {}) or {})
    timing = {"total_seconds": round(time.perf_counter() - t0, 3),
              "per_check": {c.id: round(results[c.id].seconds, 3) for c in checks}}
    return SuiteReport([results[c.id] for c in checks], len(items), fx_status,
                       {str(k): v for k, v in sorted(counts.items())}, timing)
