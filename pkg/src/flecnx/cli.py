"""Command-line front end.

Exit codes: 0 success or pass, 1 a check failed (a witness was found),
2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .algebra import FleAlgebra, UnaryMap, algebra_to_json, load_algebra, validate
from .enumerator import DEFAULT_CAP, enumerate_upto, form_hash, canonicalize
from .errors import FleError, ParseError
from .fixtures import ALL_NAMES, export_fixture, fixture, list_fixtures, verify_fixture
from .integers import check_window
from .properties import classify, interval_analysis
from .terms import REGISTRY, check, named_statement, parse
from .theorems import SuiteConfig, explain, run_suite

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, data: dict, human: str) -> None:
    if args.json:
        print(json.dumps(data, ensure_ascii=False, sort_keys=True, indent=1))
    else:
        print(human)


def _load(args):
    """The algebra named by --algebra or --fixture (may be computable for z(n))."""
    if bool(args.algebra) == bool(args.fixture):
        raise UsageError("give exactly one of --algebra and --fixture")
    if args.algebra:
        return load_algebra(args.algebra)
    return fixture(args.fixture).algebra


def _finite(args) -> FleAlgebra:
    alg = _load(args)
    if not isinstance(alg, FleAlgebra):
        raise UsageError("this subcommand needs a finite algebra")
    return alg


def _statement(args):
    if not args.stmt:
        raise UsageError("--stmt is required")
    if args.stmt in REGISTRY:
        return named_statement(args.stmt, args.arrow)
    return parse(args.stmt)


def _delta(args, alg):
    if args.delta is None:
        return None
    if args.delta == "dm":
        return alg.dm
    if args.delta.startswith("table:"):
        table = json.loads(Path(args.delta[6:]).read_text())
        return UnaryMap.of(alg, table)
    raise UsageError("--delta must be 'dm' or 'table:<path>'")


def _labelled(alg, witness):
    if witness is None:
        return None
    if isinstance(alg, FleAlgebra):
        return {k: alg.label(v) for k, v in witness.items()}
    return dict(witness)


def _show_witness(w) -> str:
    return " ".join(f"{k}={v}" for k, v in w.items())


# ---------------------------------------------------------------- subcommands


def cmd_validate(args) -> int:
    alg = _load(args)
    if not isinstance(alg, FleAlgebra):
        _emit(args, {"status": "pass", "detail": "computable model"}, "computable model: nothing to validate")
        return OK
    r = validate(alg)
    _emit(args, r.to_json(list(alg.labels) if alg.labels else None) | {"size": alg.size},
          f"{'valid' if r.passed else 'INVALID'} ({alg.size} elements){': ' + r.detail if r.detail else ''}")
    return OK if r.passed else FAIL


def cmd_classify(args) -> int:
    alg = _finite(args)
    c = classify(alg)
    data = c.to_json(alg)
    if args.interval:
        data["interval"] = interval_analysis(alg, _delta(args, alg), args.interval, seed=args.seed).to_json() \
            if c.integral else None
    lines = [f"{k}: {str(v).lower()}" for k, v in data.items() if not isinstance(v, (dict, list)) and v is not None]
    _emit(args, data, "\n".join(lines))
    return OK


def cmd_check(args) -> int:
    alg = _load(args)
    stmt = _statement(args)
    if isinstance(alg, FleAlgebra):
        r = check(alg, stmt, delta=_delta(args, alg), bdiamond=_delta(args, alg))
        labels = list(alg.labels) if alg.labels else None
        data = r.to_json(labels)
    else:
        r = check_window(alg, stmt, window=10)
        data = r.to_json()
    if r.passed:
        human = f"pass: {stmt}" + (f" ({r.detail})" if r.detail else "")
    else:
        human = f"fail: {stmt}\nwitness: {_show_witness(data['witness'])}"
    _emit(args, data, human)
    return OK if r.passed else FAIL


def _corpus(args):
    if args.max_size > DEFAULT_CAP and not args.allow_large:
        raise UsageError(f"--max-size above {DEFAULT_CAP} needs --allow-large")
    cap = max(args.max_size, DEFAULT_CAP)
    return enumerate_upto(args.max_size, threads=args.threads, cap=cap, corpus_dir=args.corpus, resume=args.resume)


def cmd_enumerate(args) -> int:
    corpus = _corpus(args)
    data = corpus.report.to_json()
    data.pop("wall_time")
    lines = [f"size {n}: {c['lattices']} lattices, {c['crls']} CRLs, {c['fle']} FLe-algebras"
             for n, c in ((k, corpus.report.counts[k]) for k in sorted(corpus.report.counts, key=int))]
    lines.append(f"total {len(corpus)} algebras in {corpus.report.wall_time:.2f}s")
    _emit(args, data, "\n".join(lines))
    return OK


def cmd_verify(args) -> int:
    if args.explain:
        print(explain(args.explain))
        return OK
    start = time.perf_counter()
    corpus = _corpus(args)
    config = SuiteConfig(threads=args.threads, seed=args.seed, checks=tuple(args.only) if args.only else None)
    report = run_suite(corpus, ALL_NAMES, config)
    human = report.table() + f"\n{report.algebras} algebras, {time.perf_counter() - start:.1f}s"
    _emit(args, report.to_json(timing=args.timing), human)
    return OK if report.passed else FAIL


def cmd_search(args) -> int:
    stmt = _statement(args)
    among = [named_statement(s, args.arrow) if s in REGISTRY else parse(s) for s in args.among or []]
    corpus = _corpus(args)
    for alg in corpus.algebras:
        if not all(check(alg, s).passed for s in among):
            continue
        r = check(alg, stmt, delta=_delta(args, alg))
        if not r.passed:
            data = {"found": True, "key": form_hash(canonicalize(alg)), "algebra": algebra_to_json(alg),
                    "witness": _labelled(alg, r.witness)}
            human = (f"countermodel of size {alg.size} ({data['key']})\n"
                     f"witness: {_show_witness(data['witness'])}\n" + json.dumps(algebra_to_json(alg)))
            _emit(args, data, human)
            return FAIL
    _emit(args, {"found": False, "max_size": args.max_size},
          f"no countermodel up to size {args.max_size}")
    return OK


def cmd_fixtures(args) -> int:
    if args.fixture:
        fx = fixture(args.fixture)
        if args.verify:
            r = verify_fixture(args.fixture)
            _emit(args, {"name": fx.name, "status": r.status, "detail": r.detail}, r.detail)
            return OK
        if args.out:
            export_fixture(args.fixture, args.out)
            return OK
        print(json.dumps(fx.to_json(), ensure_ascii=False, indent=1))
        return OK
    if args.verify:
        status = {}
        for name in ALL_NAMES:
            try:
                status[name] = verify_fixture(name).status
            except FleError as exc:
                status[name] = f"mismatch: {exc}"
        _emit(args, status, "\n".join(f"{k}: {v}" for k, v in status.items()))
        return OK if all(v == "pass" for v in status.values()) else FAIL
    rows = list_fixtures()
    _emit(args, dict(rows), "\n".join(f"{n:<18} {p}" for n, p in rows))
    return OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("--algebra", help="algebra JSON file")
    src.add_argument("--fixture", help="named fixture, e.g. fig1_pc_not_spc or z(-1)")

    stmt = argparse.ArgumentParser(add_help=False)
    stmt.add_argument("--stmt", help="statement text or registry name (AT, BT, SPC, ...)")
    stmt.add_argument("--arrow", default="cm", choices=("cm", "cp", "cmd", "cpd", "res"))
    stmt.add_argument("--delta", help="'dm' or 'table:<path>' with a JSON list")

    corpus = argparse.ArgumentParser(add_help=False)
    corpus.add_argument("--max-size", type=int, default=4)
    corpus.add_argument("--threads", type=int, default=1)
    corpus.add_argument("--corpus", help="directory to persist or reuse the corpus")
    corpus.add_argument("--resume", action="store_true", help="reuse a persisted corpus")
    corpus.add_argument("--allow-large", action="store_true", help="permit sizes above the default cap")

    p = argparse.ArgumentParser(prog="flecnx", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common, src], help="validate an algebra")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("classify", parents=[common, src], help="structural and connexivity flags")
    s.add_argument("--interval", help="endpoints | sampled:<n> | exhaustive:<cap>")
    s.add_argument("--delta", help="'dm' or 'table:<path>'")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("check", parents=[common, src, stmt], help="check a statement")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("enumerate", parents=[common, corpus], help="enumerate algebras up to isomorphism")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", parents=[common, corpus], help="run the theorem suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--only", action="append", metavar="ID", help="restrict to a check id (repeatable)")
    s.add_argument("--explain", metavar="ID", help="describe one check and exit")
    s.add_argument("--timing", action="store_true", help="include timings in JSON output")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common, corpus, stmt], help="smallest countermodel in the corpus")
    s.add_argument("--among", action="append", metavar="STMT", help="only algebras satisfying STMT (repeatable)")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("fixtures", parents=[common], help="list, export or verify fixtures")
    s.add_argument("--fixture", help="print one fixture as JSON")
    s.add_argument("--out", help="write the fixture JSON to a file")
    s.add_argument("--verify", action="store_true", help="re-derive expectations")
    s.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"flecnx: {exc}", file=sys.stderr)
        return USAGE
    except ParseError as exc:
        print(f"flecnx: parse error: {exc}", file=sys.stderr)
        return USAGE
    except (FleError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"flecnx: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
