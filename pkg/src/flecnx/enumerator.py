"""Exhaustive generation of finite FLe-algebras up to isomorphism.

Pipeline: lattices, then join-preserving commutative monoids for each unit
candidate, then the residual, then every choice of the constant 0, then
canonical forms.  The monoid search and canonicalization run in
:mod:`flecnx.kernels`.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .algebra import (
    FiniteLattice,
    FleAlgebra,
    _frozen,
    algebra_from_json,
    algebra_to_json,
    residual_from_product,
    validate,
)
from .errors import InvalidAlgebra, NotALattice, SizeCapExceeded

DEFAULT_CAP = 6


def canonicalize(alg: FleAlgebra) -> bytes:
    """Canonical form: equal iff the algebras are isomorphic."""
    return kernels.canonical_form(alg.leq, alg.prod, alg.unit, alg.zero)


def lattice_form(lat: FiniteLattice) -> bytes:
    return kernels.canonical_form(lat.leq)


def form_hash(form: bytes) -> str:
    return hashlib.sha256(form).hexdigest()[:20]


# ---------------------------------------------------------------- lattices


def enumerate_lattices(n: int) -> list:
    """All ``n``-element lattices up to isomorphism, sorted by canonical form.

    Every finite poset has a linear extension, so it suffices to try orders
    in which ``i < j`` only when ``i < j`` as integers, with 0 the bottom
    and ``n - 1`` the top.
    """
    if n < 1:
        raise ValueError("lattice size must be positive")
    if n <= 2:
        return [FiniteLattice.from_leq(np.triu(np.ones((n, n), dtype=bool)))]
    inner = list(itertools.combinations(range(1, n - 1), 2))
    found = {}
    for bits in itertools.product((False, True), repeat=len(inner)):
        le = np.eye(n, dtype=bool)
        le[0, :] = True
        le[:, n - 1] = True
        for (i, j), b in zip(inner, bits):
            le[i, j] = b
        if ((le.astype(np.int64) @ le.astype(np.int64) > 0) & ~le).any():
            continue
        try:
            lat = FiniteLattice.from_leq(le)
        except NotALattice:
            continue
        found.setdefault(lattice_form(lat), lat)
    return [found[k] for k in sorted(found)]


# ---------------------------------------------------------------- algebras


def _crl(lat: FiniteLattice, prod: np.ndarray, unit: int) -> FleAlgebra:
    arrow = residual_from_product(lat, prod, unit)
    alg = FleAlgebra(lat, _frozen(prod), int(unit), int(unit), _frozen(arrow))
    report = validate(alg)
    if not report.passed:
        raise InvalidAlgebra(report)
    return alg


def extend_to_crl(lat: FiniteLattice) -> list:
    """All residuated commutative monoid reducts on ``lat`` (labelled, not deduplicated)."""
    out = []
    for unit in range(lat.size):
        for prod in kernels.monoid_tables(lat.leq, lat.join, unit, lat.bottom):
            out.append(_crl(lat, prod, unit))
    return out


def extend_to_fle(lat: FiniteLattice) -> list:
    """Every residuated monoid on ``lat`` crossed with every choice of 0."""
    return [crl.with_zero(z) for crl in extend_to_crl(lat) for z in range(lat.size)]


@dataclass
class CorpusEntry:
    form: bytes
    algebra: FleAlgebra

    @property
    def key(self) -> str:
        return form_hash(self.form)

    @property
    def size(self) -> int:
        return self.algebra.size


@dataclass
class EnumerationReport:
    counts: dict = field(default_factory=dict)
    wall_time: float = 0.0
    corpus_dir: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
            "wall_time": self.wall_time,
            "corpus_dir": self.corpus_dir,
            "note": "counts are produced by this enumerator",
        }


@dataclass
class Corpus:
    entries: list
    report: EnumerationReport

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def algebras(self) -> list:
        return [e.algebra for e in self.entries]


def _per_lattice(lat: FiniteLattice):
    crls, fles = {}, {}
    for crl in extend_to_crl(lat):
        crls.setdefault(canonicalize(crl), None)
        for z in range(lat.size):
            alg = crl.with_zero(z)
            fles.setdefault(canonicalize(alg), alg)
    return crls, fles


def _enumerate_size(n: int, threads: int) -> tuple:
    lattices = enumerate_lattices(n)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(_per_lattice, lattices))
    else:
        parts = [_per_lattice(lat) for lat in lattices]
    crls, fles = set(), {}
    for c, f in parts:
        crls.update(c)
        for form, alg in f.items():
            fles.setdefault(form, alg)
    entries = [CorpusEntry(form, fles[form]) for form in sorted(fles)]
    return entries, {"lattices": len(lattices), "crls": len(crls), "fle": len(entries)}


def enumerate_fle(n: int, threads: int = 1, cap: int = DEFAULT_CAP) -> Corpus:
    """All FLe-algebras of size exactly ``n`` up to isomorphism."""
    return enumerate_upto(n, threads, cap, sizes=[n])


def enumerate_upto(
    max_size: int,
    threads: int = 1,
    cap: int = DEFAULT_CAP,
    sizes: Optional[Iterable[int]] = None,
    corpus_dir=None,
    resume: bool = False,
) -> Corpus:
    """Corpus of all sizes ``1..max_size``, ordered by (size, canonical form)."""
    if max_size > cap:
        raise SizeCapExceeded(f"size {max_size} exceeds the cap {cap}")
    sizes = list(sizes) if sizes is not None else list(range(1, max_size + 1))
    start = time.perf_counter()
    if resume and corpus_dir is not None and (Path(corpus_dir) / "index.json").exists():
        corpus = load_corpus(corpus_dir)
        if all(str(n) in corpus.report.counts for n in sizes):
            keep = [e for e in corpus.entries if e.size in sizes]
            counts = {n: corpus.report.counts[str(n)] for n in sizes}
            return Corpus(keep, EnumerationReport(counts, time.perf_counter() - start, str(corpus_dir)))
    entries, counts = [], {}
    for n in sizes:
        found, counts[n] = _enumerate_size(n, threads)
        entries.extend(found)
    report = EnumerationReport(counts, time.perf_counter() - start)
    corpus = Corpus(entries, report)
    if corpus_dir is not None:
        save_corpus(corpus, corpus_dir)
        report.corpus_dir = str(corpus_dir)
    return corpus


# ---------------------------------------------------------------- persistence


def save_corpus(corpus: Corpus, directory) -> None:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for e in corpus.entries:
        path = d / f"{e.key}.json"
        if not path.exists():
            path.write_text(json.dumps(algebra_to_json(e.algebra)) + "\n")
    index = {
        "counts": {str(k): v for k, v in sorted(corpus.report.counts.items())},
        "entries": [{"key": e.key, "size": e.size, "form": e.form.hex()} for e in corpus.entries],
    }
    (d / "index.json").write_text(json.dumps(index, indent=1) + "\n")


def load_corpus(directory) -> Corpus:
    d = Path(directory)
    index = json.loads((d / "index.json").read_text())
    entries = []
    for item in index["entries"]:
        alg = algebra_from_json(json.loads((d / f"{item['key']}.json").read_text()))
        form = bytes.fromhex(item["form"])
        if canonicalize(alg) != form:
            raise ValueError(f"corpus entry {item['key']} does not match its form")
        entries.append(CorpusEntry(form, alg))
    return Corpus(entries, EnumerationReport(dict(index["counts"]), 0.0, str(d)))
