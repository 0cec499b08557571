"""Posets up to isomorphism and the end-to-end corpus runner."""

from __future__ import annotations

import string
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import LatticeError, TooLarge
from .kit import _canonical_extension, _covers_from_leq, _natural_posets
from .order import downset_lattice, make_poset, order_isomorphism
from .pipeline import assemble
from .verify import certify


@lru_cache(maxsize=None)
def _poset_classes(m):
    buckets = {}
    for downs in _natural_posets(m):
        leq = np.eye(m, dtype=bool)
        for k, mask in enumerate(downs):
            for i in range(m):
                if mask >> i & 1:
                    leq[i, k] = True
        key = tuple(sorted(zip(leq.sum(axis=0).tolist(), leq.sum(axis=1).tolist())))
        reps = buckets.setdefault(key, [])
        if not any(order_isomorphism(leq, r) is not None for r in reps):
            reps.append(leq)
    out = []
    for reps in buckets.values():
        for leq in reps:
            code, ext = _canonical_extension(leq)
            out.append((code, tuple(_covers_from_leq(leq[np.ix_(ext, ext)]))))
    out.sort()
    return tuple(out)


def enumerate_posets(size):
    """All posets with exactly ``size`` elements up to isomorphism, labeled a, b, ..."""
    if size > 7:
        raise TooLarge("poset enumeration is limited to 7 elements")
    names = string.ascii_lowercase[:size]
    return [make_poset(list(names), [(names[a], names[b]) for a, b in covers])
            for _, covers in _poset_classes(size)]


@dataclass
class CaseResult:
    case: str
    poset: object
    sizes: dict
    ok: bool
    checks: dict = field(default_factory=dict)
    error: str = ""
    seconds: float = 0.0


@dataclass
class CorpusSummary:
    mode: str
    cases: list

    @property
    def ok(self):
        return all(c.ok for c in self.cases)

    def table(self):
        rows = [f"{'case':<8} {'|P|':>3} {'|D|':>4} {'|L|':>6}  result"]
        for c in self.cases:
            status = "pass" if c.ok else "FAIL " + (c.error or ",".join(k for k, v in c.checks.items() if not v))
            rows.append(f"{c.case:<8} {len(c.poset):>3} {c.sizes.get('D', 0):>4} {c.sizes.get('L', 0):>6}  {status}")
        return "\n".join(rows)


def mode_checks(mode):
    base = ("semimodular", "planar", "con-iso", "colors")
    return base + ("principal", "witnesses") if mode == "principal" else base


def run_case(P, mode, case=""):
    t0 = time.perf_counter()
    D = downset_lattice(P)
    try:
        rep = assemble(D, mode)
        L = rep.L
        cert = certify(L.lattice, D, colors=L.colors, witnesses=rep.witnesses or None,
                       checks=mode_checks(mode))
        sizes = dict(rep.sizes, D=D.n)
        return CaseResult(case, P, sizes, cert.ok, dict(cert.checks), "", time.perf_counter() - t0)
    except LatticeError as exc:
        return CaseResult(case, P, {"D": D.n}, False, {}, str(exc), time.perf_counter() - t0)


def run_corpus(max_poset_size, mode="principal"):
    """Assemble and certify every poset with 1..``max_poset_size`` elements."""
    if max_poset_size > 5:
        raise TooLarge("the corpus is limited to posets with at most 5 elements")
    cases = []
    for size in range(1, max_poset_size + 1):
        for k, P in enumerate(enumerate_posets(size)):
            cases.append(run_case(P, mode, f"{size}.{k}"))
    return CorpusSummary(mode, cases)
