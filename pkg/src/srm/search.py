"""Sweeps over GL(n, q) for span-preserving maps, and randomized falsification.

Every sweep enumerates matrices in row-major odometer order, partitioned by
first row. Partitions are independent, so any worker count gives the same
merged, canonically sorted result.
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .core import build_code, validate_params
from .errors import BudgetExceeded, ParamDomain
from .flinalg import FqMatrix
from .invariance import (
    LinearMap,
    build_conjectured_set,
    build_K,
    build_M,
    check_group,
    codeword_verdict,
    conjecture_census,
    preserves,
    sort_maps,
)
from .kernel import CodeKernel, SpanKernel, batch_det, chunk_matrices, tail_block

DEFAULT_SWEEP_BUDGET = 10**8
FALSIFY_BLOCK = 50_000
LEVELS = ("polynomial", "code")


def sweep_budget() -> int:
    return int(os.environ.get("SRM_SWEEP_BUDGET", DEFAULT_SWEEP_BUDGET))


@dataclass
class SearchReport:
    q: int
    n: int
    r: int
    strategy: str  # exhaustive | two_phase | randomized | sufficiency
    found: list
    counters: dict
    seed: int = None
    wall_time_ms: int = None
    extra: dict = dc_field(default_factory=dict)

    @property
    def found_keys(self):
        return [m.key for m in self.found]


# -- sweeps -------------------------------------------------------------------

_STATE = {}


def _init_worker(q, n, r, level):
    code = build_code(q, n, r)
    _STATE["kernel"] = SpanKernel(q, n, code.tuples) if level == "polynomial" else CodeKernel(code)
    _STATE["tails"] = tail_block(q, n)


def _sweep_chunk(args):
    first_row, q, n, nstrata = args
    kern, tails = _STATE["kernel"], _STATE["tails"]
    A = chunk_matrices(q, n, first_row, tails)
    inv = batch_det(A, q) != 0
    A = A[inv]
    strata = kern.strata if nstrata is None else kern.strata[:nstrata]
    ok = kern.mask(A, strata)
    return first_row, int(inv.sum()), [tuple(int(v) for v in a.ravel()) for a in A[ok]]


def _run_chunks(q, n, r, nstrata, jobs, level="polynomial"):
    tasks = [(i, q, n, nstrata) for i in range(q**n)]
    if jobs <= 1:
        _init_worker(q, n, r, level)
        results = [_sweep_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(q, n, r, level)) as ex:
            results = list(ex.map(_sweep_chunk, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    results.sort(key=lambda x: x[0])
    invertible = sum(r[1] for r in results)
    keys = sorted(k for r in results for k in r[2])
    return invertible, keys


def _check_budget(q, n, budget):
    budget = sweep_budget() if budget is None else budget
    total = q ** (n * n)
    if total > budget:
        raise BudgetExceeded(f"{q}^{n * n} = {total} matrices exceeds sweep budget {budget}")
    return total


def _to_maps(keys, q, n):
    return [LinearMap(FqMatrix(q, n, n, k)) for k in keys]


def exhaustive(q: int, n: int, r: int, budget: int = None, jobs: int = 1,
               level: str = "polynomial") -> SearchReport:
    """All of GL(n, q) tested against every basis stratum.

    level="code" asks instead whether every transformed generator still
    evaluates to a codeword, a weaker condition.
    """
    validate_params(q, n, r)
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}")
    total = _check_budget(q, n, budget)
    t0 = time.perf_counter()
    code = build_code(q, n, r)
    invertible, keys = _run_chunks(q, n, r, None, jobs, level)
    found = _to_maps(keys, q, n)
    # the batch kernel and the sequential route must agree on every hit
    confirm = preserves if level == "polynomial" else codeword_verdict
    for m in found:
        if not confirm(code, m):
            raise AssertionError(f"kernel accepted {m.literal()} but the {level}-level check rejects it")
    counters = {"scanned": total, "invertible": invertible, "phase1_survivors": None, "found": len(found)}
    report = SearchReport(q, n, r, "exhaustive", found, counters, wall_time_ms=_ms(t0))
    if level != "polynomial":
        report.extra["level"] = level
    return report


def two_phase(q: int, n: int, r: int, budget: int = None, jobs: int = 1) -> SearchReport:
    """Phase 1 keeps matrices preserving the two lowest-degree strata; phase 2
    runs the full coefficient-level `preserves` on the survivors."""
    validate_params(q, n, r)
    total = _check_budget(q, n, budget)
    t0 = time.perf_counter()
    code = build_code(q, n, r)
    invertible, keys = _run_chunks(q, n, r, 2, jobs)
    survivors = _to_maps(keys, q, n)
    found = [m for m in survivors if preserves(code, m)]
    counters = {"scanned": total, "invertible": invertible, "phase1_survivors": len(survivors), "found": len(found)}
    report = SearchReport(q, n, r, "two_phase", found, counters, wall_time_ms=_ms(t0))
    report.extra["phase1_degrees"] = sorted({sum(t) for t in code.tuples})[:2]
    return report


def run_search(q, n, r, strategy="two_phase", budget=None, jobs=1, level="polynomial") -> SearchReport:
    strategy = strategy.replace("-", "_")
    if strategy == "exhaustive":
        return exhaustive(q, n, r, budget, jobs, level)
    if level != "polynomial":
        raise ValueError("code-level sweeps are exhaustive only")
    if strategy == "two_phase":
        return two_phase(q, n, r, budget, jobs)
    raise ValueError(f"unknown strategy {strategy!r}")


# -- randomized falsification -------------------------------------------------

def _draw_invertible(rng, count, q, n):
    got = []
    have = 0
    while have < count:
        need = count - have
        A = rng.integers(0, q, size=(need + need // 4 + 8, n, n), dtype=np.int64)
        A = A[batch_det(A, q) != 0][:need]
        got.append(A)
        have += A.shape[0]
    return np.concatenate(got)


def _falsify_block(args):
    block, size, q, n, seed = args
    kern = _STATE["kernel"]
    rng = np.random.default_rng([seed, block])
    A = _draw_invertible(rng, size, q, n)
    ok = kern.mask(A)
    return block, [tuple(int(v) for v in a.ravel()) for a in A[ok]]


def _init_falsify(q, n, tuples):
    _STATE["kernel"] = SpanKernel(q, n, tuples)


def falsify(n: int, q: int, r: int, samples: int, seed: int = 0, jobs: int = 1,
            block: int = FALSIFY_BLOCK) -> SearchReport:
    """Sample uniform invertible matrices; every preserving one outside the
    conjectured set is a counterexample to its completeness."""
    validate_params(q, n, r)
    if n < 2:
        raise ParamDomain("need n >= 2")
    t0 = time.perf_counter()
    code = build_code(q, n, r)
    sizes = [min(block, samples - s) for s in range(0, samples, block)]
    tasks = [(b, size, q, n, seed) for b, size in enumerate(sizes)]
    if not tasks:
        results = []
    elif jobs <= 1:
        _init_falsify(q, n, code.tuples)
        results = [_falsify_block(t) for t in tasks]
    else:
        with ProcessPoolExecutor(jobs, initializer=_init_falsify, initargs=(q, n, code.tuples)) as ex:
            results = list(ex.map(_falsify_block, tasks))
    results.sort(key=lambda x: x[0])
    hits = sort_maps(_to_maps([k for _, ks in results for k in ks], q, n))
    for m in hits:
        if not preserves(code, m):
            raise AssertionError(f"kernel accepted {m.literal()} but preserves() rejects it")
    conj = {m.key for m in build_conjectured_set(n, q)} if tasks else set()
    counter = [m for m in hits if m.key not in conj]
    counters = {"samples": samples, "preserving": len(hits), "counterexamples": len(counter)}
    report = SearchReport(q, n, r, "randomized", hits, counters, seed=seed, wall_time_ms=_ms(t0))
    report.extra["counterexamples"] = [m.rows() for m in counter]
    return report


# -- claims -------------------------------------------------------------------

CLAIMS = ("theorem_n2", "theorem_n3", "conjecture_sufficiency")


def _init_code(q, n, r):
    _STATE["code"] = build_code(q, n, r)


def _preserves_keys(keys):
    code = _STATE["code"]
    return [preserves(code, FqMatrix(code.q, code.n, code.n, k)).preserves_span for k in keys]


def conjecture_sufficiency(n: int, q: int, r: int, constraint: str = "determinant", jobs: int = 1) -> SearchReport:
    """Check every member of the conjectured set, through both the batch kernel
    and the coefficient-level route."""
    validate_params(q, n, r)
    t0 = time.perf_counter()
    code = build_code(q, n, r)
    members = build_conjectured_set(n, q, constraint)
    kern = SpanKernel(q, n, code.tuples)
    A = np.array([m.rows() for m in members], dtype=np.int64).reshape(-1, n, n)
    fast = kern.mask(A)
    keys = [m.key for m in members]
    if jobs <= 1:
        _init_code(q, n, r)
        slow = _preserves_keys(keys)
    else:
        parts = [keys[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(jobs, initializer=_init_code, initargs=(q, n, r)) as ex:
            done = list(ex.map(_preserves_keys, parts))
        slow = [None] * len(keys)
        for i, part in enumerate(done):
            slow[i::jobs] = part
    failing = [m for m, f, s in zip(members, fast, slow) if not (f and s)]
    disagree = int(sum(bool(f) != s for f, s in zip(fast, slow)))
    counters = {"members": len(members), "preserving": len(members) - len(failing),
                "failing": len(failing), "route_disagreements": disagree}
    report = SearchReport(q, n, r, "sufficiency", [m for m in members if m not in failing], counters,
                          wall_time_ms=_ms(t0))
    report.extra["failing"] = [m.rows() for m in failing]
    report.extra["constraint"] = constraint
    report.extra["census"] = conjecture_census(n, q).as_dict()
    return report


def verify_claim(claim: str, q: int, r: int, n: int = None, strategy: str = None, jobs: int = 1,
                 budget: int = None):
    """Return (passed, report) for one of CLAIMS."""
    claim = claim.replace("-", "_")
    if claim == "theorem_n2":
        rep = run_search(q, 2, r, strategy or "exhaustive", budget, jobs)
        expected = build_M(q)
    elif claim == "theorem_n3":
        rep = run_search(q, 3, r, strategy or "two_phase", budget, jobs)
        expected = build_K(q)
    elif claim == "conjecture_sufficiency":
        if n is None:
            raise ParamDomain("conjecture_sufficiency needs n")
        rep = conjecture_sufficiency(n, q, r, jobs=jobs)
        ok = rep.counters["failing"] == 0 and rep.counters["route_disagreements"] == 0
        rep.extra["claim"] = claim
        rep.extra["passed"] = ok
        return ok, rep
    else:
        raise ValueError(f"unknown claim {claim!r}; expected one of {CLAIMS}")
    ok = rep.found_keys == [m.key for m in expected] and check_group(rep.found)
    rep.extra["claim"] = claim
    rep.extra["expected_count"] = len(expected)
    rep.extra["passed"] = ok
    return ok, rep


def _ms(t0) -> int:
    return int(round((time.perf_counter() - t0) * 1000))
