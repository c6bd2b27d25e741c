"""Command-line entry point.

Exit codes: 0 success / preserving / PASS, 1 not preserving / FAIL /
counterexamples found, 2 bad parameters or matrix, 3 budget exceeded.
"""

import argparse
import os
import sys
from dataclasses import dataclass

from . import core, report
from .errors import BudgetExceeded, DimensionMismatch, NotDeltaPreserving, Singular, SrmError
from .flinalg import det, parse_matrix
from .invariance import (
    LinearMap,
    build_conjectured_set,
    codeword_verdict,
    conjecture_census,
    induced_monomial_map,
    preserves,
)
from .mpoly import render as render_poly
from .search import falsify, run_search, verify_claim

EXIT_OK, EXIT_NEGATIVE, EXIT_PARAM, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    q: int = None
    n: int = None
    r: int = None
    matrix: str = None
    strategy: str = None
    level: str = "polynomial"
    samples: int = 0
    seed: int = 0
    budget: int = None
    jobs: int = 1
    fmt: str = "text"
    output: str = None
    claim: str = None
    message: str = None
    min_distance: bool = False
    timing: bool = True

    def validate(self):
        if self.command in ("show",):
            return
        if self.command == "conjecture":
            if self.n is None or self.n < 2:
                raise core.ParamDomain("conjecture needs n >= 2")
            core.validate_params(self.q, 1, 0)
            return
        if self.n is None:
            raise core.ParamDomain(f"{self.command} needs --n")
        core.validate_params(self.q, self.n, self.r)

    @classmethod
    def from_args(cls, ns) -> "RunConfig":
        fields = {k: v for k, v in vars(ns).items() if k in cls.__dataclass_fields__ and v is not None}
        if "strategy" in fields:
            fields["strategy"] = fields["strategy"].replace("-", "_")
        if "claim" in fields:
            fields["claim"] = fields["claim"].replace("-", "_")
        if ns.command == "verify" and "n" not in fields:
            fields["n"] = {"theorem_n2": 2, "theorem_n3": 3}.get(fields.get("claim"))
        return cls(**fields)


def _params(cfg):
    return {"q": cfg.q, "n": cfg.n, "r": cfg.r}


def cmd_basis(cfg):
    code = core.build_code(cfg.q, cfg.n, cfg.r)
    res = {"basis": [{"tuple": list(t), "poly": render_poly(p)} for t, p in code.basis]}
    return report.document("basis", _params(cfg), res), EXIT_OK


def cmd_genmat(cfg):
    code = core.build_code(cfg.q, cfg.n, cfg.r)
    doc = core.code_document(code)
    res = {"basis": doc["basis"], "domain": doc["domain"], "G": doc["G"]}
    return report.document("genmat", _params(cfg), res), EXIT_OK


def cmd_params(cfg):
    code = core.build_code(cfg.q, cfg.n, cfg.r)
    budget = cfg.budget or int(os.environ.get("SRM_DISTANCE_BUDGET", core.DEFAULT_DISTANCE_BUDGET))
    p = core.params(code, cfg.min_distance, budget)
    res = p.as_dict()
    res["dual_dimension"] = core.dual_dimension(code)
    return report.document("params", _params(cfg), res), EXIT_OK


def cmd_encode(cfg):
    code = core.build_code(cfg.q, cfg.n, cfg.r)
    if cfg.message is None:
        raise DimensionMismatch("encode needs --message")
    msg = [int(t) for t in cfg.message.split(",")]
    word = core.encode(code, msg)
    return report.document("encode", _params(cfg), {"message": msg, "codeword": list(word)}), EXIT_OK


def cmd_check(cfg):
    code = core.build_code(cfg.q, cfg.n, cfg.r)
    if cfg.matrix is None:
        raise DimensionMismatch("check needs --matrix")
    M = parse_matrix(cfg.matrix, cfg.q)
    if M.rows != cfg.n or M.cols != cfg.n:
        raise DimensionMismatch(f"matrix is {M.rows}x{M.cols}, expected {cfg.n}x{cfg.n}")
    if det(M).value == 0:
        raise Singular(f"matrix {M.literal()} has determinant 0")
    A = LinearMap(M)
    verdict = preserves(code, A)
    res = {"matrix": A.rows(), "preserves": verdict.preserves_span}
    if verdict.witness is not None:
        t, residual = verdict.witness
        res["witness"] = {"basis_index": t, "tuple": list(code.tuples[t]), "residual": render_poly(residual)}
    res["codeword_level"] = codeword_verdict(code, A)
    try:
        mm = induced_monomial_map(code, A)
        res["monomial_map"] = {"perm": list(mm.perm), "signs": [1 if s == 1 else -1 for s in mm.signs]}
    except NotDeltaPreserving as exc:
        res["monomial_map"] = None
        res["note"] = f"not Delta-preserving: {exc}"
    return report.document("check", _params(cfg), res), (EXIT_OK if verdict.preserves_span else EXIT_NEGATIVE)


def cmd_search(cfg):
    rep = run_search(cfg.q, cfg.n, cfg.r, cfg.strategy or "two_phase", cfg.budget, cfg.jobs, cfg.level)
    return report.report_document(rep, "search", cfg.timing), EXIT_OK


def cmd_verify(cfg):
    # without --strategy each claim picks its own (exhaustive for n=2, two-phase for n=3)
    ok, rep = verify_claim(cfg.claim, cfg.q, cfg.r, n=cfg.n, strategy=cfg.strategy, jobs=cfg.jobs,
                           budget=cfg.budget)
    doc = report.report_document(rep, "verify", cfg.timing)
    doc["result"]["verdict"] = "PASS" if ok else "FAIL"
    return doc, (EXIT_OK if ok else EXIT_NEGATIVE)


def cmd_falsify(cfg):
    rep = falsify(cfg.n, cfg.q, cfg.r, cfg.samples, cfg.seed, cfg.jobs)
    code = EXIT_OK if rep.counters["counterexamples"] == 0 else EXIT_NEGATIVE
    return report.report_document(rep, "falsify", cfg.timing), code


def cmd_conjecture(cfg):
    """Both readings of the conjecture's pair constraint, side by side."""
    census = conjecture_census(cfg.n, cfg.q)
    res = {
        "census": census.as_dict(),
        "determinant_reading": len(build_conjectured_set(cfg.n, cfg.q, "determinant")),
        "literal_reading": len(build_conjectured_set(cfg.n, cfg.q, "literal")),
    }
    return report.document("conjecture", {"q": cfg.q, "n": cfg.n}, res), EXIT_OK


COMMANDS = {
    "basis": cmd_basis,
    "genmat": cmd_genmat,
    "params": cmd_params,
    "encode": cmd_encode,
    "check": cmd_check,
    "search": cmd_search,
    "verify": cmd_verify,
    "falsify": cmd_falsify,
    "conjecture": cmd_conjecture,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="srm", description="Symmetric Reed-Muller codes and their linear invariance groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, code_params=True):
        if code_params:
            p.add_argument("--q", type=int, required=True)
            p.add_argument("--n", type=int, required=p.prog.split()[-1] not in ("verify",))
            p.add_argument("--r", type=int, required=True)
        p.add_argument("--format", dest="fmt", choices=report.FORMATS, default="text")
        p.add_argument("--output", help="write the document here (atomically) instead of stdout")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--budget", type=int, help="overrides SRM_SWEEP_BUDGET / SRM_DISTANCE_BUDGET")
        p.add_argument("--no-timing", dest="timing", action="store_false",
                       help="omit wall time so reports compare byte-for-byte")

    for name in ("basis", "genmat", "encode"):
        p = sub.add_parser(name)
        common(p)
        if name == "encode":
            p.add_argument("--message", required=True, help="comma-separated message symbols")
    p = sub.add_parser("params")
    common(p)
    p.add_argument("--min-distance", action="store_true")
    p = sub.add_parser("check")
    common(p)
    p.add_argument("--matrix", required=True, help="rows separated by ';', entries by ','")
    p = sub.add_parser("search")
    common(p)
    p.add_argument("--strategy", choices=["exhaustive", "two-phase", "two_phase"], default="two-phase")
    p.add_argument("--level", choices=["polynomial", "code"], default="polynomial")
    p = sub.add_parser("verify")
    common(p)
    p.add_argument("--claim", required=True,
                   choices=["theorem-n2", "theorem-n3", "conjecture-sufficiency",
                            "theorem_n2", "theorem_n3", "conjecture_sufficiency"])
    p.add_argument("--strategy", choices=["exhaustive", "two-phase", "two_phase"])
    p = sub.add_parser("falsify")
    common(p)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("conjecture")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p, code_params=False)
    p = sub.add_parser("show", help="reload a persisted JSON report and re-serialize it")
    p.add_argument("input")
    common(p, code_params=False)
    return ap


def emit(text: str, output: str = None):
    if output:
        report.write_atomic(output, text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        if ns.command == "show":
            doc = report.load(ns.input)
            emit(report.render(doc, ns.fmt), ns.output)
            return EXIT_OK
        cfg = RunConfig.from_args(ns)
        cfg.validate()
        doc, code = COMMANDS[cfg.command](cfg)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SrmError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    emit(report.render(doc, cfg.fmt), cfg.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
