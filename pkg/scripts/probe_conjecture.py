"""Sufficiency and randomized falsification of the general-n conjecture.

    python3 scripts/probe_conjecture.py --n 4 --q 11 --r 7 --samples 1000000 --seed 42
"""

import argparse
import os
from dataclasses import dataclass

from srm import report
from srm.invariance import conjecture_census
from srm.search import conjecture_sufficiency, falsify


@dataclass
class Config:
    n: int = 4
    q: int = 11
    r: int = 7
    samples: int = 10**6
    seed: int = 42
    jobs: int = 1
    out: str = "results"


def main(cfg: Config) -> int:
    os.makedirs(cfg.out, exist_ok=True)
    census = conjecture_census(cfg.n, cfg.q)
    print("pair census:", census.as_dict())
    suff = conjecture_sufficiency(cfg.n, cfg.q, cfg.r, jobs=cfg.jobs)
    print("sufficiency:", suff.counters, f"{suff.wall_time_ms} ms")
    fal = falsify(cfg.n, cfg.q, cfg.r, cfg.samples, cfg.seed, cfg.jobs)
    print("falsification:", fal.counters, f"{fal.wall_time_ms} ms")
    for rep, cmd in ((suff, "verify"), (fal, "falsify")):
        path = os.path.join(cfg.out, f"conjecture_{cmd}_n{cfg.n}_q{cfg.q}_r{cfg.r}.json")
        report.write_atomic(path, report.to_json(report.report_document(rep, cmd)))
    for rows in fal.extra["counterexamples"]:
        print("counterexample:", rows)
    return int(suff.counters["failing"] > 0 or fal.counters["counterexamples"] > 0)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in Config().__dict__.items():
        ap.add_argument(f"--{name}", type=type(default), default=default)
    raise SystemExit(main(Config(**vars(ap.parse_args()))))
