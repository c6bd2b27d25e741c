"""Compare the polynomial-ring and codeword-level invariance verdicts.

Sweeps small cases at both levels and prints the solution counts, which
differ when the code is the whole space or r reaches q.
"""

import argparse

from srm.search import exhaustive

CASES = [(3, 2, 3), (5, 2, 4), (5, 2, 5), (7, 2, 6), (7, 2, 7), (5, 3, 4)]


def main(cases):
    print(f"{'q':>3} {'n':>2} {'r':>2} {'polynomial':>11} {'code':>6}")
    for q, n, r in cases:
        poly = exhaustive(q, n, r).counters["found"]
        code = exhaustive(q, n, r, level="code").counters["found"]
        print(f"{q:>3} {n:>2} {r:>2} {poly:>11} {code:>6}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--case", nargs=3, type=int, action="append", metavar=("Q", "N", "R"))
    main(ap.parse_args().case or CASES)
