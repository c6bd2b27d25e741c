"""Construction of symmetric Reed-Muller codes SRM_q[n, r].

A codeword is the evaluation of an alternating polynomial from E_q(n, r) at
one representative per unordered n-set of distinct field elements. The
representative is the ascending tuple, and columns follow lex order over
those tuples.
"""

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, ParamDomain
from .flinalg import FqMatrix, nullspace, rank
from .gf import PrimeField
from .mpoly import MultiPoly, det_poly, evaluate_int, render

DEFAULT_DISTANCE_BUDGET = 10**7


def validate_params(q: int, n: int, r: int):
    try:
        PrimeField(q)
    except ValueError as exc:
        raise ParamDomain(str(exc)) from exc
    if n < 1 or n > q:
        raise ParamDomain(f"need 1 <= n <= q, got n={n}, q={q}")
    lo = n * (n - 1) // 2
    if not lo <= r <= q:
        raise ParamDomain(f"need q >= r >= n(n-1)/2, got q={q}, r={r}, n(n-1)/2={lo}")


def enumerate_tuples(q: int, n: int, r: int):
    """Strictly increasing exponent tuples in [0, q-1] with sum <= r, lex order."""
    validate_params(q, n, r)
    return [t for t in combinations(range(q), n) if sum(t) <= r]


@dataclass(frozen=True)
class EvalDomain:
    q: int
    n: int
    classes: tuple

    def __len__(self):
        return len(self.classes)

    def index(self) -> dict:
        return {c: i for i, c in enumerate(self.classes)}


def build_domain(q: int, n: int) -> EvalDomain:
    if n < 1 or n > q:
        raise ParamDomain(f"need 1 <= n <= q, got n={n}, q={q}")
    return EvalDomain(q, n, tuple(combinations(range(q), n)))


@dataclass
class SrmCode:
    q: int
    n: int
    r: int
    basis: list  # [(exponent tuple, MultiPoly)]
    domain: EvalDomain
    G: FqMatrix
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def length(self) -> int:
        return len(self.domain)

    @property
    def polys(self):
        return [p for _, p in self.basis]

    @property
    def tuples(self):
        return [t for t, _ in self.basis]

    def G_array(self) -> np.ndarray:
        if "G" not in self._cache:
            self._cache["G"] = np.array(self.G.to_rows(), dtype=np.int64)
        return self._cache["G"]

    def __str__(self):
        return f"SRM_{self.q}[{self.n},{self.r}] (N={self.length}, k={self.k})"


def build_code(q: int, n: int, r: int) -> SrmCode:
    tuples = enumerate_tuples(q, n, r)
    if not tuples:
        raise ParamDomain(f"E_{q}({n},{r}) is empty")
    basis = [(t, det_poly(q, t)) for t in tuples]
    domain = build_domain(q, n)
    rows = [[evaluate_int(p, alpha) for alpha in domain.classes] for _, p in basis]
    G = FqMatrix.from_rows(rows, q)
    code = SrmCode(q, n, r, basis, domain, G)
    if rank(G) != len(basis):
        # cannot happen for q >= r: distinct tuples give independent codewords
        raise AssertionError(f"generator matrix of {code} is rank deficient")
    return code


def encode(code: SrmCode, message) -> tuple:
    if len(message) != code.k:
        raise DimensionMismatch(f"message length {len(message)} != k={code.k}")
    m = np.array([int(x) % code.q for x in message], dtype=np.int64)
    return tuple(int(v) for v in (m @ code.G_array()) % code.q)


@dataclass(frozen=True)
class CodeParams:
    length: int
    dimension: int
    min_distance: int = None
    weight_enumerator: tuple = None  # A_0 .. A_N

    def as_dict(self):
        return {
            "N": self.length,
            "k": self.dimension,
            "d": self.min_distance,
            "weight_enumerator": list(self.weight_enumerator) if self.weight_enumerator else None,
        }


def _messages(q: int, k: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), k), dtype=np.int64)
    for j in range(k - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def weight_distribution(code: SrmCode, budget: int = DEFAULT_DISTANCE_BUDGET, chunk: int = 1 << 16):
    """Count codewords of each Hamming weight by enumerating all q**k messages."""
    q, k, N = code.q, code.k, code.length
    total = q**k
    if total > budget:
        raise BudgetExceeded(f"{q}^{k} = {total} messages exceeds budget {budget}")
    G = code.G_array()
    counts = np.zeros(N + 1, dtype=np.int64)
    for start in range(0, total, chunk):
        msgs = _messages(q, k, start, min(total, start + chunk))
        words = (msgs @ G) % q
        counts += np.bincount(np.count_nonzero(words, axis=1), minlength=N + 1)
    return tuple(int(c) for c in counts)


def params(code: SrmCode, compute_distance: bool = False, budget: int = DEFAULT_DISTANCE_BUDGET) -> CodeParams:
    if not compute_distance:
        return CodeParams(code.length, code.k)
    dist = weight_distribution(code, budget)
    d = next(w for w in range(1, len(dist)) if dist[w])
    return CodeParams(code.length, code.k, d, dist)


def dual_dimension(code: SrmCode) -> int:
    return len(nullspace(code.G))


def length_formula_n3(q: int) -> int:
    """sum_{i=1}^{q-2} i(i+1)/2, the closed length of SRM_q[3, r]."""
    return sum(i * (i + 1) // 2 for i in range(1, q - 1))


def expected_length(q: int, n: int) -> int:
    return comb(q, n)


def code_document(code: SrmCode) -> dict:
    return {
        "q": code.q,
        "n": code.n,
        "r": code.r,
        "basis": [{"tuple": list(t), "poly": render(p)} for t, p in code.basis],
        "domain": [list(c) for c in code.domain.classes],
        "G": code.G.to_rows(),
    }


def eval_table_n2(p: MultiPoly) -> list:
    """Full q x q table f(a, b) for a bivariate polynomial."""
    q = p.q
    return [[evaluate_int(p, (a, b)) for b in range(q)] for a in range(q)]
