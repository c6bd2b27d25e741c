"""Vectorized span-preservation test for large batches of matrices.

For a homogeneous stratum of degree d the composed generator f(A x) is a
homogeneous polynomial of degree d, so its coefficient vector c is fixed by
its values on D = C(d+n-1, n-1) unisolvent points S: c = V^-1 f(A S). It
lies in the span W_d of the degree-d generators iff H c = 0, H spanning the
annihilator of W_d. Precomputing R = H V^-1 turns membership into one
matrix product over evaluations, which numpy does for a whole batch.

Because E_q(n, r) is spanned by homogeneous generators, preserving it is the
conjunction of the per-degree tests.
"""

from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from .flinalg import FqMatrix, RowSpan, inverse, nullspace
from .mpoly import det_poly, monomials_of_degree
from .perm import sign


def batch_det(A: np.ndarray, q: int) -> np.ndarray:
    """Determinants mod q of a (B, n, n) integer stack, by permutation expansion."""
    n = A.shape[1]
    total = np.zeros(A.shape[0], dtype=np.int64)
    for p in permutations(range(n)):
        term = A[:, 0, p[0]].copy()
        for i in range(1, n):
            term = term * A[:, i, p[i]] % q
        total += term if sign(p) > 0 else -term
    return total % q


def _eval_det_poly(Y: np.ndarray, exps, q: int) -> np.ndarray:
    """det[y_k ** i_j] for Y of shape (B, n, P); returns (B, P)."""
    n = Y.shape[1]
    if tuple(exps) == tuple(range(n)):
        out = np.ones((Y.shape[0], Y.shape[2]), dtype=np.int64)
        for a in range(n):
            for b in range(a + 1, n):
                out = out * (Y[:, b] - Y[:, a]) % q
        return out
    top = max(exps)
    pw = [np.ones_like(Y)]
    for _ in range(top):
        pw.append(pw[-1] * Y % q)
    out = np.zeros((Y.shape[0], Y.shape[2]), dtype=np.int64)
    for p in permutations(range(n)):
        term = pw[exps[0]][:, p[0]]
        for k in range(1, n):
            term = term * pw[exps[k]][:, p[k]] % q
        out += term if sign(p) > 0 else -term
    return out % q


@dataclass
class Stratum:
    degree: int
    tuples: list
    points: np.ndarray = None  # (D, n) unisolvent points, or None
    R: np.ndarray = None  # (D - k_d, D) float64 check matrix

    @property
    def exact(self) -> bool:
        return self.points is not None


def _build_stratum(q: int, n: int, d: int, tuples, seed: int = 0) -> Stratum:
    monos = monomials_of_degree(n, d)
    D = len(monos)
    col = {m: i for i, m in enumerate(monos)}
    W = []
    for t in tuples:
        row = [0] * D
        for m, c in det_poly(q, t).terms.items():
            row[col[m]] = c
        W.append(row)
    H = nullspace(FqMatrix.from_rows(W, q))
    st = Stratum(d, list(tuples))
    if not H:
        # W_d is everything of degree d: nothing to check
        st.points = np.zeros((0, n), dtype=np.int64)
        st.R = np.zeros((0, 0))
        return st
    # random candidate order finds D independent evaluation rows quickly
    cands = np.random.default_rng(seed).permutation(q**n)
    span = RowSpan(q, D)
    chosen = []
    for idx in cands:
        pt = [int(idx) // q**(n - 1 - j) % q for j in range(n)]
        row = [1] * D
        for k, m in enumerate(monos):
            v = 1
            for x, e in zip(pt, m):
                v = v * pow(x, e, q) % q
            row[k] = v
        if span.insert(row):
            chosen.append((pt, row))
            if len(chosen) == D:
                break
    if len(chosen) < D:
        return st  # no unisolvent set: degree-d monomials collide as functions
    V = FqMatrix.from_rows([r for _, r in chosen], q)
    Vinv = np.array(inverse(V).to_rows(), dtype=np.int64)
    Hm = np.array(H, dtype=np.int64)
    st.points = np.array([p for p, _ in chosen], dtype=np.int64)
    st.R = ((Hm @ Vinv) % q).astype(np.float64)
    return st


class SpanKernel:
    """Batch predicate `A preserves E_q(n, r)`, split by homogeneous degree."""

    def __init__(self, q: int, n: int, tuples):
        self.q, self.n = q, n
        by_deg = {}
        for t in tuples:
            by_deg.setdefault(sum(t), []).append(tuple(t))
        self.strata = [_build_stratum(q, n, d, ts) for d, ts in sorted(by_deg.items())]

    @property
    def exact(self) -> bool:
        return all(s.exact for s in self.strata)

    def stratum_mask(self, st: Stratum, A: np.ndarray) -> np.ndarray:
        """Boolean (B,) mask of matrices carrying every degree-d generator into W_d."""
        q, n = self.q, self.n
        B = A.shape[0]
        if B == 0 or st.R.shape[0] == 0:
            return np.ones(B, dtype=bool)
        if not st.exact:
            return self._fallback_mask(st, A)
        S = st.points.T.astype(np.float64)  # (n, D)
        Y = (A.reshape(B * n, n).astype(np.float64) @ S).astype(np.int64) % q
        Y = Y.reshape(B, n, -1)
        ok = np.ones(B, dtype=bool)
        for t in st.tuples:
            idx = np.flatnonzero(ok)
            if idx.size == 0:
                break
            vals = _eval_det_poly(Y[idx], t, q).astype(np.float64)
            res = (vals @ st.R.T).astype(np.int64) % q
            ok[idx[np.any(res != 0, axis=1)]] = False
        return ok

    def _fallback_mask(self, st: Stratum, A: np.ndarray) -> np.ndarray:
        from .invariance import preserves_polys

        q, n = self.q, self.n
        polys = [det_poly(q, t) for t in st.tuples]
        sp = _stratum_span(q, n, st.tuples)
        out = np.zeros(A.shape[0], dtype=bool)
        for i in range(A.shape[0]):
            M = FqMatrix(q, n, n, tuple(int(v) for v in A[i].ravel()))
            out[i] = preserves_polys(polys, sp, M)
        return out

    def mask(self, A: np.ndarray, strata=None) -> np.ndarray:
        """Conjunction over the chosen strata (default: all), lowest degree first."""
        strata = self.strata if strata is None else strata
        ok = np.ones(A.shape[0], dtype=bool)
        for st in strata:
            idx = np.flatnonzero(ok)
            if idx.size == 0:
                break
            ok[idx[~self.stratum_mask(st, A[idx])]] = False
        return ok


class CodeKernel(SpanKernel):
    """Batch predicate at codeword level: f(A alpha) over the class
    representatives must satisfy every parity check of the code."""

    def __init__(self, code):
        self.q, self.n = code.q, code.n
        H = nullspace(code.G)
        st = Stratum(-1, list(code.tuples))
        st.points = np.array(code.domain.classes, dtype=np.int64).reshape(-1, code.n)
        st.R = np.array(H, dtype=np.float64).reshape(len(H), -1) if H else np.zeros((0, 0))
        self.strata = [st]


def _stratum_span(q, n, tuples):
    from .invariance import _span_of

    return _span_of([det_poly(q, t) for t in tuples], q)


def all_rows(q: int, n: int) -> np.ndarray:
    """Every vector of F_q^n in lex order, shape (q**n, n)."""
    return np.array(list(product(range(q), repeat=n)), dtype=np.int64).reshape(-1, n)


def chunk_matrices(q: int, n: int, first_row: int, tails: np.ndarray) -> np.ndarray:
    """All matrices whose first row is the `first_row`-th vector, in odometer order."""
    rows = all_rows(q, n)
    B = tails.shape[0]
    A = np.empty((B, n, n), dtype=np.int64)
    A[:, 0, :] = rows[first_row]
    A[:, 1:, :] = tails
    return A


def tail_block(q: int, n: int) -> np.ndarray:
    """All (n-1) x n tails in row-major odometer order."""
    if n == 1:
        return np.zeros((1, 0, 1), dtype=np.int64)
    flat = np.array(list(product(range(q), repeat=n * (n - 1))), dtype=np.int64)
    return flat.reshape(-1, n - 1, n)
