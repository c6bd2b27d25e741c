"""Which linear substitutions x -> A x carry E_q(n, r) into itself.

Two independent routes decide invariance:

* polynomial level (`preserves`): compose every basis generator with A and
  test membership of its coefficient vector in the span of the basis;
* codeword level (`codeword_verdict`): evaluate every composed generator at
  the class representatives and test the word against the row space of G.

For maps that keep coordinates distinct the codeword action is a signed
permutation (`induced_monomial_map`), and `code_invariant_under` tests it.
Evaluation at class representatives is injective on E_q(n, r) but not on
arbitrary polynomials, so the code level also accepts maps that send classes
onto repeated-coordinate tuples (their words vanish), and at r = q it cannot
tell x^q from x.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product

from .core import SrmCode
from .errors import NotDeltaPreserving, ParamDomain, Singular
from .flinalg import ColumnIndex, FqMatrix, RowSpan, det, inverse
from .gf import PrimeField
from .mpoly import (
    MultiPoly,
    coeff_vector,
    compose_linear,
    det_poly,
    evaluate_int,
    from_coeff_vector,
    is_alternating,
)
from .perm import perm_matrix_rows, sorting_sign


@dataclass(frozen=True)
class LinearMap:
    A: FqMatrix

    def __post_init__(self):
        if not self.A.is_square:
            raise Singular("a linear map needs a square matrix")
        if det(self.A).value == 0:
            raise Singular(f"matrix {self.A.literal()} is singular")

    @classmethod
    def from_rows(cls, rows, q: int) -> "LinearMap":
        return cls(FqMatrix.from_rows(rows, q))

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def q(self) -> int:
        return self.A.q

    @property
    def key(self) -> tuple:
        """Row-major entries; the canonical sort key."""
        return self.A.entries

    def literal(self) -> str:
        return self.A.literal()

    def rows(self) -> list:
        return self.A.to_rows()

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.A @ other.A)

    def inverse(self) -> "LinearMap":
        return LinearMap(inverse(self.A))

    def __lt__(self, other):
        return self.key < other.key


def sort_maps(maps) -> list:
    """Duplicate-free, ordered by row-major entries."""
    uniq = {m.key: m for m in maps}
    return [uniq[k] for k in sorted(uniq)]


@dataclass(frozen=True)
class MonomialMap:
    """Codeword action w -> w' with w'[c] = signs[c] * w[perm[c]]."""

    perm: tuple
    signs: tuple  # each 1 or q-1
    q: int

    def apply(self, word) -> tuple:
        return tuple(s * int(word[p]) % self.q for p, s in zip(self.perm, self.signs))

    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.perm)) and all(s == 1 for s in self.signs)


@dataclass(frozen=True)
class InvarianceVerdict:
    preserves_span: bool
    witness: tuple = None  # (basis index, residual MultiPoly) when not preserving

    def __post_init__(self):
        if self.preserves_span == (self.witness is not None):
            raise ValueError("witness must be present exactly when the span is not preserved")

    def __bool__(self):
        return self.preserves_span


# -- spans ----------------------------------------------------------------

def _span_of(polys, q):
    index = ColumnIndex()
    span = RowSpan(q)
    for p in polys:
        span.insert(coeff_vector(p, index))
    return span, index.freeze()


def basis_span(code: SrmCode):
    """Frozen (RowSpan, ColumnIndex) for the basis coefficient vectors."""
    if "span" not in code._cache:
        code._cache["span"] = _span_of(code.polys, code.q)
    return code._cache["span"]


@lru_cache(maxsize=None)
def degree_span(q: int, n: int, R: int):
    """Span of det(x, i) over all tuples with entries <= q-1 and sum <= R.

    Unlike `core.enumerate_tuples`, R is not held to the code-parameter
    window; lemma statements multiply degrees up past r.
    """
    if R < 0:
        raise ParamDomain("negative degree bound")
    polys = [det_poly(q, t) for t in combinations(range(q), n) if sum(t) <= R]
    return _span_of(polys, q)


def in_span(p: MultiPoly, span_index) -> bool:
    span, index = span_index
    return span.contains(coeff_vector(p, index, grow=False))


def _residual(p: MultiPoly, span_index) -> MultiPoly:
    span, index = span_index
    local = ColumnIndex(dict(index.columns))
    res = span.reduce(coeff_vector(p, local))
    return from_coeff_vector(res, local, p.n, p.q)


def preserves(code: SrmCode, A) -> InvarianceVerdict:
    """Polynomial-level check: every basis generator composed with A stays in the span."""
    M = A.A if isinstance(A, LinearMap) else A
    sp = basis_span(code)
    for t, f in enumerate(code.polys):
        g = compose_linear(f, M)
        if not in_span(g, sp):
            return InvarianceVerdict(False, (t, _residual(g, sp)))
    return InvarianceVerdict(True)


def preserves_polys(polys, span_index, M) -> bool:
    """Same predicate as `preserves` for an arbitrary generator subset."""
    return all(in_span(compose_linear(f, M), span_index) for f in polys)


# -- candidate sets ------------------------------------------------------

def build_M(q: int) -> list:
    """All invertible [[a, b], [b, a]]: a != b and a != -b."""
    PrimeField(q)
    out = [
        LinearMap.from_rows([[a, b], [b, a]], q)
        for a, b in product(range(q), repeat=2)
        if a != b and (a + b) % q
    ]
    return sort_maps(out)


def circulant_ab(n: int, a: int, b: int, q: int) -> list:
    """Rows of the matrix with a on the diagonal and b elsewhere."""
    return [[(a if i == j else b) % q for j in range(n)] for i in range(n)]


def _permuted(P, rows, q):
    return [list(rows[P[i]]) for i in range(len(P))]


def build_K(q: int) -> list:
    """P * C(a, b) for every 3x3 permutation P, a != b, a != -2b."""
    PrimeField(q)
    if q < 5:
        raise ParamDomain("K is only defined here for q >= 5")
    out = []
    for a, b in product(range(q), repeat=2):
        if a == b or (a + 2 * b) % q == 0:
            continue
        C = circulant_ab(3, a, b, q)
        for P in permutations(range(3)):
            out.append(LinearMap.from_rows(_permuted(P, C, q), q))
    return sort_maps(out)


@dataclass(frozen=True)
class ConjectureCensus:
    """How the stated pair constraint compares with the computed determinant."""

    n: int
    q: int
    pairs_literal: int  # a != b and a != (1-n) b
    pairs_invertible: int  # det((b-a) I + a J) != 0
    literal_but_singular: int  # dropped by the determinant filter
    invertible_but_excluded: int  # invertible, rejected by the literal constraint

    def as_dict(self):
        return dict(self.__dict__)


def _conj_base(n, a, b, q):
    # (b - a) I + a J: b on the diagonal, a elsewhere
    return circulant_ab(n, b, a, q)


def conjecture_census(n: int, q: int) -> ConjectureCensus:
    PrimeField(q)
    lit = inv = lit_sing = inv_excl = 0
    for a, b in product(range(q), repeat=2):
        literal = a != b and (a - (1 - n) * b) % q != 0
        invertible = det(FqMatrix.from_rows(_conj_base(n, a, b, q), q)).value != 0
        lit += literal
        inv += invertible
        lit_sing += literal and not invertible
        inv_excl += invertible and not literal
    return ConjectureCensus(n, q, lit, inv, lit_sing, inv_excl)


def build_conjectured_set(n: int, q: int, constraint: str = "determinant") -> list:
    """P ((b - a) I_n + a J_n) over permutations P.

    constraint="determinant" keeps every (a, b) whose base matrix is
    invertible; constraint="literal" applies a != b, a != (1 - n) b as
    written and then drops whatever is still singular.
    """
    PrimeField(q)
    if n < 2:
        raise ParamDomain("need n >= 2")
    if constraint not in ("determinant", "literal"):
        raise ValueError(f"unknown constraint {constraint!r}")
    out = []
    for a, b in product(range(q), repeat=2):
        if a == b:
            continue
        if constraint == "literal" and (a - (1 - n) * b) % q == 0:
            continue
        base = _conj_base(n, a, b, q)
        if det(FqMatrix.from_rows(base, q)).value == 0:
            continue
        for P in permutations(range(n)):
            out.append(LinearMap.from_rows(_permuted(P, base, q), q))
    return sort_maps(out)


def permutation_maps(n: int, q: int) -> list:
    return [LinearMap.from_rows(perm_matrix_rows(p), q) for p in permutations(range(n))]


# -- codeword-level action -------------------------------------------------

def induced_monomial_map(code: SrmCode, A) -> MonomialMap:
    """Signed class permutation induced by A; f(A alpha) = sign * f(sorted(A alpha))."""
    M = A.A if isinstance(A, LinearMap) else A
    q = code.q
    where = code.domain.index()
    perm, signs = [], []
    for alpha in code.domain.classes:
        beta = M.apply(alpha)
        s = sorting_sign(beta)
        if s == 0:
            raise NotDeltaPreserving(f"{M.literal()} sends {alpha} to {beta}")
        perm.append(where[tuple(sorted(beta))])
        signs.append(1 if s > 0 else q - 1)
    return MonomialMap(tuple(perm), tuple(signs), q)


def _row_span(code: SrmCode) -> RowSpan:
    if "rowspan" not in code._cache:
        span = RowSpan(code.q, code.length)
        for i in range(code.G.rows):
            span.insert(code.G.row(i))
        code._cache["rowspan"] = span
    return code._cache["rowspan"]


def code_invariant_under(code: SrmCode, m: MonomialMap) -> bool:
    span = _row_span(code)
    return all(span.contains(m.apply(code.G.row(i))) for i in range(code.G.rows))


def transformed_word(code: SrmCode, f: MultiPoly, A) -> tuple:
    """(f(A alpha)) over the class representatives alpha."""
    M = A.A if isinstance(A, LinearMap) else A
    return tuple(evaluate_int(f, M.apply(alpha)) for alpha in code.domain.classes)


def codeword_verdict(code: SrmCode, A) -> bool:
    """Code-level invariance: every transformed generator word lies in the code."""
    span = _row_span(code)
    return all(span.contains(transformed_word(code, f, A)) for f in code.polys)


def monomial_verdict(code: SrmCode, A) -> bool:
    """Invariance under the induced signed permutation; False if A collapses coordinates."""
    try:
        m = induced_monomial_map(code, A)
    except NotDeltaPreserving:
        return False
    return code_invariant_under(code, m)


def is_delta_preserving(code: SrmCode, A) -> bool:
    try:
        induced_monomial_map(code, A)
    except NotDeltaPreserving:
        return False
    return True


# -- group axioms ------------------------------------------------------------

def _mul_keys(x, y, n, q):
    return tuple(
        sum(x[i * n + k] * y[k * n + j] for k in range(n)) % q for i in range(n) for j in range(n)
    )


def check_group(maps) -> bool:
    """Closed under product and inverse, and contains the identity."""
    maps = list(maps)
    if not maps:
        return False
    n, q = maps[0].n, maps[0].q
    keys = {m.key for m in maps}
    if FqMatrix.identity(n, q).entries not in keys:
        return False
    for m in maps:
        if m.inverse().key not in keys:
            return False
    for x in keys:
        for y in keys:
            if _mul_keys(x, y, n, q) not in keys:
                return False
    return True


# -- lemma oracles ---------------------------------------------------------

def lemma_alpha_oracle(q: int, r: int, alpha: int, beta: int, t: int, f: MultiPoly) -> bool:
    """(alpha x1^2 + beta x1 x2 + alpha x2^2)^t * f lies in E_q(2, deg f + 2t).

    The degree bound is widened by 2t because the product has that degree.
    With deg f + 2t == q a pure power x1^q can appear, which no generator
    carries, so callers wanting a true statement keep deg f + 2t <= q - 1.
    """
    if f.n != 2:
        raise ParamDomain("the quadratic-multiplier lemma is bivariate")
    if not is_alternating(f):
        raise ParamDomain("f must be alternating")
    if f.degree() > r:
        raise ParamDomain(f"deg f = {f.degree()} exceeds r = {r}")
    R = max(f.degree(), 0) + 2 * t
    if R > q:
        raise ParamDomain(f"deg f + 2t = {R} exceeds q = {q}")
    quad = MultiPoly(2, q, {(2, 0): alpha, (1, 1): beta, (0, 2): alpha})
    return in_span(quad**t * f, degree_span(q, 2, R))


def lemma_det_oracle(q: int, a: int, b: int, t: int) -> bool:
    """(b x1 + a x2)^t - (a x1 + b x2)^t lies in E_q(2, t)."""
    if not 1 <= t <= q - 1:
        raise ParamDomain(f"need 1 <= t <= q-1, got t={t}")
    p = MultiPoly.linear_form([b, a], q) ** t - MultiPoly.linear_form([a, b], q) ** t
    return in_span(p, degree_span(q, 2, t))


def alternating_characterization_oracle(q: int, r: int, p: MultiPoly) -> bool:
    """A trivariate p of degree <= r is alternating exactly when it lies in E_q(3, r)."""
    if p.n != 3:
        raise ParamDomain("the characterization is stated for three variables")
    if p.degree() > r:
        raise ParamDomain(f"deg p = {p.degree()} exceeds r = {r}")
    return is_alternating(p) == in_span(p, degree_span(q, 3, r))
