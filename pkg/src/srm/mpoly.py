"""Sparse multivariate polynomials over GF(q).

Terms live in a dict keyed by exponent tuples. Nothing is reduced modulo
x^q - x: membership questions are asked in the polynomial ring itself.
"""

from itertools import permutations

from .errors import ArityMismatch, NotStrictlyIncreasing, OutOfRange
from .flinalg import ColumnIndex, FqMatrix
from .gf import FieldElement, field
from .perm import sign


def _grlex_key(exps):
    # graded lex with x1 > x2 > ...: higher degree first, then larger leading exponents
    return (-sum(exps), tuple(-e for e in exps))


class MultiPoly:
    __slots__ = ("n", "q", "terms")

    def __init__(self, n: int, q: int, terms=None):
        self.n = n
        self.q = q
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n:
                raise ArityMismatch(f"monomial {m} does not have {n} exponents")
            c = int(c) % q
            if c:
                clean[m] = c
        self.terms = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, n: int, q: int) -> "MultiPoly":
        return cls(n, q)

    @classmethod
    def constant(cls, n: int, q: int, c: int) -> "MultiPoly":
        return cls(n, q, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, q: int, i: int) -> "MultiPoly":
        """The variable x_{i+1}."""
        return cls(n, q, {tuple(int(k == i) for k in range(n)): 1})

    @classmethod
    def linear_form(cls, coeffs, q: int) -> "MultiPoly":
        n = len(coeffs)
        return cls(n, q, {tuple(int(k == j) for k in range(n)): c for j, c in enumerate(coeffs)})

    # -- basic protocol -----------------------------------------------
    def _check(self, other: "MultiPoly"):
        if self.n != other.n or self.q != other.q:
            raise ArityMismatch(f"({self.n} vars, GF({self.q})) vs ({other.n} vars, GF({other.q}))")

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n == other.n and self.q == other.q and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.q, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        q = self.q
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % q
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return _raw(self.n, q, out)

    def __neg__(self):
        return _raw(self.n, self.q, {m: self.q - c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MultiPoly":
        c = int(c) % self.q
        if c == 0:
            return MultiPoly(self.n, self.q)
        return _raw(self.n, self.q, {m: v * c % self.q for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        self._check(other)
        q = self.q
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = (out.get(m, 0) + c1 * c2) % q
        return MultiPoly(self.n, q, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = MultiPoly.constant(self.n, self.q, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __repr__(self):
        return f"MultiPoly({render(self)!r}, n={self.n}, q={self.q})"

    def __str__(self):
        return render(self)


def _raw(n, q, terms):
    # trusted constructor: terms already canonical and nonzero
    p = MultiPoly.__new__(MultiPoly)
    p.n, p.q, p.terms = n, q, terms
    return p


def add(p: MultiPoly, p2: MultiPoly) -> MultiPoly:
    return p + p2


def scale(p: MultiPoly, c) -> MultiPoly:
    return p.scale(c)


def mul(p: MultiPoly, p2: MultiPoly) -> MultiPoly:
    return p * p2


def det_poly(q: int, exponents, n: int = None) -> MultiPoly:
    """Leibniz expansion of det[x_j ** i_k]: sum over pi of sgn(pi) prod_k x_pi(k) ** i_k."""
    exponents = tuple(int(e) for e in exponents)
    if n is None:
        n = len(exponents)
    if len(exponents) != n:
        raise ArityMismatch("need one exponent per variable")
    if any(b <= a for a, b in zip(exponents, exponents[1:])):
        raise NotStrictlyIncreasing(f"{exponents} is not strictly increasing")
    if exponents and (exponents[0] < 0 or exponents[-1] > q - 1):
        raise OutOfRange(f"{exponents} leaves [0, {q - 1}]")
    terms = {}
    for pi in permutations(range(n)):
        m = [0] * n
        for k, e in enumerate(exponents):
            m[pi[k]] = e
        terms[tuple(m)] = sign(pi)
    return MultiPoly(n, q, terms)


def _as_rows(A):
    if isinstance(A, FqMatrix):
        return A.to_rows()
    return [list(r) for r in A]


def compose_affine(p: MultiPoly, A, b=None) -> MultiPoly:
    """Substitute x_i -> sum_j A[i][j] x_j + b_i."""
    rows = _as_rows(A)
    n, q = p.n, p.q
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ArityMismatch(f"substitution matrix is not {n}x{n}")
    if isinstance(A, FqMatrix) and A.q != q:
        raise ArityMismatch("matrix and polynomial live over different fields")
    images = []
    for i, r in enumerate(rows):
        form = MultiPoly.linear_form(r, q)
        if b is not None and int(b[i]) % q:
            form = form + MultiPoly.constant(n, q, int(b[i]))
        images.append(form)
    powers = [{0: MultiPoly.constant(n, q, 1)} for _ in range(n)]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            top = max(k for k in cache if k < e)
            acc = cache[top]
            for k in range(top + 1, e + 1):
                acc = acc * images[i]
                cache[k] = acc
        return cache[e]

    out = {}
    for m, c in p.terms.items():
        prod = None
        for i, e in enumerate(m):
            if e:
                prod = power(i, e) if prod is None else prod * power(i, e)
        if prod is None:
            prod = powers[0][0]
        for mm, cc in prod.terms.items():
            out[mm] = (out.get(mm, 0) + c * cc) % q
    return MultiPoly(n, q, out)


def compose_linear(p: MultiPoly, A) -> MultiPoly:
    """Substitute x_i -> sum_j A[i][j] x_j.

    compose_linear(compose_linear(p, A), B) == compose_linear(p, A @ B), since
    both evaluate at x to p(A B x).
    """
    return compose_affine(p, A, None)


def permute_vars(p: MultiPoly, pi) -> MultiPoly:
    """Replace x_k by x_{pi(k)} in every monomial."""
    n = p.n
    if sorted(pi) != list(range(n)):
        raise ArityMismatch(f"{pi} is not a permutation of {n} variables")
    out = {}
    for m, c in p.terms.items():
        e = [0] * n
        for k in range(n):
            e[pi[k]] = m[k]
        out[tuple(e)] = c
    return _raw(n, p.q, out)


def evaluate(p: MultiPoly, point) -> FieldElement:
    if len(point) != p.n:
        raise ArityMismatch(f"point has {len(point)} coordinates, polynomial has {p.n} variables")
    return FieldElement(evaluate_int(p, [int(x) for x in point]), field(p.q))


def evaluate_int(p: MultiPoly, point) -> int:
    q = p.q
    total = 0
    for m, c in p.terms.items():
        t = c
        for x, e in zip(point, m):
            if e:
                t = t * pow(x, e, q)
        total += t
    return total % q


def antisymmetrize(p: MultiPoly) -> MultiPoly:
    out = MultiPoly(p.n, p.q)
    for pi in permutations(range(p.n)):
        term = permute_vars(p, pi)
        out = out + (term if sign(pi) > 0 else -term)
    return out


def is_alternating(p: MultiPoly) -> bool:
    """f(x_pi) == sgn(pi) f(x) for every pi; adjacent transpositions suffice."""
    for k in range(p.n - 1):
        pi = list(range(p.n))
        pi[k], pi[k + 1] = pi[k + 1], pi[k]
        if permute_vars(p, pi) != -p:
            return False
    return True


def identify_vars(p: MultiPoly, i: int, j: int) -> MultiPoly:
    """Substitute x_j := x_i (0-based indices)."""
    out = {}
    for m, c in p.terms.items():
        e = list(m)
        e[i] += e[j]
        e[j] = 0
        e = tuple(e)
        out[e] = (out.get(e, 0) + c) % p.q
    return MultiPoly(p.n, p.q, out)


def coeff_vector(p: MultiPoly, index: ColumnIndex, grow: bool = True) -> dict:
    """Sparse {column: coefficient}; unseen monomials extend `index` when allowed.

    A monomial the (frozen) index has never seen maps to column -1 - k, which
    no span row can ever touch, so membership fails fast.
    """
    vec = {}
    extra = 0
    for m, c in p.terms.items():
        col = index.get(m, grow)
        if col is None:
            extra += 1
            col = -extra
        vec[col] = c
    return vec


def from_coeff_vector(vec: dict, index: ColumnIndex, n: int, q: int) -> MultiPoly:
    keys = index.keys()
    return MultiPoly(n, q, {keys[c]: v for c, v in vec.items()})


def _signed(c: int, q: int) -> int:
    return c if c <= q // 2 else c - q


def _monomial_str(m) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)


def render(p: MultiPoly) -> str:
    """Text form in graded-lex order, coefficients as signed residues: `-x1 + x2`."""
    if p.is_zero():
        return "0"
    out = []
    for m, c in p.sorted_terms():
        s = _signed(c, p.q)
        mono = _monomial_str(m)
        mag = abs(s)
        body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else str(mag))
        if not out:
            out.append(("-" if s < 0 else "") + body)
        else:
            out.append((" - " if s < 0 else " + ") + body)
    return "".join(out)


def monomials_of_degree(n: int, d: int):
    """All exponent tuples of total degree d, in graded-lex order."""
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    return out
