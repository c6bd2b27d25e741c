"""Dense matrices over GF(q) and an incremental sparse row-span.

Entries are stored as canonical integer residues; `FqMatrix.entry` wraps one
back into a `FieldElement` when needed.
"""

from dataclasses import dataclass, field as dc_field
from itertools import permutations

from .errors import DimensionMismatch, NotSquare, Singular
from .gf import FieldElement, field, inv_mod
from .perm import sign


@dataclass(frozen=True)
class FqMatrix:
    q: int
    rows: int
    cols: int
    entries: tuple  # row-major ints in [0, q)

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionMismatch("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows, q: int) -> "FqMatrix":
        rows = [[int(v) % q for v in r] for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged or empty row list")
        return cls(q, len(rows), len(rows[0]), tuple(v for r in rows for v in r))

    @classmethod
    def identity(cls, n: int, q: int) -> "FqMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], q)

    @classmethod
    def zeros(cls, rows: int, cols: int, q: int) -> "FqMatrix":
        return cls(q, rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self[i, j], field(self.q))

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "FqMatrix":
        return FqMatrix.from_rows([[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.q)

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        if self.q != other.q or self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        q = self.q
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.append([sum(r[k] * other[k, j] for k in range(self.cols)) % q for j in range(other.cols)])
        return FqMatrix.from_rows(out, q)

    def apply(self, v) -> tuple:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match matrix columns")
        return tuple(sum(a * int(x) for a, x in zip(self.row(i), v)) % self.q for i in range(self.rows))

    def scale(self, c: int) -> "FqMatrix":
        return FqMatrix(self.q, self.rows, self.cols, tuple(c * v % self.q for v in self.entries))

    def literal(self) -> str:
        """Render as `r1c1,r1c2;r2c1,r2c2`."""
        return ";".join(",".join(str(v) for v in self.row(i)) for i in range(self.rows))

    def __str__(self):
        return "\n".join(" ".join(str(v) for v in self.row(i)) for i in range(self.rows))


def parse_matrix(text: str, q: int) -> FqMatrix:
    """Parse the `2,1;1,2` literal format."""
    try:
        rows = [[int(tok) for tok in part.split(",")] for part in text.strip().split(";")]
    except ValueError as exc:
        raise DimensionMismatch(f"bad matrix literal {text!r}") from exc
    return FqMatrix.from_rows(rows, q)


def _rref_rows(rows, ncols: int, q: int):
    rows = [list(r) for r in rows]
    pivots = []
    lead = 0
    for c in range(ncols):
        piv = next((i for i in range(lead, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[lead], rows[piv] = rows[piv], rows[lead]
        s = inv_mod(rows[lead][c], q)
        rows[lead] = [v * s % q for v in rows[lead]]
        prow = rows[lead]
        for i in range(len(rows)):
            if i != lead and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], prow)]
        pivots.append(c)
        lead += 1
        if lead == len(rows):
            break
    return rows, pivots


def rref(m: FqMatrix):
    """Return (reduced row echelon form, rank, pivot columns)."""
    rows, pivots = _rref_rows(m.to_rows(), m.cols, m.q)
    return FqMatrix.from_rows(rows, m.q), len(pivots), pivots


def rank(m: FqMatrix) -> int:
    return rref(m)[1]


def det(m: FqMatrix) -> FieldElement:
    if not m.is_square:
        raise NotSquare(f"{m.rows}x{m.cols} matrix has no determinant")
    q, n = m.q, m.rows
    a = m.to_rows()
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return FieldElement(0, field(q))
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d = d * a[c][c] % q
        s = inv_mod(a[c][c], q)
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * s % q
                a[i] = [(x - f * y) % q for x, y in zip(a[i], a[c])]
    return FieldElement(d % q, field(q))


def det_leibniz(m: FqMatrix) -> int:
    """Permutation-expansion determinant; independent check of `det`."""
    n, q = m.rows, m.q
    total = 0
    for p in permutations(range(n)):
        t = sign(p)
        for i in range(n):
            t *= m[i, p[i]]
        total += t
    return total % q


def inverse(m: FqMatrix) -> FqMatrix:
    if not m.is_square:
        raise NotSquare(f"{m.rows}x{m.cols} matrix has no inverse")
    n, q = m.rows, m.q
    aug = [list(m.row(i)) + [int(i == j) for j in range(n)] for i in range(n)]
    rows, pivots = _rref_rows(aug, 2 * n, q)
    if pivots[:n] != list(range(n)):
        raise Singular("matrix is singular")
    return FqMatrix.from_rows([r[n:] for r in rows], q)


def nullspace(m: FqMatrix) -> list:
    """Basis of the right kernel, one free variable per vector."""
    rows, pivots = _rref_rows(m.to_rows(), m.cols, m.q)
    q = m.q
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * m.cols
        v[f] = 1
        for r, pc in zip(rows, pivots):
            v[pc] = -r[f] % q
        basis.append(tuple(v))
    return basis


@dataclass
class ColumnIndex:
    """Append-only map from hashable keys (monomials) to column numbers."""

    columns: dict = dc_field(default_factory=dict)
    frozen: bool = False

    def get(self, key, grow: bool = True):
        col = self.columns.get(key)
        if col is None and grow and not self.frozen:
            col = self.columns[key] = len(self.columns)
        return col

    def __len__(self):
        return len(self.columns)

    def keys(self):
        return list(self.columns)

    def freeze(self) -> "ColumnIndex":
        return ColumnIndex(dict(self.columns), frozen=True)


class RowSpan:
    """Row space kept in reduced echelon form over sparse dict vectors.

    `ambient_dim=None` means the ambient space grows with the column index,
    which is how polynomial coefficient vectors are fed in.
    """

    def __init__(self, q: int, ambient_dim=None):
        self.q = q
        self.ambient_dim = ambient_dim
        self.pivot_rows = {}  # pivot column -> row (dict col -> value), pivot value 1
        self._touched = set()  # superset of every stored row's support

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def copy(self) -> "RowSpan":
        s = RowSpan(self.q, self.ambient_dim)
        s.pivot_rows = {c: dict(r) for c, r in self.pivot_rows.items()}
        s._touched = set(self._touched)
        return s

    def _as_sparse(self, v) -> dict:
        if isinstance(v, dict):
            out = {c: x % self.q for c, x in v.items() if x % self.q}
            if self.ambient_dim is not None and any(not 0 <= c < self.ambient_dim for c in out):
                raise DimensionMismatch("sparse vector has support outside the ambient space")
            return out
        if self.ambient_dim is not None and len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector length {len(v)} != ambient dimension {self.ambient_dim}")
        return {c: int(x) % self.q for c, x in enumerate(v) if int(x) % self.q}

    def reduce(self, v) -> dict:
        """Residual of v after elimination against the stored pivot rows."""
        q = self.q
        r = self._as_sparse(v)
        for c in sorted(set(r) & set(self.pivot_rows)):
            # earlier eliminations never reintroduce a pivot column (rows are fully reduced)
            f = r.get(c)
            if not f:
                continue
            for cc, x in self.pivot_rows[c].items():
                y = (r.get(cc, 0) - f * x) % q
                if y:
                    r[cc] = y
                else:
                    r.pop(cc, None)
        return r

    def contains(self, v) -> bool:
        r = self._as_sparse(v)
        # a column no pivot row touches can never be cancelled
        if not self._touched.issuperset(r):
            return False
        return not self.reduce(r)

    def insert(self, v) -> bool:
        """Add v to the span; returns whether the rank grew."""
        q = self.q
        r = self.reduce(v)
        if not r:
            return False
        pc = min(r)
        s = inv_mod(r[pc], q)
        r = {c: x * s % q for c, x in r.items()}
        for c, row in self.pivot_rows.items():
            f = row.get(pc)
            if f:
                for cc, x in r.items():
                    y = (row.get(cc, 0) - f * x) % q
                    if y:
                        row[cc] = y
                    else:
                        row.pop(cc, None)
        self.pivot_rows[pc] = r
        self.pivot_rows = dict(sorted(self.pivot_rows.items()))
        self._touched.update(r)
        return True

    def rows_dense(self, ncols: int) -> list:
        return [[row.get(c, 0) for c in range(ncols)] for row in self.pivot_rows.values()]


def span_insert(s: RowSpan, v):
    """Functional form: returns (new span, grew) and leaves s untouched."""
    t = s.copy()
    grew = t.insert(v)
    return (t if grew else s), grew


def span_contains(s: RowSpan, v) -> bool:
    return s.contains(v)
