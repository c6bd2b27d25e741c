"""Prime field arithmetic.

Only odd primes are accepted: alternating polynomials collapse to symmetric
ones in characteristic 2.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import DivisionByZero, FieldMismatch, NotOddPrime


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q == 2 or not is_prime(self.q):
            raise NotOddPrime(f"q={self.q!r} is not an odd prime")

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.q, self)

    def elements(self):
        return [FieldElement(v, self) for v in range(self.q)]

    @property
    def zero(self):
        return FieldElement(0, self)

    @property
    def one(self):
        return FieldElement(1, self)

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> PrimeField:
    """Cached field instance for modulus q."""
    return PrimeField(q)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.field.q}")

    def _other(self, y):
        if isinstance(y, FieldElement):
            if y.field.q != self.field.q:
                raise FieldMismatch(f"GF({self.field.q}) vs GF({y.field.q})")
            return y.value
        if isinstance(y, int):
            return y % self.field.q
        return NotImplemented

    def _make(self, v):
        return FieldElement(v % self.field.q, self.field)

    def __add__(self, y):
        v = self._other(y)
        return NotImplemented if v is NotImplemented else self._make(self.value + v)

    __radd__ = __add__

    def __sub__(self, y):
        v = self._other(y)
        return NotImplemented if v is NotImplemented else self._make(self.value - v)

    def __rsub__(self, y):
        v = self._other(y)
        return NotImplemented if v is NotImplemented else self._make(v - self.value)

    def __mul__(self, y):
        v = self._other(y)
        return NotImplemented if v is NotImplemented else self._make(self.value * v)

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.value)

    def __truediv__(self, y):
        v = self._other(y)
        if v is NotImplemented:
            return v
        return self * inv(self._make(v))

    def __pow__(self, e: int):
        return pow_(self, e)

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __eq__(self, y):
        if isinstance(y, FieldElement):
            return self.field.q == y.field.q and self.value == y.value
        if isinstance(y, int):
            return self.value == y % self.field.q
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.q))

    def __repr__(self):
        return f"{self.value} (mod {self.field.q})"


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def sub(x: FieldElement, y: FieldElement) -> FieldElement:
    return x - y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def neg(x: FieldElement) -> FieldElement:
    return -x


def inv(x: FieldElement) -> FieldElement:
    if x.value == 0:
        raise DivisionByZero(f"0 has no inverse in GF({x.field.q})")
    return FieldElement(pow(x.value, -1, x.field.q), x.field)


def pow_(x: FieldElement, e: int) -> FieldElement:
    """x**e for e >= 0, with 0**0 == 1."""
    if e < 0:
        raise ValueError("negative exponent")
    return FieldElement(pow(x.value, e, x.field.q), x.field)


def inv_mod(v: int, q: int) -> int:
    """Inverse of a raw residue; the integer-level twin of `inv`."""
    v %= q
    if v == 0:
        raise DivisionByZero(f"0 has no inverse mod {q}")
    return pow(v, -1, q)
