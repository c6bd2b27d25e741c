import pytest
from hypothesis import given, strategies as st

from srm.errors import DivisionByZero, FieldMismatch, NotOddPrime
from srm.gf import PrimeField, add, field, inv, inv_mod, is_prime, mul, neg, pow_, sub

PRIMES = [3, 5, 7, 11, 13]


def test_is_prime_small():
    assert [m for m in range(30) if is_prime(m)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("q", [2, 4, 9, 15, 1, 0, -3])
def test_rejects_non_odd_primes(q):
    with pytest.raises(NotOddPrime):
        PrimeField(q)


def test_inverse_table_f7():
    F = field(7)
    assert {a: int(inv(F(a))) for a in range(1, 7)} == {1: 1, 2: 4, 3: 5, 4: 2, 5: 3, 6: 6}


def test_zero_has_no_inverse():
    with pytest.raises(DivisionByZero):
        inv(field(5)(0))
    with pytest.raises(DivisionByZero):
        field(5)(3) / 0


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        field(5)(1) + field(7)(1)


def test_pow_conventions():
    F = field(5)
    assert pow_(F(0), 0) == F(1)
    with pytest.raises(ValueError):
        pow_(F(2), -1)
    assert F(3) ** 4 == 1  # Fermat


def test_int_interop_and_reduction():
    F = field(11)
    assert F(-1) == 10
    assert 3 - F(5) == F(9)
    assert int(F(4) * 3) == 1
    assert inv_mod(3, 11) == 4


@given(st.sampled_from(PRIMES), st.integers(), st.integers(), st.integers())
def test_field_axioms(q, a, b, c):
    F = field(q)
    x, y, z = F(a), F(b), F(c)
    assert add(x, y) == add(y, x)
    assert mul(x, add(y, z)) == add(mul(x, y), mul(x, z))
    assert sub(x, y) == add(x, neg(y))
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
    if int(x):
        assert mul(x, inv(x)) == F.one


@given(st.sampled_from(PRIMES), st.integers(1, 10**6))
def test_inverse_matches_fermat(q, a):
    if a % q:
        assert inv_mod(a, q) == pow(a, q - 2, q)
