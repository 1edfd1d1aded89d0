import random

import pytest
from hypothesis import given, strategies as st

from critpoints.gf import DEFAULT_MODULUS, FieldElement, PrimeField, add, get_field, inv, is_prime, mul, neg

Q = DEFAULT_MODULUS
F = get_field(Q)
F7 = get_field(7)

residues = st.integers(min_value=0, max_value=Q - 1)


def test_modulus_validation():
    assert is_prime(65521) and not is_prime(65523) and not is_prime(1)
    for bad in (2, 9, 65523, 2**31 + 11):
        with pytest.raises(ValueError):
            PrimeField(bad)


def test_add_examples():
    assert add(F(0), F(1234)) == F(1234)
    assert add(F(65520), F(1)) == F(0)
    assert add(F7(5), F7(4)) == F7(2)


def test_mul_neg_examples():
    assert mul(F(1), F(999)) == F(999)
    assert mul(F(256), F(256)) == F(15)
    assert neg(F(0)) == F(0)
    assert neg(F(1)).value == 65520


def test_inv_examples():
    assert inv(F(1)) == F(1)
    assert inv(F(2)).value == 32761
    assert inv(F7(3)).value == 5
    with pytest.raises(ZeroDivisionError):
        inv(F(0))


def test_plain_int_methods():
    assert F.add(65520, 1) == 0
    assert F.mul(256, 256) == 15
    assert F.inv(2) == 32761
    assert F.div(1, 2) == 32761
    assert isinstance(F.add(F(3), 4), FieldElement)


def test_element_invariants():
    with pytest.raises(ValueError):
        FieldElement(Q, F)
    with pytest.raises(ValueError):
        add(F(1), F7(1))
    assert F(-1).value == Q - 1
    assert F(3) ** -1 == F.inv(F(3))


def test_field_axioms_bulk():
    rng = random.Random(12345)
    for _ in range(10_000):
        a, b, c = (F(rng.randrange(Q)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a and a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == F(0)
        if a:
            assert a * a.inverse() == F(1)


@given(residues, residues)
def test_inverse_property(a, b):
    if a:
        assert F.mul(F.inv(a), a) == 1
        assert F.mul(F.div(b, a), a) == b
