import pytest

from ulrichmf.fields import (
    QQ,
    DEFAULT_PRIME,
    FieldError,
    NotASquare,
    PrimeField,
    field_from_name,
)


def test_default_prime_is_1_mod_4():
    assert DEFAULT_PRIME % 4 == 1
    assert PrimeField(DEFAULT_PRIME).p == DEFAULT_PRIME


def test_prime_field_rejects_bad_characteristic():
    for bad in (0, 1, 2, 4, 9, 10000):
        with pytest.raises(FieldError):
            PrimeField(bad)


def test_prime_field_arithmetic():
    f = PrimeField(7)
    assert f.add(5, 4) == 2
    assert f.mul(3, 5) == 1
    assert f.inv(3) == 5
    assert f.neg(2) == 5
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_sqrt_examples():
    f = PrimeField(7)
    assert f.sqrt(2) == 3  # 3^2 = 9 = 2 mod 7
    assert f.sqrt(0) == 0
    with pytest.raises(NotASquare):
        f.sqrt(3)


def test_sqrt_brute_force_agreement():
    # every quadratic residue gets a root r with r^2 = a, and the canonical rep
    for p in (7, 13, 10009):
        f = PrimeField(p)
        squares = {x * x % p for x in range(1, min(p, 300))}
        for a in sorted(squares)[:50]:
            r = f.sqrt(a)
            assert r * r % p == a
            assert 0 <= r <= (p - 1) // 2


def test_sqrt_tonelli_branch():
    # p = 13 = 1 mod 4 exercises the full Tonelli-Shanks loop
    f = PrimeField(13)
    assert f.sqrt(12) in (5, 8)  # sqrt(-1) mod 13
    assert f.sqrt(12) == 5  # canonical representative
    with pytest.raises(NotASquare):
        f.sqrt(2)


def test_rational_field():
    from fractions import Fraction

    assert QQ.of(3) == Fraction(3)
    assert QQ.div(QQ.of(1), QQ.of(3)) == Fraction(1, 3)
    assert QQ.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(NotASquare):
        QQ.sqrt(Fraction(2))
    with pytest.raises(NotASquare):
        QQ.sqrt(Fraction(-4))


def test_field_from_name():
    assert field_from_name("Q") == QQ
    assert field_from_name("10009") == PrimeField(10009)
    assert field_from_name(PrimeField(7)) == PrimeField(7)
