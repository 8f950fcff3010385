"""Field construction, scalar arithmetic, Frobenius, valuations."""

import random
from fractions import Fraction

import pytest

from isoslope import LowerBound, field_create, frobenius, valuation
from isoslope.conway import conway_polynomial
from isoslope.errors import PrecisionError


def test_field_create_q2():
    K = field_create(2, 1, 20)
    assert (K.p, K.f, K.N) == (2, 1, 20)
    assert K.modulus == 2**20


def test_field_create_conway_lift_f9():
    # quadratic unramified extension of Q_3: Conway polynomial x^2 + 2x + 2
    K = field_create(3, 2, 20)
    assert K.defining_poly == (2, 2, 1)


def test_field_create_rejects_bad_input():
    with pytest.raises(ValueError):
        field_create(4, 1, 20)
    with pytest.raises(ValueError):
        field_create(3, 0, 20)
    with pytest.raises(ValueError):
        field_create(3, 1, 0)


def test_field_create_deterministic():
    assert field_create(5, 2, 24) is field_create(5, 2, 24)


def test_known_conway_polynomials():
    # published table values, constant term first
    assert conway_polynomial(2, 2) == (1, 1, 1)
    assert conway_polynomial(2, 3) == (1, 1, 0, 1)
    assert conway_polynomial(5, 2) == (2, 4, 1)
    assert conway_polynomial(7, 2) == (3, 6, 1)


def test_valuation_examples():
    K = field_create(3, 1, 20)
    assert valuation(K.scalar(9)) == 2
    assert valuation(K.scalar(Fraction(1, 3))) == -1
    assert valuation(K.zero()) == LowerBound(20)


def test_zero_within_precision_is_not_exact_zero():
    K = field_create(2, 1, 10)
    x = K.scalar(2**10)  # vanishes mod 2^10
    assert x.is_zero()
    assert isinstance(valuation(x), LowerBound)


def test_frobenius_fixes_prime_field():
    K = field_create(5, 1, 20)
    for v in (1, 7, Fraction(3, 5)):
        x = K.scalar(v)
        assert frobenius(x) == x


@pytest.mark.parametrize("p,f", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_frobenius_has_order_f(p, f):
    K = field_create(p, f, 20)
    rng = random.Random(11 * p + f)
    for _ in range(20):
        x = K.scalar([Fraction(rng.randint(-50, 50), rng.choice([1, 1, p])) for _ in range(f)])
        y = x
        for _ in range(f):
            y = frobenius(y)
        assert y == x


def test_frobenius_reduces_to_p_power_map():
    # sigma(w) must agree with the p-power map on the residue field
    for p, f in [(2, 2), (3, 2), (5, 2), (3, 3)]:
        K = field_create(p, f, 20)
        w = K.generator()
        wp = K.one()
        for _ in range(p):
            wp = wp * w
        diff = frobenius(w) - wp
        v = valuation(diff)
        assert (isinstance(v, LowerBound) and v.bound >= 1) or v >= 1


def test_frobenius_ring_homomorphism_bulk():
    K = field_create(3, 2, 16)
    rng = random.Random(7)
    for _ in range(1000):
        a = K.scalar([rng.randint(-200, 200), rng.randint(-200, 200)])
        b = K.scalar([rng.randint(-200, 200), rng.randint(-200, 200)])
        assert frobenius(a + b) == frobenius(a) + frobenius(b)
        assert frobenius(a * b) == frobenius(a) * frobenius(b)
        assert valuation(frobenius(a)) == valuation(a)


def test_ring_axioms_on_random_triples():
    K = field_create(2, 2, 18)
    rng = random.Random(3)
    for _ in range(200):
        a, b, c = (
            K.scalar([Fraction(rng.randint(-40, 40), rng.choice([1, 2])) for _ in range(2)])
            for _ in range(3)
        )
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_valuation_multiplicativity_and_ultrametric():
    K = field_create(5, 1, 20)
    rng = random.Random(9)
    for _ in range(300):
        a = K.scalar(Fraction(rng.randint(1, 10**6), 5 ** rng.randint(0, 3)))
        b = K.scalar(Fraction(rng.randint(1, 10**6), 5 ** rng.randint(0, 3)))
        va, vb = valuation(a), valuation(b)
        assert valuation(a * b) == va + vb
        s = valuation(a + b)
        if not isinstance(s, LowerBound):
            assert s >= min(va, vb)


def test_division_and_inverse():
    K = field_create(3, 2, 20)
    x = K.scalar([Fraction(4, 3), 7])
    assert x * x.inverse() == K.one()
    y = K.scalar([2, 5])
    assert (x / y) * y == x
    with pytest.raises(PrecisionError):
        K.zero().inverse()


def test_precision_never_increases():
    K = field_create(2, 1, 12)
    x = K.scalar(Fraction(1, 2))  # absolute precision 11
    assert x.abs_precision() == 11
    y = x * K.scalar(3)
    assert y.abs_precision() <= 11
    z = x + K.scalar(1)
    assert z.abs_precision() <= 11


def test_denominator_exponent_is_minimal():
    K = field_create(3, 1, 20)
    x = K.scalar(Fraction(9, 3))  # equals 3: k must normalize to 0
    assert x.k == 0
    assert valuation(x) == 1


def test_scalar_string_roundtrip():
    K = field_create(3, 2, 20)
    x = K.scalar([Fraction(5, 9), 7])
    again = K.scalar([Fraction(s) for s in x.to_strings()])
    assert again == x
