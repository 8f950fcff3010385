"""Newton polygons and slope factorization."""

import random
from fractions import Fraction

import pytest

from isoslope import INFINITE_SLOPE, Poly, field_create, newton_polygon, poly_invmod
from isoslope import poly_slope_factorization as slope_factorization
from isoslope.errors import PrecisionError
from isoslope.padic import LowerBound


@pytest.fixture
def K():
    return field_create(3, 1, 24)


def test_polygon_hand_hull(K):
    p = K.p
    f = Poly(K, [p, -(1 + p), 1])
    np = newton_polygon(f)
    assert np.vertices == ((0, 1), (1, 0), (2, 0))
    assert np.slopes == ((Fraction(0), 1), (Fraction(1), 1))


@pytest.mark.parametrize("d,h", [(1, 2), (2, 3), (1, 1), (3, 4), (-1, 2)])
def test_polygon_pure_power(K, d, h):
    f = Poly(K, [-K.p_power(d)] + [0] * (h - 1) + [1])
    np = newton_polygon(f)
    assert np.slopes == ((Fraction(d, h), h),)


def test_polygon_linear(K):
    assert newton_polygon(Poly(K, [-1, 1])).slopes == ((Fraction(0), 1),)


def test_polygon_rejects_zero(K):
    with pytest.raises(ValueError):
        newton_polygon(Poly(K, [0]))


def test_polygon_slope_sum_matches_constant_term(K):
    rng = random.Random(5)
    for _ in range(50):
        coeffs = [K.scalar(rng.randint(1, 80) * K.p ** rng.randint(0, 3)) for _ in range(4)]
        f = Poly(K, coeffs + [1])
        np = newton_polygon(f)
        total = sum((s * m for s, m in np.slopes), Fraction(0))
        assert total == np.vertices[0][1] - np.vertices[-1][1]
        assert total == f.coeffs[0].valuation() - 0


def test_polygon_uncertain_coefficient_raises(K):
    # an entry that vanishes to 3 digits cannot be certified above a
    # hull that sits at height 10
    fuzzy = K.scalar(K.p**24) * K.scalar(Fraction(1, K.p**21))
    assert isinstance(fuzzy.valuation(), LowerBound)
    f = Poly(K, [fuzzy, K.p_power(10)])
    with pytest.raises(PrecisionError):
        newton_polygon(f)


def test_factorization_two_integer_slopes(K):
    p = K.p
    f = Poly(K, [p, -(1 + p), 1])
    factors = slope_factorization(f)
    assert [s for s, _ in factors] == [Fraction(0), Fraction(1)]
    g0, g1 = factors[0][1], factors[1][1]
    assert g0(K.one()).is_zero()  # root 1 in the slope-0 factor
    assert g1(K.scalar(p)).is_zero()  # root p in the slope-1 factor
    assert g0 * g1 == f


def test_factorization_single_slope_returns_itself(K):
    f = Poly(K, [-K.p_power(2), 0, 0, 1])
    factors = slope_factorization(f)
    assert len(factors) == 1
    assert factors[0][0] == Fraction(2, 3)
    assert factors[0][1] == f


def test_factorization_strips_roots_at_zero(K):
    p = K.p
    f = Poly(K, [0, -p, 1])  # x(x - p)
    factors = slope_factorization(f)
    assert factors[-1][0] == INFINITE_SLOPE
    assert factors[-1][1] == Poly(K, [0, 1])
    assert factors[0][0] == Fraction(1)


def test_factorization_requires_monic(K):
    with pytest.raises(ValueError):
        slope_factorization(Poly(K, [1, K.scalar(3)]))


def test_factorization_random_products_remultiply(K):
    rng = random.Random(17)
    p = K.p
    for _ in range(25):
        # product of linear factors with controlled distinct valuations
        vals = rng.sample([0, 1, 2, 3], rng.randint(2, 3))
        f = Poly(K, [1])
        for v in vals:
            unit = rng.randint(1, p - 1) + p * rng.randint(0, 4)
            f = f * Poly(K, [-K.scalar(unit * p**v), 1])
        factors = slope_factorization(f)
        assert sorted(s for s, _ in factors) == sorted(Fraction(v) for v in vals)
        prod = Poly(K, [1])
        for _, g in factors:
            prod = prod * g
        assert prod == f


def test_factorization_fractional_slope_group(K):
    p = K.p
    f = Poly(K, [-1, 1]) * Poly(K, [-p, 0, 1])  # (x-1)(x^2-p)
    factors = slope_factorization(f)
    assert [(s, g.degree) for s, g in factors] == [(Fraction(0), 1), (Fraction(1, 2), 2)]
    assert factors[0][1] * factors[1][1] == f


def test_poly_invmod(K):
    a = Poly(K, [1, 1])
    m = Poly(K, [-K.p, 0, 1])
    inv = poly_invmod(a, m)
    assert (inv * a) % m == Poly(K, [1])


def test_divmod_roundtrip(K):
    rng = random.Random(23)
    for _ in range(20):
        f = Poly(K, [rng.randint(-20, 20) for _ in range(5)] + [1])
        g = Poly(K, [rng.randint(-20, 20) for _ in range(2)] + [1])
        q, r = divmod(f, g)
        assert q * g + r == f
        assert r.degree < g.degree
