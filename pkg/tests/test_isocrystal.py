"""Isocrystal invariants: Newton numbers, slopes, types, subobjects."""

import math
import random
from fractions import Fraction

import pytest

from isoslope import (
    DMType,
    Isocrystal,
    Matrix,
    SigmaLinearMap,
    Subspace,
    base_change,
    direct_sum,
    dm_type,
    exact_enumeration_available,
    field_create,
    is_effective,
    is_phi_stable,
    isoclinic_decomposition,
    newton_number,
    simple,
    slopes,
    sub_isocrystals,
    twist,
)
from isoslope.errors import EnumerationUnavailableError
from oracle_tools import lattice_growth_stabilizes, random_isocrystal, random_unimodular


@pytest.fixture
def K():
    return field_create(3, 1, 24)


def test_simple_companion_matrices(K):
    p = K.p
    assert simple(K, 1, 1).phi.matrix == Matrix(K, [[p]])
    assert simple(K, 0, 1).phi.matrix == Matrix.identity(K, 1)
    assert simple(K, 1, 2).phi.matrix == Matrix(K, [[0, p], [1, 0]])


def test_simple_rejects_non_coprime(K):
    with pytest.raises(ValueError):
        simple(K, 2, 4)


def test_newton_number(K):
    D = simple(K, 3, 2)
    assert newton_number(D) == 3
    assert newton_number(twist(D, 2)) == 3 + 2 * 2
    E = simple(K, 0, 1)
    assert newton_number(direct_sum(D, E)) == 3


def test_slopes_examples(K):
    p = K.p
    assert slopes(simple(K, 1, 2)) == (Fraction(1, 2), Fraction(1, 2))
    assert slopes(Isocrystal.from_matrix(K, [[1, 0], [0, p]])) == (Fraction(0), Fraction(1))
    D = simple(K, 1, 2)
    assert slopes(twist(D, 3)) == tuple(s + 3 for s in slopes(D))


def test_slopes_sum_is_newton_number_random(K):
    rng = random.Random(61)
    for _ in range(40):
        D = random_isocrystal(K, rng.randint(1, 4), rng)
        assert sum(slopes(D)) == newton_number(D)


def test_dm_type_examples(K):
    p = K.p
    assert dm_type(simple(K, 1, 2)).entries == ((1, 2, 1),)
    assert dm_type(Isocrystal.from_matrix(K, [[1, 0], [0, p]])).entries == ((0, 1, 1), (1, 1, 1))
    assert dm_type(direct_sum(simple(K, 1, 2), simple(K, 1, 2))).entries == ((1, 2, 2),)


def test_dm_type_accounting(K):
    rng = random.Random(67)
    for _ in range(25):
        D = random_isocrystal(K, rng.randint(1, 4), rng)
        t = dm_type(D)
        assert t.rank == D.rank
        assert t.newton_number == newton_number(D)


def test_dm_type_validation():
    with pytest.raises(ValueError):
        DMType(((2, 4, 1),))
    with pytest.raises(ValueError):
        DMType(((1, 1, 1), (1, 1, 2)))


def test_twist_examples(K):
    D = simple(K, 1, 2)
    assert twist(D, 0).phi.matrix == D.phi.matrix
    assert newton_number(twist(simple(K, 0, 1), 1)) == 1
    assert twist(twist(D, 2), -2).phi.matrix == D.phi.matrix


def test_effectivity(K):
    assert is_effective(simple(K, 1, 2))
    assert not is_effective(twist(simple(K, 0, 1), -1))
    assert is_effective(Isocrystal.from_matrix(K, [[1, 0], [0, K.p]]))


def test_effectivity_lattice_oracle(K):
    # iterate L <- L + phi(L) from the standard lattice; the chain
    # stabilizes within rank * (N / 2) steps exactly for slopes >= 0
    rng = random.Random(71)
    for _ in range(20):
        rank = rng.randint(1, 3)
        D = random_isocrystal(K, rank, rng)
        cap = rank * (K.N // 2)
        assert lattice_growth_stabilizes(D, cap) == is_effective(D)


def test_isoclinic_decomposition_examples(K):
    p = K.p
    pieces = isoclinic_decomposition(Isocrystal.from_matrix(K, [[1, 0], [0, p]]))
    assert [(s, U.pivots) for s, U in pieces] == [(Fraction(0), (0,)), (Fraction(1), (1,))]
    D = simple(K, 2, 3)
    pieces = isoclinic_decomposition(D)
    assert len(pieces) == 1 and pieces[0][1].is_full()
    mixed = direct_sum(simple(K, 0, 1), simple(K, 1, 2))
    dims = [(s, U.dim) for s, U in isoclinic_decomposition(mixed)]
    assert dims == [(Fraction(0), 1), (Fraction(1, 2), 2)]


def test_isoclinic_pieces_are_stable_and_complementary(K):
    rng = random.Random(73)
    for _ in range(20):
        D = random_isocrystal(K, rng.randint(2, 4), rng)
        pieces = isoclinic_decomposition(D)
        total = Subspace.zero(K, D.rank)
        for s, U in pieces:
            assert is_phi_stable(D.phi, U)
            assert total.intersect(U).dim == 0
            total = total + U
        assert total.is_full()
        assert sum(U.dim for _, U in pieces) == D.rank


def test_sub_isocrystals_exact_diag(K):
    D = Isocrystal.from_matrix(K, [[1, 0], [0, K.p]])
    subs = list(sub_isocrystals(D))
    assert [U.dim for U in subs] == [0, 1, 1, 2]
    assert [U.pivots for U in subs] == [(), (0,), (1,), (0, 1)]
    for U in subs:
        assert is_phi_stable(D.phi, U)


def test_sub_isocrystals_simple_has_no_middle(K):
    # a phi-stable line in the slope-1/2 object would need the
    # non-integral Newton number 1/2
    assert [U.dim for U in sub_isocrystals(simple(K, 1, 2))] == [0, 2]


def test_sub_isocrystals_rank_zero(K):
    D = Isocrystal(SigmaLinearMap(Matrix(K, [])))
    assert [U.dim for U in sub_isocrystals(D)] == [0]


def test_sub_isocrystals_exact_refused_on_families(K):
    D = direct_sum(simple(K, 1, 2), simple(K, 1, 2))
    assert not exact_enumeration_available(D)
    with pytest.raises(EnumerationUnavailableError):
        list(sub_isocrystals(D, mode="exact"))
    found = list(sub_isocrystals(D, mode="monte_carlo", samples=40))
    assert all(is_phi_stable(D.phi, U) for U in found)
    dims = sorted(U.dim for U in found)
    assert dims[0] == 0 and dims[-1] == 4
    assert 2 in dims  # the sampling sees middle subobjects


def test_base_change_invariance_of_invariants(K):
    rng = random.Random(79)
    for _ in range(15):
        D = random_isocrystal(K, rng.randint(1, 3), rng)
        t, s, dm = newton_number(D), slopes(D), dm_type(D)
        for _ in range(5):
            C = random_unimodular(K, D.rank, rng)
            E = Isocrystal(base_change(D.phi, C))
            assert newton_number(E) == t
            assert slopes(E) == s
            assert dm_type(E).entries == dm.entries


def test_slopes_on_f2_field():
    L = field_create(2, 2, 24)
    assert slopes(simple(L, 1, 2)) == (Fraction(1, 2), Fraction(1, 2))
    assert slopes(simple(L, -1, 3)) == (Fraction(-1, 3),) * 3
    w = L.generator()
    D = Isocrystal.from_matrix(L, [[w, 0], [0, 2]])
    assert sorted(slopes(D)) == [Fraction(0), Fraction(1)]
    assert newton_number(D) == 1
