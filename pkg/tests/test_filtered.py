"""Filtered isocrystals: Hodge data, induced filtrations, weak
admissibility, Harder-Narasimhan filtrations."""

import random
from fractions import Fraction

import pytest

from isoslope import (
    FilteredIsocrystal,
    Isocrystal,
    Matrix,
    Subspace,
    field_create,
    hn_filtration,
    hodge_number,
    hodge_polygon,
    induced,
    is_weakly_admissible,
    newton_number_of,
    quotient_data,
    simple,
)
from oracle_tools import diagonal_instances, oracle_wa


@pytest.fixture
def K():
    return field_create(3, 1, 24)


def diag(K, *vals):
    return Isocrystal(
        __import__("isoslope").SigmaLinearMap(
            Matrix.diagonal(K, [K.p_power(v) for v in vals])
        )
    )


def fil_standard(K, D, line_vec=None, degrees=(0, 1)):
    full = Subspace.full(K, D.rank)
    if line_vec is None:
        return FilteredIsocrystal.make(D, [(degrees[0], full)])
    line = Subspace.span(K, D.rank, [line_vec])
    return FilteredIsocrystal.make(D, [(degrees[0], full), (degrees[1], line)])


def test_hodge_number_rank2_example(K):
    D = diag(K, 0, 1)
    X = FilteredIsocrystal.make(
        D,
        [(0, Subspace.full(K, 2)), (1, Subspace.span(K, 2, [[1, 0]])), (2, Subspace.zero(K, 2))],
    )
    assert hodge_number(X) == 1


def test_hodge_number_trivial_and_shift(K):
    D = diag(K, 0, 1)
    assert hodge_number(FilteredIsocrystal.trivial(D)) == 0
    base = fil_standard(K, D, [1, 0])
    shifted = FilteredIsocrystal.make(
        D, [(d + 3, U) for d, U in base.filtration]
    )
    assert hodge_number(shifted) == hodge_number(base) + 3 * 2


def test_hodge_polygon(K):
    D = diag(K, 0, 1)
    X = fil_standard(K, D, [1, 0])
    assert hodge_polygon(X).slope_multiset() == [Fraction(0), Fraction(1)]
    assert hodge_polygon(FilteredIsocrystal.trivial(D)).total_rise == 0
    D3 = diag(K, 0, 1, 2)
    X3 = FilteredIsocrystal.make(
        D3, [(0, Subspace.full(K, 3)), (2, Subspace.span(K, 3, [[0, 0, 1]]))]
    )
    assert hodge_polygon(X3).slope_multiset() == [Fraction(0), Fraction(0), Fraction(2)]
    assert hodge_polygon(X3).total_rise == 2


def test_filtration_validation(K):
    D = diag(K, 0, 1)
    full = Subspace.full(K, 2)
    line = Subspace.span(K, 2, [[1, 0]])
    with pytest.raises(ValueError):
        FilteredIsocrystal(D, ((0, line),))  # first entry not full
    with pytest.raises(ValueError):
        FilteredIsocrystal(D, ((0, full), (0, line)))  # degrees not increasing
    with pytest.raises(ValueError):
        FilteredIsocrystal(D, ((0, full), (1, full)))  # not strictly decreasing


def test_induced_examples(K):
    D = diag(K, 0, 1)
    e1 = Subspace.span(K, 2, [[1, 0]])
    X = fil_standard(K, D, [1, 0])
    whole = induced(X, Subspace.full(K, 2))
    assert hodge_number(whole) == hodge_number(X)
    zero = induced(X, Subspace.zero(K, 2))
    assert (hodge_number(zero), newton_number_of(zero), zero.rank) == (0, 0, 0)
    on_line = induced(X, e1)
    assert hodge_number(on_line) == 1  # e1 lies in the degree-1 step


def test_induced_requires_stability(K):
    D = Isocrystal.from_matrix(K, [[0, K.p], [1, 0]])
    X = fil_standard(K, D, [1, 0])
    with pytest.raises(ValueError):
        induced(X, Subspace.span(K, 2, [[1, 0]]))


def test_hodge_number_additive_over_sub_and_quotient(K):
    rng = random.Random(83)
    D = diag(K, 0, 1, 2)
    for vec in ([1, 0], [0, 1], [1, 5]):
        X = FilteredIsocrystal.make(
            D,
            [
                (0, Subspace.full(K, 3)),
                (1, Subspace.span(K, 3, [[1, 0, 0], [0, 1, 0]])),
                (3, Subspace.span(K, 3, [[0, 1, 0]])),
            ],
        )
        for U in ([ [1,0,0] ], [ [1,0,0],[0,1,0] ], [ [0,0,1] ]):
            carrier = Subspace.span(K, 3, U)
            sub = induced(X, carrier)
            quot, _, _ = quotient_data(X, carrier)
            assert hodge_number(sub) + hodge_number(quot) == hodge_number(X)
            assert newton_number_of(sub) + newton_number_of(quot) == newton_number_of(X)


def test_weakadm_examples(K):
    D = diag(K, 0, 1)
    bad = fil_standard(K, D, [1, 0])  # degree-1 jump on the slope-0 line
    v = is_weakly_admissible(bad)
    assert not v.weakly_admissible and v.mode == "exact"
    assert v.witness.pivots == (0,)
    wit = induced(bad, v.witness)
    assert hodge_number(wit) > newton_number_of(wit)

    good = fil_standard(K, D, [0, 1])
    v2 = is_weakly_admissible(good)
    assert v2.weakly_admissible and v2.mode == "exact"

    D12 = simple(K, 1, 2)
    for vec in ([1, 0], [1, 7], [0, 1]):
        X = fil_standard(K, D12, vec)
        assert is_weakly_admissible(X).weakly_admissible


def test_weakadm_monte_carlo_mode(K):
    from isoslope import direct_sum

    D = direct_sum(simple(K, 1, 2), simple(K, 1, 2))
    X = FilteredIsocrystal.make(
        D,
        [(0, Subspace.full(K, 4)), (1, Subspace.span(K, 4, [[1, 0, 0, 0], [0, 0, 1, 0]]))],
    )
    v = is_weakly_admissible(X, mode="mc", samples=60)
    assert v.mode == "probabilistic"
    assert v.checked_count > 4


def test_weakadm_against_combinatorial_oracle(K):
    for vals, subset, X in diagonal_instances(K):
        got = is_weakly_admissible(X)
        assert got.weakly_admissible == oracle_wa(vals, subset, len(vals)), (vals, subset)


def test_hn_single_step_for_weakly_admissible(K):
    D = diag(K, 0, 1)
    good = fil_standard(K, D, [0, 1])
    filt = hn_filtration(good)
    assert filt.graded_slopes == (Fraction(0),)
    assert filt.steps[0].subobject.carrier.is_full()


def test_hn_two_step_example(K):
    D = diag(K, 0, 1)
    bad = fil_standard(K, D, [1, 0])
    filt = hn_filtration(bad)
    assert filt.graded_slopes == (Fraction(1), Fraction(-1))
    assert filt.steps[0].subobject.carrier.pivots == (0,)


def test_hn_zero_filtration_example(K):
    D = diag(K, 0, 1)
    X = FilteredIsocrystal.trivial(D)
    filt = hn_filtration(X)
    assert filt.graded_slopes == (Fraction(0), Fraction(-1))
    assert filt.steps[0].subobject.carrier.pivots == (0,)


def test_hn_top_step_semistable_and_costable(K):
    from isoslope import FilteredHNAdapter, is_costable, is_semistable
    from isoslope.filtered import as_hn_object

    adapter = FilteredHNAdapter()
    for vals, subset, X in diagonal_instances(K, max_rank=2):
        filt = hn_filtration(X)
        top = filt.steps[0].subobject
        assert is_semistable(adapter, top)
        assert is_costable(adapter, as_hn_object(X), top)
        slopes_ = filt.graded_slopes
        assert all(a > b for a, b in zip(slopes_, slopes_[1:]))


def test_verdict_requires_witness_on_false(K):
    from isoslope import AdmissibilityVerdict

    with pytest.raises(ValueError):
        AdmissibilityVerdict(False, "exact", None, 3)
