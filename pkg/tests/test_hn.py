"""The generic Harder-Narasimhan engine: maximal destabilizing
subobjects, filtrations, uniqueness, slope filtration, axiom checks."""

from fractions import Fraction

import pytest

from isoslope import (
    Edh,
    Etale,
    FilteredHNAdapter,
    FilteredIsocrystal,
    Isocrystal,
    Matrix,
    SigmaLinearMap,
    Subspace,
    SymbolicBC,
    SymbolicHNAdapter,
    check_axioms,
    field_create,
    fil_alpha,
    generic_hn_filtration,
    is_semistable,
    is_stable,
    max_destabilizing,
    simple,
    slope,
)
from isoslope.filtered import as_hn_object
from oracle_tools import carrier_subset, diagonal_instances, oracle_hn_chains


@pytest.fixture
def K():
    return field_create(3, 1, 24)


@pytest.fixture
def sym():
    return SymbolicHNAdapter()


def filtered_object(K, vals, fil_entries):
    D = Isocrystal(SigmaLinearMap(Matrix.diagonal(K, [K.p_power(v) for v in vals])))
    return as_hn_object(FilteredIsocrystal.make(D, fil_entries))


def test_slope_basics(sym):
    assert slope(sym, SymbolicBC.of(Edh(1, 2))) == Fraction(1, 2)
    assert slope(sym, SymbolicBC.of(Etale(3))) == 0
    with pytest.raises(ValueError):
        slope(sym, SymbolicBC.zero())


def test_rank_one_objects_are_stable(sym):
    x = SymbolicBC.of(Etale(1))
    assert is_semistable(sym, x) and is_stable(sym, x)


def test_filtered_instance_not_semistable(K):
    obj = filtered_object(K, (0, 1), [(0, Subspace.full(K, 2))])
    adapter = FilteredHNAdapter()
    # the slope-0 eigenline has slope 0 > -1/2
    assert not is_semistable(adapter, obj)


def test_equal_slope_sum_semistable_not_stable(sym):
    x = SymbolicBC.from_pairs([(Edh(1, 1), 2)])
    assert is_semistable(sym, x)
    assert not is_stable(sym, x)


def test_max_destabilizing_semistable_returns_self(sym):
    x = SymbolicBC.from_pairs([(Edh(1, 2), 2)])
    best = max_destabilizing(sym, x)
    assert sym.equals(best, x)


def test_max_destabilizing_filtered_example(K):
    obj = filtered_object(K, (0, 1), [(0, Subspace.full(K, 2))])
    best = max_destabilizing(FilteredHNAdapter(), obj)
    assert best.carrier.pivots == (0,)


def test_max_destabilizing_prefers_rank_on_ties(sym):
    x = SymbolicBC.from_pairs([(Edh(1, 1), 2)])
    best = max_destabilizing(sym, x)
    assert sym.rank(best) == 2  # the whole object, not one line


def test_hn_filtration_semistable_single_step(sym):
    x = SymbolicBC.from_pairs([(Edh(1, 2), 3)])
    filt = generic_hn_filtration(sym, x)
    assert len(filt) == 1 and filt.graded_slopes == (Fraction(1, 2),)


def test_hn_filtration_sorts_symbolic_atoms(sym):
    x = SymbolicBC.of(Edh(2, 1), Edh(1, 1), Edh(1, 2))
    filt = generic_hn_filtration(sym, x)
    assert filt.graded_slopes == (Fraction(2), Fraction(1), Fraction(1, 2))


def test_hn_filtration_two_step_filtered(K):
    obj = filtered_object(
        K, (0, 1), [(0, Subspace.full(K, 2)), (1, Subspace.span(K, 2, [[1, 0]]))]
    )
    filt = generic_hn_filtration(FilteredHNAdapter(), obj)
    assert filt.graded_slopes == (Fraction(1), Fraction(-1))


def test_fil_alpha(sym):
    x = SymbolicBC.of(Edh(2, 1), Edh(1, 2))
    filt = generic_hn_filtration(sym, x)
    # below the minimal subobject slope: everything
    assert sym.equals(fil_alpha(sym, x, Fraction(-5), filt), x)
    # above the maximal slope: zero
    assert fil_alpha(sym, x, Fraction(10), filt).is_zero()
    # at a step slope: that step is included (>= is inclusive)
    f1 = fil_alpha(sym, x, Fraction(2), filt)
    assert sym.equals(f1, SymbolicBC.of(Edh(2, 1)))
    # monotone decreasing in alpha
    lo = fil_alpha(sym, x, Fraction(0), filt)
    hi = fil_alpha(sym, x, Fraction(2), filt)
    assert sym.contains(lo, hi)


def test_hn_uniqueness_against_exhaustive_chains(K):
    for vals, subset, X in diagonal_instances(K, max_rank=3):
        chains = oracle_hn_chains(vals, subset, len(vals))
        assert len(chains) == 1, (vals, subset, chains)
        filt = generic_hn_filtration(FilteredHNAdapter(), as_hn_object(X))
        got = [carrier_subset(s.subobject.carrier) for s in filt.steps]
        assert [frozenset()] + got == chains[0], (vals, subset)


def test_hn_idempotence_on_graded_quotients(K, sym):
    x = SymbolicBC.of(Edh(3, 1), Edh(1, 1), Edh(1, 3))
    filt = generic_hn_filtration(sym, x)
    prev = None
    for step in filt.steps:
        piece = step.subobject if prev is None else sym.push_forward(x, prev, step.subobject)
        sub_filt = generic_hn_filtration(sym, piece)
        assert len(sub_filt) == 1
        prev = step.subobject


def test_degree_totals_over_graded_quotients(K):
    adapter = FilteredHNAdapter()
    for vals, subset, X in diagonal_instances(K, max_rank=2):
        obj = as_hn_object(X)
        filt = generic_hn_filtration(adapter, obj)
        assert sum(s.graded_degree for s in filt.steps) == adapter.deg(obj)
        assert sum(s.graded_rank for s in filt.steps) == adapter.rank(obj)


def test_check_axioms_passes_on_filtered_family(K):
    objs = [as_hn_object(X) for _, _, X in diagonal_instances(K, max_rank=2)]
    report = check_axioms(FilteredHNAdapter(), objs)
    assert report.passed, report.summary()


def test_check_axioms_passes_on_symbolic_samples(sym):
    objs = [
        SymbolicBC.of(Edh(1, 1)),
        SymbolicBC.of(Edh(2, 1), Edh(1, 2)),
        SymbolicBC.from_pairs([(Edh(1, 1), 2), (Etale(1), 1)]),
        SymbolicBC.of(Etale(2)),
    ]
    report = check_axioms(sym, objs)
    assert report.passed, report.summary()


class _BrokenDegree(SymbolicHNAdapter):
    """Fault injection: a degree function that is not additive."""

    def deg(self, obj):
        d = obj.invariants.dim
        return d * d


def test_check_axioms_detects_non_additive_degree():
    objs = [SymbolicBC.of(Edh(2, 1), Edh(1, 1))]
    report = check_axioms(_BrokenDegree(), objs)
    assert not report.passed
    assert not report.checks["degree-rank-additivity"].passed
    assert report.checks["degree-rank-additivity"].failures


def test_check_axioms_empty_sample_is_vacuous(sym):
    assert check_axioms(sym, []).passed
