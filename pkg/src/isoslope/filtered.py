"""Filtered isocrystals: Hodge numbers, induced filtrations, the
weak-admissibility decision, and their Harder-Narasimhan structure.

A filtration is a strictly decreasing chain of subspaces indexed by
strictly increasing integer degrees; the first listed entry is the full
space and an implicit zero sits above the highest listed degree.  The
Hodge number is sum_i i * dim(gr^i).

Subobjects carry the intersection filtration, quotients the image
filtration (the convention forced by additivity of the Hodge number).
The HN structure uses degree = t_H - t_N and rank = dimension, the
convention under which "weakly admissible" is exactly "semistable of
slope 0"; this equivalence is validated against brute-force oracles in
the test suite, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EnumerationUnavailableError
from .hn import HNAdapter, HNFiltration, hn_filtration as _engine_filtration
from .isocrystal import (
    Isocrystal,
    newton_number,
    restrict,
    sub_isocrystals,
)
from .linalg import Matrix, SigmaLinearMap, Subspace, is_phi_stable
from .padic import UnramifiedField
from .polys import NewtonPolygon


@dataclass(frozen=True)
class FilteredIsocrystal:
    """An isocrystal with a decreasing exhaustive separated filtration,
    listed as (degree, subspace) jumps."""

    D: Isocrystal
    filtration: tuple[tuple[int, Subspace], ...]

    def __post_init__(self):
        fil = tuple(self.filtration)
        if not fil:
            raise ValueError("filtration must list at least the full space")
        degrees = [d for d, _ in fil]
        if degrees != sorted(set(degrees)):
            raise ValueError("filtration degrees must be strictly increasing")
        n = self.D.rank
        if fil[0][1].dim != n:
            raise ValueError("the lowest-degree entry must be the full space")
        for (_, a), (_, b) in zip(fil, fil[1:]):
            if not (a.contains(b) and a.dim > b.dim):
                raise ValueError("each filtration step must strictly contain the next")

    @classmethod
    def make(cls, D: Isocrystal, entries) -> "FilteredIsocrystal":
        """Build from (degree, subspace) pairs, dropping trailing zero
        entries (they carry no graded piece)."""
        fil = [(int(d), U) for d, U in entries]
        while len(fil) > 1 and fil[-1][1].dim == 0:
            fil.pop()
        return cls(D, tuple(fil))

    @classmethod
    def trivial(cls, D: Isocrystal, degree: int = 0) -> "FilteredIsocrystal":
        full = Subspace.full(D.field, D.rank) if D.rank else Subspace.zero(D.field, 0)
        return cls(D, ((degree, full),))

    @property
    def field(self) -> UnramifiedField:
        return self.D.field

    @property
    def rank(self) -> int:
        return self.D.rank

    def graded_dims(self) -> list[tuple[int, int]]:
        """(degree, dim gr^degree) for the listed jumps."""
        out = []
        fil = self.filtration
        for i, (d, U) in enumerate(fil):
            nxt = fil[i + 1][1].dim if i + 1 < len(fil) else 0
            out.append((d, U.dim - nxt))
        return out


def hodge_number(X: FilteredIsocrystal) -> int:
    return sum(d * m for d, m in X.graded_dims())


def hodge_polygon(X: FilteredIsocrystal) -> NewtonPolygon:
    """Polygon with slope multiset {degree i with multiplicity dim gr^i}."""
    return NewtonPolygon.from_slope_multiset(
        (Fraction(d), m) for d, m in X.graded_dims() if m
    )


def newton_number_of(X: FilteredIsocrystal) -> int:
    return newton_number(X.D) if X.rank else 0


def induced(X: FilteredIsocrystal, U: Subspace) -> FilteredIsocrystal:
    """The filtered isocrystal on a phi-stable subspace, with filtration
    Fil^i intersect U, in the coordinates of U's echelon basis."""
    sub = restrict(X.D, U)  # raises if U is not phi-stable
    fld = X.field
    if U.dim == 0:
        return FilteredIsocrystal(sub, ((X.filtration[0][0], Subspace.zero(fld, 0)),))
    chain = []
    for d, V in X.filtration:
        W = V.intersect(U)
        inner = Subspace.span(fld, U.dim, [U.coordinates(b) for b in W.basis])
        chain.append((d, inner))
    return FilteredIsocrystal.make(sub, _compress(chain, U.dim))


def _compress(chain, ambient_dim):
    """Keep only the degrees where the dimension drops.  The first kept
    entry is automatically the full space: entries above the last
    full-dimensional one coincide with it."""
    out = []
    for i, (d, W) in enumerate(chain):
        nxt = chain[i + 1][1].dim if i + 1 < len(chain) else 0
        if W.dim > nxt:
            out.append((d, W))
    if not out:  # zero-dimensional ambient space
        out = [chain[0]]
    return out


def quotient_data(X: FilteredIsocrystal, U: Subspace):
    """Quotient by a phi-stable subspace on complement coordinates.

    Returns (quotient FilteredIsocrystal, project, lift): project maps an
    ambient vector to quotient coordinates, lift sections it.
    """
    fld = X.field
    n = X.rank
    comp = [i for i in range(n) if i not in U.pivots]

    def project(v):
        _, res = U.reduce(v)
        return tuple(res[i] for i in comp)

    def lift(qv):
        zero = fld.zero()
        out = [zero] * n
        for idx, i in enumerate(comp):
            out[i] = qv[idx]
        return tuple(out)

    m = len(comp)
    basis_imgs = [project(X.D.phi.apply(lift_unit)) for lift_unit in
                  (tuple(fld.one() if i == c else fld.zero() for i in range(n)) for c in comp)]
    rows = [[basis_imgs[j][i] for j in range(m)] for i in range(m)]
    Q = Isocrystal(SigmaLinearMap(Matrix(fld, rows)))
    if m == 0:
        quotient = FilteredIsocrystal(Q, ((X.filtration[0][0], Subspace.zero(fld, 0)),))
        return quotient, project, lift
    chain = []
    for d, V in X.filtration:
        W = Subspace.span(fld, m, [project(b) for b in V.basis])
        chain.append((d, W))
    quotient = FilteredIsocrystal.make(Q, _compress(chain, m))
    return quotient, project, lift


@dataclass(frozen=True)
class AdmissibilityVerdict:
    weakly_admissible: bool
    mode: str  # "exact" or "probabilistic"
    witness: Subspace | None
    checked_count: int

    def __post_init__(self):
        if not self.weakly_admissible and self.witness is None:
            raise ValueError("a negative verdict must carry a witness")


def is_weakly_admissible(
    X: FilteredIsocrystal, mode: str = "exact", samples: int = 100, seed: int = 0
) -> AdmissibilityVerdict:
    """Decide t_H(X) = t_N(X) together with t_H <= t_N on subobjects.

    A found violation is definitive (verdict false with witness); an
    exhaustive enumeration with no violation is a definitive true; a
    sampled enumeration with no violation is only probabilistic.
    """
    t_h, t_n = hodge_number(X), newton_number_of(X)
    full = Subspace.full(X.field, X.rank)
    if t_h != t_n:
        return AdmissibilityVerdict(False, "exact", full, 1)
    enum_mode = "exact" if mode == "exact" else "monte_carlo"
    checked = 0
    for U in sub_isocrystals(X.D, mode=enum_mode, samples=samples, seed=seed):
        checked += 1
        if U.dim == 0:
            continue
        sub = induced(X, U)
        if hodge_number(sub) > newton_number_of(sub):
            return AdmissibilityVerdict(False, "exact", U, checked)
    return AdmissibilityVerdict(
        True, "exact" if enum_mode == "exact" else "probabilistic", None, checked
    )


# ----------------------------------------------------------------------
# Harder-Narasimhan structure (degree = t_H - t_N, rank = dimension)


@dataclass(frozen=True)
class FilteredObject:
    """An object handled by the HN adapter: a filtered isocrystal in its
    own coordinates plus the carrier subspace inside its parent."""

    X: FilteredIsocrystal
    carrier: Subspace


class FilteredHNAdapter(HNAdapter):
    """Adapter exposing filtered isocrystals to the generic HN engine.

    Subobject enumeration delegates to the exact sub-isocrystal
    iterator, so it is available exactly when the simplicity criterion
    holds for the isocrystal at hand (and for its quotients).  All
    operations are pure, so enumerations are memoized per object.
    """

    def __init__(self):
        self._subobjects = {}  # id(obj) -> (obj, [subobjects])

    def deg(self, obj: FilteredObject) -> int:
        return hodge_number(obj.X) - newton_number_of(obj.X)

    def rank(self, obj: FilteredObject) -> int:
        return obj.X.rank

    def is_zero(self, obj: FilteredObject) -> bool:
        return obj.X.rank == 0

    def strict_subobjects(self, obj: FilteredObject):
        cached = self._subobjects.get(id(obj))
        if cached is None or cached[0] is not obj:
            subs = [
                FilteredObject(induced(obj.X, U), U)
                for U in sub_isocrystals(obj.X.D, mode="exact")
            ]
            self._subobjects[id(obj)] = (obj, subs)
            return iter(subs)
        return iter(cached[1])

    def contains(self, a: FilteredObject, b: FilteredObject) -> bool:
        return a.carrier.contains(b.carrier)

    def equals(self, a: FilteredObject, b: FilteredObject) -> bool:
        return a.carrier == b.carrier

    def quotient(self, obj: FilteredObject, sub: FilteredObject) -> FilteredObject:
        quot, _, _ = quotient_data(obj.X, sub.carrier)
        return FilteredObject(quot, Subspace.full(quot.field, quot.rank))

    def pull_back(self, obj: FilteredObject, sub: FilteredObject, qsub: FilteredObject):
        _, _, lift = quotient_data(obj.X, sub.carrier)
        vecs = list(sub.carrier.basis) + [lift(b) for b in qsub.carrier.basis]
        carrier = Subspace.span(obj.X.field, obj.X.rank, vecs)
        return FilteredObject(induced(obj.X, carrier), carrier)

    def push_forward(self, obj: FilteredObject, sub: FilteredObject, larger: FilteredObject):
        quot, project, _ = quotient_data(obj.X, sub.carrier)
        carrier = Subspace.span(quot.field, quot.rank, [project(b) for b in larger.carrier.basis])
        return FilteredObject(induced(quot, carrier), carrier)


def as_hn_object(X: FilteredIsocrystal) -> FilteredObject:
    full = Subspace.full(X.field, X.rank) if X.rank else Subspace.zero(X.field, 0)
    return FilteredObject(X, full)


def hn_filtration(X: FilteredIsocrystal) -> HNFiltration:
    """HN filtration of a filtered isocrystal; steps carry
    FilteredObject subobjects whose carriers live in X's coordinates."""
    return _engine_filtration(FilteredHNAdapter(), as_hn_object(X))
