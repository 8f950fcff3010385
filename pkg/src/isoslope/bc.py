"""Symbolic calculus of dimension/height invariants.

Objects are formal sums of atoms, each carrying a pair of additive
invariants (dim, ht): Edh(d, h) with invariants (d, h) and slope d/h;
Etale(k), the k-dimensional rational-coordinate piece, with invariants
(0, k) and slope 0; Torsion(m, r), a length-m torsion module (twist r),
with invariants (m, 0) and slope infinity.  Formal sums are kept in a
canonical form (slope descending, equal atoms merged), which is
faithful up to isomorphism because the slope filtration splits.

The admissibility ledger replays the weak-admissibility argument as a
sequence of balanced bookkeeping steps on these invariants: equal
dimensions force the comparison map to be onto (a dimension-zero
cokernel of a map to a connected target vanishes), and the height count
on the resulting short exact sequence returns the rank.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonEffectiveError
from .filtered import (
    AdmissibilityVerdict,
    FilteredIsocrystal,
    hodge_number,
    is_weakly_admissible,
    newton_number_of,
)
from .hn import HNAdapter
from .isocrystal import Isocrystal, dm_type, is_effective, newton_number
from .polys import INFINITE_SLOPE


@dataclass(frozen=True)
class Invariants:
    """The additive (dimension, height) pair."""

    dim: int
    ht: int

    def __add__(self, other: "Invariants") -> "Invariants":
        return Invariants(self.dim + other.dim, self.ht + other.ht)

    def __sub__(self, other: "Invariants") -> "Invariants":
        return Invariants(self.dim - other.dim, self.ht - other.ht)

    def as_tuple(self) -> tuple[int, int]:
        return (self.dim, self.ht)


@dataclass(frozen=True)
class Edh:
    """Atom of slope d/h in (0, inf): invariants (d, h), gcd(d, h) = 1."""

    d: int
    h: int

    def __post_init__(self):
        if self.d < 1 or self.h < 1 or math.gcd(self.d, self.h) != 1:
            raise ValueError(f"Edh requires coprime d >= 1, h >= 1; got ({self.d}, {self.h})")

    @property
    def invariants(self) -> Invariants:
        return Invariants(self.d, self.h)

    @property
    def slope(self) -> Fraction:
        return Fraction(self.d, self.h)


@dataclass(frozen=True)
class Etale:
    """Slope-0 atom: a k-dimensional rational-coordinate space, (0, k)."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"Etale requires k >= 1, got {self.k}")

    @property
    def invariants(self) -> Invariants:
        return Invariants(0, self.k)

    @property
    def slope(self) -> Fraction:
        return Fraction(0)


@dataclass(frozen=True)
class Torsion:
    """Slope-infinity atom: a length-m torsion module with twist r, (m, 0)."""

    m: int
    r: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"Torsion requires m >= 1, got {self.m}")

    @property
    def invariants(self) -> Invariants:
        return Invariants(self.m, 0)

    @property
    def slope(self):
        return INFINITE_SLOPE


BCAtom = Edh | Etale | Torsion


def _atom_key(atom: BCAtom):
    # slope descending, then the (d, h, m, r) word ascending
    s = atom.slope
    primary = (0, Fraction(0)) if s == INFINITE_SLOPE else (1, -s)
    if isinstance(atom, Edh):
        word = (atom.d, atom.h, 0, 0)
    elif isinstance(atom, Etale):
        word = (0, atom.k, 0, 0)
    else:
        word = (0, 0, atom.m, atom.r)
    return (*primary, word)


@dataclass(frozen=True)
class SymbolicBC:
    """Canonical formal sum of atoms with multiplicities."""

    atoms: tuple[tuple[BCAtom, int], ...]

    @classmethod
    def of(cls, *atoms: BCAtom) -> "SymbolicBC":
        return cls.from_pairs((a, 1) for a in atoms)

    @classmethod
    def from_pairs(cls, pairs) -> "SymbolicBC":
        merged: dict[BCAtom, int] = {}
        for atom, mult in pairs:
            if mult < 0:
                raise ValueError("multiplicities must be nonnegative")
            if mult:
                merged[atom] = merged.get(atom, 0) + mult
        ordered = tuple(sorted(merged.items(), key=lambda am: _atom_key(am[0])))
        return cls(ordered)

    @classmethod
    def zero(cls) -> "SymbolicBC":
        return cls(())

    def __add__(self, other: "SymbolicBC") -> "SymbolicBC":
        return SymbolicBC.from_pairs(self.atoms + other.atoms)

    @property
    def invariants(self) -> Invariants:
        total = Invariants(0, 0)
        for atom, mult in self.atoms:
            inv = atom.invariants
            total = total + Invariants(inv.dim * mult, inv.ht * mult)
        return total

    def is_zero(self) -> bool:
        return not self.atoms

    def multiplicity(self, atom: BCAtom) -> int:
        for a, m in self.atoms:
            if a == atom:
                return m
        return 0

    def __repr__(self):
        if not self.atoms:
            return "0"
        return " + ".join(f"{m}*{a!r}" if m > 1 else repr(a) for a, m in self.atoms)


def invariants_of_E(D: Isocrystal) -> Invariants:
    """(t_N, rank) for an effective isocrystal; refused otherwise, since
    the invariant assignment is not determined for negative slopes."""
    if D.rank and not is_effective(D):
        raise NonEffectiveError("isocrystal has a negative slope: invariants are not assigned")
    return Invariants(newton_number(D) if D.rank else 0, D.rank)


def invariants_of_M(X: FilteredIsocrystal) -> Invariants:
    """(t_H, 0): a finite-length quotient has height zero.  Requires all
    filtration degrees >= 0."""
    if any(d < 0 for d, m in X.graded_dims() if m):
        raise NonEffectiveError("filtration has a negative degree: torsion invariants are not assigned")
    return Invariants(hodge_number(X), 0)


def bc_of_isocrystal(D: Isocrystal) -> SymbolicBC:
    """Formal sum of atoms matching the simple-factor decomposition; the
    slope-0 factors are absorbed into a single Etale atom."""
    if D.rank and not is_effective(D):
        raise NonEffectiveError("isocrystal has a negative slope: no effective decomposition")
    pairs = []
    etale = 0
    for d, h, m in dm_type(D).entries if D.rank else ():
        if d == 0:
            etale += h * m
        else:
            pairs.append((Edh(d, h), m))
    if etale:
        pairs.append((Etale(etale), 1))
    out = SymbolicBC.from_pairs(pairs)
    assert out.invariants == invariants_of_E(D)
    return out


@dataclass(frozen=True)
class SlopeLayer:
    """One graded layer of the slope filtration: all atoms of one slope.

    For finite alpha = d/h the multiplicity n counts copies of the pure
    slope-alpha object (Edh(d,h), or unit Etale pieces at alpha = 0);
    for the infinite layer it is the total torsion length.
    """

    alpha: object  # Fraction or INFINITE_SLOPE
    n: int
    atoms: tuple[tuple[BCAtom, int], ...]


def slope_filtration(x: SymbolicBC) -> list[SlopeLayer]:
    """Layers in strictly decreasing slope order: the torsion layer at
    slope infinity first, then pure layers, the etale layer at 0 last."""
    groups: dict[object, list[tuple[BCAtom, int]]] = {}
    for atom, mult in x.atoms:
        groups.setdefault(atom.slope, []).append((atom, mult))
    def order_key(s):
        return (0, Fraction(0)) if s == INFINITE_SLOPE else (1, -s)
    layers = []
    for s in sorted(groups, key=order_key):
        atoms = tuple(groups[s])
        if s == INFINITE_SLOPE:
            n = sum(a.m * m for a, m in atoms)
        elif s == 0:
            n = sum(a.k * m for a, m in atoms)
        else:
            n = sum(m for _, m in atoms)
        layers.append(SlopeLayer(s, n, atoms))
    return layers


class Ext1Class(enum.Enum):
    ZERO = "zero"
    UNKNOWN = "unknown"


def ext1_class(a: BCAtom, b: BCAtom) -> Ext1Class:
    """Extension-vanishing decision table for Ext^1(a, b).

    Returns ZERO exactly in the two certified cases: an etale source
    (every surjection onto it splits), or a pair Edh(d', h), Edh(d, h)
    of equal height with d <= d'.  Everything else is UNKNOWN; nothing
    is fabricated.
    """
    if isinstance(a, Etale):
        return Ext1Class.ZERO
    if isinstance(a, Edh) and isinstance(b, Edh) and a.h == b.h and b.d <= a.d:
        return Ext1Class.ZERO
    return Ext1Class.UNKNOWN


def _as_invariants(term) -> Invariants:
    if isinstance(term, Invariants):
        return term
    if isinstance(term, SymbolicBC):
        return term.invariants
    if isinstance(term, (Edh, Etale, Torsion)):
        return term.invariants
    raise TypeError(f"term {term!r} carries no invariants")


@dataclass(frozen=True)
class AdditivityReport:
    results: tuple[tuple[bool, Invariants], ...]  # (balanced, middle - sub - quotient)

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.results)


def check_additivity(sequences) -> AdditivityReport:
    """Verify dim/ht balance on exact sequences (sub, middle, quotient)."""
    results = []
    for sub, mid, quo in sequences:
        delta = _as_invariants(mid) - (_as_invariants(sub) + _as_invariants(quo))
        results.append((delta == Invariants(0, 0), delta))
    return AdditivityReport(tuple(results))


@dataclass(frozen=True)
class LedgerStep:
    label: str
    terms: tuple[tuple[str, Invariants], ...]
    note: str
    balanced: bool | None = None  # None: informational step, no balance claim


@dataclass(frozen=True)
class Ledger:
    steps: tuple[LedgerStep, ...]
    verdict: AdmissibilityVerdict
    solution_dimension: int | None

    @property
    def balanced(self) -> bool:
        return all(s.balanced is not False for s in self.steps)


def admissibility_ledger(
    X: FilteredIsocrystal, mode: str = "exact", samples: int = 100, seed: int = 0
) -> Ledger:
    """Replay the dimension/height argument for a filtered isocrystal.

    On weakly admissible input the ledger concludes that the solution
    space is rational of dimension rank(X); otherwise it records the
    violating subobject and stops.
    """
    inv_E = invariants_of_E(X.D)
    inv_M = invariants_of_M(X)
    verdict = is_weakly_admissible(X, mode=mode, samples=samples, seed=seed)
    steps = [
        LedgerStep(
            "invariants",
            (("E", inv_E), ("M", inv_M)),
            f"dim E = t_N = {inv_E.dim}, ht E = rank = {inv_E.ht}; "
            f"dim M = t_H = {inv_M.dim}, ht M = 0",
        )
    ]
    if not verdict.weakly_admissible:
        witness = verdict.witness
        steps.append(
            LedgerStep(
                "weak admissibility fails",
                (),
                "a subobject violates the Hodge <= Newton inequality "
                f"(witness of dimension {witness.dim}); the ledger stops",
                None,
            )
        )
        return Ledger(tuple(steps), verdict, None)
    coker = Invariants(inv_M.dim - inv_E.dim, 0)
    steps.append(
        LedgerStep(
            "cokernel vanishes",
            (("coker", Invariants(0, 0)),),
            f"dim coker(E -> M) = t_H - t_N = {coker.dim}; a dimension-zero "
            "space is etale, and an etale quotient of the connected M is 0, "
            "so E -> M is onto",
            coker.dim == 0,
        )
    )
    inv_V = Invariants(inv_E.dim - inv_M.dim, inv_E.ht - inv_M.ht)
    steps.append(
        LedgerStep(
            "height count",
            (("V", inv_V), ("E", inv_E), ("M", inv_M)),
            "0 -> V -> E -> M -> 0 is exact; ht V = ht E - ht M = "
            f"{inv_V.ht} and dim V = {inv_V.dim}, so V is rational of "
            f"dimension {inv_V.ht} = rank",
            inv_V + inv_M == inv_E,
        )
    )
    return Ledger(tuple(steps), verdict, inv_V.ht)


# ----------------------------------------------------------------------
# formal sums as a client category of the HN engine


class SymbolicHNAdapter(HNAdapter):
    """HN adapter on torsion-free formal sums, up to isomorphism.

    Subobjects are sub-multisets (etale atoms split into units first),
    which is faithful for split objects: degree is the dimension, rank
    the height.  The torsion layer must be removed before use; it sits
    above every finite slope.
    """

    @staticmethod
    def _normalize(x: SymbolicBC) -> SymbolicBC:
        pairs = []
        for atom, mult in x.atoms:
            if isinstance(atom, Torsion):
                raise ValueError("torsion atoms do not belong to the slope-filtered category")
            if isinstance(atom, Etale):
                pairs.append((Etale(1), atom.k * mult))
            else:
                pairs.append((atom, mult))
        return SymbolicBC.from_pairs(pairs)

    def deg(self, obj: SymbolicBC) -> int:
        return obj.invariants.dim

    def rank(self, obj: SymbolicBC) -> int:
        return obj.invariants.ht

    def is_zero(self, obj: SymbolicBC) -> bool:
        return obj.is_zero()

    def strict_subobjects(self, obj: SymbolicBC):
        norm = self._normalize(obj)
        atoms = [a for a, _ in norm.atoms]
        ranges = [range(m + 1) for _, m in norm.atoms]
        for counts in itertools.product(*ranges):
            yield SymbolicBC.from_pairs(zip(atoms, counts))

    def contains(self, a: SymbolicBC, b: SymbolicBC) -> bool:
        an, bn = self._normalize(a), self._normalize(b)
        return all(an.multiplicity(atom) >= m for atom, m in bn.atoms)

    def equals(self, a: SymbolicBC, b: SymbolicBC) -> bool:
        return self._normalize(a) == self._normalize(b)

    def quotient(self, obj: SymbolicBC, sub: SymbolicBC) -> SymbolicBC:
        on, sn = self._normalize(obj), self._normalize(sub)
        return SymbolicBC.from_pairs(
            (atom, m - sn.multiplicity(atom)) for atom, m in on.atoms
        )

    def pull_back(self, obj: SymbolicBC, sub: SymbolicBC, qsub: SymbolicBC) -> SymbolicBC:
        return self._normalize(sub) + self._normalize(qsub)

    def push_forward(self, obj: SymbolicBC, sub: SymbolicBC, larger: SymbolicBC) -> SymbolicBC:
        ln, sn = self._normalize(larger), self._normalize(sub)
        return SymbolicBC.from_pairs(
            (atom, m - sn.multiplicity(atom)) for atom, m in ln.atoms
        )
