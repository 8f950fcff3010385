"""Isocrystals over an unramified p-adic field.

An isocrystal is a finite-dimensional space with an injective
sigma-semilinear endomorphism phi, given by its matrix.  The key
algorithmic decision of this module: slopes are computed as (1/f) times
the Newton-polygon slopes of the characteristic polynomial of phi^f,
which is an honestly linear endomorphism.  Everything else (Newton
number, Dieudonne-Manin type, effectivity, the isoclinic decomposition
and subobject enumeration) is derived from that.

Exact subobject enumeration is offered only when every isoclinic piece
of slope d/h (lowest terms) has dimension exactly h; such a piece is
simple, because a proper sub-isocrystal would need the non-integral
Newton number (d/h) * dim.  Otherwise families of subobjects exist and
only Monte-Carlo sampling is available.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import EnumerationUnavailableError, PrecisionError
from .linalg import (
    Matrix,
    SigmaLinearMap,
    Subspace,
    block_diagonal,
    char_poly,
    compose_power,
    det_valuation,
    image,
    is_phi_stable,
    kernel,
    orbit_closure,
    poly_at_matrix,
)
from .padic import UnramifiedField
from .polys import newton_polygon, slope_factorization


@dataclass(frozen=True)
class Isocrystal:
    """A rank-n space with Frobenius v -> A*sigma(v)."""

    phi: SigmaLinearMap

    @property
    def field(self) -> UnramifiedField:
        return self.phi.field

    @property
    def rank(self) -> int:
        return self.phi.n

    @classmethod
    def from_matrix(cls, field: UnramifiedField, rows) -> "Isocrystal":
        return cls(SigmaLinearMap(Matrix(field, rows)))


def simple(field: UnramifiedField, d: int, h: int) -> Isocrystal:
    """The simple isocrystal of slope d/h on the basis e, phi e, ...,
    phi^(h-1) e with phi^h e = p^d e (companion realization)."""
    if h < 1:
        raise ValueError(f"height must be >= 1, got {h}")
    if math.gcd(d, h) != 1:
        raise ValueError(f"({d}, {h}) are not coprime")
    zero = field.zero()
    rows = [[zero] * h for _ in range(h)]
    for i in range(h - 1):
        rows[i + 1][i] = field.one()
    rows[0][h - 1] = field.p_power(d)
    return Isocrystal(SigmaLinearMap(Matrix(field, rows)))


def direct_sum(*crystals: Isocrystal) -> Isocrystal:
    field = crystals[0].field
    return Isocrystal(SigmaLinearMap(block_diagonal(field, [D.phi.matrix for D in crystals])))


def twist(D: Isocrystal, r: int) -> Isocrystal:
    """Tate twist: same space, Frobenius matrix p^r * A."""
    return Isocrystal(SigmaLinearMap(D.phi.matrix.shift_p(r)))


def newton_number(D: Isocrystal) -> int:
    """t_N(D) = v_p(det A), independent of the basis."""
    cached = getattr(D, "_newton_cache", None)
    if cached is None:
        cached = det_valuation(D.phi)
        object.__setattr__(D, "_newton_cache", cached)
    return cached


def slopes(D: Isocrystal) -> tuple[Fraction, ...]:
    """Slope multiset, weakly increasing; size rank(D), sum t_N(D)."""
    cached = getattr(D, "_slopes_cache", None)
    if cached is not None:
        return cached
    f = D.field.f
    lin = compose_power(D.phi, f)
    polygon = newton_polygon(char_poly(lin))
    out: list[Fraction] = []
    for s, m in polygon.slopes:
        out.extend([s / f] * m)
    if len(out) != D.rank:
        raise PrecisionError("slope multiset does not have full size: phi is not certifiably injective")
    object.__setattr__(D, "_slopes_cache", tuple(out))
    return tuple(out)


@dataclass(frozen=True)
class DMType:
    """Multiset of simple factors (d, h, multiplicity) with gcd(d,h)=1,
    sorted by slope; the isomorphism type after base change to the
    maximal unramified extension."""

    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        seen = set()
        for d, h, m in self.entries:
            if h < 1 or m < 1 or math.gcd(d, h) != 1:
                raise ValueError(f"bad DM entry ({d}, {h}, {m})")
            if (d, h) in seen:
                raise ValueError(f"duplicate DM entry ({d}, {h})")
            seen.add((d, h))
        slopes_ = [Fraction(d, h) for d, h, _ in self.entries]
        if slopes_ != sorted(slopes_):
            raise ValueError("DM entries must be sorted by slope")

    @property
    def rank(self) -> int:
        return sum(m * h for _, h, m in self.entries)

    @property
    def newton_number(self) -> int:
        return sum(m * d for d, _, m in self.entries)


def dm_type(D: Isocrystal) -> DMType:
    groups: dict[Fraction, int] = {}
    for s in slopes(D):
        groups[s] = groups.get(s, 0) + 1
    entries = []
    for s in sorted(groups):
        d, h = s.numerator, s.denominator
        total = groups[s]
        if total % h:
            raise PrecisionError(
                f"slope {s} has multiplicity {total} not divisible by {h}: precision corruption"
            )
        entries.append((d, h, total // h))
    return DMType(tuple(entries))


def is_effective(D: Isocrystal) -> bool:
    """Whether some lattice is carried into itself by phi; decided by
    "all slopes >= 0"."""
    return all(s >= 0 for s in slopes(D))


def isoclinic_decomposition(D: Isocrystal) -> list[tuple[Fraction, Subspace]]:
    """Phi-stable pieces of pure slope, ascending; the piece at slope s
    is the kernel of the slope-(f*s) factor of char(phi^f) evaluated at
    phi^f."""
    fld = D.field
    f = fld.f
    lin = compose_power(D.phi, f)
    cp = char_poly(lin)
    polygon = newton_polygon(cp)
    if len(polygon.slopes) == 1 and polygon.vanishing_order == 0:
        return [(polygon.slopes[0][0] / f, Subspace.full(fld, D.rank))]
    pieces = []
    for s, factor in slope_factorization(cp):
        if s == math.inf:
            raise PrecisionError("phi is not certifiably injective (zero eigenvalue)")
        piece = kernel(poly_at_matrix(factor, lin))
        if piece.dim != factor.degree:
            raise PrecisionError("isoclinic piece has wrong dimension: precision exhausted")
        pieces.append((Fraction(s, f), piece))
    return pieces


def exact_enumeration_available(D: Isocrystal) -> bool:
    """Simplicity criterion: every isoclinic piece of slope d/h in
    lowest terms has dimension exactly h."""
    if D.rank == 0:
        return True
    return all(piece.dim == s.denominator for s, piece in isoclinic_decomposition(D))


def sub_isocrystals(D: Isocrystal, mode: str = "exact", samples: int = 100, seed: int = 0):
    """Iterate phi-stable subspaces, by increasing dimension then
    lexicographic echelon data.

    exact mode (requires the simplicity criterion) yields all 2^m sums
    of subsets of the m isoclinic pieces; monte_carlo mode yields the
    subset sums plus orbit closures of `samples` random vector tuples,
    deduplicated.
    """
    fld = D.field
    n = D.rank
    if n == 0:
        yield Subspace.zero(fld, 0)
        return
    pieces = isoclinic_decomposition(D)
    if mode == "exact":
        for s, piece in pieces:
            if piece.dim != s.denominator:
                raise EnumerationUnavailableError(
                    f"isoclinic piece at slope {s} has dimension {piece.dim} != {s.denominator}: "
                    "subobject families exist; use monte_carlo mode"
                )
    elif mode != "monte_carlo":
        raise ValueError(f"unknown mode {mode!r}")
    found = [Subspace.zero(fld, n)]
    for mask in range(1, 1 << len(pieces)):
        vecs = []
        for i, (_, piece) in enumerate(pieces):
            if mask & (1 << i):
                vecs.extend(piece.basis)
        U = Subspace.span(fld, n, vecs)
        if not any(U == W for W in found):
            found.append(U)
    if mode == "monte_carlo":
        rng = random.Random(seed)
        bound = max(fld.p, 3)
        for _ in range(samples):
            count = rng.randint(1, max(1, n - 1))
            vecs = [
                [rng.randrange(-bound, bound + 1) for _ in range(n)] for _ in range(count)
            ]
            U = orbit_closure(D.phi, [[fld.scalar(x) for x in v] for v in vecs])
            if not any(U == W for W in found):
                found.append(U)
    found.sort(key=lambda U: U.sort_key())
    yield from found


def restrict(D: Isocrystal, U: Subspace) -> Isocrystal:
    """The sub-isocrystal carried by a phi-stable subspace, in the
    coordinates of its echelon basis."""
    fld = D.field
    if not is_phi_stable(D.phi, U):
        raise ValueError("subspace is not phi-stable")
    cols = [U.coordinates(D.phi.apply(b)) for b in U.basis]
    rows = [[cols[j][i] for j in range(U.dim)] for i in range(U.dim)]
    return Isocrystal(SigmaLinearMap(Matrix(fld, rows)))
