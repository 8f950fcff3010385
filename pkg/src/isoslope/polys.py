"""Polynomials over an unramified p-adic field: Newton polygons and
factorization along polygon slopes.

The Newton polygon of sum a_i x^i is the lower convex hull of the points
(i, v(a_i)).  Its reported slopes are the valuations of the roots (the
negatives of the geometric hull slopes), listed in weakly increasing
order with multiplicities; their weighted sum is v(a_0) - v(a_n) when
the constant term does not vanish.  Coefficients that are zero to
working precision participate only through their certified lower bound,
which must lie on or above the hull; otherwise a PrecisionError is
raised rather than guessing a vertex.

slope_factorization splits a monic polynomial into monic factors of
pure slope by a Newton iteration on the divide-with-remainder map,
initialized from the hull truncation at a vertex.  Roots at zero (a
vanishing constant term) are stripped first and returned as a power of
x with slope infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionError
from .padic import LowerBound, PadicScalar, UnramifiedField

INFINITE_SLOPE = math.inf


class Poly:
    """Dense polynomial with PadicScalar coefficients, constant term first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: UnramifiedField, coeffs):
        coeffs = tuple(field.scalar(c) for c in coeffs)
        if not coeffs:
            coeffs = (field.zero(),)
        self.field = field
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_monic(self) -> bool:
        return (self.coeffs[-1] - 1).is_zero()

    def trimmed(self) -> "Poly":
        """Drop leading coefficients that are zero to precision.

        Each dropped coefficient must still have at least one certified
        digit (absolute precision >= 1), otherwise the degree itself is
        uncertain.
        """
        coeffs = list(self.coeffs)
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            if coeffs[-1].abs_precision() < 1:
                raise PrecisionError("leading coefficient is uncertain: degree cannot be trimmed")
            coeffs.pop()
        return Poly(self.field, coeffs)

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    def __neg__(self) -> "Poly":
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        zero = self.field.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    def scale(self, c) -> "Poly":
        c = self.field.scalar(c)
        return Poly(self.field, [c * a for a in self.coeffs])

    def __divmod__(self, other: "Poly"):
        """Division with remainder; the divisor needs a certified unit
        leading coefficient after trimming."""
        den = other.trimmed()
        lead = den.coeffs[-1]
        if lead.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        inv_lead = lead.inverse()
        d = den.degree
        rem = list(self.coeffs)
        if len(rem) <= d:
            return Poly(self.field, [self.field.zero()]), Poly(self.field, rem)
        quo = [self.field.zero()] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] * inv_lead
            quo[i - d] = c
            if c.is_zero():
                continue
            for j in range(d + 1):
                rem[i - d + j] = rem[i - d + j] - c * den.coeffs[j]
        return Poly(self.field, quo), Poly(self.field, rem[:d] if d else [self.field.zero()])

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __call__(self, x: PadicScalar) -> PadicScalar:
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                terms.append(f"({c!r})*x^{i}" if i else f"({c!r})")
        return " + ".join(terms) if terms else "0"


def poly_invmod(a: Poly, m: Poly) -> Poly:
    """Inverse of a modulo the monic polynomial m by extended Euclid.

    Raises PrecisionError when coprimality cannot be certified at the
    working precision (a gcd of positive degree survives).
    """
    fld = a.field
    r0, r1 = m, (a % m).trimmed()
    t0 = Poly(fld, [fld.zero()])
    t1 = Poly(fld, [fld.one()])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r.trimmed()
        t0, t1 = t1, t0 - q * t1
    if r0.trimmed().degree > 0:
        raise PrecisionError("polynomials are not coprime at working precision")
    c = r0.coeffs[0]
    if c.is_zero():
        raise PrecisionError("degenerate gcd: cannot certify coprimality")
    return (t0.scale(c.inverse())) % m


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull data: vertices (degree index, valuation) and the
    slope multiset read off segment by segment."""

    vertices: tuple[tuple[int, int], ...]
    slopes: tuple[tuple[Fraction, int], ...]
    vanishing_order: int = 0

    @classmethod
    def from_slope_multiset(cls, slopes) -> "NewtonPolygon":
        """Polygon of given slopes drawn from the origin, ascending."""
        groups: dict[Fraction, int] = {}
        for s, m in slopes:
            groups[Fraction(s)] = groups.get(Fraction(s), 0) + m
        ordered = sorted(groups.items())
        vertices = [(0, 0)]
        x, y = 0, Fraction(0)
        for s, m in ordered:
            x += m
            y += s * m
            if y.denominator != 1:
                raise ValueError("slope multiset does not close up on lattice points")
            vertices.append((x, int(y)))
        return cls(tuple(vertices), tuple(ordered))

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.slopes)

    @property
    def total_rise(self) -> Fraction:
        return sum((s * m for s, m in self.slopes), Fraction(0))

    def slope_multiset(self) -> list[Fraction]:
        out = []
        for s, m in self.slopes:
            out.extend([s] * m)
        return out


def _lower_hull(points):
    # monotone chain on points sorted by abscissa (one point per abscissa)
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep only strictly convex turns
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_polygon(poly: Poly) -> NewtonPolygon:
    """Newton polygon of a nonzero polynomial.

    Raises PrecisionError if a coefficient that is zero to precision
    could dip below the hull determined by the certified coefficients.
    """
    if poly.is_zero():
        raise ValueError("Newton polygon of the zero polynomial")
    poly = poly.trimmed()
    coeffs = poly.coeffs
    vanish = 0
    while coeffs[vanish].is_zero():
        vanish += 1
    exact = []
    bounded = []
    for i in range(vanish, len(coeffs)):
        v = coeffs[i].valuation()
        if isinstance(v, LowerBound):
            bounded.append((i, v.bound))
        else:
            exact.append((i, v))
    hull = _lower_hull(exact)

    def hull_value(i: int) -> Fraction:
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            if x1 <= i <= x2:
                return Fraction(y1 * (x2 - i) + y2 * (i - x1), x2 - x1)
        return Fraction(hull[0][1]) if i <= hull[0][0] else Fraction(hull[-1][1])

    for i, bound in bounded:
        if Fraction(bound) < hull_value(i):
            raise PrecisionError(
                f"coefficient of x^{i} is zero to precision p^{bound}, below the hull: "
                "cannot certify a hull vertex"
            )
    for i in range(vanish):
        v = coeffs[i].valuation()
        bound = v.bound if isinstance(v, LowerBound) else v
        if Fraction(bound) < hull_value(hull[0][0]):
            raise PrecisionError(
                f"low-order coefficient of x^{i} cannot be certified as vanishing"
            )
    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slopes.append((Fraction(y1 - y2, x2 - x1), x2 - x1))
    slopes.reverse()  # weakly increasing root valuations
    return NewtonPolygon(tuple(hull), tuple(slopes), vanish)


def _x_power(fld: UnramifiedField, m: int) -> Poly:
    return Poly(fld, [fld.zero()] * m + [fld.one()])


def _split_at_vertex(poly: Poly, i1: int, max_iter: int = 60):
    """Split a monic polynomial at a hull vertex of degree index i1.

    Returns (h, q) with poly = h * q (to precision), h monic of degree
    i1 carrying the roots of largest valuation.
    """
    fld = poly.field
    pivot = poly.coeffs[i1]
    inv_pivot = pivot.inverse()
    h = Poly(fld, [c * inv_pivot for c in poly.coeffs[: i1 + 1]])
    h = Poly(fld, list(h.coeffs[:-1]) + [fld.one()])  # value is 1 already; keep monic shape
    for _ in range(max_iter):
        q, r = divmod(poly, h)
        if r.is_zero():
            return h, q
        v = poly_invmod(q % h, h)
        h = h + (v * r) % h
    raise PrecisionError("slope factorization did not converge: precision exhausted during lifting")


def slope_factorization(poly: Poly):
    """Factor a monic polynomial into monic factors of pure slope.

    Returns a list of (slope, factor) pairs with slopes increasing; a
    vanishing constant term contributes a trailing (inf, x^m) entry.
    Requires the distinct polygon slopes to stay separated through the
    lifting; precision exhaustion raises PrecisionError.
    """
    if not poly.is_monic():
        raise ValueError("slope factorization requires a monic polynomial")
    poly = poly.trimmed()
    fld = poly.field
    polygon = newton_polygon(poly)
    m = polygon.vanishing_order
    factors = []
    rest = Poly(fld, poly.coeffs[m:]) if m else poly
    while True:
        polygon = newton_polygon(rest)
        if len(polygon.slopes) <= 1:
            break
        i1 = polygon.vertices[1][0]  # end of the steepest (largest-valuation) segment
        h, q = _split_at_vertex(rest, i1)
        hp = newton_polygon(h)
        if len(hp.slopes) != 1 or hp.slopes[0][0] != polygon.slopes[-1][0]:
            raise PrecisionError("lifted factor does not have the expected pure slope")
        factors.append((hp.slopes[0][0], h))
        rest = q
    if rest.degree > 0:
        factors.append((newton_polygon(rest).slopes[0][0], rest))
    factors.sort(key=lambda sf: sf[0])
    if m:
        factors.append((INFINITE_SLOPE, _x_power(fld, m)))
    return factors
