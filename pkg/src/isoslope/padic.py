"""Exact arithmetic in unramified extensions of Q_p at fixed precision.

A field is described by (p, f, N): the degree-f unramified extension of
the p-adic numbers, truncated at absolute precision p^N, presented on
the power basis 1, w, ..., w^(f-1) of a Conway-polynomial lift.  An
element is stored as a numerator coordinate vector together with a
denominator exponent k >= 0 and a numerator modulus p^M: the value is
coeffs / p^k, known modulo p^(M - k).  M starts at N and only ever
shrinks; no operation fabricates digits.  Rank-style decisions that the
tracked precision cannot certify raise PrecisionError.

The Frobenius automorphism is computed once per field by Hensel-lifting
the p-power map of the residue field to precision N, then applied as a
linear substitution on coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .conway import conway_polynomial, is_prime
from .errors import PrecisionError


@dataclass(frozen=True)
class LowerBound:
    """Certified statement "valuation >= bound" for an element that is
    zero to working precision."""

    bound: int

    def __repr__(self) -> str:
        return f">= {self.bound}"


# ----------------------------------------------------------------------
# raw coordinate-vector helpers (lists of plain ints, no precision data)


def _vec_mul(a, b, red, mod):
    """Product of coordinate vectors modulo the defining polynomial.

    red[j] is the integer coordinate vector of w^(f+j); mod is a power
    of p.
    """
    f = len(a)
    if f == 1:
        return [a[0] * b[0] % mod]
    prod = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    out = prod[:f]
    for j in range(f - 1):
        c = prod[f + j]
        if c:
            rj = red[j]
            for i in range(f):
                out[i] += c * rj[i]
    return [c % mod for c in out]


def _vec_add(a, b, mod):
    return [(x + y) % mod for x, y in zip(a, b)]


def _vec_scale(a, c, mod):
    return [x * c % mod for x in a]


class UnramifiedField:
    """The degree-f unramified extension of Q_p at absolute precision p^N.

    Two fields created with the same (p, f, N) are identical descriptors:
    the defining polynomial is the canonical Conway lift, and the
    Frobenius substitution is determined by it.
    """

    def __init__(self, p: int, f: int = 1, N: int = 20):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if f < 1:
            raise ValueError(f"residue degree must be >= 1, got {f}")
        if N < 1:
            raise ValueError(f"precision exponent must be >= 1, got {N}")
        self.p = p
        self.f = f
        self.N = N
        self.q = p**f
        self.modulus = p**N
        self.defining_poly = conway_polynomial(p, f)
        self._red = self._reduction_table()
        self._frob_cols = self._frobenius_columns()

    # -- construction of the internal tables ---------------------------

    def _reduction_table(self):
        # integer coordinate vectors of w^(f+j), j = 0 .. f-2
        f = self.f
        if f == 1:
            return []
        g = self.defining_poly
        table = []
        cur = [-g[i] for i in range(f)]  # w^f
        table.append(list(cur))
        for _ in range(f - 2):
            nxt = [0] * f
            for i in range(f - 1):
                nxt[i + 1] += cur[i]
            if cur[f - 1]:
                for i in range(f):
                    nxt[i] += cur[f - 1] * (-g[i])
            cur = nxt
            table.append(list(cur))
        return table

    def _frobenius_columns(self):
        # Hensel-lift the residue p-power map: find the root of the
        # defining polynomial congruent to w^p mod p, then tabulate the
        # coordinates of sigma(w^j) for j < f.
        f, p, N = self.f, self.p, self.N
        if f == 1:
            return [[1]]
        g = self.defining_poly
        gp = [i * g[i] for i in range(1, f + 1)]  # derivative, ascending

        def eval_intpoly(coeffs, x, mod):
            acc = [0] * f
            for c in reversed(coeffs):
                acc = _vec_mul(acc, x, self._red, mod)
                acc[0] = (acc[0] + c) % mod
            return acc

        # start from w^p in the residue field
        r = [0] * f
        r[1] = 1
        t = p
        base = list(r)
        r = [1] + [0] * (f - 1)
        while t:
            if t & 1:
                r = _vec_mul(r, base, self._red, p)
            base = _vec_mul(base, base, self._red, p)
            t >>= 1
        prec = 1
        while prec < N:
            prec = min(2 * prec, N)
            mod = p**prec
            gr = eval_intpoly(list(g), r, mod)
            dgr = eval_intpoly(gp, r, mod)
            inv = self._vec_inverse_raw(dgr, prec)
            corr = _vec_mul(gr, inv, self._red, mod)
            r = [(a - b) % mod for a, b in zip(r, corr)]
        assert all(c % self.modulus == 0 for c in eval_intpoly(list(g), r, self.modulus))
        cols = [[1] + [0] * (f - 1)]
        cur = [1] + [0] * (f - 1)
        for _ in range(f - 1):
            cur = _vec_mul(cur, r, self._red, self.modulus)
            cols.append(list(cur))
        return cols

    def _vec_inverse_raw(self, vec, prec):
        # inverse of a unit coordinate vector modulo p^prec
        p, f = self.p, self.f
        if f == 1:
            return [pow(vec[0], -1, p**prec)]
        inv = _residue_inverse_gf(vec, self.defining_poly, p)
        known = 1
        while known < prec:
            known = min(2 * known, prec)
            mod = p**known
            t = _vec_mul(vec, inv, self._red, mod)
            t[0] = (t[0] - 2) % mod
            t = [(-c) % mod for c in t]  # 2 - vec*inv
            inv = _vec_mul(inv, t, self._red, mod)
        return inv

    # -- element construction ------------------------------------------

    def zero(self) -> "PadicScalar":
        return PadicScalar(self, (0,) * self.f, 0, self.N)

    def one(self) -> "PadicScalar":
        return self.scalar(1)

    def generator(self) -> "PadicScalar":
        """The power-basis generator w (equals the Conway residue for f=1)."""
        if self.f == 1:
            return self.scalar((-self.defining_poly[0]) % self.p)
        coeffs = [0] * self.f
        coeffs[1] = 1
        return PadicScalar(self, tuple(coeffs), 0, self.N)

    def p_power(self, r: int) -> "PadicScalar":
        """The scalar p^r for any integer r."""
        if r >= 0:
            return self.scalar(self.p**r)
        return self.scalar(Fraction(1, self.p ** (-r)))

    def scalar(self, value) -> "PadicScalar":
        """Coerce an int, Fraction, "a/b" string, or length-f list of
        such coordinates into a field element."""
        if isinstance(value, PadicScalar):
            if value.field is not self and (value.field.p, value.field.f, value.field.N) != (
                self.p,
                self.f,
                self.N,
            ):
                raise ValueError("scalar belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) != self.f:
                raise ValueError(f"expected {self.f} coordinates, got {len(value)}")
            coords = [_as_fraction(v) for v in value]
        else:
            coords = [_as_fraction(value)] + [Fraction(0)] * (self.f - 1)
        k = 0
        for c in coords:
            t = _p_val(c.denominator, self.p)
            k = max(k, t)
        num = []
        for c in coords:
            d = c.denominator
            t = _p_val(d, self.p)
            unit = d // self.p**t
            n = c.numerator * self.p ** (k - t)
            num.append(n * pow(unit, -1, self.modulus) % self.modulus)
        return _build(self, num, k, self.N)

    def __eq__(self, other):
        return (
            isinstance(other, UnramifiedField)
            and (self.p, self.f, self.N) == (other.p, other.f, other.N)
        )

    def __hash__(self):
        return hash((self.p, self.f, self.N))

    def __repr__(self):
        return f"UnramifiedField(p={self.p}, f={self.f}, N={self.N})"


def _residue_inverse_gf(vec, g, p):
    """Inverse of a unit of GF(p)[x]/(g) by the extended Euclidean algorithm."""

    def divmod_gf(a, b):
        a = list(a)
        while len(a) > 1 and a[-1] == 0:
            a.pop()
        b = list(b)
        while len(b) > 1 and b[-1] == 0:
            b.pop()
        db, lb = len(b) - 1, b[-1]
        inv_lb = pow(lb, -1, p)
        q = [0] * max(len(a) - db, 1)
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i] * inv_lb % p
            if c:
                q[i - db] = c
                for j in range(db + 1):
                    a[i - db + j] = (a[i - db + j] - c * b[j]) % p
        while len(a) > 1 and a[-1] == 0:
            a.pop()
        return q, a

    def mul_gf(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
        return out

    a = [c % p for c in vec]
    r0, r1 = list(g), a
    s0, s1 = [0], [1]
    while any(c % p for c in r1):
        q, r = divmod_gf(r0, r1)
        qs = mul_gf(q, s1)
        m = max(len(s0), len(qs))
        new_s = [((s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)) % p for i in range(m)]
        r0, r1, s0, s1 = r1, r, s1, new_s
    # r0 is now a nonzero constant gcd
    while len(r0) > 1 and r0[-1] == 0:
        r0.pop()
    if len(r0) != 1:
        raise ZeroDivisionError("element is not a unit in the residue field")
    inv_lead = pow(r0[0], -1, p)
    out = [c * inv_lead % p for c in s0]
    out += [0] * (len(g) - 1 - len(out))
    return out[: len(g) - 1]


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    raise TypeError(f"cannot interpret {v!r} as an exact rational")


def _p_val(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _build(field, coeffs, k, M) -> "PadicScalar":
    """Normalize (minimal denominator exponent, capped modulus) and wrap."""
    p = field.p
    M = min(M, field.N + k)
    mod = p**M
    coeffs = [c % mod for c in coeffs]
    while k > 0 and M >= 2 and all(c % p == 0 for c in coeffs):
        coeffs = [c // p for c in coeffs]
        k -= 1
        M -= 1
    if M > field.N + k:
        M = field.N + k
        mod = p**M
        coeffs = [c % mod for c in coeffs]
    return PadicScalar(field, tuple(coeffs), k, M)


class PadicScalar:
    """An element of an unramified p-adic field at tracked precision.

    Immutable.  The represented value is coeffs/p^k, known modulo
    p^(M-k); k is minimal unless the numerator is zero to precision.
    """

    __slots__ = ("field", "coeffs", "k", "M")

    def __init__(self, field, coeffs, k, M):
        self.field = field
        self.coeffs = coeffs
        self.k = k
        self.M = M

    # -- structure queries ----------------------------------------------

    def is_zero(self) -> bool:
        """Zero to working precision (valuation >= M - k)."""
        return all(c == 0 for c in self.coeffs)

    def num_valuation(self):
        """Valuation of the numerator vector, or None when zero to precision."""
        vals = [_p_val(c, self.field.p) for c in self.coeffs if c != 0]
        return min(vals) if vals else None

    def valuation(self):
        """Exact integer valuation, or a LowerBound when undecidable."""
        v = self.num_valuation()
        if v is None:
            return LowerBound(self.M - self.k)
        return v - self.k

    def abs_precision(self) -> int:
        return self.M - self.k

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicScalar):
            return other
        return self.field.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        fld, p = self.field, self.field.p
        k = max(self.k, other.k)
        M = min(self.M + k - self.k, other.M + k - other.k)
        mod = p**M
        a = [c * p ** (k - self.k) % mod for c in self.coeffs]
        b = [c * p ** (k - other.k) % mod for c in other.coeffs]
        return _build(fld, _vec_add(a, b, mod), k, M)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        mod = self.field.p**self.M
        return PadicScalar(self.field, tuple((-c) % mod for c in self.coeffs), self.k, self.M)

    def __sub__(self, other):
        return self.__add__(self._coerce(other).__neg__())

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        other = self._coerce(other)
        fld = self.field
        v1 = self.num_valuation()
        v2 = other.num_valuation()
        e1 = self.M if v1 is None else min(v1, self.M)
        e2 = other.M if v2 is None else min(v2, other.M)
        M = min(self.M + e2, other.M + e1)
        mod = fld.p**M
        coeffs = _vec_mul(list(self.coeffs), list(other.coeffs), fld._red, mod)
        return _build(fld, coeffs, self.k + other.k, M)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "PadicScalar":
        fld = self.field
        v = self.num_valuation()
        if v is None:
            raise PrecisionError(
                f"cannot invert an element that is zero to precision (valuation {self.valuation()})"
            )
        p = fld.p
        unit = [c // p**v for c in self.coeffs]
        m = self.M - v
        inv = fld._vec_inverse_raw(unit, m)
        shift = self.k - v
        if shift >= 0:
            coeffs = [c * p**shift for c in inv]
            return _build(fld, coeffs, 0, m + shift)
        return _build(fld, inv, -shift, m)

    def __truediv__(self, other):
        return self.__mul__(self._coerce(other).inverse())

    def __rtruediv__(self, other):
        return self._coerce(other).__mul__(self.inverse())

    def shift(self, r: int) -> "PadicScalar":
        """Multiply by p^r for any integer r (exact, no unit work)."""
        if r == 0:
            return self
        p = self.field.p
        if r < 0:
            return _build(self.field, list(self.coeffs), self.k - r, self.M)
        drop = min(self.k, r)
        extra = r - drop
        coeffs = [c * p**extra for c in self.coeffs]
        return _build(self.field, coeffs, self.k - drop, self.M + extra)

    def frobenius(self) -> "PadicScalar":
        """Image under the absolute Frobenius substitution."""
        fld = self.field
        if fld.f == 1:
            return self
        v = self.num_valuation()
        e = self.M if v is None else min(v, self.M)
        M = min(self.M, fld.N + e)
        mod = fld.p**M
        out = [0] * fld.f
        for j, c in enumerate(self.coeffs):
            if c % mod:
                col = fld._frob_cols[j]
                for i in range(fld.f):
                    out[i] += c * col[i]
        return _build(fld, [c % mod for c in out], self.k, M)

    # -- comparisons & presentation ---------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PadicScalar):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def residue(self) -> tuple[int, ...]:
        """Image in the residue field (requires k = 0)."""
        if self.k:
            raise ValueError("element is not integral as represented")
        return tuple(c % self.field.p for c in self.coeffs)

    def to_strings(self) -> list[str]:
        den = self.field.p**self.k
        if den == 1:
            return [str(c) for c in self.coeffs]
        return [f"{c}/{den}" for c in self.coeffs]

    def __repr__(self):
        body = self.to_strings()
        inner = body[0] if self.field.f == 1 else "[" + ", ".join(body) + "]"
        return f"{inner} + O({self.field.p}^{self.M - self.k})"


@lru_cache(maxsize=None)
def field_create(p: int, f: int = 1, N: int = 20) -> UnramifiedField:
    """Deterministic field descriptor: same inputs, identical object."""
    return UnramifiedField(p, f, N)


def frobenius(x: PadicScalar) -> PadicScalar:
    return x.frobenius()


def valuation(x: PadicScalar):
    return x.valuation()


def exact_valuation(x: PadicScalar) -> int:
    """Integer valuation, raising PrecisionError on zero-to-precision input."""
    v = x.valuation()
    if isinstance(v, LowerBound):
        raise PrecisionError(f"valuation not determined: only know {v}")
    return v
