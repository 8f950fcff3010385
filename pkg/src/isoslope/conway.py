"""Conway polynomials over prime fields.

The Conway polynomial C_{p,n} is the minimal monic primitive polynomial
of degree n over GF(p) under the standard word ordering, compatible with
C_{p,m} for every proper divisor m of n.  It is the canonical choice of
defining polynomial for GF(p^n) and therefore gives a deterministic,
implementation-independent presentation of unramified extensions.

Everything here works on coefficient lists of plain integers, constant
term first.  The search is feasible for the small degrees this package
needs; known values are confirmed by the test suite against published
tables.
"""

from __future__ import annotations

from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _polmulmod(a, b, f, p):
    # product of a and b reduced mod f (monic) and mod p
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    deg_f = len(f) - 1
    for i in range(len(prod) - 1, deg_f - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(deg_f):
                prod[i - deg_f + j] = (prod[i - deg_f + j] - c * f[j]) % p
    prod = prod[:deg_f]
    while len(prod) < deg_f:
        prod.append(0)
    return prod


def _xpowmod(e, f, p):
    # x^e mod (f, p) by square and multiply
    deg_f = len(f) - 1
    result = [1] + [0] * (deg_f - 1)
    base = ([0, 1] + [0] * (deg_f - 2))[:deg_f] if deg_f >= 2 else [(-f[0]) % p]
    while e:
        if e & 1:
            result = _polmulmod(result, base, f, p)
        base = _polmulmod(base, base, f, p)
        e >>= 1
    return result


def _is_one(vec) -> bool:
    return vec[0] == 1 and all(c == 0 for c in vec[1:])


def _x_is_primitive(f, p, n) -> bool:
    # x generates a group of order p^n - 1 in GF(p)[x]/(f); this forces
    # f irreducible, since the unit group can be that large only for a field
    order = p**n - 1
    if f[0] == 0:
        return False
    if not _is_one(_xpowmod(order, f, p)):
        return False
    return all(not _is_one(_xpowmod(order // q, f, p)) for q in prime_factors(order))


def _norm_compatible(f, p, n) -> bool:
    for m in range(1, n):
        if n % m:
            continue
        e = (p**n - 1) // (p**m - 1)
        xe = _xpowmod(e, f, p)
        # evaluate C_{p,m} at x^e inside GF(p)[x]/(f)
        acc = [0] * (len(f) - 1)
        for c in reversed(conway_polynomial(p, m)):
            acc = _polmulmod(acc, xe, f, p)
            acc[0] = (acc[0] + c) % p
        if any(acc):
            return False
    return True


@lru_cache(maxsize=None)
def conway_polynomial(p: int, n: int) -> tuple[int, ...]:
    """Coefficients (a_0, ..., a_n) of C_{p,n}, ascending, a_n = 1.

    Candidates x^n - c_{n-1} x^{n-1} + c_{n-2} x^{n-2} - ... are scanned
    in lexicographic order of the word (c_{n-1}, ..., c_0).
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    # counter in base p encodes the word (c_{n-1}, ..., c_0)
    for w in range(p**n):
        word = []
        t = w
        for _ in range(n):
            word.append(t % p)
            t //= p
        word.reverse()
        coeffs = [0] * n + [1]
        for idx, c in enumerate(word):
            i = n - 1 - idx  # degree of this coefficient
            coeffs[i] = (-c if (n - i) % 2 else c) % p
        if _x_is_primitive(coeffs, p, n) and _norm_compatible(coeffs, p, n):
            return tuple(coeffs)
    raise RuntimeError(f"no Conway polynomial found for p={p}, n={n}")
