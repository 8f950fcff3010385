"""Exact matrix and subspace algebra over an unramified p-adic field.

Matrices act on coordinate columns; a semilinear map is stored by the
matrix A of v -> A*sigma(v), sigma applied entrywise to coordinates.
Subspaces are kept in a canonical reduced echelon form whose pivots are
chosen by minimal valuation (ties broken by smallest coordinate index),
so equality of subspaces is decidable and enumeration orders are
deterministic.  Rank decisions accept a pivot only when its valuation
is exactly determined at the tracked precision and raise PrecisionError
otherwise.

The characteristic polynomial uses the Berkowitz scheme: division-free,
so no precision is lost beyond what the inputs carry.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PrecisionError
from .padic import PadicScalar, UnramifiedField, exact_valuation
from .polys import Poly


# ----------------------------------------------------------------------
# vectors

def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))

def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))

def vec_scale(c, a):
    return tuple(c * x for x in a)

def vec_is_zero(a) -> bool:
    return all(x.is_zero() for x in a)


class Matrix:
    """Immutable dense matrix of PadicScalar entries."""

    __slots__ = ("field", "rows")

    def __init__(self, field: UnramifiedField, rows):
        self.field = field
        self.rows = tuple(tuple(field.scalar(x) for x in row) for row in rows)

    @classmethod
    def identity(cls, field, n):
        one, zero = field.one(), field.zero()
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, n, m=None):
        zero = field.zero()
        return cls(field, [[zero] * (m if m is not None else n) for _ in range(n)])

    @classmethod
    def diagonal(cls, field, entries):
        entries = [field.scalar(e) for e in entries]
        zero = field.zero()
        n = len(entries)
        return cls(field, [[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i, j) -> PadicScalar:
        return self.rows[i][j]

    def col(self, j):
        return tuple(row[j] for row in self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        cols = [other.col(j) for j in range(other.m)]
        return Matrix(
            self.field,
            [[_dot(row, c) for c in cols] for row in self.rows],
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, [vec_add(r, s) for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, [vec_sub(r, s) for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "Matrix":
        c = self.field.scalar(c)
        return Matrix(self.field, [vec_scale(c, r) for r in self.rows])

    def shift_p(self, r: int) -> "Matrix":
        """Multiply every entry by p^r exactly."""
        return Matrix(self.field, [[x.shift(r) for x in row] for row in self.rows])

    def apply(self, v):
        return tuple(_dot(row, v) for row in self.rows)

    def sigma(self) -> "Matrix":
        return Matrix(self.field, [[x.frobenius() for x in row] for row in self.rows])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [self.col(j) for j in range(self.m)])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.n == other.n and self.m == other.m and all(
            (a - b).is_zero() for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    __hash__ = None

    def __repr__(self):
        body = "; ".join("[" + ", ".join(repr(x) for x in row) + "]" for row in self.rows)
        return f"Matrix({body})"


def _dot(a, b):
    acc = None
    for x, y in zip(a, b):
        t = x * y
        acc = t if acc is None else acc + t
    return acc


def block_diagonal(field, blocks) -> Matrix:
    n = sum(b.n for b in blocks)
    zero = field.zero()
    rows = [[zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.m):
                rows[off + i][off + j] = b.entry(i, j)
        off += b.n
    return Matrix(field, rows)


@dataclass(frozen=True)
class SigmaLinearMap:
    """The semilinear endomorphism v -> A*sigma(v) of K^n."""

    matrix: Matrix

    @property
    def field(self):
        return self.matrix.field

    @property
    def n(self) -> int:
        return self.matrix.n

    def apply(self, v):
        sv = tuple(x.frobenius() for x in v)
        return self.matrix.apply(sv)


def compose_power(phi: SigmaLinearMap, k: int) -> Matrix:
    """Matrix of phi^k, namely A * sigma(A) * ... * sigma^(k-1)(A)."""
    if k < 1:
        raise ValueError("power must be >= 1")
    acc = phi.matrix
    twisted = phi.matrix
    for _ in range(k - 1):
        twisted = twisted.sigma()
        acc = acc @ twisted
    return acc


def char_poly(M: Matrix) -> Poly:
    """Characteristic polynomial of a square matrix, via the Berkowitz
    (division-free) recursion on principal minors."""
    fld = M.field
    n = M.n
    one, zero = fld.one(), fld.zero()
    if n == 0:
        return Poly(fld, [one])
    poly = [one, -M.entry(0, 0)]  # degree-descending coefficients
    for r in range(1, n):
        row = [M.entry(r, j) for j in range(r)]
        col = [M.entry(i, r) for i in range(r)]
        sub = [[M.entry(i, j) for j in range(r)] for i in range(r)]
        seq = [one, -M.entry(r, r)]
        acc = col
        for _ in range(r):
            seq.append(-_dot(row, acc))
            acc = [_dot(srow, acc) for srow in sub]
        new = []
        for i in range(r + 2):
            s = None
            for j in range(max(0, i - len(seq) + 1), min(i, r) + 1):
                t = seq[i - j] * poly[j]
                s = t if s is None else s + t
            new.append(s if s is not None else zero)
        poly = new
    poly.reverse()
    return Poly(fld, poly)


def det(M: Matrix) -> PadicScalar:
    c0 = char_poly(M).coeffs[0]
    return c0 if M.n % 2 == 0 else -c0


def det_valuation(phi: SigmaLinearMap) -> int:
    """v_p(det A); invariant under semilinear base change."""
    d = det(phi.matrix)
    if d.is_zero():
        raise PrecisionError("determinant is zero at working precision")
    return exact_valuation(d)


def poly_at_matrix(poly: Poly, M: Matrix) -> Matrix:
    fld = M.field
    acc = Matrix.zeros(fld, M.n)
    ident = Matrix.identity(fld, M.n)
    for c in reversed(poly.coeffs):
        acc = acc @ M + ident.scale(c)
    return acc


def solve_matrix(M: Matrix, B: Matrix) -> Matrix:
    """Solve M X = B by elimination with minimal-valuation pivoting."""
    fld = M.field
    n = M.n
    a = [list(row) for row in M.rows]
    b = [list(row) for row in B.rows]
    perm = list(range(n))
    for c in range(n):
        best, best_val = None, None
        for r in range(c, n):
            x = a[r][c]
            if x.is_zero():
                continue
            v = exact_valuation(x)
            if best_val is None or v < best_val:
                best, best_val = r, v
        if best is None:
            raise PrecisionError("matrix is not certifiably invertible at working precision")
        a[c], a[best] = a[best], a[c]
        b[c], b[best] = b[best], b[c]
        perm[c], perm[best] = perm[best], perm[c]
        inv = a[c][c].inverse()
        a[c] = [inv * x for x in a[c]]
        b[c] = [inv * x for x in b[c]]
        for r in range(n):
            if r != c and not a[r][c].is_zero():
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
                b[r] = [x - f * y for x, y in zip(b[r], b[c])]
    return Matrix(fld, b)


def inverse(M: Matrix) -> Matrix:
    return solve_matrix(M, Matrix.identity(M.field, M.n))


def base_change(phi: SigmaLinearMap, C: Matrix) -> SigmaLinearMap:
    """Conjugate semilinearly: A -> C^-1 * A * sigma(C)."""
    return SigmaLinearMap(solve_matrix(C, phi.matrix @ C.sigma()))


# ----------------------------------------------------------------------
# subspaces

def _reduce_against(v, basis):
    v = list(v)
    for piv, b in basis:
        c = v[piv]
        if not c.is_zero():
            for i in range(len(v)):
                v[i] = v[i] - c * b[i]
    return v


def _pivot_of(v):
    """Index of the certified entry of minimal valuation, or None if the
    vector is zero to precision (each entry then needs >= 1 certified
    digit, else PrecisionError)."""
    best, best_val = None, None
    for i, x in enumerate(v):
        if x.is_zero():
            continue
        val = exact_valuation(x)
        if best_val is None or val < best_val:
            best, best_val = i, val
    if best is None:
        for x in v:
            if x.abs_precision() < 1:
                raise PrecisionError("cannot certify pivot rank: entry precision exhausted")
    return best


def _echelonize(vectors):
    basis = []  # list of (pivot, reduced vector), kept sorted by pivot
    for vec in vectors:
        v = _reduce_against(vec, basis)
        piv = _pivot_of(v)
        if piv is None:
            continue
        inv = v[piv].inverse()
        v = [inv * x for x in v]
        for idx, (q, b) in enumerate(basis):
            c = b[piv]
            if not c.is_zero():
                basis[idx] = (q, [x - c * y for x, y in zip(b, v)])
        basis.append((piv, v))
        basis.sort(key=lambda t: t[0])
    return basis


class Subspace:
    """Subspace of K^n in canonical reduced echelon form."""

    __slots__ = ("field", "n", "pivots", "basis")

    def __init__(self, field, n, pivots, basis):
        self.field = field
        self.n = n
        self.pivots = pivots
        self.basis = basis

    @classmethod
    def span(cls, field, n, vectors) -> "Subspace":
        vecs = [tuple(field.scalar(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != n:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {n}")
        ech = _echelonize(vecs)
        return cls(field, n, tuple(p for p, _ in ech), tuple(tuple(v) for _, v in ech))

    @classmethod
    def zero(cls, field, n) -> "Subspace":
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field, n) -> "Subspace":
        return cls.span(field, n, Matrix.identity(field, n).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.n

    def reduce(self, v):
        """Reduce a vector against the basis: (coefficients, residual)."""
        v = list(v)
        coeffs = []
        for piv, b in zip(self.pivots, self.basis):
            c = v[piv]
            coeffs.append(c)
            if not c.is_zero():
                for i in range(self.n):
                    v[i] = v[i] - c * b[i]
        return coeffs, tuple(v)

    def contains_vector(self, v) -> bool:
        _, res = self.reduce(v)
        return vec_is_zero(res)

    def coordinates(self, v):
        coeffs, res = self.reduce(v)
        if not vec_is_zero(res):
            raise ValueError("vector does not lie in the subspace")
        return tuple(coeffs)

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(b) for b in other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.n == other.n
            and self.dim == other.dim
            and self.contains(other)
            and other.contains(self)
        )

    __hash__ = None

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.n, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.n != other.n:
            raise ValueError("ambient dimensions differ")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.n)
        # solve sum x_i u_i = sum y_j w_j: kernel of the n x (a+b) map
        cols = [list(b) for b in self.basis] + [[-x for x in b] for b in other.basis]
        rows = [tuple(col[i] for col in cols) for i in range(self.n)]
        ker = kernel_of_rows(self.field, rows, self.dim + other.dim)
        vecs = []
        for kv in ker:
            acc = [self.field.zero()] * self.n
            for c, b in zip(kv[: self.dim], self.basis):
                for i in range(self.n):
                    acc[i] = acc[i] + c * b[i]
            vecs.append(tuple(acc))
        return Subspace.span(self.field, self.n, vecs)

    def sort_key(self):
        """Deterministic key: dimension, pivot tuple, then entry data."""
        entries = tuple(
            (x.k, x.coeffs) for b in self.basis for x in b
        )
        return (self.dim, self.pivots, entries)

    def __repr__(self):
        if self.dim == 0:
            return f"Subspace(0 of K^{self.n})"
        rows = "; ".join("(" + ", ".join(repr(x) for x in b) + ")" for b in self.basis)
        return f"Subspace(dim {self.dim} of K^{self.n}: {rows})"


def kernel_of_rows(field, rows, width):
    """Kernel of the linear map given by equation rows of length width."""
    ech = _echelonize([tuple(r) for r in rows])
    pivots = [p for p, _ in ech]
    free = [j for j in range(width) if j not in pivots]
    out = []
    zero, one = field.zero(), field.one()
    for q in free:
        v = [zero] * width
        v[q] = one
        for piv, b in ech:
            v[piv] = -b[q]
        out.append(tuple(v))
    return out


def kernel(M: Matrix) -> Subspace:
    """Kernel of v -> M v as a canonical subspace."""
    vecs = kernel_of_rows(M.field, M.rows, M.m)
    return Subspace.span(M.field, M.m, vecs)


def intersect(U: Subspace, V: Subspace) -> Subspace:
    return U.intersect(V)


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    return U + V


def contains(U: Subspace, V: Subspace) -> bool:
    return U.contains(V)


def image(phi: SigmaLinearMap, U: Subspace) -> Subspace:
    return Subspace.span(phi.field, U.n, [phi.apply(b) for b in U.basis])


def is_phi_stable(phi: SigmaLinearMap, U: Subspace) -> bool:
    return U.contains(image(phi, U))


def orbit_closure(phi: SigmaLinearMap, vectors) -> Subspace:
    """Smallest phi-stable subspace containing the given vectors."""
    fld = phi.field
    U = Subspace.span(fld, phi.n, [tuple(fld.scalar(x) for x in v) for v in vectors])
    while True:
        nxt = U + image(phi, U)
        if nxt.dim == U.dim:
            return U
        U = nxt
