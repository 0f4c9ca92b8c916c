"""Exact linear algebra over Q(w).

Two independent routes: Gaussian elimination on lists of CycloNum, and
QwMat, which stores a matrix as its coefficient matrices on 1, w, ..., w^{phi-1}
so that products run through flint's rational matrix multiplication.
"""
from math import gcd, lcm

import flint

from .cyclo import CycloNum


def _copy(rows):
    return [list(r) for r in rows]


def row_echelon(rows):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    A = _copy(rows)
    if not A:
        return A, []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if not A[i][c].is_zero()), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c].inv()
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [x - f * y if not y.is_zero() else x for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank(rows):
    """Rank by elimination; rows may be given in any orientation."""
    A = [list(r) for r in rows if any(not x.is_zero() for x in r)]
    if not A:
        return 0
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if not A[i][c].is_zero()), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c].inv()
        piv = [x * inv for x in A[r]]
        for i in range(r + 1, len(A)):
            if not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [x - f * y if not y.is_zero() else x for x, y in zip(A[i], piv)]
        r += 1
        if r == len(A):
            break
    return r


def det(M):
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        raise ValueError("empty matrix")
    A = _copy(M)
    ctx = A[0][0].ctx
    result = ctx.one()
    for c in range(n):
        p = next((i for i in range(c, n) if not A[i][c].is_zero()), None)
        if p is None:
            return ctx.zero()
        if p != c:
            A[c], A[p] = A[p], A[c]
            result = -result
        result = result * A[c][c]
        inv = A[c][c].inv()
        for i in range(c + 1, n):
            if not A[i][c].is_zero():
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return result


def det_cofactor(M):
    """Laplace expansion along the first row; independent check for small matrices."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = M[0][0].ctx.zero()
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def nullspace(M):
    """Basis of {x : M x = 0} as a list of column vectors."""
    if not M:
        return []
    ncols = len(M[0])
    R, pivots = row_echelon(M)
    ctx = M[0][0].ctx
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        x = [ctx.zero() for _ in range(ncols)]
        x[free] = ctx.one()
        for r, c in enumerate(pivots):
            x[c] = -R[r][free]
        basis.append(x)
    return basis


def solve(columns, target):
    """Coefficients x with sum_j x_j columns[j] = target.

    Returns (x, unique) or (None, False) when target is outside the span.
    """
    if not columns:
        return (None, False) if any(not t.is_zero() for t in target) else ([], True)
    n = len(target)
    rows = [[col[i] for col in columns] + [target[i]] for i in range(n)]
    R, pivots = row_echelon(rows)
    k = len(columns)
    if k in pivots:
        return None, False
    ctx = target[0].ctx
    x = [ctx.zero() for _ in range(k)]
    for r, c in enumerate(pivots):
        x[c] = R[r][k]
    return x, len(pivots) == k


def in_span(columns, target):
    return rank_of_columns(columns + [target]) == rank_of_columns(columns)


def rank_of_columns(columns):
    if not columns:
        return 0
    return rank(columns)


class QwMat:
    """Matrix over Q(w): integer coefficient matrices of 1, w, ..., w^{phi-1} over one denominator."""

    __slots__ = ("ctx", "parts", "den", "nrows", "ncols")

    def __init__(self, ctx, parts, den, nrows, ncols):
        self.ctx = ctx
        self.parts = parts
        self.den = den
        self.nrows = nrows
        self.ncols = ncols

    @classmethod
    def zeros(cls, ctx, nrows, ncols):
        return cls(ctx, [flint.fmpz_mat(nrows, ncols) for _ in range(ctx.degree)], 1, nrows, ncols)

    @classmethod
    def from_entries(cls, ctx, nrows, ncols, entries):
        """entries: iterable of (i, j, CycloNum); repeated positions are summed."""
        entries = [(i, j, v) for i, j, v in entries if not v.is_zero()]
        den = 1
        for _, _, v in entries:
            den = lcm(den, int(v.poly.denom()))
        parts = [flint.fmpz_mat(nrows, ncols) for _ in range(ctx.degree)]
        for i, j, v in entries:
            scale = den // int(v.poly.denom())
            for k, c in enumerate(v.poly.numer().coeffs()):
                if c != 0:
                    parts[k][i, j] += c * scale
        return cls(ctx, parts, den, nrows, ncols)

    @classmethod
    def from_rows(cls, ctx, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls.from_entries(ctx, nrows, ncols,
                                [(i, j, v) for i, row in enumerate(rows) for j, v in enumerate(row)])

    @classmethod
    def column(cls, ctx, values):
        return cls.from_entries(ctx, len(values), 1, [(i, 0, v) for i, v in enumerate(values)])

    def entry(self, i, j):
        poly = flint.fmpq_poly([int(p[i, j]) for p in self.parts]) / self.den
        return CycloNum._raw(self.ctx, poly)

    def to_rows(self):
        return [[self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def column_values(self, j=0):
        return [self.entry(i, j) for i in range(self.nrows)]

    def columns(self):
        return [self.column_values(j) for j in range(self.ncols)]

    def is_zero(self):
        return all(p.is_zero() for p in self.parts)

    def _aligned(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        if self.den == other.den:
            return self.parts, other.parts, self.den
        den = lcm(self.den, other.den)
        a, b = den // self.den, den // other.den
        return [p * a for p in self.parts], [p * b for p in other.parts], den

    def __add__(self, other):
        x, y, den = self._aligned(other)
        return QwMat(self.ctx, [p + q for p, q in zip(x, y)], den, self.nrows, self.ncols)

    def __sub__(self, other):
        x, y, den = self._aligned(other)
        return QwMat(self.ctx, [p - q for p, q in zip(x, y)], den, self.nrows, self.ncols)

    def __neg__(self):
        return QwMat(self.ctx, [-p for p in self.parts], self.den, self.nrows, self.ncols)

    def __eq__(self, other):
        return (self - other).is_zero()

    def scale(self, c):
        """Multiply by a scalar in Q(w)."""
        if not isinstance(c, CycloNum):
            c = self.ctx(c)
        num = c.poly.numer().coeffs()
        den = self.den * int(c.poly.denom())
        raw = [None] * (len(self.parts) + max(len(num), 1) - 1)
        for i, a in enumerate(self.parts):
            for j, f in enumerate(num):
                if f != 0:
                    t = a * f
                    raw[i + j] = t if raw[i + j] is None else raw[i + j] + t
        return self._fold(raw, den, self.nrows, self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %dx%d @ %dx%d" % (self.nrows, self.ncols, other.nrows, other.ncols))
        raw = [None] * (2 * len(self.parts) - 1)
        live_b = [(j, b) for j, b in enumerate(other.parts) if not b.is_zero()]
        for i, a in enumerate(self.parts):
            if a.is_zero():
                continue
            for j, b in live_b:
                t = a * b
                raw[i + j] = t if raw[i + j] is None else raw[i + j] + t
        return self._fold(raw, self.den * other.den, self.nrows, other.ncols)

    def _fold(self, raw, den, nrows, ncols):
        ctx = self.ctx
        d = ctx.degree
        parts = [r if r is not None else flint.fmpz_mat(nrows, ncols) for r in raw[:d]]
        parts += [flint.fmpz_mat(nrows, ncols) for _ in range(d - len(parts))]
        for k in range(d, len(raw)):
            if raw[k] is None:
                continue
            for t, c in enumerate(_reduction_row(ctx, k)):
                if c:
                    parts[t] = parts[t] + raw[k] * c
        out = QwMat(ctx, parts, den, nrows, ncols)
        # keep denominators from growing across long products
        return out.normalized() if den.bit_length() > 128 else out

    def normalized(self):
        """Divide out common factors of the denominator and all entries."""
        if self.den == 1:
            return self
        g = self.den
        for p in self.parts:
            for x in p.entries():
                if x != 0:
                    g = gcd(g, int(x))
                    if g == 1:
                        return self
        if g == 1:
            return self
        return QwMat(self.ctx, [flint.fmpz_mat([[int(x) // g for x in row] for row in p.tolist()])
                                if p.nrows() and p.ncols() else p for p in self.parts],
                     self.den // g, self.nrows, self.ncols)

    def realify(self):
        """Integer matrix of the Q-linear map (up to the denominator); rank = phi * Q(w)-rank."""
        d = self.ctx.degree
        R = flint.fmpz_mat(self.nrows * d, self.ncols * d)
        # column (j, t) is the image of w^t e_j
        for t in range(d):
            shifted = self.scale(self.ctx.omega(t))
            for k, part in enumerate(shifted.parts):
                for i in range(self.nrows):
                    for j in range(self.ncols):
                        v = part[i, j]
                        if v != 0:
                            R[i * d + k, j * d + t] = v
        return R

    def rank(self):
        return self.realify().rank() // self.ctx.degree

    def transpose(self):
        return QwMat(self.ctx, [p.transpose() for p in self.parts], self.den, self.ncols, self.nrows)

    def vec(self):
        """Row-major flattening into a single column."""
        n = self.nrows * self.ncols
        parts = [flint.fmpz_mat(n, 1, [int(x) for x in p.entries()]) if n else flint.fmpz_mat(0, 1)
                 for p in self.parts]
        return QwMat(self.ctx, parts, self.den, n, 1)

    def kron(self, other):
        """Kronecker product, computed on the integer coefficient matrices."""
        import numpy as np
        A = [np.array(p.tolist(), dtype=object).reshape(self.nrows, self.ncols) for p in self.parts]
        B = [np.array(p.tolist(), dtype=object).reshape(other.nrows, other.ncols) for p in other.parts]
        nr, nc = self.nrows * other.nrows, self.ncols * other.ncols
        raw = [None] * (2 * len(A) - 1)
        for i, a in enumerate(A):
            if not a.any():
                continue
            for j, b in enumerate(B):
                if not b.any():
                    continue
                t = np.kron(a, b)
                raw[i + j] = t if raw[i + j] is None else raw[i + j] + t
        raw = [flint.fmpz_mat(nr, nc, [int(x) for x in r.ravel()]) if r is not None else None
               for r in raw]
        return self._fold(raw, self.den * other.den, nr, nc)

    @classmethod
    def identity(cls, ctx, n):
        parts = [flint.fmpz_mat(n, n) for _ in range(ctx.degree)]
        for i in range(n):
            parts[0][i, i] = 1
        return cls(ctx, parts, 1, n, n)

    @classmethod
    def block(cls, ctx, nrows, ncols, blocks):
        """Assemble from (row offset, col offset, QwMat) pieces; overlapping pieces are summed."""
        den = 1
        for _, _, b in blocks:
            den = lcm(den, b.den)
        parts = [flint.fmpz_mat(nrows, ncols) for _ in range(ctx.degree)]
        for r0, c0, b in blocks:
            f = den // b.den
            for k, p in enumerate(b.parts):
                if p.is_zero():
                    continue
                for i, row in enumerate(p.tolist()):
                    for j, x in enumerate(row):
                        if x != 0:
                            parts[k][r0 + i, c0 + j] += int(x) * f
        return cls(ctx, parts, den, nrows, ncols)

    def hstack(self, other):
        x_parts, y_parts = self.parts, other.parts
        den = lcm(self.den, other.den)
        a, b = den // self.den, den // other.den
        parts = []
        for p, q in zip(x_parts, y_parts):
            rows = [list(map(lambda v: int(v) * a, rp)) + list(map(lambda v: int(v) * b, rq))
                    for rp, rq in zip(p.tolist(), q.tolist())]
            parts.append(flint.fmpz_mat(rows) if rows else flint.fmpz_mat(0, self.ncols + other.ncols))
        return QwMat(self.ctx, parts, den, self.nrows, self.ncols + other.ncols)


_RED = {}


def _reduction_row(ctx, k):
    """Integer coefficients of w^k in the basis 1, w, ..., w^{phi-1}."""
    key = (ctx.m, k)
    if key not in _RED:
        _RED[key] = [int(c) for c in ctx.omega(k).coeffs]
    return _RED[key]
