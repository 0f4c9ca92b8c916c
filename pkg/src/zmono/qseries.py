"""Truncated integer q-series, Pochhammer products and the principal characters."""


class QSeries:
    """Coefficients of q^0..q^N."""

    def __init__(self, coeffs, N=None):
        coeffs = [int(c) for c in coeffs]
        self.N = len(coeffs) - 1 if N is None else N
        self.coeffs = (coeffs + [0] * (self.N + 1))[:self.N + 1]

    @classmethod
    def one(cls, N):
        return cls([1], N)

    @classmethod
    def monomial(cls, k, N, c=1):
        out = [0] * (N + 1)
        if 0 <= k <= N:
            out[k] = c
        return cls(out, N)

    def _n(self, other):
        return min(self.N, other.N)

    def __add__(self, other):
        N = self._n(other)
        return QSeries([a + b for a, b in zip(self.coeffs[:N + 1], other.coeffs[:N + 1])], N)

    def __sub__(self, other):
        N = self._n(other)
        return QSeries([a - b for a, b in zip(self.coeffs[:N + 1], other.coeffs[:N + 1])], N)

    def __neg__(self):
        return QSeries([-a for a in self.coeffs], self.N)

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries([other * a for a in self.coeffs], self.N)
        N = self._n(other)
        out = [0] * (N + 1)
        for i, a in enumerate(self.coeffs[:N + 1]):
            if a:
                for j, b in enumerate(other.coeffs[:N + 1 - i]):
                    if b:
                        out[i + j] += a * b
        return QSeries(out, N)

    __rmul__ = __mul__

    def inverse(self):
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ZeroDivisionError("constant term must be a unit")
        out = [0] * (self.N + 1)
        for n in range(self.N + 1):
            acc = 1 if n == 0 else 0
            for k in range(1, n + 1):
                acc -= self.coeffs[k] * out[n - k]
            out[n] = acc * c0
        return QSeries(out, self.N)

    def __truediv__(self, other):
        return self * other.inverse()

    def __eq__(self, other):
        return series_equal(self, other)[0]

    def __getitem__(self, n):
        return self.coeffs[n]

    def truncate(self, N):
        return QSeries(self.coeffs[:N + 1], min(N, self.N))

    def __repr__(self):
        return "QSeries(%s, N=%d)" % (self.coeffs[:12], self.N)


def series_equal(a, b, N=None):
    """(equal, first mismatching index or None) on the common window."""
    N = min(a.N, b.N) if N is None else min(N, a.N, b.N)
    for n in range(N + 1):
        if a.coeffs[n] != b.coeffs[n]:
            return False, n
    return True, None


def poch(r, M, N):
    """(q^r; q^M)_infinity truncated at N."""
    if r <= 0:
        raise ValueError("degenerate product: factor (1 - q^%d)" % r)
    out = QSeries.one(N)
    k = r
    while k <= N:
        out = out * QSeries([1] + [0] * (k - 1) + [-1], N)
        k += M
    return out


def poch_product(factors, N):
    """prod (q^r; q^M)^{sign}; factors are (r, M) or (r, M, sign)."""
    out = QSeries.one(N)
    for f in factors:
        r, M, sign = (f + (1,))[:3] if len(f) == 2 else f
        p = poch(r, M, N)
        out = out * p if sign > 0 else out / p
    return out


def bracket(r, M, N):
    """[q^r; q^M] = (q^r, q^{M-r}; q^M)."""
    return poch_product([(r, M), (M - r, M)], N)


def principal_character(s, n, N=60):
    """(q^{2s+2};q^{2s+2}) / (q^2;q^2) * [q^{2n};q^{2s+2}] / [q^n;q^{2s+2}]."""
    if not 1 <= n <= s:
        raise ValueError("n must satisfy 1 <= n <= s")
    M = 2 * s + 2
    num = poch(M, M, N) * bracket(2 * n, M, N)
    return num / (poch(2, 2, N) * bracket(n, M, N))


def inverse_residues(residues, M, N):
    """1 / prod_{r in residues} (q^r; q^M)."""
    return poch_product([(r, M, -1) for r in residues], N)


def rr_sum_side(variant, N=200):
    """sum_n q^{n^2 + (variant-1) n} / (q;q)_n."""
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    total = QSeries([0], N)
    n = 0
    while n * n + (variant - 1) * n <= N:
        qq = QSeries.one(N)
        for i in range(1, n + 1):
            qq = qq * QSeries([1] + [0] * (i - 1) + [-1], N)
        total = total + QSeries.monomial(n * n + (variant - 1) * n, N) / qq
        n += 1
    return total


def a9_products(N=60):
    """The three printed A(2)_9 level-2 products, keyed by n in Lambda^(n)."""
    return {
        1: inverse_residues([1, 4, 6, 8, 11], 12, N),
        3: poch(6, 12, N) * inverse_residues([2, 3, 4, 8, 9, 10], 12, N),
        5: inverse_residues([4, 5, 6, 7, 8], 12, N),
    }
