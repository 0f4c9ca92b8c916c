"""Root lattice of A_{2s-1}, the twisted Coxeter automorphism nu, orbits and epsilon."""
from functools import lru_cache

from .cyclo import CycloContext


class RootVec(tuple):
    """Integer coordinates on the simple roots alpha_1..alpha_{2s-1}."""

    def __new__(cls, coords):
        return super().__new__(cls, (int(c) for c in coords))

    def __add__(self, other):
        return RootVec(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return RootVec(a - b for a, b in zip(self, other))

    def __neg__(self):
        return RootVec(-a for a in self)

    def __mul__(self, k):
        return RootVec(k * a for a in self)

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self)

    def __repr__(self):
        return "RootVec(%s)" % list(self)


def _matmul(A, B):
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


class AutMap:
    """Integer matrix acting on root coordinates (column convention)."""

    def __init__(self, matrix):
        self.matrix = [list(row) for row in matrix]

    def __call__(self, v):
        return RootVec(sum(r[j] * v[j] for j in range(len(v))) for r in self.matrix)

    def __matmul__(self, other):
        return AutMap(_matmul(self.matrix, other.matrix))

    def __eq__(self, other):
        return self.matrix == other.matrix

    def power(self, p):
        result = AutMap(_identity(len(self.matrix)))
        for _ in range(p):
            result = self @ result
        return result


class RootContext:
    _cache = {}

    def __new__(cls, s):
        if s in cls._cache:
            return cls._cache[s]
        if s < 2:
            raise ValueError("s must be at least 2")
        self = super().__new__(cls)
        self.s = s
        self.rank = n = 2 * s - 1
        self.cartan = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)]
                       for i in range(n)]
        self.cyclo = CycloContext(s)
        self.m = self.cyclo.m
        self.nu = build_nu(self)
        self._nu_pows = [AutMap(_identity(n))]
        for _ in range(1, self.m):
            self._nu_pows.append(self.nu @ self._nu_pows[-1])
        self.phi_prime = [self.beta(i) for i in range(1, s)] + [self.alpha(s)]
        self._rep = {}
        for r in self.phi_prime:
            for p in range(self.m):
                self._rep.setdefault(self.nu_pow(r, p), (r, p))
        cls._cache[s] = self
        return self

    def __reduce__(self):
        return (RootContext, (self.s,))

    def alpha(self, i):
        return RootVec(int(j == i - 1) for j in range(self.rank))

    def beta(self, i):
        return RootVec(int(j < i) for j in range(self.rank))

    def span(self, i, j):
        """alpha_i + ... + alpha_j."""
        return RootVec(int(i - 1 <= t <= j - 1) for t in range(self.rank))

    def roots(self):
        pos = [self.span(i, j) for i in range(1, self.rank + 1) for j in range(i, self.rank + 1)]
        return pos + [-r for r in pos]

    def nu_pow(self, v, p):
        return self._nu_pows[p % self.m](v)

    def nu_matrix(self, p=1):
        return self._nu_pows[p % self.m]

    def is_root(self, v):
        return v in self._rep

    def name(self, v):
        """Short label for roots in the representative set, e.g. 'a1', 'b2', 'a5'."""
        for i, r in enumerate(self.phi_prime[:-1], start=1):
            if r == v:
                return "a1" if i == 1 else "b%d" % i
        if v == self.alpha(self.s):
            return "a%d" % self.s
        return str(list(v))

    def parse_root(self, text):
        text = text.strip().lower()
        if text[0] in "ab" and text[1:].isdigit():
            i = int(text[1:])
            return self.alpha(i) if text[0] == "a" else self.beta(i)
        raise ValueError("cannot parse root %r (use a<i> or b<i>)" % text)


def pairing(ctx, v, w):
    c = ctx.cartan
    return sum(v[i] * c[i][j] * w[j] for i in range(len(v)) for j in range(len(w)) if c[i][j])


def reflection(ctx, i):
    n = ctx.rank
    a = ctx.alpha(i)
    cols = []
    for j in range(1, n + 1):
        e = ctx.alpha(j)
        cols.append(e - a * pairing(ctx, e, a))
    return AutMap([[cols[j][r] for j in range(n)] for r in range(n)])


def diagram_flip(ctx):
    n = ctx.rank
    return AutMap([[int(r == n - 1 - j) for j in range(n)] for r in range(n)])


def build_nu(ctx):
    """nu = sigma_1 ... sigma_s sigma, so sigma is applied first."""
    result = diagram_flip(ctx)
    for i in range(ctx.s, 0, -1):
        result = reflection(ctx, i) @ result
    return result


def order(ctx, aut):
    ident = AutMap(_identity(ctx.rank))
    cur = aut
    for p in range(1, 10 * ctx.m + 1):
        if cur == ident:
            return p
        cur = aut @ cur
    raise RuntimeError("automorphism has no small order")


def orbit(ctx, v):
    return [ctx.nu_pow(v, p) for p in range(ctx.m)]


def representative(ctx, v):
    v = RootVec(v)
    if v not in ctx._rep:
        raise ValueError("%r is not a root" % (v,))
    return ctx._rep[v]


@lru_cache(maxsize=None)
def _one_minus_inverse_powers(m):
    ctx = CycloContext(m=m)
    ups = [None] + [1 - ctx.omega(-p) for p in range(1, m)]
    downs = [None] + [u.inv() for u in ups[1:]]
    return ups, downs


_EPS_CACHE = {}


def epsilon(ctx, a, b):
    """prod_{p=1}^{m-1} (1 - w^{-p})^{<nu^p a, b>}."""
    key = (ctx.s, tuple(a), tuple(b))
    if key in _EPS_CACHE:
        return _EPS_CACHE[key]
    ups, downs = _one_minus_inverse_powers(ctx.m)
    result = ctx.cyclo.one()
    for p in range(1, ctx.m):
        e = pairing(ctx, ctx.nu_pow(a, p), b)
        factor = ups[p] if e > 0 else downs[p]
        for _ in range(abs(e)):
            result = result * factor
    _EPS_CACHE[key] = result
    return result


def project_pair(ctx, a, b, n):
    """<a_(n), b> = (1/m) sum_p w^{-np} <nu^p a, b>."""
    K = ctx.cyclo
    total = K.zero()
    for p in range(ctx.m):
        e = pairing(ctx, ctx.nu_pow(a, p), b)
        if e:
            total = total + K.omega(-n * p) * e
    return total / ctx.m


def project_vector(ctx, a, n):
    """Coordinates of a_(n) = (1/m) sum_p w^{-np} nu^p a."""
    K = ctx.cyclo
    coords = [K.zero() for _ in range(ctx.rank)]
    for p in range(ctx.m):
        v = ctx.nu_pow(a, p)
        w = K.omega(-n * p)
        for i, c in enumerate(v):
            if c:
                coords[i] = coords[i] + w * c
    return [c / ctx.m for c in coords]


def extended_pairing(ctx, u, v):
    """Bilinear extension of the form to Q(w)-coordinate vectors."""
    K = ctx.cyclo
    total = K.zero()
    c = ctx.cartan
    for i in range(ctx.rank):
        if u[i].is_zero():
            continue
        acc = K.zero()
        for j in range(ctx.rank):
            if c[i][j] and not v[j].is_zero():
                acc = acc + v[j] * c[i][j]
        total = total + u[i] * acc
    return total


def c_set(ctx, a, b, i):
    return {p for p in range(ctx.m) if pairing(ctx, ctx.nu_pow(a, p), b) == i}


def _label_span(i, j, sign=1):
    body = "a%d" % i if i == j else "a%d+...+a%d" % (i, j)
    return body if sign > 0 else "-(%s)" % body


def table1(ctx):
    """Closed forms of nu^p(a1) and nu^p(as), 0 <= p <= 2s-2, as (p, v1, vs, label1, labels)."""
    s = ctx.s
    rows = [(0, ctx.alpha(1), ctx.alpha(s), "a1", "a%d" % s)]
    for p in range(1, 2 * s - 1):
        k, odd = (p + 1) // 2, p % 2
        if odd:
            lo, hi = k, s
        else:
            lo, hi = s + 1, 2 * s - k
        vs, ls = -ctx.span(lo, hi), _label_span(lo, hi, -1)
        if p == 2 * s - 3:
            v1, l1 = ctx.span(1, s + 1), _label_span(1, s + 1)
        elif p == 2 * s - 2:
            v1, l1 = ctx.span(s, 2 * s - 1), _label_span(s, 2 * s - 1)
        elif odd:
            v1, l1 = ctx.alpha(2 * s - k), "a%d" % (2 * s - k)
        else:
            v1, l1 = ctx.alpha(k + 1), "a%d" % (k + 1)
        rows.append((p, v1, vs, l1, ls))
    return rows


def table1_mismatches(ctx):
    """Rows where the closed form disagrees with nu^p; empty when the table is reproduced."""
    bad = []
    for p, v1, vs, _, _ in table1(ctx):
        got1, gots = ctx.nu_pow(ctx.alpha(1), p), ctx.nu_pow(ctx.alpha(ctx.s), p)
        if got1 != v1 or gots != vs:
            bad.append((p, got1, gots, v1, vs))
    return bad
