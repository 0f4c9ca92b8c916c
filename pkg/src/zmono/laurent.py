"""Truncated Laurent series over Q(w) and the coefficients c(alpha, beta, n)."""
from fractions import Fraction

from .rootsystem import pairing

DEFAULT_ORDER = 24


class TruncSeries:
    """sum_{e=lowest}^{lowest+order} coeffs[e-lowest] z^e, exact up to that exponent."""

    def __init__(self, ctx, coeffs, lowest=0, order=None):
        self.ctx = ctx
        self.lowest = lowest
        coeffs = [ctx(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        coeffs = coeffs[:order + 1]
        coeffs += [ctx.zero()] * (order + 1 - len(coeffs))
        self.coeffs = coeffs
        self.order = order

    @property
    def top(self):
        return self.lowest + self.order

    def coeff_at(self, e):
        if e < self.lowest:
            return self.ctx.zero()
        if e > self.top:
            raise IndexError("exponent %d outside the valid window (<= %d)" % (e, self.top))
        return self.coeffs[e - self.lowest]

    def truncate(self, top):
        top = min(top, self.top)
        return TruncSeries(self.ctx, self.coeffs[:top - self.lowest + 1], self.lowest, top - self.lowest)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries(self.ctx, [c * other for c in self.coeffs], self.lowest, self.order)
        lowest = self.lowest + other.lowest
        top = min(self.top + other.lowest, other.top + self.lowest)
        n = top - lowest + 1
        out = [self.ctx.zero() for _ in range(n)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(min(len(other.coeffs), n - i)):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(self.ctx, out, lowest, n - 1)

    __rmul__ = __mul__

    def __add__(self, other):
        lowest = min(self.lowest, other.lowest)
        top = min(self.top, other.top)
        out = [self.coeff_at(e) + other.coeff_at(e) for e in range(lowest, top + 1)]
        return TruncSeries(self.ctx, out, lowest, top - lowest)

    def __neg__(self):
        return TruncSeries(self.ctx, [-c for c in self.coeffs], self.lowest, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        top = min(self.top, other.top)
        lo = min(self.lowest, other.lowest)
        return all(self.coeff_at(e) == other.coeff_at(e) for e in range(lo, top + 1))

    def __repr__(self):
        terms = ["(%s)z^%d" % (c, e) for e, c in enumerate(self.coeffs, self.lowest) if c]
        return "TruncSeries(%s + O(z^%d))" % (" + ".join(terms) or "0", self.top + 1)


series_mul = TruncSeries.__mul__


def series_truncate(a, top):
    return a.truncate(top)


def coeff_at(a, e):
    return a.coeff_at(e)


def gen_binomial(e, n):
    """binom(e, n) for rational e."""
    e = Fraction(e)
    out = Fraction(1)
    for i in range(n):
        out = out * (e - i) / (i + 1)
    return out


def binom_factor(c, e, order):
    """(1 - c z)^e expanded to z^order, principal branch (constant term 1)."""
    ctx = c.ctx
    coeffs = []
    power = ctx.one()
    for n in range(order + 1):
        coeffs.append(power * gen_binomial(e, n))
        power = power * (-c)
    return TruncSeries(ctx, coeffs, 0, order)


_F_CACHE = {}


def f_series(rctx, a, b, k=2, order=DEFAULT_ORDER):
    """F(a, b, z) = prod_t (1 - w^{-t} z)^{<nu^t a, b>/k}."""
    key = (rctx.s, tuple(a), tuple(b), k, order)
    if key in _F_CACHE:
        return _F_CACHE[key]
    K = rctx.cyclo
    result = TruncSeries(K, [1], 0, order)
    for t in range(rctx.m):
        e = pairing(rctx, rctx.nu_pow(a, t), b)
        if e:
            result = result * binom_factor(K.omega(-t), Fraction(e, k), order)
    _F_CACHE[key] = result
    return result


def c_coeff(rctx, a, b, n, k=2, order=None):
    if n < 0:
        return rctx.cyclo.zero()
    if order is None:
        order = max(DEFAULT_ORDER, n)
    return f_series(rctx, a, b, k, order).coeff_at(n)
