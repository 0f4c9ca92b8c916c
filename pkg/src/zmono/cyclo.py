"""Exact arithmetic in the cyclotomic field Q(w), w a primitive m-th root of unity.

Elements are polynomials in w with rational coefficients, kept fully reduced
modulo the m-th cyclotomic polynomial, so equality is structural.
"""
from fractions import Fraction
from math import gcd

import flint

_SUPERSCRIPT = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def _poly_divexact(num, den):
    # integer polynomials, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


_PHI_CACHE = {}


def cyclotomic_poly(m):
    """Coefficients of the m-th cyclotomic polynomial, constant term first."""
    if m < 1:
        raise ValueError("m must be positive")
    if m in _PHI_CACHE:
        return list(_PHI_CACHE[m])
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    _PHI_CACHE[m] = tuple(poly)
    return list(poly)


class CycloContext:
    """The field Q(w) for m = 2(2s-1), or for an explicit m."""

    _cache = {}

    def __new__(cls, s=None, m=None):
        if m is None:
            if s is None:
                raise ValueError("need s or m")
            m = 2 * (2 * s - 1)
        key = m
        if key in cls._cache:
            return cls._cache[key]
        self = super().__new__(cls)
        self.m = m
        self.s = (m // 2 + 1) // 2 if m % 4 == 2 else None
        self.phi_m = cyclotomic_poly(m)
        self.degree = len(self.phi_m) - 1
        self.modulus = flint.fmpq_poly(self.phi_m)
        self._powers = [self._reduce(flint.fmpq_poly([0] * e + [1])) for e in range(m)]
        cls._cache[key] = self
        return self

    def __repr__(self):
        return "CycloContext(m=%d)" % self.m

    def __reduce__(self):
        return (CycloContext, (None, self.m))

    def _reduce(self, p):
        if p.degree() >= self.degree:
            p = p % self.modulus
        return p

    def __call__(self, value):
        return CycloNum(self, value)

    def zero(self):
        return CycloNum(self, 0)

    def one(self):
        return CycloNum(self, 1)

    def omega(self, e=1):
        return CycloNum._raw(self, self._powers[e % self.m])

    def from_coeffs(self, coeffs):
        return CycloNum(self, list(coeffs))


def _to_fmpq(x):
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, flint.fmpq):
        return x
    raise TypeError("cannot coerce %r to a rational" % (x,))


class CycloNum:
    """An element of Q(w) stored as a reduced polynomial in w."""

    __slots__ = ("ctx", "poly")

    def __init__(self, ctx, value=0):
        self.ctx = ctx
        if isinstance(value, CycloNum):
            if value.ctx is not ctx:
                raise ValueError("context mismatch")
            self.poly = value.poly
        elif isinstance(value, flint.fmpq_poly):
            self.poly = ctx._reduce(value)
        elif isinstance(value, (list, tuple)):
            self.poly = ctx._reduce(flint.fmpq_poly([_to_fmpq(c) for c in value]))
        else:
            self.poly = flint.fmpq_poly([_to_fmpq(value)])

    @classmethod
    def _raw(cls, ctx, poly):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.poly = poly
        return obj

    @property
    def coeffs(self):
        cs = [Fraction(int(c.p), int(c.q)) for c in self.poly.coeffs()]
        return cs + [Fraction(0)] * (self.ctx.degree - len(cs))

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            if other.ctx is not self.ctx:
                raise ValueError("context mismatch")
            return other.poly
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return flint.fmpq_poly([_to_fmpq(other)])
        return None

    def __add__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return CycloNum._raw(self.ctx, self.poly + p)

    __radd__ = __add__

    def __sub__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return CycloNum._raw(self.ctx, self.poly - p)

    def __rsub__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return CycloNum._raw(self.ctx, p - self.poly)

    def __neg__(self):
        return CycloNum._raw(self.ctx, -self.poly)

    def __pos__(self):
        return self

    def __mul__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return CycloNum._raw(self.ctx, self.ctx._reduce(self.poly * p))

    __rmul__ = __mul__

    def inv(self):
        if self.poly.is_zero():
            raise ZeroDivisionError("division by zero in Q(w)")
        g, u, _ = self.poly.xgcd(self.ctx.modulus)
        # g is a nonzero constant because the modulus is irreducible
        return CycloNum._raw(self.ctx, self.ctx._reduce(u / g.coeffs()[0]))

    def __truediv__(self, other):
        if isinstance(other, CycloNum):
            return self * other.inv()
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        if p.is_zero():
            raise ZeroDivisionError("division by zero in Q(w)")
        return CycloNum._raw(self.ctx, self.poly / p.coeffs()[0])

    def __rtruediv__(self, other):
        return CycloNum(self.ctx, other) * self.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        result = flint.fmpq_poly([1])
        base = self.poly
        while e:
            if e & 1:
                result = self.ctx._reduce(result * base)
            e >>= 1
            if e:
                base = self.ctx._reduce(base * base)
        return CycloNum._raw(self.ctx, result)

    def __eq__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return self.poly == p

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.ctx.m, tuple(self.coeffs)))

    def __bool__(self):
        return not self.poly.is_zero()

    def is_zero(self):
        return self.poly.is_zero()

    def is_rational(self):
        return self.poly.degree() <= 0

    def __repr__(self):
        return "CycloNum(%s)" % self

    def __str__(self):
        return render(self)


def render(a, symbol="ω", unicode=True):
    """Reduced polynomial in w, highest power first, e.g. '-ω³+ω'."""
    terms = []
    for e in range(len(a.coeffs) - 1, -1, -1):
        c = a.coeffs[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if e == 0:
            body = str(c)
        else:
            if unicode:
                power = symbol if e == 1 else symbol + str(e).translate(_SUPERSCRIPT)
            else:
                power = symbol if e == 1 else "%s^%d" % (symbol, e)
            body = power if c == 1 else "%s%s" % (c, power)
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += sign + body
    return out


def omega_pow(ctx, e):
    return ctx.omega(e)


def galois_twist(a, c):
    """Apply the automorphism w -> w^c."""
    ctx = a.ctx
    if gcd(c, ctx.m) != 1:
        raise ValueError("twist exponent %d not coprime to %d" % (c, ctx.m))
    result = flint.fmpq_poly([])
    for e, coeff in enumerate(a.poly.coeffs()):
        if coeff != 0:
            result += coeff * ctx._powers[(e * c) % ctx.m]
    return CycloNum._raw(ctx, result)


def units_mod(m):
    return [c for c in range(1, m) if gcd(c, m) == 1]
