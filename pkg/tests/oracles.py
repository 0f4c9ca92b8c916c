"""Independent oracles: floating-point evaluation, sympy, and naive enumeration."""
import cmath
from fractions import Fraction

import sympy


def complex_value(a):
    """Numerical value of a CycloNum at w = exp(2 pi i / m)."""
    w = cmath.exp(2j * cmath.pi / a.ctx.m)
    return sum(complex(float(c)) * w ** e for e, c in enumerate(a.coeffs))


def close(z1, z2, tol=1e-7):
    return abs(z1 - z2) <= tol * max(1.0, abs(z1), abs(z2))


def sympy_cyclotomic(m):
    x = sympy.symbols("x")
    return [int(c) for c in sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()[::-1]]


def sympy_partitions(n):
    """All partitions of n as weakly decreasing tuples."""
    if n == 0:
        return [()]
    out = []
    for p in sympy.utilities.iterables.partitions(n):
        out.append(tuple(sorted((k for k, c in p.items() for _ in range(c)), reverse=True)))
    return out


def naive_product(factors, N):
    """prod (1 - q^k)^{e} over (k, e) by repeated polynomial multiplication and division."""
    coeffs = [1] + [0] * N
    for k, e in factors:
        for _ in range(abs(e)):
            if e > 0:
                coeffs = [coeffs[n] - (coeffs[n - k] if n >= k else 0) for n in range(N + 1)]
            else:
                for n in range(k, N + 1):
                    coeffs[n] += coeffs[n - k]
    return coeffs


def residue_factors(residues, M, N, e=-1):
    return [(k, e) for k in range(1, N + 1) if k % M in {r % M for r in residues}]


def factorial_binomial(e, n):
    """binom(e, n) as Gamma(e+1) / (n! Gamma(e-n+1)) through sympy rationals."""
    return Fraction(str(sympy.binomial(sympy.Rational(e.numerator, e.denominator), n)))


def epsilon_numeric(rctx, a, b):
    from zmono.rootsystem import pairing
    w = cmath.exp(2j * cmath.pi / rctx.m)
    val = 1
    for p in range(1, rctx.m):
        val *= (1 - w ** (-p)) ** pairing(rctx, rctx.nu_pow(a, p), b)
    return val
