from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import close, complex_value, sympy_cyclotomic
from zmono.cyclo import CycloContext, CycloNum, cyclotomic_poly, galois_twist, omega_pow, render


def test_phi_1_is_x_minus_1():
    assert cyclotomic_poly(1) == [-1, 1]


def test_phi_10_frozen():
    # frozen from sympy.cyclotomic_poly(10)
    assert cyclotomic_poly(10) == [1, -1, 1, -1, 1]


def test_phi_18_frozen():
    assert cyclotomic_poly(18) == [1, 0, 0, -1, 0, 0, 1]


@pytest.mark.parametrize("m", range(1, 40))
def test_phi_matches_sympy(m):
    assert cyclotomic_poly(m) == sympy_cyclotomic(m)


def test_phi_rejects_nonpositive():
    with pytest.raises(ValueError):
        cyclotomic_poly(0)


def test_context_from_s():
    K = CycloContext(5)
    assert K.m == 18 and K.degree == 6
    assert CycloContext(m=18) is K


def test_omega_pow_trivial():
    K = CycloContext(3)
    assert omega_pow(K, 0) == K.one()
    assert omega_pow(K, K.m) == K.one()


def test_omega_inverse_reduced():
    # x^9 mod Phi_10 = -x^3 + x^2 - x + 1 (sympy.rem)
    K = CycloContext(m=10)
    assert omega_pow(K, -1) == K.from_coeffs([1, -1, 1, -1])


def test_inverse_of_zero_raises():
    K = CycloContext(3)
    with pytest.raises(ZeroDivisionError, match="division by zero in Q"):
        K.zero().inv()


def test_twist_identity_and_generator():
    K = CycloContext(m=10)
    a = K.from_coeffs([1, 2, 0, -3])
    assert galois_twist(a, 1) == a
    assert galois_twist(K.omega(), 3) == K.omega(3)


def test_twist_requires_unit():
    K = CycloContext(m=10)
    with pytest.raises(ValueError):
        galois_twist(K.omega(), 5)


def test_render():
    K = CycloContext(5)
    assert render(K.omega(3) * -1 + K.omega()) == "-ω³+ω"
    assert render(K.from_coeffs([Fraction(1, 2), 0, 1])) == "ω²+1/2"
    assert render(K.zero()) == "0"


def test_rational_coercion():
    K = CycloContext(4)
    assert K(Fraction(2, 3)) * 3 == K(2)
    assert (K.omega() + 1).is_rational() is False


# ---------------------------------------------------------------- properties

CTX = [CycloContext(s) for s in (3, 4, 5, 6)]
small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def pair_in_field(draw):
    K = draw(st.sampled_from(CTX))
    a = K.from_coeffs(draw(st.lists(small, min_size=1, max_size=K.m)))
    b = K.from_coeffs(draw(st.lists(small, min_size=1, max_size=K.m)))
    return K, a, b


@settings(max_examples=60, deadline=None)
@given(pair_in_field())
def test_ring_homomorphism_to_complex(args):
    K, a, b = args
    assert close(complex_value(a * b), complex_value(a) * complex_value(b))
    assert close(complex_value(a + b), complex_value(a) + complex_value(b))


@settings(max_examples=60, deadline=None)
@given(pair_in_field())
def test_field_axioms(args):
    K, a, b = args
    assert a * b == b * a
    assert (a + b) - b == a
    if not a.is_zero():
        assert a * a.inv() == K.one()
        assert (b / a) * a == b


@settings(max_examples=40, deadline=None)
@given(pair_in_field(), st.integers(min_value=1, max_value=60))
def test_twist_is_ring_automorphism(args, c):
    K, a, b = args
    from math import gcd
    if gcd(c, K.m) != 1:
        return
    assert galois_twist(a * b, c) == galois_twist(a, c) * galois_twist(b, c)
    assert galois_twist(a + b, c) == galois_twist(a, c) + galois_twist(b, c)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CTX), st.integers(-50, 50), st.integers(-50, 50))
def test_omega_exponent_law(K, e, f):
    assert K.omega(e) * K.omega(f) == K.omega(e + f)
    assert isinstance(K.omega(e), CycloNum)
