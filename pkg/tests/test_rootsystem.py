import pytest
from hypothesis import given, settings, strategies as st

from oracles import close, complex_value, epsilon_numeric
from zmono.rootsystem import (RootContext, RootVec, build_nu, c_set, epsilon, orbit, order,
                              pairing, project_pair, representative, table1, table1_mismatches)

S_VALUES = (3, 4, 5, 6)


def test_pairing_table():
    R = RootContext(3)
    assert pairing(R, R.alpha(1), R.alpha(1)) == 2
    assert pairing(R, R.alpha(1), R.alpha(2)) == -1
    assert pairing(R, R.alpha(1), R.alpha(3)) == 0


def test_nu_on_simple_roots_s3():
    R = RootContext(3)
    nu = build_nu(R)
    assert nu(R.alpha(1)) == R.alpha(5)
    assert nu(R.alpha(3)) == -R.span(1, 3)
    assert R.nu_pow(R.alpha(1), 0) == R.alpha(1)


@pytest.mark.parametrize("s", S_VALUES)
def test_order_and_half_turn(s):
    R = RootContext(s)
    assert order(R, R.nu) == 2 * (2 * s - 1)
    for i in range(1, R.rank + 1):
        assert R.nu_pow(R.alpha(i), 2 * s - 1) == -R.alpha(i)


@pytest.mark.parametrize("s", S_VALUES)
def test_table1_reproduced(s):
    R = RootContext(s)
    assert table1_mismatches(R) == []
    assert len(table1(R)) == 2 * s - 1


def test_table1_detects_a_wrong_row():
    R = RootContext(4)
    p, v1, vs, _, _ = table1(R)[3]
    assert R.nu_pow(R.alpha(1), p) == v1
    assert R.nu_pow(R.alpha(1), p + 1) != v1


@pytest.mark.parametrize("s", S_VALUES)
def test_orbits_partition_roots(s):
    R = RootContext(s)
    orbits = [set(orbit(R, r)) for r in R.phi_prime]
    assert all(len(o) == R.m for o in orbits)
    assert sum(len(o) for o in orbits) == len(set().union(*orbits)) == len(R.roots())


def test_representative():
    R = RootContext(5)
    for b in R.phi_prime:
        assert representative(R, b) == (b, 0)
    assert representative(R, R.nu_pow(R.beta(2), 7)) == (R.beta(2), 7)
    with pytest.raises(ValueError):
        representative(R, R.alpha(1) * 2)


def test_epsilon_trivial():
    R = RootContext(4)
    assert epsilon(R, RootVec([0] * R.rank), R.alpha(2)) == R.cyclo.one()


def test_epsilon_frozen_s3():
    # direct evaluation of the defining product, frozen (complex check in the next test)
    R = RootContext(3)
    K = R.cyclo
    e = epsilon(R, R.nu_pow(R.alpha(1), 2), R.alpha(1))
    assert e == K.from_coeffs([10, -20, 16, -4])


@pytest.mark.parametrize("s", (3, 5))
def test_epsilon_matches_numeric(s):
    R = RootContext(s)
    for p in range(R.m):
        for b in R.phi_prime:
            a = R.nu_pow(R.alpha(1), p)
            assert close(complex_value(epsilon(R, a, b)), epsilon_numeric(R, a, b))


def test_c_sets_printed():
    for s in (3, 4, 5, 6):
        R = RootContext(s)
        m, a1, a_s = R.m, R.alpha(1), R.alpha(s)
        assert c_set(R, a1, a1, -1) == {2, m - 2}
        assert c_set(R, a1, a_s, -1) == {2 * s - 4, m - 1}
        assert c_set(R, a_s, a_s, -1) == {n for n in range(1, m, 2) if n != 2 * s - 1}
        assert 2 * s - 1 in c_set(R, a1, a1, -2)


def test_c_set_alpha1_beta_n():
    for s in (4, 5, 6):
        R = RootContext(s)
        for n in range(2, s):
            assert c_set(R, R.alpha(1), R.beta(n), -1) == {2 * n, 2 * s - 1, 2 * s + 2 * n - 3, R.m - 2}


@pytest.mark.parametrize("s", (3, 5))
def test_projection_partition_of_unity(s):
    R = RootContext(s)
    for a in R.phi_prime:
        for b in R.phi_prime:
            total = sum((project_pair(R, a, b, n) for n in range(R.m)), R.cyclo.zero())
            assert total == pairing(R, a, b)


def test_projection_eigenvector():
    R = RootContext(4)
    a, b = R.alpha(1), R.alpha(4)
    for n in range(R.m):
        assert project_pair(R, R.nu(a), b, n) == R.cyclo.omega(n) * project_pair(R, a, b, n)


def test_parse_root():
    R = RootContext(5)
    assert R.parse_root("a5") == R.alpha(5)
    assert R.parse_root("b2") == R.beta(2)
    with pytest.raises(ValueError):
        R.parse_root("x1")


# ---------------------------------------------------------------- properties

@st.composite
def lattice_pair(draw):
    s = draw(st.sampled_from(S_VALUES))
    R = RootContext(s)
    v = RootVec(draw(st.lists(st.integers(-2, 2), min_size=R.rank, max_size=R.rank)))
    w = RootVec(draw(st.lists(st.integers(-2, 2), min_size=R.rank, max_size=R.rank)))
    return R, v, w


@settings(max_examples=80, deadline=None)
@given(lattice_pair())
def test_nu_preserves_form(args):
    R, v, w = args
    assert pairing(R, R.nu(v), R.nu(w)) == pairing(R, v, w)
    assert pairing(R, v, w) == pairing(R, w, v)


@settings(max_examples=30, deadline=None)
@given(lattice_pair())
def test_epsilon_nonvanishing(args):
    R, v, w = args
    assert not epsilon(R, v, w).is_zero()


@settings(max_examples=30, deadline=None)
@given(lattice_pair(), st.integers(1, 40))
def test_nu_power_is_not_identity_below_order(args, p):
    R = args[0]
    if p % R.m:
        assert any(R.nu_pow(R.alpha(i), p) != R.alpha(i) for i in range(1, R.rank + 1))
