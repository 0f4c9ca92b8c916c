import pytest
from hypothesis import given, settings, strategies as st

from zmono.fock import (FockModel, Inconclusive, TruncationError, calibrate, exponents, gcr_check,
                        membership_cases, partition_words, run_membership, shared_model, sign_ratio,
                        span_rank, straightening_a9, t2_words, t_span_membership, tensor_check,
                        tensor_counterexample, vacuum_character, vacuum_dim)
from zmono.gcr import named_constant
from zmono.rootsystem import RootContext, project_pair


@pytest.fixture(scope="module")
def m3():
    return shared_model(3, 8)


@pytest.fixture(scope="module")
def m5():
    return shared_model(5, 8)


@pytest.mark.parametrize("s", (3, 4, 5))
def test_exponents(s):
    T = exponents(s)
    assert T.total() == 2 * s - 1
    assert all(T.multiplicity[n] == 0 for n in range(0, T.m, 2))
    assert all(T.multiplicity[n] == 1 for n in range(1, T.m, 2))
    for n in range(T.m):
        for mu in range(T.multiplicity[n]):
            assert T.is_eigenvector(n, mu)


def test_calibration_values():
    for s in (3, 4, 5):
        R = RootContext(s)
        scalars, info = calibrate(s)
        assert info["scale"] == R.cyclo(1) / R.m
        for b, (c0, c1) in scalars.items():
            assert c1 == (-c0 if b == R.alpha(s) else c0)


def test_sign_ratio_stable_in_cap():
    M = FockModel(3, cap=6)
    R = M.rctx
    for b in R.phi_prime:
        assert sign_ratio(M, b, cap=4) == sign_ratio(M, b, cap=6)


def test_vacuum_is_annihilated(m3):
    R = m3.rctx
    v = m3.vacuum()
    for n in (1, 3, 5):
        assert m3.heis_apply(R.alpha(1), n, v).is_zero()


def test_zero_mode_rejected(m3):
    with pytest.raises(ValueError):
        m3.heis_apply(m3.rctx.alpha(1), 0, m3.vacuum())


def test_heisenberg_commutator_on_vacuum(m3):
    # (a_n b_-n - b_-n a_n) v = 2 (n/m) <a_(n), b_(-n)> v on the two-slot space
    R = m3.rctx
    v = m3.vacuum()
    for n in (1, 3):
        for a in R.phi_prime:
            for b in R.phi_prime:
                lhs = m3.heis_apply(a, n, m3.heis_apply(b, -n, v))
                want = project_pair(R, a, b, n) * 2 * n / R.m   # project onto g_(n), pair with b
                assert lhs == v.scale(want)


def test_heisenberg_eigenvector(m3):
    R = m3.rctx
    v = m3.z_apply(-3, R.alpha(3), m3.z_apply(-2, R.alpha(1), m3.vacuum()))
    a = R.alpha(1)
    for n in (1, 3):
        assert m3.heis_apply(R.nu(a), n, v) == m3.heis_apply(a, n, v).scale(R.cyclo.omega(n))


def test_z_commutes_with_heisenberg(m3):
    R = m3.rctx
    v = m3.z_apply(-1, R.alpha(3), m3.vacuum())
    for n in (1, 3):
        for i in (-2, 0):
            lhs = m3.heis_apply(R.alpha(2), n, m3.z_apply(i, R.alpha(1), v))
            rhs = m3.z_apply(i, R.alpha(1), m3.heis_apply(R.alpha(2), n, v))
            assert lhs == rhs


@pytest.mark.parametrize("p", (1, 2, 5, 7))
def test_fold_identity(m3, p):
    R = m3.rctx
    for g in R.phi_prime:
        for i in (-2, -1, 0, 1):
            for D in (2, 3):
                assert m3.zmat(R.nu_pow(g, p), i, D) == m3.zmat(g, i, D).scale(R.cyclo.omega(p * i))


def test_truncation_error(m3):
    with pytest.raises(TruncationError):
        m3.zmat(m3.rctx.alpha(1), -2, m3.cap)


def test_vacuum_dim_matches_character(m3):
    want = vacuum_character(m3.rctx, 6).coeffs
    assert [vacuum_dim(m3, d) for d in range(7)] == list(want) == [1, 1, 1, 2, 2, 3, 4]


def test_tensor_relation(m3):
    for b in m3.rctx.phi_prime:
        assert tensor_check(m3, b, cap=6)


def test_tensor_relation_fails_with_wrong_sign():
    R = RootContext(3)
    M = FockModel(3, cap=4)
    one = R.cyclo.one()
    bad = M.with_scalars({b: (one, one) for b in R.phi_prime})
    assert tensor_counterexample(bad, R.alpha(3), 4) is not None


def test_gcr_oracle_examples(m3):
    R = m3.rctx
    a1, a3 = R.alpha(1), R.alpha(3)
    assert gcr_check(m3, a1, a1, 0, 0, cap=6)
    assert gcr_check(m3, a1, a3, 2, 1, cap=6)


def test_gcr_fails_with_zero_scalars():
    R = RootContext(3)
    M = FockModel(3, cap=6)
    zero = R.cyclo.zero()
    Z = M.with_scalars({b: (zero, zero) for b in R.phi_prime})
    assert not gcr_check(Z, R.alpha(1), R.alpha(1), 1, -1, cap=2)


def test_gcr_fails_with_paper_phase(m3):
    R = m3.rctx
    assert not gcr_check(m3, R.alpha(1), R.alpha(1), -2, -2, cap=4, phase="paper")


def test_gcr_inconclusive_on_small_model(m3):
    with pytest.raises(Inconclusive):
        gcr_check(m3, m3.rctx.alpha(1), m3.rctx.alpha(1), -4, -4, cap=8)


def test_span_rank_basics(m3):
    assert span_rank(m3, [()], 0) == 1
    with pytest.raises(ValueError):
        span_rank(m3, [(-1, -1)], 3)


def test_partition_words():
    assert partition_words(4) == [(-4,), (-3, -1), (-2, -2), (-2, -1, -1), (-1, -1, -1, -1)]
    assert partition_words(4, keep=lambda p: p[-1] > 1) == [(-4,), (-2, -2)]


def test_k1_basis_rank(m5):
    from zmono.partitions import predicate
    from zmono.qseries import principal_character
    want = principal_character(5, 1, 8).coeffs
    for d in range(9):
        assert span_rank(m5, partition_words(d, keep=predicate("K1")), d) == want[d]


def test_member_trivially(m5):
    ok, _ = t_span_membership(m5, [(1, (-3, -1))], (-2, -2))
    assert ok


def test_member_negative_control(m5):
    # Z_-4 Z_-2 v is not in the span of words strictly above (-4, -2)
    ok, _ = t_span_membership(m5, [(1, (-4, -2))], (-4, -2))
    assert not ok


@pytest.mark.parametrize("i", (-2, -4))
def test_member_perturbed_constant_fails(m5, i):
    # against the narrow family T''(i, i) only the printed d(i) works
    R = m5.rctx
    words = t2_words((i, i), 2 * i)
    for delta, expect in ((0, True), (1, False)):
        expr = [(named_constant(5, "d", i) + delta, (i, i)), (-1, ((2 * i, R.beta(2)),))]
        assert t_span_membership(m5, expr, (i, i), odd=-1, extra_words=words)[0] is expect


def test_straightening():
    r = straightening_a9()
    assert r["exists"] and r["unique"] and r["ok"]
    assert r["c1"] == "11ω⁵-11ω³-7ω²+9ω+4"


def test_straightening_wrong_twist_fails():
    assert not straightening_a9(twist=7)["ok"]


def test_straightening_needs_s5(m3):
    with pytest.raises(ValueError):
        straightening_a9(m3)


def test_membership_cases_have_two_instances():
    cases = membership_cases()
    assert all(len(c.instances) == 2 for c in cases.values())
    assert {c.s for c in cases.values()} == {3, 4, 5}


@pytest.mark.parametrize("cid", ["pree.a", "a5.oddsq", "a9.lem3_1"])
def test_membership_quick(cid):
    assert run_membership(cid)["ok"]


@settings(max_examples=15, deadline=None)
@given(st.lists(st.sampled_from([-3, -2, -1, 0, 1]), min_size=1, max_size=3))
def test_z_words_stay_in_vacuum_space(word):
    M = shared_model(3, 8)
    if -sum(word) < 0 or any(-sum(word[k:]) > 6 or -sum(word[k:]) < 0 for k in range(len(word))):
        return
    R = M.rctx
    v = M.vacuum()
    for i in reversed(word):
        v = M.z_apply(i, R.alpha(1) if i % 2 == 0 else R.alpha(3), v)
    for n in (1, 3, 5):
        assert M.heis_apply(R.alpha(1), n, v).is_zero()
