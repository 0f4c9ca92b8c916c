import pytest
from hypothesis import given, settings, strategies as st

from oracles import sympy_partitions
from zmono.partitions import (K3_READINGS, Partition, all_partitions, enumerate_brute, enumerate_set,
                              genfun, nandi_series, predicate)
from zmono.qseries import a9_products, principal_character, series_equal

SETS = ["Par", "R1", "R2", "G1", "G2", "K", "K1", "K2", "K3", "N", "MTrmk",
        "T(5;{1,4})", "T(5;{2,3})", "T(8;{1,4,7})", "T(8;{3,4,5})"]


def test_partition_validation():
    assert Partition((3, 1)).weight == 4
    with pytest.raises(ValueError):
        Partition((1, 3))
    with pytest.raises(ValueError):
        Partition((2, 0))


@pytest.mark.parametrize("n", range(0, 16))
def test_all_partitions_matches_sympy(n):
    assert sorted(all_partitions(n)) == sorted(sympy_partitions(n))


def test_enumerate_r1_4():
    assert sorted(enumerate_set("R1", 4)) == [(3, 1), (4,)]


def test_enumerate_t5_4():
    assert sorted(enumerate_set("T(5;{1,4})", 4)) == [(1, 1, 1, 1), (4,)]


@pytest.mark.parametrize("set_id", SETS)
def test_enumerate_empty(set_id):
    assert enumerate_set(set_id, 0) == [()]


@pytest.mark.parametrize("set_id", SETS)
def test_fast_route_agrees_with_brute_force(set_id):
    for n in range(0, 15):
        assert enumerate_set(set_id, n) == enumerate_brute(set_id, n)


def test_unknown_set():
    with pytest.raises(ValueError):
        predicate("Q7", (1,))


def test_sample_conditions():
    assert predicate("R2", (5, 3)) and not predicate("R2", (4, 1))
    assert predicate("G1", (5, 3)) and not predicate("G1", (6, 4))   # even parts need gap 4
    assert not predicate("K", (3, 3))         # repeated odd part
    assert predicate("K1", (4, 2)) and not predicate("K1", (2, 2))
    assert not predicate("K2", (5, 1)) and not predicate("K3", (5, 3))


def test_k3_verbatim_reading_fails():
    N = 20
    prods = a9_products(N)
    ok, k = series_equal(genfun("K1", N, k3_reading="verbatim"), prods[1])
    assert not ok and k == 9
    assert set(K3_READINGS) == {"verbatim", "all_windows"}


def test_nandi_subword_floor_two_matches_chi_6_3():
    N = 40
    assert series_equal(nandi_series(N, "subword", 2), principal_character(6, 3, N))[0]
    ok, k = series_equal(nandi_series(N, "exact", 2), principal_character(6, 3, N))
    assert not ok and k == 32


@pytest.mark.parametrize("i", (1, 2))
def test_rr_chain(i):
    N = 60
    a = genfun("R%d" % i, N)
    assert a == genfun("T(5;{%d,%d})" % (i, 5 - i), N) == principal_character(4, 2 * i - 1, N)


@pytest.mark.parametrize("i", (1, 2))
def test_gollnitz_chain(i):
    N = 60
    res = (2 * i - 1, 4, 9 - 2 * i)
    a = genfun("G%d" % i, N)
    assert a == genfun("T(8;{%d,%d,%d})" % res, N) == principal_character(3, 2 * i - 1, N)


@pytest.mark.parametrize("i", (1, 2, 3))
def test_k_chain(i):
    N = 60
    assert genfun("K%d" % i, N) == a9_products(N)[2 * i - 1] == principal_character(5, 2 * i - 1, N)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SETS), st.integers(0, 20))
def test_enumeration_is_sorted_and_in_set(set_id, n):
    parts = enumerate_set(set_id, n)
    f = predicate(set_id)
    assert parts == sorted(parts)
    assert all(sum(p) == n and f(p) for p in parts)
    assert len(parts) == genfun(set_id, n)[n]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 14), st.sampled_from(["R1", "G1", "K1"]))
def test_restricted_sets_are_subsets(n, set_id):
    assert set(enumerate_set(set_id, n)) <= set(enumerate_set("Par", n))
