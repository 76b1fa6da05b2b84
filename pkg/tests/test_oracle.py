from itertools import permutations
from math import factorial

import numpy as np
import pytest

from refined_eulerian import exact_core as core
from refined_eulerian import oracle
from refined_eulerian.errors import InvalidArgument, ResourceLimitError
from refined_eulerian.poly import Poly


def test_descent_count_examples():
    assert oracle.descent_count((1, 2, 3, 4, 5)) == 0
    assert oracle.descent_count((5, 4, 3, 2, 1)) == 4
    assert oracle.descent_count((2, 3, 1)) == 1


def test_transform_examples():
    assert oracle.reverse_values((1, 3, 2)) == (3, 1, 2)
    assert oracle.rollback((2, 3, 1)) == (1, 2, 3)
    assert oracle.reverse_positions((1, 2, 3, 4)) == (4, 3, 2, 1)
    assert oracle.descent_count(oracle.reverse_positions((1, 2, 3, 4))) == 3


@pytest.mark.parametrize("n", range(2, 9))
def test_transform_laws(n):
    for p in permutations(range(1, n + 1)):
        d = oracle.descent_count(p)
        rv, rp, rb = oracle.reverse_values(p), oracle.reverse_positions(p), oracle.rollback(p)
        assert oracle.descent_count(rv) == n - 1 - d
        assert oracle.descent_count(rp) == n - 1 - d
        assert (rv[0], rv[-1]) == (n + 1 - p[0], n + 1 - p[-1])
        assert (rp[0], rp[-1]) == (p[-1], p[0])
        step = 1 if p[0] == 1 else -1 if p[-1] == 1 else 0
        assert oracle.descent_count(rb) - d == step


def test_check_perm():
    assert oracle.check_perm([2, 1]) == (2, 1)
    for bad in ([], [1, 1], [0, 1], [2, 3]):
        with pytest.raises(InvalidArgument):
            oracle.check_perm(bad)


def test_enumerate_joint_examples(brute):
    j3 = oracle.enumerate_joint(3)
    assert j3.count(1, 2, 3) == 1  # 213
    j1 = oracle.enumerate_joint(1)
    assert list(j1.items()) == [((0, 1, 1), 1)]
    assert oracle.enumerate_joint(8).total() == 40320


@pytest.mark.parametrize("n", range(1, 8))
def test_enumerate_joint_vs_itertools(n, brute):
    j = oracle.enumerate_joint(n)
    assert dict(j.items()) == brute(n)


def test_enumerate_joint_cap():
    with pytest.raises(ResourceLimitError) as e:
        oracle.enumerate_joint(11)
    assert e.value.cap == oracle.DEFAULT_CAP
    assert "cap=10" in str(e.value)


@pytest.mark.parametrize("n", range(1, 11))
def test_marginals_reproduce_tables(n):
    j = oracle.enumerate_joint(n)
    t = core.refined_table(n)
    assert j.first_counts() == t.counts
    assert j.euler_row() == core.euler_row(n).row
    for d in range(n):
        assert j.last_counts()[d] == tuple(core.refined_last(n, d, k) for k in range(1, n + 1))


@pytest.mark.parametrize("n", range(1, 14))
def test_dp_matches_tables(n):
    assert oracle.first_counts_by_dp(n) == core.refined_table(n).counts


def test_dp_cap():
    with pytest.raises(ResourceLimitError):
        oracle.first_counts_by_dp(16)


def test_permutation_array_order():
    a = oracle.permutation_array(3)
    assert a.tolist() == [list(p) for p in permutations((1, 2, 3))]
    b = oracle.permutation_array(4, first=2)
    assert b.shape == (6, 4) and (b[:, 0] == 2).all()
    assert np.array_equal(oracle.descents_of_array(a), [0, 1, 1, 1, 1, 2])


def test_linear_extension_examples():
    assert list(oracle.linear_extensions({(2, 1), (2, 3)}, 3)) == [(2, 1, 3), (2, 3, 1)]
    assert len(list(oracle.linear_extensions(set(), 3))) == 6
    assert list(oracle.linear_extensions({(1, 2), (2, 3)}, 3)) == [(1, 2, 3)]
    with pytest.raises(InvalidArgument):
        list(oracle.linear_extensions({(1, 2), (2, 1)}, 3))
    with pytest.raises(InvalidArgument):
        list(oracle.linear_extensions({(1, 2), (2, 3), (3, 1)}, 3))


def test_linear_extensions_closure_needed():
    # 1<2, 2<3 forces 1 before 3 even though (1, 3) is not listed
    ext = list(oracle.linear_extensions({(1, 2), (2, 3)}, 4))
    assert all(p.index(1) < p.index(3) for p in ext)
    assert len(ext) == 4


def test_descent_poly_examples():
    s3 = list(permutations((1, 2, 3)))
    assert oracle.descent_poly_of_set(s3) == Poly([1, 4, 1])
    assert oracle.descent_poly_of_set([(1, 2, 3)]) == Poly([1])
    ext = oracle.linear_extensions(oracle.star_poset(3, 2), 3)
    assert oracle.descent_poly_of_set(ext) == Poly([0, 2])
    with pytest.raises(InvalidArgument):
        oracle.descent_poly_of_set([(1, 2), (1, 2, 3)])


@pytest.mark.parametrize("n", range(1, 9))
def test_star_poset_polynomials(n):
    t = core.refined_table(n)
    for k in range(1, n + 1):
        ext = list(oracle.linear_extensions(oracle.star_poset(n, k), n))
        assert len(ext) == factorial(n - 1)
        assert oracle.descent_poly_of_set(ext) == Poly(t.column(k))


@pytest.mark.parametrize("n", range(2, 7))
def test_both_ends_poset(n):
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            if k == l:
                continue
            ext = list(oracle.linear_extensions(oracle.both_ends_poset(n, k, l), n))
            assert all(p[0] == k and p[-1] == l for p in ext)
            poly = oracle.descent_poly_of_set(ext) if ext else Poly()
            assert poly == Poly(core.both_ends(n, d, k, l) for d in range(n))
