import random
from fractions import Fraction
from itertools import combinations

import flint
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ekrdeg.families import SetFamily, complete, fano, random_family, random_intersecting_family, star
from ekrdeg.scheme import (
    InconsistencyError, disjoint_quadratic_form, eigenspace_dim, inclusion_matrix,
    kneser_adjacency, kneser_eigenvalue, kneser_quadratic, moment, spectral_profile,
    wtw_eigenvalue,
)
from ekrdeg.subsets import binom, iter_masks

from oracles import (
    brute_disjoint_pair_sum, brute_degree, gram_profile, intersection_fn_matrix, star_idempotents,
)


def _spectrum(M):
    vals = np.linalg.eigvalsh(M.astype(float))
    out = {}
    for v in vals:
        key = int(round(v))
        assert abs(v - key) < 1e-6
        out[key] = out.get(key, 0) + 1
    return out


def test_kneser_eigenvalue_examples():
    assert kneser_eigenvalue(5, 2, 1) == -2
    assert kneser_eigenvalue(6, 3, 0) == 1
    for k in range(1, 8):
        assert kneser_eigenvalue(2 * k, k, k) == (-1) ** k


def test_eigenspace_dim_examples():
    assert eigenspace_dim(5, 1) == 4
    assert eigenspace_dim(11, 0) == 1
    for n in range(0, 30):
        for k in range(0, n // 2 + 1):
            assert sum(eigenspace_dim(n, i) for i in range(k + 1)) == binom(n, k)


def test_petersen_float_crosscheck():
    spec = _spectrum(kneser_adjacency(5, 2))
    assert spec == {3: 1, -2: 4, 1: 5}
    assert spec[kneser_eigenvalue(5, 2, 1)] == eigenspace_dim(5, 1)


@pytest.mark.parametrize("n,k", [(6, 2), (7, 3), (8, 3), (8, 4), (9, 3)])
def test_kneser_spectrum_float_crosscheck(n, k):
    expected = {}
    for i in range(k + 1):
        lam = kneser_eigenvalue(n, k, i)
        expected[lam] = expected.get(lam, 0) + eigenspace_dim(n, i)
    assert _spectrum(kneser_adjacency(n, k)) == expected


def test_wtw_examples():
    W = inclusion_matrix(5, 1, 2)
    assert _spectrum(W.T @ W) == {8: 1, 3: 4, 0: 5}
    assert wtw_eigenvalue(5, 2, 1, 1) == 3
    for n, k in [(6, 3), (9, 4), (20, 7)]:
        assert wtw_eigenvalue(n, k, k, 0) == 1
        assert wtw_eigenvalue(n, k, 1, 2) == 0


def test_triangularity_exhaustive():
    for k in range(0, 13):
        for n in range(2 * k, 41):
            for i in range(k + 1):
                assert wtw_eigenvalue(n, k, i, i) == binom(n - 2 * i, k - i) > 0
                for j in range(i + 1, k + 1):
                    assert wtw_eigenvalue(n, k, i, j) == 0


def test_moment_examples():
    F = fano()
    assert moment(F, 0) == len(F) ** 2
    assert moment(F, 3) == len(F)
    one = SetFamily.from_sets(9, [[2, 3, 7, 9]])
    # the only ordered pair is (S, S), contributing C(k, i)
    assert [moment(one, i) for i in range(5)] == [binom(4, i) for i in range(5)]
    assert moment(one, 4) == 1


def test_profile_examples():
    assert spectral_profile(star(5, 2, [1])).norms == (Fraction(8, 5), Fraction(12, 5), 0)
    one = SetFamily.from_sets(5, [[1, 2]])
    assert spectral_profile(one).norms == (Fraction(1, 10), Fraction(2, 5), Fraction(1, 2))
    assert [eigenspace_dim(5, j) / Fraction(10) for j in range(3)] == list(spectral_profile(one).norms)
    for n, k in [(4, 2), (9, 3), (12, 6)]:
        assert spectral_profile(complete(n, k)).norms == (binom(n, k),) + (0,) * k


@pytest.mark.parametrize("members,n", [([[1, 2]], 5), ([[1, 2], [1, 3], [1, 4], [1, 5]], 5),
                                        ([[1, 2, 3], [3, 4, 5], [1, 5, 6]], 7)])
def test_profile_matches_gram_oracle_small(members, n):
    F = SetFamily.from_sets(n, members)
    assert list(spectral_profile(F).norms) == gram_profile(n, F.uniform_k, members)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(6, 2), (7, 3), (8, 3), (8, 4), (9, 2), (10, 3)]), st.randoms(use_true_random=False))
def test_profile_invariants_and_oracle(nk, rnd):
    n, k = nk
    F = random_family(n, k, rnd)
    prof = spectral_profile(F)
    assert all(prof.invariant_checks().values())
    assert list(prof.norms) == gram_profile(n, k, [m.elements for m in F.members])


def test_profile_rejects_degenerate():
    with pytest.raises(ValueError):
        spectral_profile(SetFamily.from_sets(5, [[1, 2, 3]]))
    with pytest.raises(ValueError):
        spectral_profile(SetFamily.from_sets(5, [[1, 2, 3], [1]]))


def test_kneser_quadratic_examples():
    assert kneser_quadratic(fano()) == (0, 0)
    assert kneser_quadratic(complete(4, 2)) == (6, 6)
    assert kneser_quadratic(SetFamily.from_sets(4, [[1, 2], [3, 4]])) == (2, 2)


def test_kneser_quadratic_mismatch_is_fatal():
    F = star(7, 3, [1])
    bad = spectral_profile(F)
    bad = type(bad)(bad.n, bad.k, (bad.norms[0] + 1,) + bad.norms[1:], bad.family_size)
    with pytest.raises(InconsistencyError):
        kneser_quadratic(F, bad)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([(6, 3), (7, 2), (8, 3), (9, 4), (11, 3), (12, 5)]), st.booleans(),
       st.randoms(use_true_random=False))
def test_kneser_quadratic_two_routes(nk, inter, rnd):
    n, k = nk
    F = random_intersecting_family(n, k, rnd) if inter else random_family(n, k, rnd)
    comb_, spec = kneser_quadratic(F)
    assert comb_ == spec
    if inter:
        assert comb_ == 0


def _brute_dqf(F, d):
    members = [m.elements for m in F.members]
    return brute_disjoint_pair_sum(F.n, d, lambda S: brute_degree(members, S))


def test_disjoint_quadratic_examples():
    one = SetFamily.from_sets(7, [[1, 2, 3]])
    for d in range(3):
        direct, spectral = disjoint_quadratic_form(one, d)
        assert direct == spectral == _brute_dqf(one, d)
    F = star(7, 3, [1])
    assert disjoint_quadratic_form(F, 2)[0] == _brute_dqf(F, 2)
    G = fano()
    assert disjoint_quadratic_form(G, 0) == (49, 49)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(6, 3), (7, 3), (8, 3), (8, 4), (9, 4)]), st.randoms(use_true_random=False), st.data())
def test_disjoint_quadratic_vs_brute(nk, rnd, data):
    n, k = nk
    d = data.draw(st.integers(0, k - 1))
    F = random_family(n, k, rnd)
    direct, spectral = disjoint_quadratic_form(F, d)
    assert direct == spectral == _brute_dqf(F, d)


def _small_schemes(limit):
    return [(n, k) for k in range(1, 8) for n in range(2 * k, 64) if binom(n, k) <= limit]


def _fmpq(M):
    M = np.asarray(M)
    return flint.fmpq_mat(M.shape[0], M.shape[1], [int(x) for x in M.ravel()])


@pytest.mark.parametrize("n,k", _small_schemes(200))
def test_matrix_level_idempotents(n, k):
    E = star_idempotents(n, k)
    N = binom(n, k)
    ident = _fmpq(np.eye(N, dtype=np.int64))
    total = E[0]
    for j in range(1, k + 1):
        total = total + E[j]
    assert total == ident
    for j in range(k + 1):
        assert sum(E[j][t, t] for t in range(N)) == eigenspace_dim(n, j)
    for i in range(k + 1):
        M = intersection_fn_matrix(n, k, lambda m, i=i: binom(m, i))
        rhs = E[0] * wtw_eigenvalue(n, k, i, 0)
        for j in range(1, k + 1):
            rhs = rhs + E[j] * wtw_eigenvalue(n, k, i, j)
        assert M == rhs
    A = _fmpq(kneser_adjacency(n, k))
    rhs = E[0] * kneser_eigenvalue(n, k, 0)
    for j in range(1, k + 1):
        rhs = rhs + E[j] * kneser_eigenvalue(n, k, j)
    assert A == rhs


@pytest.mark.parametrize("n,k", _small_schemes(200))
def test_inclusion_product_identity(n, k):
    # W_{i,k} W_{j,k}^T = sum_l C(n-i-j, n-k-l) W_{l,i}^T W_{l,j}
    W = {(a, b): inclusion_matrix(n, a, b) for b in range(k + 1) for a in range(b + 1)}
    for i in range(k + 1):
        for j in range(i + 1):
            lhs = W[i, k] @ W[j, k].T
            rhs = sum(binom(n - i - j, n - k - l) * (W[l, i].T @ W[l, j]) for l in range(j + 1))
            assert np.array_equal(lhs, rhs)


def test_inclusion_matrix_shape():
    W = inclusion_matrix(6, 2, 3)
    assert W.shape == (15, 20)
    assert (W.sum(axis=0) == 3).all() and (W.sum(axis=1) == 4).all()
