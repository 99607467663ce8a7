import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sskit.simplicial import (IndexWord, codegeneracy, coface, compose,
                              dold_kan_compare, dold_kan_gamma, enumerate_shuffles,
                              epi_mono_factor, in_boundary, in_horn, is_monotone,
                              moore_complex, normalize_word, null_space,
                              permutation_sign, quotient_complex,
                              random_simplicial_vector_space, random_word,
                              standard_simplex, word_from_monotone)


# -- monotone-map calculus ----------------------------------------------------


def test_cosimplicial_identities():
    # delta_j delta_i = delta_i delta_{j-1} for i < j
    for n in range(1, 5):
        for j in range(n + 2):
            for i in range(j):
                lhs = compose(coface(n + 1, j), coface(n, i))
                rhs = compose(coface(n + 1, i), coface(n, j - 1))
                assert lhs == rhs
    # sigma_j sigma_i = sigma_i sigma_{j+1} for i <= j
    for n in range(4):
        for i in range(n + 1):
            for j in range(i, n + 1):
                lhs = compose(codegeneracy(n, i), codegeneracy(n + 1, j + 1))
                rhs = compose(codegeneracy(n, j), codegeneracy(n + 1, i))
                assert lhs == rhs


def test_epi_mono_factor_reconstructs_map():
    for n in range(4):
        for m in range(4):
            for f in itertools.product(range(n + 1), repeat=m + 1):
                if not is_monotone(f):
                    continue
                missed, doubled = epi_mono_factor(f, n)
                g = tuple(range(m + 1))
                lvl = m
                for j in reversed(doubled):
                    g = compose(codegeneracy(lvl - 1, j), g)
                    lvl -= 1
                for i in reversed(missed):
                    g = compose(coface(lvl + 1, i), g)
                    lvl += 1
                assert g == f


# -- operator words -----------------------------------------------------------


@given(st.integers(min_value=0, max_value=2 ** 31 - 1))
@settings(max_examples=200, deadline=None)
def test_normalize_word_preserves_semantics(seed):
    rng = np.random.default_rng(seed)
    w = random_word(rng, int(rng.integers(0, 5)), int(rng.integers(1, 8)), 4)
    nw = normalize_word(w)
    assert nw.to_monotone() == w.to_monotone()
    assert nw.target_level == w.target_level
    # normal form: faces (decreasing indices) before degeneracies (increasing)
    kinds = [k for k, _ in nw.ops]
    assert kinds == sorted(kinds)  # 'd' < 's'
    assert normalize_word(nw) == nw


def test_word_matrix_oracle(rng):
    V = random_simplicial_vector_space(rng, top=4, max_dim=5)
    for _ in range(300):
        w = random_word(rng, int(rng.integers(0, 5)), int(rng.integers(1, 7)), 4)
        A = V.word_matrix(w)
        B = V.word_matrix(normalize_word(w))
        assert A.shape == B.shape
        if A.size:
            assert np.max(np.abs(A - B)) <= 1e-10


def test_invalid_words_rejected():
    with pytest.raises(ValueError):
        IndexWord(level=0, ops=(("d", 0),))
    with pytest.raises(ValueError):
        IndexWord(level=1, ops=(("d", 2),))
    with pytest.raises(ValueError):
        IndexWord(level=1, ops=(("x", 0),))


def test_word_from_monotone_roundtrip():
    for f in standard_simplex(3, 2):
        w = word_from_monotone(f, 3)
        assert w.to_monotone() == f


# -- shuffles -------------------------------------------------------------------


@pytest.mark.parametrize("p,q", [(0, 0), (1, 2), (2, 2), (3, 1)])
def test_shuffle_count_and_signs(p, q):
    sh = enumerate_shuffles(p, q)
    assert len(sh) == math.comb(p + q, p)
    for s in sh:
        assert sorted(s.image) == list(range(p + q))
        assert list(s.first_block) == sorted(s.first_block)
        assert list(s.second_block) == sorted(s.second_block)
        assert s.sign in (-1, 1)
        assert s.sign == permutation_sign(s.image)
    assert sum(s.sign for s in enumerate_shuffles(1, 1)) == 0


def test_permutation_sign_matches_inversions():
    for perm in itertools.permutations(range(4)):
        inv = sum(1 for i in range(4) for j in range(i + 1, 4)
                  if perm[i] > perm[j])
        assert permutation_sign(perm) == (-1) ** inv


# -- simplices and horns ----------------------------------------------------------


def test_simplex_and_horn_counts():
    assert len(standard_simplex(2, 1)) == 6  # monotone [1] -> [2]
    bd = [f for f in standard_simplex(2, 2) if in_boundary(f, 2)]
    inner = [f for f in standard_simplex(2, 2) if not in_boundary(f, 2)]
    assert len(inner) == 1 and inner[0] == (0, 1, 2)
    for j in range(3):
        hn = [f for f in standard_simplex(2, 1) if in_horn(f, 2, j)]
        assert len(hn) < len(standard_simplex(2, 1))
        assert all(in_boundary(f, 2) for f in hn)
    assert len(bd) == len(standard_simplex(2, 2)) - 1


# -- Dold-Kan -----------------------------------------------------------------------


def test_null_space():
    A = np.array([[1.0, 1.0, 0.0]])
    N = null_space(A)
    assert N.shape[1] == 2
    assert np.max(np.abs(A @ N)) <= 1e-12


def test_moore_and_quotient_are_complexes(rng):
    for _ in range(10):
        V = random_simplicial_vector_space(rng, top=3, max_dim=5)
        cmp_ = dold_kan_compare(V)
        assert cmp_["dims_equal"]
        assert cmp_["homology_equal"]
        assert cmp_["moore_d2_residual"] <= 1e-10
        assert cmp_["quotient_d2_residual"] <= 1e-10


def test_dold_kan_gamma_realizes_chain_dims(rng):
    dims = [2, 1, 3]
    boundaries = {1: rng.standard_normal((2, 1)),
                  2: np.zeros((1, 3))}
    V = dold_kan_gamma(dims, boundaries, top=2)
    cx, _ = moore_complex(V)
    assert cx.dims == dims
    cq, _ = quotient_complex(V)
    assert cq.dims == dims
