import json

import numpy as np
import pytest
from scipy.linalg import expm

from sskit.liealg import (LieAlgebra, builtin_algebra, load_algebra,
                          structure_constants_from_rep)

BUILTINS = ["abelian-1", "abelian-3", "so3", "aff1-double", "sl2c-iwasawa"]


@pytest.mark.parametrize("name", BUILTINS)
def test_builtin_structural_checks(name):
    alg = builtin_algebra(name)
    assert alg.antisymmetry_residual() <= 1e-12
    assert alg.jacobi_residual() <= 1e-12
    assert alg.rep_residual() <= 1e-12
    q = alg.check_quadratic()
    assert q["ad_invariance_residual"] <= 1e-12
    assert q["nondegenerate"]


@pytest.mark.parametrize("name", BUILTINS)
def test_exp_log_roundtrip(name, rng):
    alg = builtin_algebra(name)
    for _ in range(5):
        a = alg.random_vector(rng, 0.4)
        assert np.max(np.abs(alg.log(alg.exp(a)) - a)) <= 1e-10


@pytest.mark.parametrize("name", ["so3", "aff1-double", "sl2c-iwasawa"])
def test_Ad_is_group_homomorphism(name, rng):
    alg = builtin_algebra(name)
    g = alg.random_group_element(rng)
    h = alg.random_group_element(rng)
    assert np.max(np.abs(alg.Ad(g @ h) - alg.Ad(g) @ alg.Ad(h))) <= 1e-10


@pytest.mark.parametrize("name", ["so3", "sl2c-iwasawa"])
def test_Ad_exp_equals_exp_ad(name, rng):
    alg = builtin_algebra(name)
    a = alg.random_vector(rng, 0.3)
    assert np.max(np.abs(alg.Ad(alg.exp(a)) - expm(alg.ad(a)))) <= 1e-10


@pytest.mark.parametrize("name", ["so3", "aff1-double", "sl2c-iwasawa"])
def test_pairing_Ad_invariant(name, rng):
    alg = builtin_algebra(name)
    g = alg.random_group_element(rng)
    u, v = alg.random_vector(rng), alg.random_vector(rng)
    assert abs(alg.pair(alg.Ad(g) @ u, alg.Ad(g) @ v) - alg.pair(u, v)) <= 1e-10


def test_bracket_matches_rep_commutator(rng):
    alg = builtin_algebra("so3")
    u, v = alg.random_vector(rng), alg.random_vector(rng)
    comm = alg.to_matrix(u) @ alg.to_matrix(v) - alg.to_matrix(v) @ alg.to_matrix(u)
    assert np.max(np.abs(alg.to_matrix(alg.bracket(u, v)) - comm)) <= 1e-12


def test_left_right_trivialize(rng):
    alg = builtin_algebra("so3")
    g = alg.random_group_element(rng)
    a = alg.random_vector(rng)
    V = g @ alg.to_matrix(a)
    assert np.max(np.abs(alg.left_trivialize(g, V) - a)) <= 1e-10
    assert np.max(np.abs(alg.right_trivialize(g, V) - alg.Ad(g) @ a)) <= 1e-10


def test_from_matrix_rejects_off_algebra():
    alg = builtin_algebra("so3")
    with pytest.raises(ValueError):
        alg.from_matrix(np.eye(3))


def test_config_roundtrip_via_file(tmp_path):
    alg = builtin_algebra("aff1-double")
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(alg.to_config()))
    loaded = load_algebra(str(path))
    assert loaded.dim == alg.dim
    assert np.max(np.abs(loaded.structure_constants - alg.structure_constants)) == 0.0
    assert np.max(np.abs(loaded.rep - alg.rep)) == 0.0


def test_structure_constants_from_rep_rejects_nonclosed():
    rep = np.zeros((2, 2, 2))
    rep[0] = [[0.0, 1.0], [0.0, 0.0]]
    rep[1] = [[0.0, 0.0], [1.0, 0.0]]
    # the commutator is diagonal, outside the span of the two basis matrices
    with pytest.raises(ValueError):
        structure_constants_from_rep(rep)


def test_invalid_structure_constants_rejected():
    C = np.zeros((1, 1, 1))
    C[0, 0, 0] = 1.0  # not antisymmetric
    with pytest.raises(ValueError):
        LieAlgebra(name="bad", dim=1, structure_constants=C,
                   rep=np.zeros((1, 1, 1)))


def test_unknown_builtin():
    with pytest.raises(KeyError):
        builtin_algebra("nope")
