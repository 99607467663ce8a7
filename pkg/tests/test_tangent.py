import numpy as np
import pytest

from sskit.liealg import builtin_algebra
from sskit.model import LinearModel
from sskit.nerve import NerveModel
from sskit.simplicial import random_simplicial_vector_space
from sskit.tangent import (structural_pairing_properties, im_pairing, im_pairing_matrix,
                           nondegeneracy_check, random_multiplicative_form,
                           rank_formula_check, tangent_complex,
                           tangent_complex_quotient)


def test_nerve_tangent_homology(algebra):
    nm = NerveModel(algebra=algebra)
    cx, _ = tangent_complex(nm)
    hdims = [cx.homology_dim(l) for l in range(cx.top + 1)]
    assert hdims[0] == 0
    assert hdims[1] == algebra.dim
    assert all(h == 0 for h in hdims[2:])


def test_kernel_and_quotient_complexes_agree(so3):
    nm = NerveModel(algebra=so3)
    cx1, _ = tangent_complex(nm)
    cx2, _ = tangent_complex_quotient(nm)
    assert cx1.dims == cx2.dims
    for l in range(cx1.top + 1):
        assert cx1.homology_dim(l) == cx2.homology_dim(l)


def test_rank_formula_on_nerve(algebra):
    assert rank_formula_check(NerveModel(algebra=algebra))["match"]


def test_pairing_value_on_nerve(so3, rng):
    nm = NerveModel(algebra=so3)
    cx, bases = tangent_complex(nm)
    v = bases[1] @ rng.standard_normal(cx.dims[1])
    w = bases[1] @ rng.standard_normal(cx.dims[1])
    lam = im_pairing(nm, nm.omega, 2, 1, v, w)
    assert abs(lam - 2 * so3.pair(v, w)) <= 1e-12


def test_pairing_matrix_symmetric_for_shifted_two_form(so3, rng):
    nm = NerveModel(algebra=so3)
    E = np.eye(so3.dim)
    M = im_pairing_matrix(nm, nm.omega, 2, 1, E, E)
    assert np.max(np.abs(M - 2 * so3.pairing)) <= 1e-12


def test_nondegeneracy_verdicts(so3, rng):
    nm = NerveModel(algebra=so3)
    good = nondegeneracy_check(nm, nm.omega, m=2, rng=rng)
    assert good["nondegenerate"]
    assert good["min_singular_value"] >= 1e-3 * good["max_singular_value"]
    zero = nondegeneracy_check(nm, lambda x, a, b: 0.0, m=2, rng=rng)
    assert not zero["nondegenerate"]


def test_structural_pairing_properties_on_nerve(so3, rng):
    nm = NerveModel(algebra=so3)
    rep = structural_pairing_properties(nm, nm.omega, 2, rng, samples=3)
    assert rep["degenerate_vanishing"] <= 1e-10
    assert rep["boundary_compatibility"] <= 1e-10
    assert rep["gauge_invariance"] <= 1e-8
    assert rep["max_residual"] <= 1e-8


def test_random_multiplicative_forms_satisfy_constraints(rng):
    found = 0
    tries = 0
    while found < 5 and tries < 100:
        tries += 1
        V = random_simplicial_vector_space(rng, top=3, max_dim=4)
        A = random_multiplicative_form(V, 2, rng)
        if A is None or np.max(np.abs(A)) < 1e-12:
            continue
        found += 1
        assert np.max(np.abs(A + A.T)) <= 1e-10
        # simplicial differential of the level-2 component vanishes
        lin = LinearModel(V=V)
        from sskit.forms import delta_evaluator

        ev = delta_evaluator(lin, 2, lambda x, a, b: float(a @ A @ b))
        x = lin.random_point(3, rng)
        u, v = lin.random_tangent(3, rng), lin.random_tangent(3, rng)
        assert abs(ev(x, u, v)) <= 1e-9
        # vanishing on degenerate tangents
        for j in range(2):
            s = V.degeneracy[(1, j)]
            a = s @ lin.random_tangent(1, rng)
            b = s @ lin.random_tangent(1, rng)
            assert abs(a @ A @ b) <= 1e-9
    assert found >= 5


def test_structural_pairing_properties_on_synthetic_form(rng):
    found = False
    for _ in range(50):
        V = random_simplicial_vector_space(rng, top=3, max_dim=4)
        A = random_multiplicative_form(V, 2, rng)
        if A is None or np.max(np.abs(A)) < 1e-12:
            continue
        lin = LinearModel(V=V)
        rep = structural_pairing_properties(lin, lambda x, a, b: float(a @ A @ b),
                                            2, rng, samples=3)
        assert rep["max_residual"] <= 1e-8
        found = True
        break
    assert found
