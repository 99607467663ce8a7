import numpy as np
import pytest

from sskit.forms import delta_evaluator
from sskit.nerve import NerveModel


def test_simplicial_identities(algebra, rng):
    nm = NerveModel(algebra=algebra)
    assert nm.simplicial_identity_residual(rng, samples=3) <= 1e-10


def test_two_form_antisymmetric(so3, rng):
    nm = NerveModel(algebra=so3)
    x = nm.random_point(2, rng)
    v, w = nm.random_tangent(2, rng), nm.random_tangent(2, rng)
    assert abs(nm.omega(x, v, w) + nm.omega(x, w, v)) <= 1e-12
    assert abs(nm.omega(x, v, v)) <= 1e-12


def test_three_form_totally_antisymmetric(so3, rng):
    nm = NerveModel(algebra=so3)
    x = nm.random_point(1, rng)
    u, v, w = (nm.random_tangent(1, rng) for _ in range(3))
    base = nm.theta(x, u, v, w)
    assert abs(base + nm.theta(x, v, u, w)) <= 1e-12
    assert abs(base + nm.theta(x, u, w, v)) <= 1e-12
    assert abs(base - nm.theta(x, v, w, u)) <= 1e-12


def test_three_form_is_invariant_cartan_value(so3, rng):
    nm = NerveModel(algebra=so3)
    x = nm.random_point(1, rng)
    u, v, w = (nm.random_tangent(1, rng) for _ in range(3))
    assert abs(nm.theta(x, u, v, w) - so3.cartan_3form(u, v, w)) <= 1e-12


def test_delta_of_two_form_vanishes_exactly(algebra, rng):
    nm = NerveModel(algebra=algebra)
    ev = delta_evaluator(nm, 2, nm.omega)
    for _ in range(3):
        x = nm.random_point(3, rng)
        v, w = nm.random_tangent(3, rng), nm.random_tangent(3, rng)
        assert abs(ev(x, v, w)) <= 1e-12


def test_two_form_vanishes_on_degenerate_points(so3, rng):
    nm = NerveModel(algebra=so3)
    x = nm.random_point(1, rng)
    v, w = nm.random_tangent(1, rng), nm.random_tangent(1, rng)
    for j in range(2):
        y = nm.degeneracy(1, j, x)
        sv = nm.tangent_degeneracy(1, j, x, v)
        sw = nm.tangent_degeneracy(1, j, x, w)
        assert abs(nm.omega(y, sv, sw)) <= 1e-12


def test_van_est_matrix_is_minus_pairing(algebra):
    nm = NerveModel(algebra=algebra)
    assert np.max(np.abs(nm.van_est_matrix() + algebra.pairing)) <= 1e-12


def test_abelian_form_closed_under_fd(abelian2, rng):
    # on an abelian group even the finite-difference components vanish to
    # rounding, since the form has constant coefficients
    nm = NerveModel(algebra=abelian2)
    from sskit.forms import is_closed

    closed = is_closed(nm.shifted_form(), rng, samples=3, h=1e-4)
    assert closed["max_delta_residual"] <= 1e-12
    assert closed["max_fd_residual"] <= 1e-9
