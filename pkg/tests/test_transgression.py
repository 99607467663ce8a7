import numpy as np
import pytest

from sskit.liealg import builtin_algebra
from sskit.transgression import (NervePathSpace, delta_identity_residual,
                                 quadrature_order, transgression_identities,
                                 transgression_oracles)
from sskit.nerve import NerveModel


def test_straight_path_oracles(algebra, rng):
    orc = transgression_oracles(algebra, 24, rng)
    assert orc["straight_path_coordinate"] <= 1e-10
    assert orc["straight_path_cartan"] <= 1e-10


def test_simplicial_compatibility_exact(so3, rng):
    nm = NerveModel(algebra=so3)
    ps = NervePathSpace(model=nm, R=12)
    assert delta_identity_residual(ps, 2, nm.omega, 2, rng, samples=2) <= 1e-10


def test_differential_compatibility_abelian(abelian2, rng):
    ids = transgression_identities(abelian2, 36, rng, samples=2)
    assert ids["max_d_residual"] <= 1e-8
    assert ids["max_delta_residual"] <= 1e-10


def test_quadrature_second_order(so3, rng):
    assert quadrature_order(so3, rng) >= 1.9


def test_path_space_velocity_consistency(so3, rng):
    # velocity of a geodesic path is the constant generator
    nm = NerveModel(algebra=so3)
    ps = NervePathSpace(model=nm, R=16)
    a = so3.random_vector(rng, 0.5)
    ts = np.arange(17) / 16
    samples = np.stack([so3.exp(t * a) for t in ts])[:, None]
    p = ps.make(samples)
    assert np.max(np.abs(p.velocity - a)) <= 1e-12


def test_resolution_floor():
    nm = NerveModel(algebra=builtin_algebra("so3"))
    with pytest.raises(ValueError):
        NervePathSpace(model=nm, R=2)
