import json

import numpy as np
import pytest

from sskit.forms import de_rham_evaluator, delta_evaluator
from sskit.manin import (GammaElement, ManinModel, builtin_triple,
                         gamma_complete, load_triple, m_h, m_v)
from sskit.nerve import NerveModel

TRIPLES = ["aff1-double", "sl2c-iwasawa"]


@pytest.fixture(params=TRIPLES)
def triple(request):
    return builtin_triple(request.param)


def test_builtin_triples_are_manin_triples(triple):
    rep = triple.check()
    assert rep["is_manin_triple"]
    assert rep["plus_closure_residual"] <= 1e-12
    assert rep["minus_closure_residual"] <= 1e-12
    assert rep["plus_isotropy_residual"] <= 1e-12
    assert rep["minus_isotropy_residual"] <= 1e-12


@pytest.mark.parametrize("order", ["plus-minus", "minus-plus"])
def test_factorize_roundtrip(triple, order, rng):
    alg = triple.algebra
    g = alg.random_group_element(rng, scale=0.3)
    E1, E2 = triple.factorize(g, order=order)
    assert np.max(np.abs(E1 @ E2 - g)) <= 1e-10


def test_factorize_diverges_gracefully():
    triple = builtin_triple("aff1-double")
    with pytest.raises(RuntimeError):
        triple.factorize(triple.algebra.exp(
            np.array([40.0, 40.0, 40.0, 40.0])), tol=1e-12)


def test_gamma_complete_satisfies_constraint(triple, rng):
    kp = triple.plus_basis.shape[1]
    km = triple.minus_basis.shape[1]
    for _ in range(5):
        h1 = triple.exp_plus(rng.standard_normal(kp) * 0.3)
        a2 = triple.exp_minus(rng.standard_normal(km) * 0.3)
        xi = gamma_complete(triple, h1, a2)
        assert xi.constraint_residual() <= 1e-10


def test_multiplications_and_interchange(triple, rng):
    kp = triple.plus_basis.shape[1]
    km = triple.minus_basis.shape[1]

    def random_element():
        return gamma_complete(triple,
                              triple.exp_plus(rng.standard_normal(kp) * 0.25),
                              triple.exp_minus(rng.standard_normal(km) * 0.25))

    def h_neighbor(x):
        a1 = triple.exp_minus(rng.standard_normal(km) * 0.25)
        a2, h1 = triple.factorize(x.h1 @ a1, order="minus-plus")
        return GammaElement(h2=x.h1, a2=a2, a1=a1, h1=h1)

    def corner(h2, a2):
        a1, p = triple.factorize(np.linalg.inv(h2) @ a2, order="minus-plus")
        return GammaElement(h2=h2, a2=a2, a1=a1, h1=np.linalg.inv(p))

    x11 = random_element()
    x12 = h_neighbor(x11)
    x21 = gamma_complete(triple,
                         triple.exp_plus(rng.standard_normal(kp) * 0.25),
                         x11.a1)
    x22 = corner(x21.h1, x12.a1)
    for xi in (m_h(x11, x12), m_v(x11, x21), m_h(x21, x22), m_v(x12, x22)):
        assert xi.constraint_residual() <= 1e-10
    left = m_v(m_h(x11, x12), m_h(x21, x22))
    right = m_h(m_v(x11, x21), m_v(x12, x22))
    for slot in ("h2", "a2", "a1", "h1"):
        assert np.max(np.abs(getattr(left, slot) - getattr(right, slot))) <= 1e-9


def test_model_simplicial_identities(triple, rng):
    mm = ManinModel(triple=triple)
    assert mm.simplicial_identity_residual(rng, samples=2) <= 1e-9


def test_comparison_identity(triple, rng):
    mm = ManinModel(triple=triple)
    nm = NerveModel(algebra=triple.algebra)
    delta_beta = delta_evaluator(mm, 1, mm.beta)
    d_beta = de_rham_evaluator(mm, 1, mm.beta, 1e-4)
    for _ in range(5):
        x = mm.random_point(2, rng)
        a, b = mm.random_tangent(2, rng), mm.random_tangent(2, rng)
        val = mm.omega_bar(x, a, b)
        val -= nm.omega(mm.phi_point(2, x), mm.phi_tangent(2, x, a),
                        mm.phi_tangent(2, x, b))
        val -= delta_beta(x, a, b)
        assert abs(val) <= 1e-10

        y = mm.random_point(1, rng)
        u, v, w = (mm.random_tangent(1, rng) for _ in range(3))
        val = nm.theta(mm.phi_point(1, y), mm.phi_tangent(1, y, u),
                       mm.phi_tangent(1, y, v), mm.phi_tangent(1, y, w))
        val += d_beta(y, u, v, w)
        assert abs(val) <= 1e-6


def test_load_triple_from_file(tmp_path):
    triple = builtin_triple("aff1-double")
    path = tmp_path / "triple.json"
    path.write_text(json.dumps(triple.to_config()))
    loaded = load_triple(str(path))
    assert loaded.check()["is_manin_triple"]
    assert np.max(np.abs(loaded.plus_basis - triple.plus_basis)) == 0.0
