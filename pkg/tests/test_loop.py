import numpy as np
import pytest

from sskit.forms import delta_evaluator, is_normalized
from sskit.grids import (loop_velocity, path_velocity, random_loop, random_path,
                         sbp_residual, trapezoid_weights)
from sskit.liealg import builtin_algebra
from sskit.loop import LoopModel
from sskit.tangent import rank_formula_check, tangent_complex


def test_trapezoid_weights_integrate_linear():
    N = 10
    w = trapezoid_weights(N)
    xs = np.arange(N + 1) / N
    assert abs(np.sum(w * xs) / N - 0.5) <= 1e-12
    assert abs(np.sum(w) / N - 1.0) <= 1e-12


def test_summation_by_parts(rng):
    # the discrete product rule: sum of weights * (u'v + uv') telescopes to
    # the boundary values
    assert sbp_residual(24, rng) <= 1e-12


def test_velocity_oracle_on_straight_path(rng):
    alg = builtin_algebra("so3")
    a = alg.random_vector(rng, 0.5)
    N = 16
    samples = np.stack([alg.exp((j / N) * a) for j in range(N + 1)])
    from sskit.grids import GridPath

    vel = path_velocity(GridPath(alg, samples))
    assert np.max(np.abs(vel - a)) <= 1e-12


def test_loop_velocity_periodic(rng):
    alg = builtin_algebra("abelian-2")
    N = 12
    loop = random_loop(alg, N, rng)
    vel = loop_velocity(loop)
    # one velocity per distinct node of the periodic grid
    assert vel.shape == (N, alg.dim)
    assert np.all(np.isfinite(vel))


def test_simplicial_identities(so3, rng):
    lm = LoopModel(algebra=so3, R=12)
    assert lm.simplicial_identity_residual(rng, samples=1) <= 1e-10


def test_tangent_homology_is_algebra_in_degree_one(so3):
    lm = LoopModel(algebra=so3, R=12)
    cx, _ = tangent_complex(lm)
    hdims = [cx.homology_dim(l) for l in range(cx.top + 1)]
    assert hdims[:3] == [0, so3.dim, 0]
    assert all(h == 0 for h in hdims[3:])


def test_rank_formula(so3):
    lm = LoopModel(algebra=so3, R=12)
    assert rank_formula_check(lm)["match"]


def test_segal_form_simplicial_differential_abelian(abelian2, rng):
    lm = LoopModel(algebra=abelian2, R=12)
    ev = delta_evaluator(lm, 2, lm.segal_form)
    for _ in range(2):
        x = lm.random_point(3, rng)
        v, w = lm.random_tangent(3, rng), lm.random_tangent(3, rng)
        assert abs(ev(x, v, w)) <= 1e-10


def test_segal_form_normalized(so3, rng):
    lm = LoopModel(algebra=so3, R=12)
    assert is_normalized(lm.shifted_form(), rng, samples=2)["max_residual"] <= 1e-10


def test_evaluation_is_a_chain_map(so3, rng):
    # evaluating a path/loop point commutes with the simplicial faces
    from sskit.nerve import NerveModel

    lm = LoopModel(algebra=so3, R=12)
    nm = NerveModel(algebra=so3)
    for level in (1, 2):
        x = lm.random_point(level, rng)
        v = lm.random_tangent(level, rng)
        for i in range(level + 1):
            a = nm.tangent_face(level, i, lm.ev_point(level, x),
                                lm.ev_tangent(level, x, v))
            b = lm.ev_tangent(level - 1, lm.face(level, i, x),
                              lm.tangent_face(level, i, x, v))
            if np.asarray(a).size:
                assert np.max(np.abs(a - b)) <= 1e-9
            assert nm.point_close(level - 1,
                                  nm.face(level, i, lm.ev_point(level, x)),
                                  lm.ev_point(level - 1, lm.face(level, i, x)),
                                  atol=1e-9)


def test_base_point_and_translate_consistency(so3, rng):
    lm = LoopModel(algebra=so3, R=12)
    x = lm.random_point(2, rng)
    v = lm.random_tangent(2, rng)
    y = lm.translate(2, x, v, 0.0)
    assert lm.point_close(2, x, y, atol=1e-12)
