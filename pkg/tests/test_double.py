import numpy as np
import pytest

from sskit.double import FiniteDoubleModel, LoopDoubleModel
from sskit.liealg import builtin_algebra


def test_finite_model_closedness(algebra, rng):
    fd = FiniteDoubleModel(algebra=algebra)
    rep = fd.closedness_report(rng, samples=2, h=1e-4)
    assert rep["max_exact_residual"] <= 1e-10
    assert rep["max_fd_residual"] <= 1e-6


def test_finite_model_differential_squares_to_zero(so3, rng):
    fd = FiniteDoubleModel(algebra=so3)
    assert fd.d_squared_residual(rng, samples=2, h=1e-4) <= 1e-6


def test_exact_component_equations_any_group(so3, rng):
    dm = LoopDoubleModel(algebra=so3, M=12)
    res = dm.verify(rng=rng, samples=2, h=1e-4)
    assert res["eq1_delta_v_alpha"] <= 1e-10
    assert res["eq4_delta_h_tr_omega"] <= 1e-10


def test_all_component_equations_abelian(abelian2, rng):
    dm = LoopDoubleModel(algebra=abelian2, M=12)
    res = dm.verify(rng=rng, samples=2, h=1e-4)
    for key, val in res.items():
        assert val <= 1e-8, (key, val)


def test_component_equations_converge(so3, rng):
    fine = LoopDoubleModel(algebra=so3, M=24)
    fx = fine.make_fixtures(rng, samples=2)
    coarse = LoopDoubleModel(algebra=so3, M=12).verify(fixtures=fx, h=1e-4)
    refined = fine.verify(fixtures=fx, h=1e-4)
    for key in ("eq2_eta", "eq3_omega", "eq5_ev02", "eq6_ev01"):
        assert refined[key] <= 0.75 * coarse[key] + 1e-10, key


def test_vertical_faces_are_the_path_endpoints(so3, rng):
    dm = LoopDoubleModel(algebra=so3, M=12)
    cell = dm.random_loop_cell(rng)
    src, _ = dm.v_source(cell)
    tgt, _ = dm.v_target(cell)
    M = dm.M
    # source is the first half, target the reversed second half
    assert np.max(np.abs(src.samples[0] - cell.samples[0])) <= 1e-12
    assert np.max(np.abs(src.samples[M] - cell.samples[M])) <= 1e-12
    assert np.max(np.abs(tgt.samples[0] - cell.samples[2 * M])) <= 1e-12
    assert np.max(np.abs(tgt.samples[M] - cell.samples[M])) <= 1e-12


def test_vertical_composition_matches_constraint(so3, rng):
    dm = LoopDoubleModel(algebra=so3, M=12)
    c1, c2, a1, a2 = dm.random_composable_pair(rng)
    M = dm.M
    # the pair satisfies the gluing constraint c1(j) = c2(2M - j), j <= M
    for j in range(M + 1):
        assert np.max(np.abs(c1.samples[j] - c2.samples[2 * M - j])) <= 1e-10
    glued = dm.m_v(c1, c2)
    assert np.max(np.abs(glued.samples[:M + 1] - c2.samples[:M + 1])) <= 1e-12
    assert np.max(np.abs(glued.samples[M:] - c1.samples[M:])) <= 1e-12
