import itertools

import numpy as np

from sskit.forms import (alternation_check, de_rham_evaluator, delta_evaluator,
                         delta_squared_residual, is_closed, is_normalized,
                         perm_sign, total_D)
from sskit.nerve import NerveModel


def test_perm_sign_matches_parity():
    for n in (2, 3, 4):
        for perm in itertools.permutations(range(n)):
            inv = sum(1 for i in range(n) for j in range(i + 1, n)
                      if perm[i] > perm[j])
            assert perm_sign(perm) == (-1) ** inv


def test_delta_evaluator_is_alternating_face_sum(algebra, rng):
    nm = NerveModel(algebra=algebra)
    n = algebra.dim
    C = rng.standard_normal((n, n))
    C = C - C.T

    def one_level(x, a, b):
        return float(a[:n] @ C @ b[:n])

    ev = delta_evaluator(nm, 1, lambda x, a, b: float(a @ C @ b))
    x = nm.random_point(2, rng)
    a, b = nm.random_tangent(2, rng), nm.random_tangent(2, rng)
    expected = 0.0
    for i in range(3):
        expected += ((-1) ** i) * nm.tangent_face(2, i, x, a) @ C \
            @ nm.tangent_face(2, i, x, b)
    assert abs(ev(x, a, b) - expected) <= 1e-12


def test_de_rham_of_constant_form_vanishes(abelian2, rng):
    # on an abelian group the bracket terms vanish and constant-coefficient
    # forms in left-trivialized coordinates are closed
    nm = NerveModel(algebra=abelian2)
    n = abelian2.dim
    C = rng.standard_normal((n, n))
    C = C - C.T
    d_ev = de_rham_evaluator(nm, 1, lambda x, a, b: float(a @ C @ b))
    x = nm.random_point(1, rng)
    vs = [nm.random_tangent(1, rng) for _ in range(3)]
    assert abs(d_ev(x, *vs)) <= 1e-8


def test_de_rham_squares_to_zero_on_so3(so3, rng):
    nm = NerveModel(algebra=so3)
    n = so3.dim
    c = rng.standard_normal(n)
    d1 = de_rham_evaluator(nm, 1, lambda x, a: float(c @ a))
    d2 = de_rham_evaluator(nm, 1, d1)
    x = nm.random_point(1, rng)
    vs = [nm.random_tangent(1, rng) for _ in range(3)]
    assert abs(d2(x, *vs)) <= 1e-6


def test_total_D_components(so3, rng):
    nm = NerveModel(algebra=so3)
    form = nm.shifted_form()
    D = total_D(form, 1e-4)
    # degree increases by one, shift stays; components one level further out
    assert D.shift == form.shift
    assert D.degree == form.degree + 1
    assert set(D.components) >= {1, 2, 3}


def test_nerve_form_closed_normalized_alternating(so3, rng):
    nm = NerveModel(algebra=so3)
    form = nm.shifted_form()
    closed = is_closed(form, rng, samples=3, h=1e-4)
    assert closed["max_delta_residual"] <= 1e-12
    assert closed["max_fd_residual"] <= 1e-6
    assert is_normalized(form, rng, samples=3)["max_residual"] <= 1e-12
    assert alternation_check(form, rng) <= 1e-10


def test_delta_squared_vanishes(algebra, rng):
    nm = NerveModel(algebra=algebra)
    assert delta_squared_residual(nm, 1, 2, rng) <= 1e-10
