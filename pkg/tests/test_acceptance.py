"""Acceptance gate: every shipped guarantee of the verification harness,
one test per criterion, each printing a single pass/fail line.

Exact identities are accepted at the stated absolute tolerance; discretized
identities must either converge at the stated order across the grid family or
already sit at machine zero on every grid (which is strictly stronger).
"""

import time

import numpy as np

from sskit.liealg import builtin_algebra
from sskit.model import LinearModel
from sskit.nerve import NerveModel
from sskit.report import (DEFAULT_SEED, RunConfig,
                          double_group_equivalence_residuals, fit_order,
                          path_space_equivalence_residuals, run_double,
                          run_hypercover, run_imform, run_nerve,
                          run_simplicial, segal_form_closedness_residuals)
from sskit.simplicial import random_simplicial_vector_space
from sskit.tangent import random_multiplicative_form, structural_pairing_properties
from sskit.transgression import transgression_identities


def _line(num: int, name: str, ok: bool) -> None:
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {name}")


def _by_label(report: dict) -> dict:
    return {c["label"]: c for c in report["checks"]}


def _ok_order(grids, residuals, min_order: float, exact_tol: float) -> bool:
    if max(residuals) <= exact_tol:
        return True
    order = fit_order(grids, residuals)
    return order is not None and order >= min_order


def test_criterion_01_nerve_closedness():
    t0 = time.perf_counter()
    ok = True
    for name in ("so3", "aff1-double"):
        rep = _by_label(run_nerve(RunConfig(algebra=name)))
        ok &= rep["simplicial differential of the shifted form vanishes"]["pass"]
        ok &= rep["degeneracy pullbacks of the form vanish"]["pass"]
        ok &= rep["de Rham components of the total differential vanish"]["pass"]
        ok &= rep["halving the FD step reduces the de Rham residual"]["pass"]
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 5.0
    _line(1, f"finite-model closedness, exact and FD tiers ({elapsed:.1f}s)", ok)
    assert ok


def test_criterion_02_pairing_values_and_nondegeneracy():
    rep = _by_label(run_imform(RunConfig(algebra="so3", triple="aff1-double",
                                         grid=36)))
    labels = [
        "pairing on the finite model equals twice the invariant pairing",
        "loop-model pairing converges to the endpoint pairing",
        "double-group pairing equals the stated bilinear value",
        "finite-model pairing nondegenerate",
        "loop-model pairing nondegenerate",
        "double-group pairing nondegenerate",
    ]
    ok = all(rep[l]["pass"] for l in labels)
    _line(2, "homology pairing values and nondegeneracy on all three models", ok)
    assert ok, {l: rep[l] for l in labels if not rep[l]["pass"]}


def test_criterion_03_path_space_equivalence():
    t0 = time.perf_counter()
    cfg = RunConfig(algebra="so3")
    Rs = [36, 72, 144]
    res = path_space_equivalence_residuals("so3", Rs, cfg)
    ok = _ok_order(Rs, res["level2"], 1.0, 1e-10)
    ok &= _ok_order(Rs, res["level1"], 1.0, 1e-10)
    ab = path_space_equivalence_residuals("abelian-2", [36], cfg)
    ok &= max(max(ab["level2"]), max(ab["level1"])) <= 1e-8
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60.0
    _line(3, f"path-space equivalence components ({elapsed:.1f}s)", ok)
    assert ok, (res, ab, elapsed)


def test_criterion_04_glued_form_closedness():
    cfg = RunConfig()
    ab = segal_form_closedness_residuals("abelian-2", [36], cfg)
    ok = max(ab["delta"]) <= 1e-9
    Rs = [36, 72]
    so = segal_form_closedness_residuals("so3", Rs, cfg)
    ok &= _ok_order(Rs, so["delta"], 1.0, 1e-9)
    ok &= _ok_order(Rs, so["d"], 1.0, 1e-9)
    _line(4, "closedness of the path-space two-form on glued simplices", ok)
    assert ok, (ab, so)


def test_criterion_05_double_group_equivalence():
    t0 = time.perf_counter()
    ok = True
    results = {}
    for name in ("aff1-double", "sl2c-iwasawa"):
        res = double_group_equivalence_residuals(RunConfig(triple=name), n_samples=200)
        results[name] = res
        ok &= res["exact"] <= 1e-10
        ok &= res["fd"] <= 1e-6
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 10.0
    _line(5, f"double-group comparison identity, 200 samples each ({elapsed:.1f}s)", ok)
    assert ok, (results, elapsed)


def test_criterion_06_double_model_component_equations():
    report = run_double(RunConfig(algebra="so3", grid=24))
    eq_checks = [c for c in report["checks"]
                 if c["label"].startswith("component equation")]
    ok = len(eq_checks) == 6 and all(c["pass"] for c in eq_checks)
    ok &= all(c["pass"] for c in report["checks"])
    _line(6, "all six component equations of the double model", ok)
    assert ok, [c for c in report["checks"] if not c["pass"]]


def test_criterion_07_transgression_identities():
    alg = builtin_algebra("abelian-2")
    rng = np.random.default_rng(DEFAULT_SEED)
    ids = transgression_identities(alg, 60, rng, samples=3)
    ok = ids["max_d_residual"] <= 1e-8
    ok &= ids["max_delta_residual"] <= 1e-10
    _line(7, "transgression compatibilities on closed-form fixtures", ok)
    assert ok, ids


def test_criterion_08_structural_pairing_properties():
    rng = np.random.default_rng([DEFAULT_SEED, 8])
    nm = NerveModel(algebra=builtin_algebra("so3"))
    rep = structural_pairing_properties(nm, nm.omega, 2, rng, samples=5)
    ok = rep["max_residual"] <= 1e-8
    count, worst = 0, 0.0
    tries = 0
    while count < 20 and tries < 400:
        tries += 1
        V = random_simplicial_vector_space(rng, top=3, max_dim=4)
        A = random_multiplicative_form(V, 2, rng)
        if A is None or np.max(np.abs(A)) < 1e-12:
            continue
        lin = LinearModel(V=V)
        synth = structural_pairing_properties(lin, lambda x, a, b, _A=A: float(a @ _A @ b),
                                    2, rng, samples=3)
        worst = max(worst, synth["max_residual"])
        count += 1
    ok &= count >= 20 and worst <= 1e-8
    _line(8, "degeneracy vanishing, multiplicativity, gauge invariance", ok)
    assert ok, (rep, count, worst)


def test_criterion_09_combinatorics():
    report = run_simplicial(RunConfig(fuzz=2000))
    rep = _by_label(report)
    ok = rep["word normalization agrees with the matrix oracle"]["pass"]
    ok &= rep["word normalization agrees with the matrix oracle"]["words"] == 2000
    ok &= rep["rank prediction matches kernel dims on random models"]["pass"]
    ok &= rep["rank prediction matches kernel dims on random models"]["models"] == 50
    ok &= rep["normalized and quotient complexes agree levelwise"]["pass"]
    _line(9, "simplicial-identity fuzz, rank formula, chain-complex comparison", ok)
    assert ok, report


def test_criterion_10_hypercover_tangent_checks():
    report = run_hypercover(RunConfig(algebra="so3", grid=24))
    ok = all(c["pass"] for c in report["checks"])
    _line(10, "comparison maps: ranks, homology isomorphisms, pairing transport", ok)
    assert ok, [c for c in report["checks"] if not c["pass"]]
