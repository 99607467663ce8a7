"""Verification suites: fixture generation, identity checks, convergence
studies, and JSON-ready report assembly.

Every check carries a label, a residual, its tolerance (or minimum required
convergence order), and a pass flag.  Randomness is derived from the run seed
plus a per-check stream index, so identical configurations give identical
reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .double import FiniteDoubleModel, LoopDoubleModel
from .forms import (ShiftedForm, alternation_check, de_rham_evaluator,
                    delta_evaluator, delta_squared_residual, is_closed,
                    is_normalized, total_D)
from .grids import random_loop, random_path
from .liealg import load_algebra
from .loop import LoopModel
from .manin import ManinModel, load_triple, m_h, m_v
from .model import LinearModel
from .nerve import NerveModel
from .simplicial import (dold_kan_compare, normalize_word, random_simplicial_vector_space,
                         random_word)
from .tangent import (structural_pairing_properties, hypercover_q_check,
                      hypercover_tangent_check, im_pairing, im_pairing_matrix,
                      nondegeneracy_check, pairing_transport_check,
                      random_multiplicative_form, rank_formula_check,
                      tangent_complex, tangent_complex_quotient)
from .transgression import (quadrature_order, transgression_identities,
                            transgression_oracles)

DEFAULT_SEED = 20260823


@dataclass
class RunConfig:
    algebra: str = "so3"
    triple: str = "aff1-double"
    grid: int = 36
    fd_step: float = 1e-4
    samples: int = 3
    seed: int = DEFAULT_SEED
    tol_scale: float = 1.0
    fuzz: int = 2000


def _rng(cfg: RunConfig, stream: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, stream])


def _is_abelian(alg) -> bool:
    E = np.eye(alg.dim)
    return all(np.max(np.abs(alg.bracket(E[i], E[j]))) < 1e-14
               for i in range(alg.dim) for j in range(alg.dim))


def check(label: str, residual: float, tol: float | None = None,
          order: float | None = None, min_order: float | None = None,
          exact_tol: float | None = None, **meta) -> dict:
    """A single report entry.  Pass rules: residual <= tol when tol is given;
    order >= min_order (or residual below exact_tol) when an order is given;
    both rules must hold if both are given."""
    ok = True
    entry = {"label": label, "residual": float(residual)}
    if tol is not None:
        entry["tolerance"] = float(tol)
        ok = ok and residual <= tol
    if min_order is not None:
        entry["order"] = None if order is None else float(order)
        entry["min_order"] = float(min_order)
        exact = exact_tol is not None and residual <= exact_tol
        entry["machine_exact"] = bool(exact)
        ok = ok and (exact or (order is not None and order >= min_order))
    entry.update(meta)
    entry["pass"] = bool(ok)
    return entry


def fit_order(grids, residuals, floor: float = 1e-12) -> float | None:
    """Least-squares slope of -log(residual) against log(grid).  Residuals at
    the floor mean machine-exact cancellation; returns inf in that case."""
    res = np.asarray(residuals, dtype=float)
    if np.all(res <= floor):
        return float("inf")
    res = np.maximum(res, floor)
    slope = np.polyfit(np.log(np.asarray(grids, dtype=float)), np.log(res), 1)[0]
    return float(-slope)


def assemble(suite: str, cfg: RunConfig, checks: list[dict]) -> dict:
    return {
        "suite": suite,
        "config": {
            "algebra": cfg.algebra, "triple": cfg.triple, "grid": cfg.grid,
            "fd_step": cfg.fd_step, "samples": cfg.samples, "seed": cfg.seed,
            "tol_scale": cfg.tol_scale, "fuzz": cfg.fuzz,
        },
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


# -- nerve ---------------------------------------------------------------------------


def run_nerve(cfg: RunConfig) -> dict:
    alg = load_algebra(cfg.algebra)
    nm = NerveModel(algebra=alg)
    form = nm.shifted_form()
    ts = cfg.tol_scale
    checks = []

    closed = is_closed(form, _rng(cfg, 1), samples=cfg.samples, h=cfg.fd_step)
    checks.append(check("simplicial differential of the shifted form vanishes",
                        closed["max_delta_residual"], tol=1e-12 * ts))
    closed_half = is_closed(form, _rng(cfg, 1), samples=cfg.samples, h=cfg.fd_step / 2)
    ratio = (closed["max_fd_residual"] / closed_half["max_fd_residual"]
             if closed_half["max_fd_residual"] > 1e-14 else float("inf"))
    checks.append(check("de Rham components of the total differential vanish",
                        closed["max_fd_residual"], tol=1e-6 * ts,
                        half_step_residual=closed_half["max_fd_residual"],
                        half_step_ratio=float(ratio)))
    checks.append(check("halving the FD step reduces the de Rham residual",
                        0.0 if ratio >= 3.5 else 1.0, tol=0.5,
                        half_step_ratio=float(ratio)))
    norm = is_normalized(form, _rng(cfg, 2), samples=cfg.samples)
    checks.append(check("degeneracy pullbacks of the form vanish",
                        norm["max_residual"], tol=1e-12 * ts))
    checks.append(check("alternation under argument swaps",
                        alternation_check(form, _rng(cfg, 3)), tol=1e-10 * ts))
    checks.append(check("squared simplicial differential vanishes",
                        delta_squared_residual(nm, 1, 2, _rng(cfg, 4)), tol=1e-10 * ts))

    P = np.array([[alg.pair(np.eye(alg.dim)[a], np.eye(alg.dim)[b])
                   for b in range(alg.dim)] for a in range(alg.dim)])
    ve = float(np.max(np.abs(nm.van_est_matrix() + P))) if alg.dim else 0.0
    checks.append(check("leading Van Est pairing equals minus the invariant pairing",
                        ve, tol=1e-12 * ts))
    return assemble("nerve", cfg, checks)


# -- loop ---------------------------------------------------------------------------


def _restrict_level2_tangent(fine: LoopModel, coarse: LoopModel, v: np.ndarray) -> np.ndarray:
    stride = fine.R // coarse.R
    return coarse._contract2(fine._expand2(v)[::stride])


def _restrict_level1_tangent(fine: LoopModel, coarse: LoopModel, v: np.ndarray) -> np.ndarray:
    stride = fine.R // coarse.R
    return coarse._contract1(fine._expand1(v)[::stride])


def _restrict_level3_tangent(fine: LoopModel, coarse: LoopModel, v: np.ndarray) -> np.ndarray:
    stride = fine.R // coarse.R
    a0, a1, a2 = fine._expand3(v)
    return coarse._contract3(a0[::stride], a1[::stride], a2[::stride])


def _restrict_path(fine_samples: np.ndarray, stride: int, alg) -> "object":
    from .grids import GridPath

    return GridPath(alg, fine_samples[::stride])


def segal_form_closedness_residuals(algebra_name: str, Rs, cfg: RunConfig) -> dict:
    """Residuals of the exact simplicial differential of the Segal form on
    glued tetrahedra, and of its de Rham differential on loops, on shared
    fixtures restricted to each grid."""
    alg = load_algebra(algebra_name)
    fine = LoopModel(algebra=alg, R=max(Rs))
    rng = _rng(cfg, 10)
    fixtures = []
    for _ in range(cfg.samples):
        x3 = fine.random_point(3, rng)
        v3 = [fine.random_tangent(3, rng) for _ in range(2)]
        x2 = fine.random_point(2, rng)
        v2 = [fine.random_tangent(2, rng) for _ in range(3)]
        fixtures.append((x3, v3, x2, v2))
    out = {"delta": [], "d": []}
    for R in sorted(Rs):
        lm = LoopModel(algebra=alg, R=R)
        stride = fine.R // R
        delta_ev = delta_evaluator(lm, 2, lm.segal_form)
        d_ev = de_rham_evaluator(lm, 2, lm.segal_form, cfg.fd_step)
        worst_delta, worst_d = 0.0, 0.0
        for x3, v3, x2, v2 in fixtures:
            y3 = tuple(_restrict_path(t.samples, stride, alg) for t in x3)
            w3 = [_restrict_level3_tangent(fine, lm, v) for v in v3]
            worst_delta = max(worst_delta, abs(delta_ev(y3, *w3)))
            y2 = _restrict_path(x2.samples, stride, alg)
            w2 = [_restrict_level2_tangent(fine, lm, v) for v in v2]
            worst_d = max(worst_d, abs(d_ev(y2, *w2)))
        out["delta"].append(worst_delta)
        out["d"].append(worst_d)
    return out


def path_space_equivalence_residuals(algebra_name: str, Rs, cfg: RunConfig) -> dict:
    """Both component identities of the path-space equivalence between the
    Segal form and half the finite form, on shared fixtures per grid."""
    alg = load_algebra(algebra_name)
    fine = LoopModel(algebra=alg, R=max(Rs))
    nm = NerveModel(algebra=alg)
    rng = _rng(cfg, 11)
    fixtures = []
    for _ in range(cfg.samples):
        x2 = fine.random_point(2, rng)
        a2 = [fine.random_tangent(2, rng) for _ in range(2)]
        x1 = fine.random_point(1, rng)
        a1 = [fine.random_tangent(1, rng) for _ in range(3)]
        fixtures.append((x2, a2, x1, a1))
    out = {"level2": [], "level1": []}
    for R in sorted(Rs):
        lm = LoopModel(algebra=alg, R=R)
        stride = fine.R // R
        delta_wp = delta_evaluator(lm, 1, lm.omega_p)
        d_wp = de_rham_evaluator(lm, 1, lm.omega_p, cfg.fd_step)
        worst2, worst1 = 0.0, 0.0
        for x2, a2, x1, a1 in fixtures:
            y2 = _restrict_path(x2.samples, stride, alg)
            b2 = [_restrict_level2_tangent(fine, lm, v) for v in a2]
            val = lm.segal_form(y2, *b2)
            val -= 0.5 * nm.omega(lm.ev_point(2, y2),
                                  *(lm.ev_tangent(2, y2, v) for v in b2))
            val -= delta_wp(y2, *b2)
            worst2 = max(worst2, abs(val))
            y1 = _restrict_path(x1.samples, stride, alg)
            b1 = [_restrict_level1_tangent(fine, lm, v) for v in a1]
            val = 0.5 * nm.theta(lm.ev_point(1, y1),
                                 *(lm.ev_tangent(1, y1, v) for v in b1))
            val += d_wp(y1, *b1)
            worst1 = max(worst1, abs(val))
        out["level2"].append(worst2)
        out["level1"].append(worst1)
    return out


def run_loop(cfg: RunConfig) -> dict:
    alg = load_algebra(cfg.algebra)
    lm = LoopModel(algebra=alg, R=cfg.grid)
    ts = cfg.tol_scale
    checks = []

    checks.append(check("simplicial identities on points and tangents",
                        lm.simplicial_identity_residual(_rng(cfg, 20), samples=2),
                        tol=1e-10 * ts))
    rf = rank_formula_check(lm)
    checks.append(check("tangent complex dims match the rank prediction",
                        0.0 if rf["match"] else 1.0, tol=0.5,
                        computed=rf["computed"], predicted=rf["predicted"]))
    cx, _ = tangent_complex(lm)
    hdims = [cx.homology_dim(l) for l in range(cx.top + 1)]
    expected = [0, alg.dim, 0] + [0] * (cx.top - 2)
    checks.append(check("homology concentrated in degree one with algebra rank",
                        0.0 if hdims == expected else 1.0, tol=0.5,
                        homology_dims=hdims))

    Rs = sorted({cfg.grid, 2 * cfg.grid})
    pc = segal_form_closedness_residuals(cfg.algebra, Rs, cfg)
    if _is_abelian(alg):
        checks.append(check("simplicial differential of the Segal form vanishes",
                            max(pc["delta"]), tol=1e-9 * ts, grids=Rs,
                            residuals=pc["delta"]))
        checks.append(check("de Rham differential of the Segal form vanishes",
                            max(pc["d"]), tol=1e-8 * ts, grids=Rs,
                            residuals=pc["d"]))
    else:
        checks.append(check("simplicial differential of the Segal form vanishes",
                            max(pc["delta"]), order=fit_order(Rs, pc["delta"]),
                            min_order=1.0, exact_tol=1e-9 * ts, grids=Rs,
                            residuals=pc["delta"]))
        checks.append(check("de Rham differential of the Segal form vanishes",
                            max(pc["d"]), order=fit_order(Rs, pc["d"]),
                            min_order=1.0, exact_tol=1e-9 * ts, grids=Rs,
                            residuals=pc["d"]))
    norm = is_normalized(lm.shifted_form(), _rng(cfg, 21), samples=cfg.samples)
    checks.append(check("degeneracy pullbacks of the Segal form vanish",
                        norm["max_residual"], tol=1e-10 * ts))
    return assemble("loop", cfg, checks)


# -- manin ---------------------------------------------------------------------------


def run_manin(cfg: RunConfig) -> dict:
    triple = load_triple(cfg.triple)
    mm = ManinModel(triple=triple)
    alg = triple.algebra
    ts = cfg.tol_scale
    rng = _rng(cfg, 30)
    checks = []

    tc = triple.check()
    checks.append(check("subalgebra closure, isotropy, and complementarity",
                        max(tc["plus_closure_residual"], tc["minus_closure_residual"],
                            tc["plus_isotropy_residual"], tc["minus_isotropy_residual"],
                            0.0 if tc["complementary"] else 1.0), tol=1e-10 * ts))

    from .manin import GammaElement, gamma_complete

    def random_element(scale=0.3):
        h1 = triple.exp_plus(rng.standard_normal(triple.plus_basis.shape[1]) * scale)
        a2 = triple.exp_minus(rng.standard_normal(triple.minus_basis.shape[1]) * scale)
        return gamma_complete(triple, h1, a2)

    def h_neighbor(x, scale=0.3):
        """Element horizontally composable after x (h2 = x.h1)."""
        a1 = triple.exp_minus(rng.standard_normal(triple.minus_basis.shape[1]) * scale)
        a2, h1 = triple.factorize(x.h1 @ a1, order="minus-plus")
        return GammaElement(h2=x.h1, a2=a2, a1=a1, h1=h1)

    def corner(h2, a2):
        """Element with given h2 and a2 (constraint solved for a1, h1)."""
        a1, p = triple.factorize(np.linalg.inv(h2) @ a2, order="minus-plus")
        return GammaElement(h2=h2, a2=a2, a1=a1, h1=np.linalg.inv(p))

    worst = 0.0
    for _ in range(cfg.samples):
        x11 = random_element()
        x12 = h_neighbor(x11)
        x21 = gamma_complete(
            triple, triple.exp_plus(rng.standard_normal(triple.plus_basis.shape[1]) * 0.3),
            x11.a1)
        x22 = corner(x21.h1, x12.a1)
        for xi in (m_h(x11, x12), m_v(x11, x21), m_h(x21, x22), m_v(x12, x22)):
            worst = max(worst, xi.constraint_residual())
        left = m_v(m_h(x11, x12), m_h(x21, x22))
        right = m_h(m_v(x11, x21), m_v(x12, x22))
        for slot in ("h2", "a2", "a1", "h1"):
            worst = max(worst, float(np.max(np.abs(getattr(left, slot)
                                                   - getattr(right, slot)))))
    checks.append(check("double-group constraint preserved and multiplications commute",
                        worst, tol=1e-9 * ts))

    checks.append(check("simplicial identities on points and tangents",
                        mm.simplicial_identity_residual(_rng(cfg, 31), samples=3),
                        tol=1e-9 * ts))

    res = double_group_equivalence_residuals(cfg, n_samples=max(cfg.samples, 10))
    checks.append(check("exact component of the comparison identity",
                        res["exact"], tol=1e-10 * ts))
    checks.append(check("de Rham component of the comparison identity",
                        res["fd"], tol=1e-6 * ts))

    nd = nondegeneracy_check(mm, mm.omega_bar, m=2, rng=rng)
    checks.append(check("pairing nondegenerate on tangent homology",
                        0.0 if nd["nondegenerate"] else 1.0, tol=0.5,
                        min_singular_value=nd["min_singular_value"],
                        max_singular_value=nd["max_singular_value"]))
    return assemble("manin", cfg, checks)


def double_group_equivalence_residuals(cfg: RunConfig, n_samples: int = 200) -> dict:
    """Residuals of the two component identities comparing the bar form with
    the pullback of the finite form, over random level points."""
    triple = load_triple(cfg.triple)
    mm = ManinModel(triple=triple)
    nm = NerveModel(algebra=triple.algebra)
    rng = _rng(cfg, 32)
    delta_beta = delta_evaluator(mm, 1, mm.beta)
    d_beta = de_rham_evaluator(mm, 1, mm.beta, cfg.fd_step)
    worst_exact, worst_fd = 0.0, 0.0
    for _ in range(n_samples):
        x = mm.random_point(2, rng)
        a, b = mm.random_tangent(2, rng), mm.random_tangent(2, rng)
        val = mm.omega_bar(x, a, b)
        val -= nm.omega(mm.phi_point(2, x), mm.phi_tangent(2, x, a),
                        mm.phi_tangent(2, x, b))
        val -= delta_beta(x, a, b)
        worst_exact = max(worst_exact, abs(val))

        y = mm.random_point(1, rng)
        u, v, w = (mm.random_tangent(1, rng) for _ in range(3))
        val = nm.theta(mm.phi_point(1, y), mm.phi_tangent(1, y, u),
                       mm.phi_tangent(1, y, v), mm.phi_tangent(1, y, w))
        val += d_beta(y, u, v, w)
        worst_fd = max(worst_fd, abs(val))
    return {"exact": worst_exact, "fd": worst_fd}


# -- morita ---------------------------------------------------------------------------


def check_morita(model, alpha_comps: dict, beta_pulled_comps: dict, phi_comps: dict,
                 rng: np.random.Generator, samples: int = 3,
                 h: float = 1e-4) -> dict:
    """Residuals per level of the defining identity: the difference of the
    two pulled-back shifted forms equals the total differential of the gauge
    form phi.  beta is supplied already pulled back to the common model."""
    phi = ShiftedForm(model=model, degree=1, shift=2, components=phi_comps)
    Dphi = total_D(phi, h)
    out = {}
    levels = set(alpha_comps) | set(beta_pulled_comps) | set(Dphi.components)
    for p in sorted(levels):
        if p > model.top:
            continue
        arity = 2 + 2 - p
        if arity < 0 or (arity > 0 and model.tangent_dim(p) == 0):
            continue
        worst = 0.0
        for _ in range(samples):
            x = model.random_point(p, rng)
            vs = [model.random_tangent(p, rng) for _ in range(arity)]
            val = alpha_comps.get(p, lambda *a: 0.0)(x, *vs)
            val -= beta_pulled_comps.get(p, lambda *a: 0.0)(x, *vs)
            val -= Dphi.components.get(p, lambda *a: 0.0)(x, *vs)
            worst = max(worst, abs(val))
        out[p] = worst
    out["max_residual"] = max(v for k, v in out.items() if isinstance(k, int))
    return out


def run_morita(cfg: RunConfig) -> dict:
    ts = cfg.tol_scale
    checks = []

    # path-space equivalence, fitted over three grids
    Rs = sorted({cfg.grid, 2 * cfg.grid, 4 * cfg.grid})
    for name in dict.fromkeys(("abelian-2", cfg.algebra)):
        res = path_space_equivalence_residuals(name, Rs if name == cfg.algebra else [cfg.grid], cfg)
        if name == "abelian-2" and cfg.algebra != "abelian-2":
            checks.append(check(
                "path-space equivalence on the abelian model (both components)",
                max(max(res["level2"]), max(res["level1"])), tol=1e-8 * ts))
            continue
        checks.append(check("path-space equivalence, two-form component",
                            max(res["level2"]),
                            order=fit_order(Rs, res["level2"]), min_order=1.0,
                            exact_tol=1e-10 * ts, grids=Rs, residuals=res["level2"]))
        checks.append(check("path-space equivalence, three-form component",
                            max(res["level1"]),
                            order=fit_order(Rs, res["level1"]), min_order=1.0,
                            exact_tol=1e-10 * ts, grids=Rs, residuals=res["level1"]))

    res = double_group_equivalence_residuals(cfg, n_samples=200)
    checks.append(check("double-group equivalence, exact component",
                        res["exact"], tol=1e-10 * ts))
    checks.append(check("double-group equivalence, de Rham component",
                        res["fd"], tol=1e-6 * ts))

    # gauge move on the nerve: shifting by a total differential keeps the
    # identity and the nondegeneracy verdict
    alg = load_algebra(cfg.algebra)
    nm = NerveModel(algebra=alg)
    rng = _rng(cfg, 40)
    n = alg.dim
    C = rng.standard_normal((n, n))
    C = C - C.T
    c2 = rng.standard_normal(2 * n)
    phi_comps = {1: lambda x, a, b: float(a @ C @ b),
                 2: lambda x, a: float(c2 @ a)}
    phi = ShiftedForm(model=nm, degree=1, shift=2, components=phi_comps)
    Dphi = total_D(phi, cfg.fd_step)
    alpha = nm.shifted_form()
    beta_comps = {p: (lambda x, *vs, _p=p: alpha.components.get(_p, lambda *a: 0.0)(x, *vs)
                      - Dphi.components.get(_p, lambda *a: 0.0)(x, *vs))
                  for p in set(alpha.components) | set(Dphi.components)}
    res = check_morita(nm, alpha.components, beta_comps, phi_comps,
                       _rng(cfg, 41), samples=cfg.samples, h=cfg.fd_step)
    checks.append(check("gauge move satisfies the defining identity",
                        res["max_residual"], tol=1e-8 * ts))
    nd0 = nondegeneracy_check(nm, alpha.components[2], m=2)
    nd1 = nondegeneracy_check(nm, beta_comps[2], m=2)
    checks.append(check("gauge move preserves nondegeneracy",
                        0.0 if nd0["nondegenerate"] == nd1["nondegenerate"] else 1.0,
                        tol=0.5))
    return assemble("morita", cfg, checks)


# -- double ---------------------------------------------------------------------------


def run_double(cfg: RunConfig) -> dict:
    alg = load_algebra(cfg.algebra)
    ts = cfg.tol_scale
    checks = []

    fd = FiniteDoubleModel(algebra=alg)
    rep = fd.closedness_report(_rng(cfg, 50), samples=cfg.samples, h=cfg.fd_step)
    checks.append(check("triple differential of the shifted form, exact components",
                        rep["max_exact_residual"], tol=1e-10 * ts))
    checks.append(check("triple differential of the shifted form, de Rham components",
                        rep["max_fd_residual"], tol=1e-6 * ts))
    checks.append(check("squared triple differential vanishes",
                        fd.d_squared_residual(_rng(cfg, 51), samples=cfg.samples,
                                              h=cfg.fd_step), tol=1e-6 * ts))

    M = cfg.grid if cfg.grid % 2 == 0 else cfg.grid + 1
    Ms = [M, 2 * M]
    fine = LoopDoubleModel(algebra=alg, M=2 * M)
    fx = fine.make_fixtures(_rng(cfg, 52), samples=cfg.samples)
    results = {}
    for m in Ms:
        results[m] = LoopDoubleModel(algebra=alg, M=m).verify(fixtures=fx, h=cfg.fd_step)
    exact_keys = ("eq1_delta_v_alpha", "eq4_delta_h_tr_omega")
    for key in sorted(results[M]):
        series = [results[m][key] for m in Ms]
        if key in exact_keys:
            checks.append(check(f"component equation {key}", max(series),
                                tol=1e-10 * ts, grids=Ms, residuals=series))
        else:
            checks.append(check(f"component equation {key}", max(series),
                                order=fit_order(Ms, series), min_order=1.0,
                                exact_tol=1e-10 * ts, grids=Ms, residuals=series))
    return assemble("double", cfg, checks)


# -- simplicial ------------------------------------------------------------------------


def run_simplicial(cfg: RunConfig) -> dict:
    ts = cfg.tol_scale
    checks = []
    rng = _rng(cfg, 60)

    mismatches = 0
    worst = 0.0
    V = random_simplicial_vector_space(rng, top=4, max_dim=5)
    for _ in range(cfg.fuzz):
        w = random_word(rng, int(rng.integers(0, 5)), int(rng.integers(1, 7)), 4)
        nw = normalize_word(w)
        A, B = V.word_matrix(w), V.word_matrix(nw)
        resid = float(np.max(np.abs(A - B))) if A.size else 0.0
        worst = max(worst, resid)
        if resid > 1e-10:
            mismatches += 1
    checks.append(check("word normalization agrees with the matrix oracle",
                        float(mismatches), tol=0.5, words=cfg.fuzz,
                        worst_entry_residual=worst))

    bad = 0
    for _ in range(50):
        top = int(rng.integers(1, 4))
        W = random_simplicial_vector_space(rng, top=top + 1, max_dim=4)
        lm = LinearModel(V=W)
        rf = rank_formula_check(lm, top=top)
        if not rf["match"]:
            bad += 1
    checks.append(check("rank prediction matches kernel dims on random models",
                        float(bad), tol=0.5, models=50))

    bad = 0
    worst_d2 = 0.0
    for _ in range(20):
        W = random_simplicial_vector_space(rng, top=3, max_dim=5)
        cmp_ = dold_kan_compare(W)
        if not (cmp_["dims_equal"] and cmp_["homology_equal"]):
            bad += 1
        worst_d2 = max(worst_d2, cmp_["moore_d2_residual"], cmp_["quotient_d2_residual"])
    checks.append(check("normalized and quotient complexes agree levelwise",
                        float(bad), tol=0.5, worst_d2_residual=worst_d2))

    lmq = LoopModel(algebra=load_algebra("so3"), R=12)
    cx1, _ = tangent_complex(lmq)
    cx2, _ = tangent_complex_quotient(lmq)
    h1 = [cx1.homology_dim(l) for l in range(cx1.top + 1)]
    h2 = [cx2.homology_dim(l) for l in range(cx2.top + 1)]
    checks.append(check("kernel and quotient tangent complexes agree",
                        0.0 if (cx1.dims == cx2.dims and h1 == h2) else 1.0,
                        tol=0.5, dims=cx1.dims, homology=h1))
    return assemble("simplicial", cfg, checks)


# -- imform ------------------------------------------------------------------------


def run_imform(cfg: RunConfig) -> dict:
    ts = cfg.tol_scale
    checks = []
    alg = load_algebra(cfg.algebra)
    nm = NerveModel(algebra=alg)
    rng = _rng(cfg, 70)

    # nerve value: pairing equals twice the invariant pairing
    cx, bases = tangent_complex(nm)
    worst = 0.0
    for _ in range(cfg.samples):
        v = rng.standard_normal(cx.dims[1])
        w = rng.standard_normal(cx.dims[1])
        lam = im_pairing(nm, nm.omega, 2, 1, bases[1] @ v, bases[1] @ w)
        worst = max(worst, abs(lam - 2 * alg.pair(bases[1] @ v, bases[1] @ w)))
    checks.append(check("pairing on the finite model equals twice the invariant pairing",
                        worst, tol=1e-12 * ts))
    nd = nondegeneracy_check(nm, nm.omega, m=2, rng=rng)
    checks.append(check("finite-model pairing nondegenerate",
                        0.0 if (nd["nondegenerate"] and nd["min_singular_value"]
                                >= 1e-3 * nd["max_singular_value"]) else 1.0,
                        tol=0.5, min_singular_value=nd["min_singular_value"]))

    # loop value: pairing converges to the endpoint pairing with order >= 2
    Rs = sorted({cfg.grid, 2 * cfg.grid})
    fine = LoopModel(algebra=alg, R=max(Rs))
    tangents = [(fine.random_tangent(1, rng), fine.random_tangent(1, rng))
                for _ in range(cfg.samples)]
    series = []
    for R in Rs:
        lm = LoopModel(algebra=alg, R=R)
        worst = 0.0
        for u, v in tangents:
            cu = _restrict_level1_tangent(fine, lm, u)
            cv = _restrict_level1_tangent(fine, lm, v)
            lam = im_pairing(lm, lm.segal_form, 2, 1, cu, cv)
            u1 = lm._expand1(cu)[-1]
            v1 = lm._expand1(cv)[-1]
            worst = max(worst, abs(lam - alg.pair(u1, v1)))
        series.append(worst)
    checks.append(check("loop-model pairing converges to the endpoint pairing",
                        max(series), order=fit_order(Rs, series), min_order=2.0,
                        exact_tol=1e-12 * ts, grids=Rs, residuals=series))
    lmc = LoopModel(algebra=alg, R=cfg.grid)
    nd = nondegeneracy_check(lmc, lmc.segal_form, m=2, rng=rng)
    checks.append(check("loop-model pairing nondegenerate",
                        0.0 if (nd["nondegenerate"] and nd["min_singular_value"]
                                >= 1e-3 * nd["max_singular_value"]) else 1.0,
                        tol=0.5, min_singular_value=nd["min_singular_value"]))

    # double-group value: pairing equals twice the cross pairing of the two
    # subalgebra components (overall orientation fixed by consistency with
    # the comparison map; see the decisions ledger)
    triple = load_triple(cfg.triple)
    mm = ManinModel(triple=triple)
    cxm, basesm = tangent_complex(mm)
    worst = 0.0
    for _ in range(cfg.samples):
        v = basesm[1] @ rng.standard_normal(cxm.dims[1])
        w = basesm[1] @ rng.standard_normal(cxm.dims[1])
        lam = im_pairing(mm, mm.omega_bar, 2, 1, v, w)
        vt = triple.minus_basis @ v[:mm.km]
        vp = triple.plus_basis @ v[mm.km:]
        wt = triple.minus_basis @ w[:mm.km]
        wp = triple.plus_basis @ w[mm.km:]
        expected = 2 * triple.algebra.pair(vt, wp) + 2 * triple.algebra.pair(wt, vp)
        worst = max(worst, abs(lam - expected))
    checks.append(check("double-group pairing equals the stated bilinear value",
                        worst, tol=1e-10 * ts))
    nd = nondegeneracy_check(mm, mm.omega_bar, m=2, rng=rng)
    checks.append(check("double-group pairing nondegenerate",
                        0.0 if (nd["nondegenerate"] and nd["min_singular_value"]
                                >= 1e-3 * nd["max_singular_value"]) else 1.0,
                        tol=0.5, min_singular_value=nd["min_singular_value"]))

    rep = structural_pairing_properties(nm, nm.omega, 2, _rng(cfg, 71), samples=cfg.samples,
                              h=cfg.fd_step)
    checks.append(check("structural pairing properties on the finite model",
                        rep["max_residual"], tol=1e-8 * ts,
                        degenerate_vanishing=rep["degenerate_vanishing"],
                        boundary_compatibility=rep["boundary_compatibility"],
                        gauge_invariance=rep["gauge_invariance"]))

    rng2 = _rng(cfg, 72)
    count, worst = 0, 0.0
    tries = 0
    while count < 20 and tries < 400:
        tries += 1
        V = random_simplicial_vector_space(rng2, top=3, max_dim=4)
        A = random_multiplicative_form(V, 2, rng2)
        if A is None or np.max(np.abs(A)) < 1e-12:
            continue
        lin = LinearModel(V=V)
        rep = structural_pairing_properties(lin, lambda x, a, b, _A=A: float(a @ _A @ b),
                                  2, rng2, samples=cfg.samples)
        worst = max(worst, rep["max_residual"])
        count += 1
    checks.append(check("structural pairing properties on synthetic forms",
                        worst if count >= 20 else 1.0, tol=1e-8 * ts,
                        forms=count))
    return assemble("imform", cfg, checks)


# -- transgression ----------------------------------------------------------------------


def run_transgression(cfg: RunConfig) -> dict:
    ts = cfg.tol_scale
    checks = []
    R = max(cfg.grid, 12)
    for name in dict.fromkeys(("abelian-2", cfg.algebra)):
        alg = load_algebra(name)
        rng = _rng(cfg, 80)
        ids = transgression_identities(alg, R, rng, samples=cfg.samples, h=cfg.fd_step)
        if name == "abelian-2":
            checks.append(check("differential compatibility on abelian fixtures",
                                ids["max_d_residual"], tol=1e-8 * ts, grid=R))
        checks.append(check(f"simplicial compatibility ({name})",
                            ids["max_delta_residual"], tol=1e-10 * ts, grid=R))
        orc = transgression_oracles(alg, R, rng)
        checks.append(check(f"straight-path oracles ({name})",
                            max(orc.values()), tol=1e-10 * ts))
        order = quadrature_order(alg, rng)
        checks.append(check(f"quadrature convergence ({name})", 0.0,
                            order=order, min_order=2.0))
    return assemble("transgression", cfg, checks)


# -- hypercover / evaluation maps ---------------------------------------------------------


def _tangent_matrices(src, dst, tangent_map, top: int = 2) -> list[np.ndarray]:
    out = []
    for level in range(top + 1):
        n, m = dst.tangent_dim(level), src.tangent_dim(level)
        M = np.zeros((n, m))
        base = src.base_point(level)
        for k in range(m):
            e = np.zeros(m)
            e[k] = 1.0
            M[:, k] = tangent_map(level, base, e)
        out.append(M)
    return out


def run_hypercover(cfg: RunConfig) -> dict:
    ts = cfg.tol_scale
    checks = []
    alg = load_algebra(cfg.algebra)
    nm = NerveModel(algebra=alg)

    lm = LoopModel(algebra=alg, R=cfg.grid)
    tms = _tangent_matrices(lm, nm, lm.ev_tangent)
    q = hypercover_q_check(lm, nm, tms, n=2)
    checks.append(check("path-space evaluation map: matching-space ranks",
                        0.0 if q["pass"] else 1.0, tol=0.5,
                        levels={str(i): [d["matching_dim"], d["rank"], d["domain_dim"]]
                                for i, d in q["levels"].items()}))
    hc = hypercover_tangent_check(lm, nm, None, tms)
    checks.append(check("path-space evaluation map: homology isomorphism",
                        hc["chain_map_residual"] if hc["homology_iso"] else 1.0,
                        tol=1e-8 * ts))
    pt = pairing_transport_check(lm, nm, tms, lm.segal_form,
                                 lambda x, a, b: 0.5 * nm.omega(x, a, b))
    checks.append(check("path-space evaluation map: pairing transport",
                        pt, tol=1e-8 * ts))

    triple = load_triple(cfg.triple)
    mm = ManinModel(triple=triple)
    nm2 = NerveModel(algebra=triple.algebra)
    tms = _tangent_matrices(mm, nm2, mm.phi_tangent)
    q = hypercover_q_check(mm, nm2, tms, n=2)
    checks.append(check("double-group comparison map: matching-space ranks",
                        0.0 if q["pass"] else 1.0, tol=0.5,
                        levels={str(i): [d["matching_dim"], d["rank"], d["domain_dim"]]
                                for i, d in q["levels"].items()}))
    hc = hypercover_tangent_check(mm, nm2, None, tms)
    checks.append(check("double-group comparison map: homology isomorphism",
                        hc["chain_map_residual"] if hc["homology_iso"] else 1.0,
                        tol=1e-8 * ts))
    pt = pairing_transport_check(mm, nm2, tms, mm.omega_bar, nm2.omega)
    checks.append(check("double-group comparison map: pairing transport",
                        pt, tol=1e-8 * ts))
    return assemble("hypercover", cfg, checks)


SUITES = {
    "nerve": run_nerve,
    "loop": run_loop,
    "manin": run_manin,
    "double": run_double,
    "simplicial": run_simplicial,
    "imform": run_imform,
    "transgression": run_transgression,
    "morita": run_morita,
    "hypercover": run_hypercover,
}


def run_suite(name: str, cfg: RunConfig) -> dict:
    if name not in SUITES:
        raise ValueError(f"unknown suite: {name!r} (choose from {sorted(SUITES)})")
    return SUITES[name](cfg)
