"""Double (bisimplicial) models: the finite double group of G with its
shifted form, the path/loop double group with Segal's form, eta, the
transgressed forms, and the componentwise equivalence identities.

Grids: loops carry 2M + 1 samples (g_0 = g_{2M} = e), paths M + 1 samples
(g_0 = e).  Vertical structure: source = first half, target = reversed second
half, multiplication = concatenation; horizontal structure: pointwise
products.  Velocities: periodic central stencil on loops, central interior
with one-sided ends on paths; face maps transport node velocities by the
pointwise tangent maps so the simplicial cancellations stay machine-exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import _fourier_coefficient_path, random_loop, random_path, trapezoid_weights
from .liealg import LieAlgebra
from .nerve import NerveModel

DEFAULT_FD_STEP = 1e-4


@dataclass
class PathCell:
    """A path or loop in a power of G: samples (N+1, slots, d, d), tangents
    and velocity (N+1, slots, n) in left-trivialized coordinates."""

    samples: np.ndarray
    velocity: np.ndarray
    is_loop: bool


@dataclass
class LoopDoubleModel:
    algebra: LieAlgebra = None
    M: int = 24

    def __post_init__(self):
        if self.M % 2:
            raise ValueError("grid must be even")

    # -- velocities ---------------------------------------------------------------

    def loop_velocity(self, samples: np.ndarray) -> np.ndarray:
        """Left-trivialized periodic central velocity, per slot; shape
        (2M+1, slots, n) with node 2M repeating node 0."""
        alg = self.algebra
        N = samples.shape[0] - 1
        slots = samples.shape[1]
        out = np.zeros((N + 1, slots, alg.dim))
        for k in range(N):
            for s in range(slots):
                out[k, s] = alg.log(np.linalg.solve(
                    samples[(k - 1) % N, s], samples[(k + 1) % N, s])) * (N / 2.0)
        out[N] = out[0]
        return out

    def path_velocity(self, samples: np.ndarray) -> np.ndarray:
        """Central interior, one-sided ends, per slot; shape (M+1, slots, n)."""
        alg = self.algebra
        N = samples.shape[0] - 1
        slots = samples.shape[1]
        out = np.zeros((N + 1, slots, alg.dim))
        for s in range(slots):
            out[0, s] = alg.log(np.linalg.solve(samples[0, s], samples[1, s])) * N
            out[N, s] = alg.log(np.linalg.solve(samples[N - 1, s], samples[N, s])) * N
            for k in range(1, N):
                out[k, s] = alg.log(np.linalg.solve(
                    samples[k - 1, s], samples[k + 1, s])) * (N / 2.0)
        return out

    def make_loop(self, samples: np.ndarray) -> PathCell:
        return PathCell(samples, self.loop_velocity(samples), True)

    def make_path(self, samples: np.ndarray) -> PathCell:
        return PathCell(samples, self.path_velocity(samples), False)

    # -- fixtures -------------------------------------------------------------------

    def random_loop_cell(self, rng: np.random.Generator, slots: int = 1) -> PathCell:
        gs = [random_loop(self.algebra, 2 * self.M, rng).samples for _ in range(slots)]
        return self.make_loop(np.stack(gs, axis=1))

    def random_path_cell(self, rng: np.random.Generator, slots: int = 1) -> PathCell:
        gs = [random_path(self.algebra, self.M, rng).samples for _ in range(slots)]
        return self.make_path(np.stack(gs, axis=1))

    def random_loop_tangent(self, rng: np.random.Generator, slots: int = 1) -> np.ndarray:
        n, N = self.algebra.dim, 2 * self.M
        ts = np.arange(N + 1) / N
        out = np.zeros((N + 1, slots, n))
        for s in range(slots):
            xi = _fourier_coefficient_path(rng, n, 3, 0.5)
            out[:, s] = np.stack([xi(t) for t in ts]) * (np.sin(np.pi * ts) ** 2)[:, None]
        out[0] = out[N] = 0.0
        return out

    def random_path_tangent(self, rng: np.random.Generator, slots: int = 1) -> np.ndarray:
        n, N = self.algebra.dim, self.M
        ts = np.arange(N + 1) / N
        out = np.zeros((N + 1, slots, n))
        for s in range(slots):
            xi = _fourier_coefficient_path(rng, n, 3, 0.5)
            out[:, s] = np.stack([xi(t) for t in ts]) * ts[:, None]
        out[0] = 0.0
        return out

    def random_composable_pair(self, rng: np.random.Generator):
        """(tau1, tau2) with tau1(j) = tau2(2M - j) for j <= M, plus matching
        smooth tangents (a1, a2)."""
        alg, M = self.algebra, self.M
        tau2 = random_loop(alg, 2 * M, rng).samples
        # second half of tau1: from tau2(M) to e
        free = random_path(alg, M, rng).samples
        corr = alg.log(np.linalg.solve(free[-1], np.linalg.solve(tau2[M], alg.identity())))
        ts = np.arange(M + 1) / M
        second = np.stack([tau2[M] @ free[j] @ alg.exp(ts[j] * corr) for j in range(M + 1)])
        first = tau2[2 * M:M - 1:-1]
        tau1 = np.concatenate([first, second[1:]])
        a2 = self.random_loop_tangent(rng)[:, 0]
        a1 = np.zeros_like(a2)
        a1[: M + 1] = a2[2 * M:M - 1:-1]
        xi = _fourier_coefficient_path(rng, alg.dim, 3, 0.5)
        bump = np.sin(np.pi * (ts := np.arange(M + 1) / M)) ** 2
        a1[M:] = a1[M] * (1 - ts)[:, None] + np.stack([xi(t) for t in ts]) * bump[:, None]
        return (self.make_loop(tau1[:, None, :, :]), self.make_loop(tau2[:, None, :, :]),
                a1[:, None, :], a2[:, None, :])

    # -- structure maps (with velocity/tangent transport) ------------------------------

    def v_source(self, cell: PathCell, *fields):
        M = self.M
        out = PathCell(cell.samples[: M + 1].copy(), 0.5 * cell.velocity[: M + 1], False)
        return out, tuple(f[: M + 1].copy() for f in fields)

    def v_target(self, cell: PathCell, *fields):
        M = self.M
        idx = np.arange(2 * M, M - 1, -1)
        out = PathCell(cell.samples[idx].copy(), -0.5 * cell.velocity[idx], False)
        return out, tuple(f[idx].copy() for f in fields)

    def m_v(self, c1: PathCell, c2: PathCell, f1=None, f2=None):
        M = self.M
        samples = np.concatenate([c2.samples[: M + 1], c1.samples[M + 1:]])
        velocity = np.concatenate([c2.velocity[: M + 1], c1.velocity[M + 1:]])
        cell = PathCell(samples, velocity, True)
        if f1 is None:
            return cell
        field = np.concatenate([f2[: M + 1], f1[M + 1:]])
        return cell, field

    def h_face(self, l: int, cell: PathCell, *fields):
        """Horizontal nerve face on a multi-slot cell, transporting tangent
        fields and the velocity pointwise."""
        alg = self.algebra
        slots = cell.samples.shape[1]
        if l == 0:
            sl = slice(1, slots)
            return (PathCell(cell.samples[:, sl].copy(), cell.velocity[:, sl].copy(),
                             cell.is_loop),
                    tuple(f[:, sl].copy() for f in fields))
        if l == slots:
            sl = slice(0, slots - 1)
            return (PathCell(cell.samples[:, sl].copy(), cell.velocity[:, sl].copy(),
                             cell.is_loop),
                    tuple(f[:, sl].copy() for f in fields))
        N = cell.samples.shape[0] - 1

        def push(samples, field):
            out = np.zeros((N + 1, slots - 1, alg.dim))
            for k in range(N + 1):
                Ad = alg.Ad(np.linalg.inv(samples[k, l]))
                for s in range(l - 1):
                    out[k, s] = field[k, s]
                out[k, l - 1] = Ad @ field[k, l - 1] + field[k, l]
                for s in range(l + 1, slots):
                    out[k, s - 1] = field[k, s]
            return out

        new_samples = np.zeros((N + 1, slots - 1) + cell.samples.shape[2:])
        for k in range(N + 1):
            for s in range(l - 1):
                new_samples[k, s] = cell.samples[k, s]
            new_samples[k, l - 1] = cell.samples[k, l - 1] @ cell.samples[k, l]
            for s in range(l + 1, slots):
                new_samples[k, s - 1] = cell.samples[k, s]
        new_cell = PathCell(new_samples, push(cell.samples, cell.velocity), cell.is_loop)
        return new_cell, tuple(push(cell.samples, f) for f in fields)

    # -- forms ---------------------------------------------------------------------

    def alpha(self, cell: PathCell, v: np.ndarray) -> float:
        """Edge-based loop 1-form: sum over edges of <log increment,
        averaged tangent> (single slot)."""
        alg = self.algebra
        g, total = cell.samples[:, 0], 0.0
        for j in range(g.shape[0] - 1):
            lg = alg.log(np.linalg.solve(g[j], g[j + 1]))
            total += alg.pair(lg, 0.5 * (v[j, 0] + v[j + 1, 0]))
        return float(total)

    def segal(self, cell: PathCell, a: np.ndarray, b: np.ndarray) -> float:
        alg = self.algebra
        N = cell.samples.shape[0] - 1
        total = 0.0
        for k in range(N):
            da = (a[(k + 1) % N, 0] - a[(k - 1) % N, 0]) * (N / 2.0)
            total += alg.pair(da, b[k, 0]) / N
        return float(total)

    def eta(self, cell: PathCell, a: np.ndarray) -> float:
        """eta on a two-slot loop: <right-trivialized velocity of slot 2,
        left-trivialized tangent of slot 1>."""
        alg = self.algebra
        N = cell.samples.shape[0] - 1
        total = 0.0
        for k in range(N):
            rvel = alg.Ad(cell.samples[k, 1]) @ cell.velocity[k, 1]
            total += alg.pair(rvel, a[k, 0]) / N
        return float(total)

    def tr_theta(self, cell: PathCell, u: np.ndarray, v: np.ndarray) -> float:
        """Transgressed Cartan 3-form on a single-slot path or loop."""
        alg = self.algebra
        N = cell.samples.shape[0] - 1
        w = np.ones(N + 1) if cell.is_loop else trapezoid_weights(N)
        rng_ = range(N) if cell.is_loop else range(N + 1)
        total = 0.0
        for k in rng_:
            total += w[k] * alg.pair(cell.velocity[k, 0],
                                     alg.bracket(u[k, 0], v[k, 0])) / N
        return float(total)

    def tr_omega(self, cell: PathCell, a: np.ndarray) -> float:
        """Transgressed 2-form on a two-slot path or loop."""
        alg = self.algebra
        N = cell.samples.shape[0] - 1
        w = np.ones(N + 1) if cell.is_loop else trapezoid_weights(N)
        rng_ = range(N) if cell.is_loop else range(N + 1)
        total = 0.0
        for k in rng_:
            Ad = alg.Ad(cell.samples[k, 1])
            val = (alg.pair(cell.velocity[k, 0], Ad @ a[k, 1])
                   - alg.pair(a[k, 0], Ad @ cell.velocity[k, 1]))
            total += w[k] * val / N
        return float(total)

    # -- finite differences -----------------------------------------------------------

    def translate(self, cell: PathCell, field: np.ndarray, eps: float) -> PathCell:
        alg = self.algebra
        N = cell.samples.shape[0] - 1
        slots = cell.samples.shape[1]
        out = np.zeros_like(cell.samples)
        for k in range(N + 1):
            for s in range(slots):
                out[k, s] = cell.samples[k, s] @ alg.exp(eps * field[k, s])
        return self.make_loop(out) if cell.is_loop else self.make_path(out)

    def bracket_field(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        alg = self.algebra
        out = np.zeros_like(a)
        for k in range(a.shape[0]):
            for s in range(a.shape[1]):
                out[k, s] = alg.bracket(a[k, s], b[k, s])
        return out

    def d1(self, F, cell: PathCell, u, v, h: float = DEFAULT_FD_STEP) -> float:
        """de Rham d of a 1-form evaluator F(cell, field)."""
        val = (F(self.translate(cell, u, h), v) - F(self.translate(cell, u, -h), v)) / (2 * h)
        val -= (F(self.translate(cell, v, h), u) - F(self.translate(cell, v, -h), u)) / (2 * h)
        return val - F(cell, self.bracket_field(u, v))

    def d2(self, F, cell: PathCell, u, v, w, h: float = DEFAULT_FD_STEP) -> float:
        """de Rham d of a 2-form evaluator F(cell, f1, f2)."""

        def dd(a, rest1, rest2):
            return (F(self.translate(cell, a, h), rest1, rest2)
                    - F(self.translate(cell, a, -h), rest1, rest2)) / (2 * h)

        val = dd(u, v, w) - dd(v, u, w) + dd(w, u, v)
        val -= F(cell, self.bracket_field(u, v), w)
        val += F(cell, self.bracket_field(u, w), v)
        val -= F(cell, self.bracket_field(v, w), u)
        return val

    # -- fixtures shared across resolutions ------------------------------------------

    def make_fixtures(self, rng: np.random.Generator, samples: int = 3) -> dict:
        """Raw sample/tangent arrays on this model's grid, restrictable to any
        coarser grid of the same structure by striding, so that convergence
        studies compare the same underlying smooth data."""
        fx = {"M": self.M, "pairs": [], "loops2": [], "loops1": [],
              "paths3": [], "paths2": [], "paths1": []}
        for _ in range(samples):
            c1, c2, a1, a2 = self.random_composable_pair(rng)
            fx["pairs"].append((c1.samples, c2.samples, a1, a2))
            fx["loops2"].append((self.random_loop_cell(rng, 2).samples,
                                 self.random_loop_tangent(rng, 2)))
            fx["loops1"].append((self.random_loop_cell(rng, 1).samples,
                                 self.random_loop_tangent(rng),
                                 self.random_loop_tangent(rng)))
            fx["paths3"].append((self.random_path_cell(rng, 3).samples,
                                 self.random_path_tangent(rng, 3)))
            fx["paths2"].append((self.random_path_cell(rng, 2).samples,
                                 self.random_path_tangent(rng, 2),
                                 self.random_path_tangent(rng, 2)))
            fx["paths1"].append((self.random_path_cell(rng, 1).samples,
                                 self.random_path_tangent(rng),
                                 self.random_path_tangent(rng),
                                 self.random_path_tangent(rng)))
        return fx

    def _restrict(self, fixtures: dict) -> dict:
        stride, rem = divmod(fixtures["M"], self.M)
        if rem:
            raise ValueError("fixture grid is not a multiple of the model grid")
        if stride == 1:
            return fixtures
        out = {"M": self.M}
        for key in ("pairs", "loops2", "loops1", "paths3", "paths2", "paths1"):
            out[key] = [tuple(arr[::stride] for arr in item) for item in fixtures[key]]
        return out

    # -- the six component identities ---------------------------------------------------

    def verify(self, rng: np.random.Generator = None, samples: int = 3,
               h: float = DEFAULT_FD_STEP, fixtures: dict = None) -> dict:
        alg = self.algebra
        NM = NerveModel(algebra=alg)
        if fixtures is None:
            fixtures = self.make_fixtures(rng, samples)
        fixtures = self._restrict(fixtures)
        out = {}

        worst = 0.0
        for s1, s2, a1, a2 in fixtures["pairs"]:
            c1, c2 = self.make_loop(s1), self.make_loop(s2)
            val = self.alpha(c2, a2)
            mcell, mfield = self.m_v(c1, c2, a1, a2)
            val -= self.alpha(mcell, mfield)
            val += self.alpha(c1, a1)
            worst = max(worst, abs(val))
        out["eq1_delta_v_alpha"] = worst

        worst = 0.0
        for s, a in fixtures["loops2"]:
            cell = self.make_loop(s)
            dha = 0.0
            for l in range(3):
                fc, (fa,) = self.h_face(l, cell, a)
                dha += ((-1) ** l) * self.alpha(fc, fa)
            sc, (sa,) = self.v_source(cell, a)
            tc, (ta,) = self.v_target(cell, a)
            dvtro = self.tr_omega(sc, sa) - self.tr_omega(tc, ta)
            worst = max(worst, abs(0.5 * (-dha - dvtro) - self.eta(cell, a)))
        out["eq2_eta"] = worst

        worst = 0.0
        for s, u, v in fixtures["loops1"]:
            cell = self.make_loop(s)
            sc, (su, sv) = self.v_source(cell, u, v)
            tc, (tu, tv) = self.v_target(cell, u, v)
            dvtrth = self.tr_theta(sc, su, sv) - self.tr_theta(tc, tu, tv)
            dalpha = self.d1(lambda c, f: self.alpha(c, f), cell, u, v, h)
            worst = max(worst, abs(-self.segal(cell, u, v) - 0.5 * (dvtrth - dalpha)))
        out["eq3_omega"] = worst

        worst = 0.0
        for s, a in fixtures["paths3"]:
            cell = self.make_path(s)
            val = 0.0
            for l in range(4):
                fc, (fa,) = self.h_face(l, cell, a)
                val += ((-1) ** l) * self.tr_omega(fc, fa)
            worst = max(worst, abs(val))
        out["eq4_delta_h_tr_omega"] = worst

        worst = 0.0
        for s, u, v in fixtures["paths2"]:
            cell = self.make_path(s)
            dhtrth = 0.0
            for l in range(3):
                fc, (fu, fv) = self.h_face(l, cell, u, v)
                dhtrth += ((-1) ** l) * self.tr_theta(fc, fu, fv)
            dtro = self.d1(lambda c, f: self.tr_omega(c, f), cell, u, v, h)
            ev = NM.omega(cell.samples[-1],
                          u[-1].reshape(-1), v[-1].reshape(-1))
            worst = max(worst, abs(-0.5 * dhtrth - 0.5 * dtro + 0.5 * ev))
        out["eq5_ev02"] = worst

        worst = 0.0
        for s, u, v, w in fixtures["paths1"]:
            cell = self.make_path(s)
            dtrth = self.d2(lambda c, f1, f2: self.tr_theta(c, f1, f2), cell, u, v, w, h)
            ev = alg.pair(u[-1, 0], alg.bracket(v[-1, 0], w[-1, 0]))
            worst = max(worst, abs(0.5 * dtrth - 0.5 * ev))
        out["eq6_ev01"] = worst
        return out


# -- the finite double group of G ---------------------------------------------------


@dataclass
class FiniteDoubleModel:
    """The double group of G with trivial vertical structure: cells at
    bidegree (j, i) are points of the nerve level i; all vertical faces are
    the identity."""

    algebra: LieAlgebra = None

    def __post_init__(self):
        self.nerve = NerveModel(algebra=self.algebra)

    def delta_h(self, i: int, comp):
        from .forms import delta_evaluator

        return delta_evaluator(self.nerve, i, comp)

    def delta_v(self, j: int, comp):
        """Vertical simplicial differential: all faces are the identity, so
        the alternating sum is zero (even j) or a copy (odd j)."""
        if j % 2 == 0:
            return lambda x, *ts: 0.0
        return lambda x, *ts: comp(x, *ts)

    def triple_D(self, components: dict, h: float = DEFAULT_FD_STEP) -> dict:
        """components: {(j, i): evaluator}; returns the components of
        D-tilde = delta_h + (-1)^i delta_v + (-1)^{i+j} d."""
        from .forms import de_rham_evaluator

        out = {}
        targets = set()
        for (j, i) in components:
            targets |= {(j, i + 1), (j + 1, i), (j, i)}
        for (j, i) in targets:
            parts = []
            if (j, i - 1) in components:
                parts.append((1.0, self.delta_h(i - 1, components[(j, i - 1)])))
            if (j - 1, i) in components:
                parts.append((float((-1) ** i), self.delta_v(j - 1, components[(j - 1, i)])))
            if (j, i) in components:
                parts.append((float((-1) ** (i + j)),
                              de_rham_evaluator(self.nerve, i, components[(j, i)], h)))
            if not parts:
                continue

            def ev(x, *ts, _parts=tuple(parts)):
                return sum(c * f(x, *ts) for c, f in _parts)

            out[(j, i)] = ev
        return out

    def shifted_form_components(self) -> dict:
        """(0,2)-shifted 2-form: Omega at (0,2), minus the Cartan form at (0,1)."""
        return {(0, 2): lambda x, a, b: self.nerve.omega(x, a, b),
                (0, 1): lambda x, a, b, c: -self.nerve.theta(x, a, b, c)}

    def closedness_report(self, rng: np.random.Generator, samples: int = 3,
                          h: float = DEFAULT_FD_STEP) -> dict:
        """Residuals of the triple differential of the shifted form, split
        into the exact simplicial components and the finite-difference ones.
        """
        comps = self.shifted_form_components()
        degrees = {(0, 3): 2, (1, 2): 2, (0, 2): 3, (1, 1): 3, (0, 1): 4}
        res = self.residuals(comps, degrees, rng, samples, h)
        fd_keys = {(0, 2), (0, 1)}
        return {
            "components": {f"{j},{i}": v for (j, i), v in sorted(res.items())},
            "max_exact_residual": max((v for k, v in res.items() if k not in fd_keys),
                                      default=0.0),
            "max_fd_residual": max((v for k, v in res.items() if k in fd_keys),
                                   default=0.0),
        }

    def d_squared_residual(self, rng: np.random.Generator, samples: int = 3,
                           h: float = DEFAULT_FD_STEP) -> float:
        """D-tilde of D-tilde of a random bigraded 1-form family, evaluated
        on the 2-form components that avoid double finite differencing."""
        n = self.nerve.tangent_dim(1)
        C = rng.standard_normal((n, n))
        C = C - C.T
        c2 = rng.standard_normal(2 * n)
        comps = {(0, 1): lambda x, a, b: float(a @ C @ b),
                 (0, 2): lambda x, a: float(c2 @ a)}
        DD = self.triple_D(self.triple_D(comps, h), h)
        degrees = {(0, 3): 2, (1, 2): 2, (2, 1): 2, (1, 1): 3}
        worst = 0.0
        for (j, i), ev in DD.items():
            arity = degrees.get((j, i))
            if arity is None or i > self.nerve.top:
                continue
            for _ in range(samples):
                x = self.nerve.random_point(i, rng)
                ts = [self.nerve.random_tangent(i, rng) for _ in range(arity)]
                worst = max(worst, abs(ev(x, *ts)))
        return worst

    def residuals(self, components: dict, degrees: dict,
                  rng: np.random.Generator, samples: int = 3,
                  h: float = DEFAULT_FD_STEP) -> dict:
        """Max residuals of the triple differential of the given form;
        degrees[(j, i)] is the arity of the (j, i) component of the result."""
        D = self.triple_D(components, h)
        out = {}
        for (j, i), ev in D.items():
            arity = degrees.get((j, i))
            if arity is None or i > self.nerve.top:
                continue
            if arity > 0 and self.nerve.tangent_dim(i) == 0:
                continue
            worst = 0.0
            for _ in range(samples):
                x = self.nerve.random_point(i, rng)
                ts = [self.nerve.random_tangent(i, rng) for _ in range(arity)]
                worst = max(worst, abs(ev(x, *ts)))
            out[(j, i)] = worst
        return out
