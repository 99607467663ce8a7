"""The based-path/loop 2-group model of BG on a uniform grid.

Levels: 0 = point, 1 = based paths (R + 1 samples, g_0 = e), 2 = based loops
(3R + 1 samples, g_0 = g_{3R} = e), 3 = glued loop triples ("empty
tetrahedra").  R must be divisible by 6 so every reparametrization in the
face/degeneracy formulas is an exact index map.

Tangents are left-trivialized node fields; the flat layout keeps only the
free nodes (based nodes are pinned to zero, glued nodes are determined):
level 1 nodes 1..R, level 2 nodes 1..3R-1, level 3 the free nodes of
(a_0, a_2, a_1) as documented in ``_expand3``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import (GridPath, loop_velocity, path_velocity, random_loop,
                    random_path, trapezoid_weights, translate_path,
                    _fourier_coefficient_path)
from .liealg import LieAlgebra
from .model import SimplicialModel


@dataclass
class LoopModel(SimplicialModel):
    algebra: LieAlgebra = None
    R: int = 36
    name: str = "loop"
    top: int = 3

    def __post_init__(self):
        if self.R % 6:
            raise ValueError("grid resolution must be divisible by 6")

    # -- layout ----------------------------------------------------------------

    def tangent_dim(self, level: int) -> int:
        n = self.algebra.dim
        return {0: 0, 1: self.R * n, 2: (3 * self.R - 1) * n,
                3: (6 * self.R - 3) * n}[level]

    def _expand1(self, v: np.ndarray) -> np.ndarray:
        """Flat level-1 tangent -> full (R+1, n) node field, u_0 = 0."""
        n = self.algebra.dim
        out = np.zeros((self.R + 1, n))
        out[1:] = v.reshape(self.R, n)
        return out

    def _contract1(self, u: np.ndarray) -> np.ndarray:
        return u[1:].reshape(-1)

    def _expand2(self, v: np.ndarray) -> np.ndarray:
        """Flat level-2 tangent -> full (3R+1, n) loop field, zero at ends."""
        n = self.algebra.dim
        out = np.zeros((3 * self.R + 1, n))
        out[1:3 * self.R] = v.reshape(3 * self.R - 1, n)
        return out

    def _contract2(self, u: np.ndarray) -> np.ndarray:
        return u[1:3 * self.R].reshape(-1)

    def _expand3(self, v: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Flat level-3 tangent -> full loop fields (a_0, a_1, a_2).

        Free blocks, in order: a_0 nodes 1..3R-1, a_2 nodes R+1..3R-1,
        a_1 nodes R+1..2R-1.  Glued nodes: a_1 = a_0 on [0, R] and
        a_1 = a_2 on [2R, 3R]; a_2(j) = a_0(3R - j) for j <= R.
        """
        R, n = self.R, self.algebra.dim
        b0 = (3 * R - 1) * n
        b2 = (2 * R - 1) * n
        a0 = np.zeros((3 * R + 1, n))
        a0[1:3 * R] = v[:b0].reshape(3 * R - 1, n)
        a2 = np.zeros((3 * R + 1, n))
        a2[: R + 1] = a0[2 * R:][::-1]
        a2[R + 1:3 * R] = v[b0:b0 + b2].reshape(2 * R - 1, n)
        a1 = np.zeros((3 * R + 1, n))
        a1[: R + 1] = a0[: R + 1]
        a1[R + 1:2 * R] = v[b0 + b2:].reshape(R - 1, n)
        a1[2 * R:] = a2[2 * R:]
        return a0, a1, a2

    def _contract3(self, a0, a1, a2) -> np.ndarray:
        R = self.R
        return np.concatenate([a0[1:3 * R].reshape(-1),
                               a2[R + 1:3 * R].reshape(-1),
                               a1[R + 1:2 * R].reshape(-1)])

    # -- points ------------------------------------------------------------------

    def base_point(self, level: int):
        alg = self.algebra
        if level == 0:
            return None
        if level == 1:
            return GridPath(alg, np.stack([alg.identity()] * (self.R + 1)))
        const = GridPath(alg, np.stack([alg.identity()] * (3 * self.R + 1)))
        if level == 2:
            return const
        return (const, GridPath(alg, const.samples.copy()),
                GridPath(alg, const.samples.copy()))

    def _fixed_endpoint_path(self, x, y, rng: np.random.Generator) -> np.ndarray:
        """Random smooth samples (R+1, d, d) from x to y."""
        alg = self.algebra
        Q = random_path(alg, self.R, rng, scale=0.3)
        corr = alg.log(np.linalg.solve(Q.samples[-1], np.linalg.solve(x, y)))
        ts = np.arange(self.R + 1) / self.R
        return np.stack([x @ Q.samples[j] @ alg.exp(ts[j] * corr)
                         for j in range(self.R + 1)])

    def random_point(self, level: int, rng: np.random.Generator):
        alg, R = self.algebra, self.R
        if level == 0:
            return None
        if level == 1:
            return random_path(alg, R, rng)
        if level == 2:
            return random_loop(alg, 3 * R, rng)
        tau0 = random_loop(alg, 3 * R, rng)
        y = alg.random_group_element(rng)
        last = self._fixed_endpoint_path(y, alg.identity(), rng)
        mid1 = self._fixed_endpoint_path(tau0.samples[R], y, rng)
        mid2 = self._fixed_endpoint_path(tau0.samples[2 * R], y, rng)
        tau1 = GridPath(alg, np.concatenate(
            [tau0.samples[: R], mid1, last[1:]]))
        tau2 = GridPath(alg, np.concatenate(
            [tau0.samples[2 * R:][::-1][: R], mid2, last[1:]]))
        return (tau0, tau1, tau2)

    def random_tangent(self, level: int, rng: np.random.Generator) -> np.ndarray:
        """Smooth random tangent fields (low-mode Fourier), for clean
        convergence orders; falls back to the flat layout."""
        n = self.algebra.dim
        if level == 0:
            return np.zeros(0)
        if level == 1:
            xi = _fourier_coefficient_path(rng, n, 3, 0.5)
            ts = np.arange(self.R + 1) / self.R
            u = np.stack([xi(t) for t in ts]) * ts[:, None]
            return self._contract1(u)
        if level == 2:
            xi = _fourier_coefficient_path(rng, n, 3, 0.5)
            ts = np.arange(3 * self.R + 1) / (3 * self.R)
            u = np.stack([xi(t) for t in ts]) * (np.sin(np.pi * ts) ** 2)[:, None]
            return self._contract2(u)
        return rng.standard_normal(self.tangent_dim(3)) * 0.5

    def point_close(self, level: int, x, y, atol: float = 1e-10) -> bool:
        if level == 0:
            return True
        if level == 3:
            return all(np.allclose(a.samples, b.samples, atol=atol, rtol=0)
                       for a, b in zip(x, y))
        return bool(np.allclose(x.samples, y.samples, atol=atol, rtol=0))

    # -- faces and degeneracies ----------------------------------------------------

    def face(self, level: int, i: int, x):
        alg, R = self.algebra, self.R
        if level == 1:
            return None
        if level == 2:
            g = x.samples
            if i == 0:
                return GridPath(alg, g[: R + 1].copy())
            if i == 1:
                return GridPath(alg, g[2 * R:][::-1].copy())
            inv = np.linalg.inv(g[R])
            return GridPath(alg, np.stack([g[R + j] @ inv for j in range(R + 1)]))
        tau0, tau1, tau2 = x
        if i == 0:
            return GridPath(alg, tau0.samples.copy())
        if i == 1:
            return GridPath(alg, tau1.samples.copy())
        if i == 2:
            return GridPath(alg, tau2.samples.copy())
        inv = np.linalg.inv(tau0.samples[R])
        first = [tau0.samples[R + j] @ inv for j in range(R)]
        mid = [tau2.samples[j] @ inv for j in range(R, 2 * R)]
        last = [tau1.samples[2 * R - k] @ inv for k in range(R + 1)]
        return GridPath(alg, np.stack(first + mid + last))

    def tangent_face(self, level: int, i: int, x, v):
        alg, R = self.algebra, self.R
        if level == 1:
            return np.zeros(0)
        if level == 2:
            a = self._expand2(v)
            if i == 0:
                return self._contract1(a[: R + 1])
            if i == 1:
                return self._contract1(a[2 * R:][::-1])
            Ad = alg.Ad(x.samples[R])
            out = (a[R:2 * R + 1] - a[R]) @ Ad.T
            return self._contract1(out)
        a0, a1, a2 = self._expand3(v)
        if i == 0:
            return self._contract2(a0)
        if i == 1:
            return self._contract2(a1)
        if i == 2:
            return self._contract2(a2)
        tau0 = x[0]
        Ad = alg.Ad(tau0.samples[R])
        out = np.zeros((3 * R + 1, alg.dim))
        out[: R + 1] = a0[R:2 * R + 1] - a0[R]
        out[R:2 * R + 1] = a2[R:2 * R + 1] - a0[R]
        out[2 * R:] = a1[R:2 * R + 1][::-1] - a0[R]
        return self._contract2(out @ Ad.T)

    def degeneracy(self, level: int, j: int, x):
        alg, R = self.algebra, self.R
        if level == 0:
            return self.base_point(1)
        if level == 1:
            g = x.samples
            if j == 0:
                mid = np.stack([g[R]] * (R - 1))
                return GridPath(alg, np.concatenate([g, mid, g[::-1]]))
            ident = np.stack([alg.identity()] * R)
            return GridPath(alg, np.concatenate([ident, g, g[::-1][1:]]))
        # level 2 -> 3, forced by the simplicial identities
        if j == 0:
            tau2 = self.degeneracy(1, 0, self.face(2, 1, x))
            return (GridPath(alg, x.samples.copy()), GridPath(alg, x.samples.copy()), tau2)
        if j == 1:
            tau0 = self.degeneracy(1, 0, self.face(2, 0, x))
            return (tau0, GridPath(alg, x.samples.copy()), GridPath(alg, x.samples.copy()))
        tau0 = self.degeneracy(1, 1, self.face(2, 0, x))
        tau1 = self.degeneracy(1, 1, self.face(2, 1, x))
        return (tau0, tau1, GridPath(alg, x.samples.copy()))

    def tangent_degeneracy(self, level: int, j: int, x, v):
        R = self.R
        if level == 0:
            return np.zeros(self.tangent_dim(1))
        if level == 1:
            u = self._expand1(v)
            if j == 0:
                mid = np.stack([u[R]] * (R - 1))
                return self._contract2(np.concatenate([u, mid, u[::-1]]))
            zero = np.zeros((R, self.algebra.dim))
            return self._contract2(np.concatenate([zero, u, u[::-1][1:]]))
        a = self._expand2(v)
        if j == 0:
            t2 = self._expand2(self.tangent_degeneracy(
                1, 0, self.face(2, 1, x), self.tangent_face(2, 1, x, v)))
            return self._contract3(a, a, t2)
        if j == 1:
            t0 = self._expand2(self.tangent_degeneracy(
                1, 0, self.face(2, 0, x), self.tangent_face(2, 0, x, v)))
            return self._contract3(t0, a, a)
        t0 = self._expand2(self.tangent_degeneracy(
            1, 1, self.face(2, 0, x), self.tangent_face(2, 0, x, v)))
        t1 = self._expand2(self.tangent_degeneracy(
            1, 1, self.face(2, 1, x), self.tangent_face(2, 1, x, v)))
        return self._contract3(t0, t1, a)

    def translate(self, level: int, x, v, eps: float):
        if level == 0:
            return None
        if level == 1:
            return translate_path(x, self._expand1(v), eps)
        if level == 2:
            return translate_path(x, self._expand2(v), eps)
        fields = self._expand3(v)
        return tuple(translate_path(x[k], fields[k], eps) for k in range(3))

    def tangent_bracket(self, level: int, v, w):
        alg = self.algebra
        if level == 0:
            return np.zeros(0)

        def br(a, b):
            return np.stack([alg.bracket(a[j], b[j]) for j in range(a.shape[0])])

        if level == 1:
            return self._contract1(br(self._expand1(v), self._expand1(w)))
        if level == 2:
            return self._contract2(br(self._expand2(v), self._expand2(w)))
        av, aw = self._expand3(v), self._expand3(w)
        return self._contract3(*[br(av[k], aw[k]) for k in range(3)])

    # -- forms ----------------------------------------------------------------------

    def segal_form(self, x, a: np.ndarray, b: np.ndarray) -> float:
        """omega_tau(a, b) = integral over the circle of <a'(t), b(t)>,
        periodic central differences plus uniform quadrature."""
        alg = self.algebra
        N = 3 * self.R
        af, bf = self._expand2(a), self._expand2(b)
        total = 0.0
        for j in range(N):
            da = (af[(j + 1) % N] - af[(j - 1) % N]) * (N / 2.0)
            total += alg.pair(da, bf[j]) / N
        return float(total)

    def omega_p(self, gamma: GridPath, u: np.ndarray, v: np.ndarray) -> float:
        """omega^P = 1/2 integral of <u', v> - <u, v'> on a path (flat tangents)."""
        alg, R = self.algebra, self.R
        uf, vf = self._expand1(u), self._expand1(v)
        w = trapezoid_weights(R)

        def D(h):
            out = np.zeros_like(h)
            out[0] = (h[1] - h[0]) * R
            out[-1] = (h[-1] - h[-2]) * R
            out[1:-1] = (h[2:] - h[:-2]) * (R / 2.0)
            return out

        du, dv = D(uf), D(vf)
        total = sum(w[j] * (alg.pair(du[j], vf[j]) - alg.pair(uf[j], dv[j]))
                    for j in range(R + 1))
        return float(0.5 * total / R)

    def alpha_p(self, gamma: GridPath, u: np.ndarray) -> float:
        """alpha^P = integral of <velocity, u>, quadratured on edges via
        one-step logs (exact under split/reversal)."""
        alg, R = self.algebra, self.R
        uf = self._expand1(u)
        g = gamma.samples
        total = 0.0
        for j in range(R):
            lg = alg.log(np.linalg.solve(g[j], g[j + 1]))
            total += alg.pair(lg, 0.5 * (uf[j] + uf[j + 1]))
        return float(total)

    # -- evaluation maps into the nerve ------------------------------------------------

    def ev_point(self, level: int, x):
        """Simplicial map to the nerve: level 1 -> endpoint, level 2 ->
        (tau(2/3) tau(1/3)^{-1}, tau(1/3)), level 3 -> triple of ratios."""
        alg, R = self.algebra, self.R
        if level == 0:
            return np.zeros((0, alg.rep_dim, alg.rep_dim))
        if level == 1:
            return x.samples[R:R + 1].copy()
        if level == 2:
            g = x.samples
            return np.stack([g[2 * R] @ np.linalg.inv(g[R]), g[R]])
        tau0, tau1, tau2 = x
        g1 = tau0.samples[2 * R] @ np.linalg.inv(tau0.samples[R])
        g2 = tau0.samples[R]
        # third nerve slot from the glued structure: tau1(2/3) tau1(1/3)^{-1}
        # equals d_2 composites; use ev_2 on the composite face
        g0 = tau2.samples[2 * R] @ np.linalg.inv(tau2.samples[R])
        return np.stack([g0, g1, g2])

    def ev_tangent(self, level: int, x, v: np.ndarray) -> np.ndarray:
        alg, R = self.algebra, self.R
        if level == 0:
            return np.zeros(0)
        if level == 1:
            return self._expand1(v)[R]
        if level == 2:
            a = self._expand2(v)
            Ad = alg.Ad(x.samples[R])
            return np.concatenate([Ad @ (a[2 * R] - a[R]), a[R]])
        a0, a1, a2 = self._expand3(v)
        tau0, tau1, tau2 = x
        s1 = alg.Ad(tau0.samples[R]) @ (a0[2 * R] - a0[R])
        s2 = a0[R]
        s0 = alg.Ad(tau2.samples[R]) @ (a2[2 * R] - a2[R])
        return np.concatenate([s0, s1, s2])

    def shifted_form(self):
        from .forms import ShiftedForm

        def level2(x, a, b):
            return self.segal_form(x, a, b)

        return ShiftedForm(model=self, degree=2, shift=2, components={2: level2})
