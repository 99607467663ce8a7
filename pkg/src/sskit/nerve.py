"""The nerve of a Lie group with its shifted symplectic structure.

Level p is the product of p copies of the group.  Points are arrays of shape
(p, d, d); tangents are left-trivialized slotwise, flattened to length
p * dim.  The 2-shifted form has a level-2 component Omega (a 2-form on
G x G) and a level-1 component -Theta (the Cartan 3-form on G).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .liealg import LieAlgebra
from .model import SimplicialModel


@dataclass
class NerveModel(SimplicialModel):
    algebra: LieAlgebra = None
    name: str = "nerve"
    top: int = 3

    def tangent_dim(self, level: int) -> int:
        return level * self.algebra.dim

    def _split(self, level: int, v: np.ndarray) -> np.ndarray:
        return v.reshape(level, self.algebra.dim) if level else v.reshape(0, self.algebra.dim)

    def base_point(self, level: int):
        return np.stack([self.algebra.identity()] * level) if level \
            else np.zeros((0, self.algebra.rep_dim, self.algebra.rep_dim))

    def random_point(self, level: int, rng: np.random.Generator):
        return np.stack([self.algebra.random_group_element(rng) for _ in range(level)]) \
            if level else self.base_point(0)

    def face(self, level: int, i: int, x):
        if i == 0:
            return x[1:].copy()
        if i == level:
            return x[:-1].copy()
        out = [x[j] for j in range(i - 1)]
        out.append(x[i - 1] @ x[i])
        out.extend(x[j] for j in range(i + 1, level))
        return np.stack(out) if out else self.base_point(0)

    def degeneracy(self, level: int, j: int, x):
        out = [x[k] for k in range(j)]
        out.append(self.algebra.identity())
        out.extend(x[k] for k in range(j, level))
        return np.stack(out)

    def tangent_face(self, level: int, i: int, x, v):
        vs = self._split(level, v)
        if i == 0:
            return vs[1:].reshape(-1)
        if i == level:
            return vs[:-1].reshape(-1)
        out = [vs[j] for j in range(i - 1)]
        # left-trivialized tangent of (g, h) -> g h: Ad_{h^{-1}} u + w
        out.append(self.algebra.Ad(np.linalg.inv(x[i])) @ vs[i - 1] + vs[i])
        out.extend(vs[j] for j in range(i + 1, level))
        return np.concatenate(out) if out else np.zeros(0)

    def tangent_degeneracy(self, level: int, j: int, x, v):
        vs = self._split(level, v)
        out = [vs[k] for k in range(j)]
        out.append(np.zeros(self.algebra.dim))
        out.extend(vs[k] for k in range(j, level))
        return np.concatenate(out)

    def translate(self, level: int, x, v, eps: float):
        vs = self._split(level, v)
        return np.stack([x[j] @ self.algebra.exp(eps * vs[j]) for j in range(level)]) \
            if level else x

    def tangent_bracket(self, level: int, v, w):
        vs, ws = self._split(level, v), self._split(level, w)
        return np.concatenate([self.algebra.bracket(vs[j], ws[j]) for j in range(level)]) \
            if level else np.zeros(0)

    def point_close(self, level: int, x, y, atol: float = 1e-10) -> bool:
        return bool(np.allclose(x, y, atol=atol, rtol=0))

    # -- the shifted symplectic structure -------------------------------------

    def omega(self, x, v: np.ndarray, w: np.ndarray) -> float:
        """Level-2 component at (g, h): <v1, Ad_h w2> - <w1, Ad_h v2>."""
        alg = self.algebra
        vs, ws = self._split(2, v), self._split(2, w)
        Adh = alg.Ad(x[1])
        return float(alg.pair(vs[0], Adh @ ws[1]) - alg.pair(ws[0], Adh @ vs[1]))

    def theta(self, x, u: np.ndarray, v: np.ndarray, w: np.ndarray) -> float:
        """Cartan 3-form on G: <u, [v, w]> in left-trivialized coordinates."""
        alg = self.algebra
        us, vs, ws = (self._split(1, t)[0] for t in (u, v, w))
        return float(alg.pair(us, alg.bracket(vs, ws)))

    def shifted_form(self):
        """The 2-shifted 2-form: level-2 component omega, level-1 component
        minus the Cartan 3-form."""
        from .forms import ShiftedForm

        def level1(x, *tangents):
            return -self.theta(x, *tangents)

        def level2(x, *tangents):
            return self.omega(x, *tangents)

        return ShiftedForm(model=self, degree=2, shift=2,
                           components={1: level1, 2: level2})

    def van_est_matrix(self) -> np.ndarray:
        """Matrix of the pairing (v, w) -> -Omega_(e,e)((w, 0), (0, v)) on the
        algebra, expected to recover the invariant pairing."""
        n = self.algebra.dim
        M = np.zeros((n, n))
        base = self.base_point(2)
        for a in range(n):
            for b in range(n):
                v = np.zeros(2 * n)
                w = np.zeros(2 * n)
                w[a] = 1.0       # first slot carries w
                v[n + b] = 1.0   # second slot carries v
                M[a, b] = -self.omega(base, w, v)
        return M
