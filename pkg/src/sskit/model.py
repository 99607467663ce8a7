"""Common interface for the concrete simplicial models.

A model exposes points at each level (arbitrary python objects), flat numpy
tangent vectors at a point, face/degeneracy maps and their tangent maps, a
translate operation x -> x . exp(eps v), and the levelwise Lie bracket on
tangents at the base point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .simplicial import IndexWord


class SimplicialModel:
    """Base class; concrete models implement the hooks below."""

    name: str = "abstract"
    top: int = 3

    # -- hooks ---------------------------------------------------------------

    def tangent_dim(self, level: int) -> int:
        raise NotImplementedError

    def base_point(self, level: int):
        raise NotImplementedError

    def random_point(self, level: int, rng: np.random.Generator):
        raise NotImplementedError

    def random_tangent(self, level: int, rng: np.random.Generator) -> np.ndarray:
        return rng.standard_normal(self.tangent_dim(level)) * 0.5

    def face(self, level: int, i: int, x):
        raise NotImplementedError

    def degeneracy(self, level: int, j: int, x):
        raise NotImplementedError

    def tangent_face(self, level: int, i: int, x, v: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def tangent_degeneracy(self, level: int, j: int, x, v: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def translate(self, level: int, x, v: np.ndarray, eps: float):
        """Move x in direction v by parameter eps (x . exp(eps v) slotwise)."""
        raise NotImplementedError

    def tangent_bracket(self, level: int, v: np.ndarray, w: np.ndarray) -> np.ndarray:
        """Pointwise/slotwise Lie bracket of left-trivialized tangents."""
        raise NotImplementedError

    def point_close(self, level: int, x, y, atol: float = 1e-10) -> bool:
        raise NotImplementedError

    # -- derived -------------------------------------------------------------

    def apply_word(self, w: IndexWord, x):
        lvl = w.level
        for kind, idx in w.ops:
            if kind == "d":
                x = self.face(lvl, idx, x)
                lvl -= 1
            else:
                x = self.degeneracy(lvl, idx, x)
                lvl += 1
        return x

    def apply_word_tangent(self, w: IndexWord, x, v: np.ndarray) -> np.ndarray:
        lvl = w.level
        for kind, idx in w.ops:
            if kind == "d":
                v = self.tangent_face(lvl, idx, x, v)
                x = self.face(lvl, idx, x)
                lvl -= 1
            else:
                v = self.tangent_degeneracy(lvl, idx, x, v)
                x = self.degeneracy(lvl, idx, x)
                lvl += 1
        return v

    def tangent_face_matrix(self, level: int, i: int, x=None) -> np.ndarray:
        """Matrix of the tangent face map at x (default: base point)."""
        if x is None:
            x = self.base_point(level)
        n, m = self.tangent_dim(level - 1), self.tangent_dim(level)
        M = np.zeros((n, m))
        for k in range(m):
            e = np.zeros(m)
            e[k] = 1.0
            M[:, k] = self.tangent_face(level, i, x, e)
        return M

    def tangent_degeneracy_matrix(self, level: int, j: int, x=None) -> np.ndarray:
        if x is None:
            x = self.base_point(level)
        n, m = self.tangent_dim(level + 1), self.tangent_dim(level)
        M = np.zeros((n, m))
        for k in range(m):
            e = np.zeros(m)
            e[k] = 1.0
            M[:, k] = self.tangent_degeneracy(level, j, x, e)
        return M

    def simplicial_identity_residual(self, rng: np.random.Generator, samples: int = 5) -> float:
        """Numerical check of the simplicial identities on points and tangents."""
        worst = 0.0
        for _ in range(samples):
            for l in range(2, self.top + 1):
                x = self.random_point(l, rng)
                v = self.random_tangent(l, rng)
                for j in range(l + 1):
                    for i in range(j):
                        a = self.tangent_face(l - 1, i, self.face(l, j, x),
                                              self.tangent_face(l, j, x, v))
                        b = self.tangent_face(l - 1, j - 1, self.face(l, i, x),
                                              self.tangent_face(l, i, x, v))
                        if np.asarray(a).size:
                            worst = max(worst, float(np.max(np.abs(a - b))))
                        if not self.point_close(l - 2, self.face(l - 1, i, self.face(l, j, x)),
                                                self.face(l - 1, j - 1, self.face(l, i, x)),
                                                atol=1e-9):
                            worst = max(worst, 1.0)
            for l in range(1, self.top):
                x = self.random_point(l, rng)
                v = self.random_tangent(l, rng)
                for j in range(l + 1):
                    y = self.degeneracy(l, j, x)
                    w = self.tangent_degeneracy(l, j, x, v)
                    for i in (j, j + 1):
                        worst = max(worst, float(np.max(np.abs(
                            self.tangent_face(l + 1, i, y, w) - v))))
                        if not self.point_close(l, self.face(l + 1, i, y), x, atol=1e-9):
                            worst = max(worst, 1.0)
        return worst


@dataclass
class LinearModel(SimplicialModel):
    """A simplicial vector space viewed as a simplicial manifold: points are
    vectors, tangent spaces are the vector spaces themselves, brackets vanish.
    """

    V: "object"
    name: str = "linear"

    def __post_init__(self):
        self.top = self.V.top

    def tangent_dim(self, level: int) -> int:
        return self.V.dims[level]

    def base_point(self, level: int):
        return np.zeros(self.V.dims[level])

    def random_point(self, level: int, rng: np.random.Generator):
        return rng.standard_normal(self.V.dims[level]) * 0.5

    def face(self, level: int, i: int, x):
        return self.V.face[(level, i)] @ x

    def degeneracy(self, level: int, j: int, x):
        return self.V.degeneracy[(level, j)] @ x

    def tangent_face(self, level: int, i: int, x, v):
        return self.V.face[(level, i)] @ v

    def tangent_degeneracy(self, level: int, j: int, x, v):
        return self.V.degeneracy[(level, j)] @ v

    def translate(self, level: int, x, v, eps: float):
        return x + eps * v

    def tangent_bracket(self, level: int, v, w):
        return np.zeros_like(v)

    def point_close(self, level: int, x, y, atol: float = 1e-10) -> bool:
        return bool(np.allclose(x, y, atol=atol, rtol=0))
