"""Manin triples, local factorization in the double group, the symplectic
double group Gamma, and the associated local Lie 2-group with its shifted
form, correction form beta, and comparison maps Phi to the nerve.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm_frechet

from .liealg import LieAlgebra, builtin_algebra, load_algebra
from .model import SimplicialModel

FACTORIZE_TOL = 1e-12
FACTORIZE_MAX_ITER = 50


@dataclass
class ManinTriple:
    """Quadratic Lie algebra split into two isotropic subalgebras.

    ``plus_basis`` / ``minus_basis``: (n, k) matrices whose columns are the
    subalgebra bases in ambient coordinates.
    """

    algebra: LieAlgebra
    plus_basis: np.ndarray
    minus_basis: np.ndarray
    name: str = "manin"

    def __post_init__(self):
        self.plus_basis = np.asarray(self.plus_basis, dtype=float)
        self.minus_basis = np.asarray(self.minus_basis, dtype=float)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def check(self) -> dict:
        """Subalgebra closure, isotropy, complementarity residuals."""
        alg = self.algebra
        out = {}
        for label, B in (("plus", self.plus_basis), ("minus", self.minus_basis)):
            k = B.shape[1]
            worst_cl = 0.0
            worst_iso = 0.0
            # orthogonal complement of B for closure testing
            q, _ = np.linalg.qr(B)
            P_perp = np.eye(self.dim) - q @ q.T
            for i in range(k):
                for j in range(k):
                    br = alg.bracket(B[:, i], B[:, j])
                    worst_cl = max(worst_cl, float(np.max(np.abs(P_perp @ br))))
                    worst_iso = max(worst_iso, abs(alg.pair(B[:, i], B[:, j])))
            out[f"{label}_closure_residual"] = worst_cl
            out[f"{label}_isotropy_residual"] = worst_iso
        stacked = np.hstack([self.plus_basis, self.minus_basis])
        s = np.linalg.svd(stacked, compute_uv=False)
        out["complement_min_singular_value"] = float(s.min()) if s.size else 0.0
        out["complementary"] = bool(
            stacked.shape[1] == self.dim and s.min() > 1e-9 * s.max())
        out["is_manin_triple"] = bool(
            out["complementary"]
            and out["plus_closure_residual"] <= 1e-12
            and out["minus_closure_residual"] <= 1e-12
            and out["plus_isotropy_residual"] <= 1e-12
            and out["minus_isotropy_residual"] <= 1e-12)
        return out

    # -- exponentials of the subgroups -------------------------------------------

    def exp_plus(self, c: np.ndarray) -> np.ndarray:
        return self.algebra.exp(self.plus_basis @ c)

    def exp_minus(self, c: np.ndarray) -> np.ndarray:
        return self.algebra.exp(self.minus_basis @ c)

    def factorize(self, g: np.ndarray, order: str = "plus-minus",
                  tol: float = FACTORIZE_TOL) -> tuple[np.ndarray, np.ndarray]:
        """Solve exp(xi) exp(eta) = g with xi, eta in the two subalgebras
        (order "plus-minus": xi in h_+; "minus-plus": xi in h_-).

        Gauss-Newton on the subalgebra coordinates with exact Frechet
        derivatives of the matrix exponential.  Returns the two group
        factors; raises on non-convergence (outside the local neighborhood).
        """
        alg = self.algebra
        B1 = self.plus_basis if order == "plus-minus" else self.minus_basis
        B2 = self.minus_basis if order == "plus-minus" else self.plus_basis
        k1, k2 = B1.shape[1], B2.shape[1]
        c = np.zeros(k1 + k2)
        d = alg.rep_dim
        for _ in range(FACTORIZE_MAX_ITER):
            X = alg.to_matrix(B1 @ c[:k1])
            Y = alg.to_matrix(B2 @ c[k1:])
            E1, E2 = alg.exp(B1 @ c[:k1]), alg.exp(B2 @ c[k1:])
            Fv = (E1 @ E2 - g).reshape(-1)
            if np.max(np.abs(Fv)) < tol:
                return E1, E2
            J = np.zeros((d * d, k1 + k2))
            for i in range(k1):
                dE = expm_frechet(X, alg.to_matrix(B1[:, i]), compute_expm=False)
                J[:, i] = (dE @ E2).reshape(-1)
            for i in range(k2):
                dE = expm_frechet(Y, alg.to_matrix(B2[:, i]), compute_expm=False)
                J[:, k1 + i] = (E1 @ dE).reshape(-1)
            step, *_ = np.linalg.lstsq(J, -Fv, rcond=None)
            c = c + step
        raise RuntimeError("factorization did not converge "
                           "(element outside the local neighborhood)")

    def to_config(self) -> dict:
        cfg = self.algebra.to_config()
        cfg["plus_basis"] = self.plus_basis.tolist()
        cfg["minus_basis"] = self.minus_basis.tolist()
        return cfg


def builtin_triple(name: str) -> ManinTriple:
    if name == "aff1-double":
        alg = builtin_algebra("aff1-double")
        E = np.eye(4)
        return ManinTriple(alg, plus_basis=E[:, :2], minus_basis=E[:, 2:], name=name)
    if name == "sl2c-iwasawa":
        alg = builtin_algebra("sl2c-iwasawa")
        E = np.eye(6)
        return ManinTriple(alg, plus_basis=E[:, :3], minus_basis=E[:, 3:], name=name)
    raise KeyError(f"unknown triple {name!r}")


def load_triple(name_or_path: str) -> ManinTriple:
    try:
        return builtin_triple(name_or_path)
    except KeyError:
        pass
    import json
    with open(name_or_path) as fh:
        cfg = json.load(fh)
    alg = LieAlgebra.from_config(cfg)
    return ManinTriple(alg, plus_basis=np.array(cfg["plus_basis"], dtype=float),
                       minus_basis=np.array(cfg["minus_basis"], dtype=float),
                       name=cfg.get("name", "custom"))


# -- the double group ------------------------------------------------------------


@dataclass(frozen=True)
class GammaElement:
    """(h2, a2, a1, h1) with phi_+(h2) phi_-(a1) = phi_-(a2) phi_+(h1)."""

    h2: np.ndarray
    a2: np.ndarray
    a1: np.ndarray
    h1: np.ndarray

    def constraint_residual(self) -> float:
        return float(np.max(np.abs(self.h2 @ self.a1 - self.a2 @ self.h1)))


def gamma_complete(triple: ManinTriple, h1: np.ndarray, a2: np.ndarray) -> GammaElement:
    """The element of the double group with given source leg (h1, a2):
    factorize phi_-(a2) phi_+(h1) = phi_+(h2) phi_-(a1)."""
    h2, a1 = triple.factorize(a2 @ h1, order="plus-minus")
    return GammaElement(h2=h2, a2=a2, a1=a1, h1=h1)


def m_h(x: GammaElement, y: GammaElement) -> GammaElement:
    """Horizontal multiplication; composable when h1 of x equals h2 of y."""
    return GammaElement(h2=x.h2, a2=x.a2 @ y.a2, a1=x.a1 @ y.a1, h1=y.h1)


def m_v(x: GammaElement, y: GammaElement) -> GammaElement:
    """Vertical multiplication; composable when a1 of x equals a2 of y."""
    return GammaElement(h2=x.h2 @ y.h2, a2=x.a2, a1=y.a1, h1=x.h1 @ y.h1)


def omega_h(triple: ManinTriple, xi: GammaElement,
            V: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray],
            W: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]) -> float:
    """The symplectic form of the double group.

    V, W are tangents at xi as left-trivialized ambient-coordinate vectors
    per slot, ordered (h2, a2, a1, h1); they must satisfy the linearized
    constraint.  Formula: <theta^l at h2, theta^r at a1> - <theta^l at a2,
    theta^r at h1>, antisymmetrized.
    """
    alg = triple.algebra
    Ad_a1 = alg.Ad(xi.a1)
    Ad_h1 = alg.Ad(xi.h1)

    def half(A, B):
        return alg.pair(A[0], Ad_a1 @ B[2]) - alg.pair(A[1], Ad_h1 @ B[3])

    return float(half(V, W) - half(W, V))


def tangent_constraint_residual(triple: ManinTriple, xi: GammaElement, V) -> float:
    """Residual of the linearized constraint
    Ad_{a1^{-1}} v_{h2} + v_{a1} = Ad_{h1^{-1}} v_{a2} + v_{h1}."""
    alg = triple.algebra
    lhs = alg.Ad(np.linalg.inv(xi.a1)) @ V[0] + V[2]
    rhs = alg.Ad(np.linalg.inv(xi.h1)) @ V[1] + V[3]
    return float(np.max(np.abs(lhs - rhs)))


# -- the bar model -----------------------------------------------------------------


@dataclass
class ManinModel(SimplicialModel):
    """The local Lie 2-group of a Manin triple.

    Level 1 points: (a, h) in H_- x H_+.  Level 2 points: tuples
    (a3, h3, a2, a1, h2, h1) where (h3, a2, a1, h2) is a GammaElement.
    Tangent layout level 1: subalgebra coordinates (c_a, c_h); level 2:
    (c_a3, c_a2, c_h2, c_h1) with the gamma-internal pair (h3, a1) tangents
    solved from the linearized constraint.
    """

    triple: ManinTriple = None
    name: str = "manin"
    top: int = 2

    @property
    def algebra(self) -> LieAlgebra:
        return self.triple.algebra

    @property
    def km(self) -> int:
        return self.triple.minus_basis.shape[1]

    @property
    def kp(self) -> int:
        return self.triple.plus_basis.shape[1]

    def tangent_dim(self, level: int) -> int:
        n = self.km + self.kp
        return {0: 0, 1: n, 2: 2 * n}[level]

    def base_point(self, level: int):
        e = self.algebra.identity()
        if level == 0:
            return None
        if level == 1:
            return (e, e)
        return (e, e, e, e, e, e)

    def random_point(self, level: int, rng: np.random.Generator, scale: float = 0.35):
        t = self.triple
        if level == 0:
            return None
        if level == 1:
            return (t.exp_minus(rng.standard_normal(self.km) * scale),
                    t.exp_plus(rng.standard_normal(self.kp) * scale))
        a3 = t.exp_minus(rng.standard_normal(self.km) * scale)
        a2 = t.exp_minus(rng.standard_normal(self.km) * scale)
        h2 = t.exp_plus(rng.standard_normal(self.kp) * scale)
        h1 = t.exp_plus(rng.standard_normal(self.kp) * scale)
        gam = gamma_complete(t, h2, a2)
        return (a3, gam.h2, a2, gam.a1, h2, h1)

    # -- tangent bookkeeping ---------------------------------------------------

    def _split1(self, v: np.ndarray):
        return v[: self.km], v[self.km:]

    def _split2(self, v: np.ndarray):
        km, kp = self.km, self.kp
        return (v[:km], v[km:2 * km], v[2 * km:2 * km + kp], v[2 * km + kp:])

    def _gamma_dependent(self, x, c_a2: np.ndarray, c_h2: np.ndarray):
        """Solve the linearized constraint for the (h3, a1) tangents.

        Returns ambient-coordinate vectors (w_h3, w_a1) with
        Ad_{a1^{-1}} w_h3 + w_a1 = Ad_{h2^{-1}} v_a2 + v_h2.
        """
        t, alg = self.triple, self.algebra
        a3, h3, a2, a1, h2, h1 = x
        rhs = alg.Ad(np.linalg.inv(h2)) @ (t.minus_basis @ c_a2) + t.plus_basis @ c_h2
        M = np.hstack([alg.Ad(np.linalg.inv(a1)) @ t.plus_basis, t.minus_basis])
        sol = np.linalg.solve(M, rhs)
        return t.plus_basis @ sol[: self.kp], t.minus_basis @ sol[self.kp:]

    def gamma_tangent(self, x, v: np.ndarray):
        """Full tangent 4-tuple (w_h3, v_a2, w_a1, v_h2) of the gamma factor
        in ambient coordinates, from the flat level-2 tangent."""
        t = self.triple
        c_a3, c_a2, c_h2, c_h1 = self._split2(v)
        w_h3, w_a1 = self._gamma_dependent(x, c_a2, c_h2)
        return (w_h3, t.minus_basis @ c_a2, w_a1, t.plus_basis @ c_h2)

    # -- simplicial structure ----------------------------------------------------

    def face(self, level: int, i: int, x):
        if level == 1:
            return None
        a3, h3, a2, a1, h2, h1 = x
        if i == 0:
            return (a1, h1)
        if i == 1:
            return (a3 @ a2, h2 @ h1)
        return (a3, h3)

    def tangent_face(self, level: int, i: int, x, v):
        if level == 1:
            return np.zeros(0)
        t, alg = self.triple, self.algebra
        a3, h3, a2, a1, h2, h1 = x
        c_a3, c_a2, c_h2, c_h1 = self._split2(v)
        if i == 0:
            w_h3, w_a1 = self._gamma_dependent(x, c_a2, c_h2)
            ca1 = np.linalg.lstsq(t.minus_basis, w_a1, rcond=None)[0]
            return np.concatenate([ca1, c_h1])
        if i == 1:
            va = np.linalg.lstsq(
                t.minus_basis,
                alg.Ad(np.linalg.inv(a2)) @ (t.minus_basis @ c_a3) + t.minus_basis @ c_a2,
                rcond=None)[0]
            vh = np.linalg.lstsq(
                t.plus_basis,
                alg.Ad(np.linalg.inv(h1)) @ (t.plus_basis @ c_h2) + t.plus_basis @ c_h1,
                rcond=None)[0]
            return np.concatenate([va, vh])
        w_h3, _ = self._gamma_dependent(x, c_a2, c_h2)
        ch3 = np.linalg.lstsq(t.plus_basis, w_h3, rcond=None)[0]
        return np.concatenate([c_a3, ch3])

    def degeneracy(self, level: int, j: int, x):
        e = self.algebra.identity()
        if level == 0:
            return (e, e)
        a, h = x
        if j == 0:
            return (e, e, a, a, e, h)
        return (a, h, e, e, h, e)

    def tangent_degeneracy(self, level: int, j: int, x, v):
        if level == 0:
            return np.zeros(self.tangent_dim(1))
        ca, ch = self._split1(v)
        zm, zp = np.zeros(self.km), np.zeros(self.kp)
        if j == 0:
            return np.concatenate([zm, ca, zp, ch])
        return np.concatenate([ca, zm, ch, zp])

    def translate(self, level: int, x, v, eps: float):
        t = self.triple
        if level == 0:
            return None
        if level == 1:
            ca, ch = self._split1(v)
            return (x[0] @ t.exp_minus(eps * ca), x[1] @ t.exp_plus(eps * ch))
        a3, h3, a2, a1, h2, h1 = x
        c_a3, c_a2, c_h2, c_h1 = self._split2(v)
        a3n = a3 @ t.exp_minus(eps * c_a3)
        a2n = a2 @ t.exp_minus(eps * c_a2)
        h2n = h2 @ t.exp_plus(eps * c_h2)
        h1n = h1 @ t.exp_plus(eps * c_h1)
        gam = gamma_complete(t, h2n, a2n)
        return (a3n, gam.h2, a2n, gam.a1, h2n, h1n)

    def tangent_bracket(self, level: int, v, w):
        alg, t = self.algebra, self.triple
        if level == 0:
            return np.zeros(0)

        def sub_bracket(B, c1, c2):
            br = alg.bracket(B @ c1, B @ c2)
            return np.linalg.lstsq(B, br, rcond=None)[0]

        if level == 1:
            va, vh = self._split1(v)
            wa, wh = self._split1(w)
            return np.concatenate([sub_bracket(t.minus_basis, va, wa),
                                   sub_bracket(t.plus_basis, vh, wh)])
        v1, v2, v3, v4 = self._split2(v)
        w1, w2, w3, w4 = self._split2(w)
        return np.concatenate([sub_bracket(t.minus_basis, v1, w1),
                               sub_bracket(t.minus_basis, v2, w2),
                               sub_bracket(t.plus_basis, v3, w3),
                               sub_bracket(t.plus_basis, v4, w4)])

    def point_close(self, level: int, x, y, atol: float = 1e-10) -> bool:
        if level == 0:
            return True
        return all(np.allclose(a, b, atol=atol, rtol=0) for a, b in zip(x, y))

    # -- forms and comparison maps ----------------------------------------------

    def omega_bar(self, x, v: np.ndarray, w: np.ndarray) -> float:
        """Pullback of the double-group symplectic form along the projection
        to the gamma factor."""
        a3, h3, a2, a1, h2, h1 = x
        xi = GammaElement(h2=h3, a2=a2, a1=a1, h1=h2)
        return omega_h(self.triple, xi, self.gamma_tangent(x, v),
                       self.gamma_tangent(x, w))

    def beta(self, x, v: np.ndarray, w: np.ndarray) -> float:
        """beta = <theta^l of the minus factor, theta^r of the plus factor>."""
        t, alg = self.triple, self.algebra
        a, h = x
        Ad_h = alg.Ad(h)
        va, vh = self._split1(v)
        wa, wh = self._split1(w)
        return float(alg.pair(t.minus_basis @ va, Ad_h @ (t.plus_basis @ wh))
                     - alg.pair(t.minus_basis @ wa, Ad_h @ (t.plus_basis @ vh)))

    def phi_point(self, level: int, x):
        """The comparison map to the nerve: products of the factors."""
        alg = self.algebra
        if level == 0:
            return np.zeros((0, alg.rep_dim, alg.rep_dim))
        if level == 1:
            a, h = x
            return (a @ h)[None, :, :]
        a3, h3, a2, a1, h2, h1 = x
        return np.stack([a3 @ h3, a1 @ h1])

    def phi_tangent(self, level: int, x, v: np.ndarray) -> np.ndarray:
        alg, t = self.algebra, self.triple
        if level == 0:
            return np.zeros(0)
        if level == 1:
            a, h = x
            ca, ch = self._split1(v)
            return alg.Ad(np.linalg.inv(h)) @ (t.minus_basis @ ca) + t.plus_basis @ ch
        a3, h3, a2, a1, h2, h1 = x
        c_a3, c_a2, c_h2, c_h1 = self._split2(v)
        w_h3, w_a1 = self._gamma_dependent(x, c_a2, c_h2)
        slot1 = alg.Ad(np.linalg.inv(h3)) @ (t.minus_basis @ c_a3) + w_h3
        slot2 = alg.Ad(np.linalg.inv(h1)) @ w_a1 + t.plus_basis @ c_h1
        return np.concatenate([slot1, slot2])

    def shifted_form(self):
        from .forms import ShiftedForm

        return ShiftedForm(model=self, degree=2, shift=2,
                           components={2: lambda x, a, b: self.omega_bar(x, a, b)})

    def beta_form(self):
        from .forms import ShiftedForm

        return ShiftedForm(model=self, degree=1, shift=2,
                           components={1: lambda x, a, b: self.beta(x, a, b)})
