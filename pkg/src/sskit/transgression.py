"""Transgression of forms to path spaces and its compatibilities.

The path space of a simplicial level carries paths sampled on a uniform grid;
transgression sends a k-form on the level to a (k-1)-form on its path space by
contracting with the path velocity and integrating with trapezoid weights.
Velocities use the summation-by-parts stencil (central interior, one-sided
ends); face maps act pointwise and transport node velocities by the pointwise
tangent maps, which keeps the compatibility with the simplicial differential
machine-exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import _fourier_coefficient_path, trapezoid_weights
from .nerve import NerveModel

DEFAULT_FD_STEP = 1e-4
MIN_RESOLUTION = 6


@dataclass
class PathPoint:
    """A path in a power of G: samples (R+1, slots, d, d) and the
    left-trivialized node velocity (R+1, slots, n)."""

    samples: np.ndarray
    velocity: np.ndarray


@dataclass
class NervePathSpace:
    """Paths in the levels of the nerve model, on a uniform grid of R
    segments.  Tangents are node fields of shape (R+1, level * n)."""

    model: NerveModel = None
    R: int = 60

    def __post_init__(self):
        if self.R < MIN_RESOLUTION:
            raise ValueError("path resolution too small")

    def _velocity(self, samples: np.ndarray) -> np.ndarray:
        alg = self.model.algebra
        R = samples.shape[0] - 1
        slots = samples.shape[1]
        out = np.zeros((R + 1, slots, alg.dim))
        for s in range(slots):
            out[0, s] = alg.log(np.linalg.solve(samples[0, s], samples[1, s])) * R
            out[R, s] = alg.log(np.linalg.solve(samples[R - 1, s], samples[R, s])) * R
            for k in range(1, R):
                out[k, s] = alg.log(np.linalg.solve(
                    samples[k - 1, s], samples[k + 1, s])) * (R / 2.0)
        return out

    def make(self, samples: np.ndarray) -> PathPoint:
        return PathPoint(samples, self._velocity(samples))

    def random_point(self, level: int, rng: np.random.Generator) -> PathPoint:
        """Free smooth path (no basepoint condition) in the level."""
        alg, R = self.model.algebra, self.R
        slots = max(level, 1) if level > 0 else 0
        samples = np.zeros((R + 1, level, alg.rep_dim, alg.rep_dim))
        for s in range(level):
            xi = _fourier_coefficient_path(rng, alg.dim, 2, 0.4)
            g = alg.exp(rng.standard_normal(alg.dim) * 0.4)
            samples[0, s] = g
            for j in range(R):
                g = g @ alg.exp(xi((j + 0.5) / R) / R)
                samples[j + 1, s] = g
        return self.make(samples)

    def random_tangent(self, level: int, rng: np.random.Generator) -> np.ndarray:
        alg, R = self.model.algebra, self.R
        ts = np.arange(R + 1) / R
        out = np.zeros((R + 1, level * alg.dim))
        for s in range(level):
            xi = _fourier_coefficient_path(rng, alg.dim, 3, 0.5)
            out[:, s * alg.dim:(s + 1) * alg.dim] = np.stack([xi(t) for t in ts])
        return out

    def face(self, level: int, i: int, p: PathPoint, *fields):
        """Pointwise nerve face; tangent fields and the velocity are pushed
        by the pointwise tangent map."""
        nm, R = self.model, self.R
        nd = nm.tangent_dim(level - 1)
        new_samples = np.stack([nm.face(level, i, p.samples[j]) for j in range(R + 1)])
        n = nm.algebra.dim

        def push(field):
            out = np.zeros((R + 1, nd))
            for j in range(R + 1):
                out[j] = nm.tangent_face(level, i, p.samples[j], field[j])
            return out

        vel = push(p.velocity.reshape(R + 1, -1)).reshape(R + 1, level - 1, n)
        return PathPoint(new_samples, vel), tuple(push(f) for f in fields)

    def translate(self, level: int, p: PathPoint, field: np.ndarray,
                  eps: float) -> PathPoint:
        out = np.stack([self.model.translate(level, p.samples[j], field[j], eps)
                        for j in range(self.R + 1)])
        return self.make(out)

    def bracket(self, level: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.zeros_like(a)
        for j in range(a.shape[0]):
            out[j] = self.model.tangent_bracket(level, a[j], b[j])
        return out

    # -- transgression ---------------------------------------------------------------

    def transgress(self, level: int, comp):
        """(k-1)-form evaluator on path points from a k-form evaluator on the
        level: trapezoid quadrature of the contraction with the velocity."""
        w = trapezoid_weights(self.R)

        def ev(p: PathPoint, *fields):
            total = 0.0
            for j in range(self.R + 1):
                vel = p.velocity[j].reshape(-1)
                total += w[j] * comp(p.samples[j], vel,
                                     *(f[j] for f in fields)) / self.R
            return float(total)

        return ev

    def d_path(self, level: int, F, p: PathPoint, fields,
               h: float = DEFAULT_FD_STEP) -> float:
        """Palais-formula de Rham differential of an evaluator F on the path
        space, with constant left-trivialized node extensions."""
        q1 = len(fields)
        total = 0.0
        for i in range(q1):
            rest = fields[:i] + fields[i + 1:]
            plus = F(self.translate(level, p, fields[i], h), *rest)
            minus = F(self.translate(level, p, fields[i], -h), *rest)
            total += ((-1) ** i) * (plus - minus) / (2 * h)
        for i in range(q1):
            for j in range(i + 1, q1):
                br = self.bracket(level, fields[i], fields[j])
                rest = tuple(fields[k] for k in range(q1) if k != i and k != j)
                total += ((-1) ** (i + j)) * F(p, br, *rest)
        return total


def d_identity_residual(ps: NervePathSpace, level: int, comp, arity: int,
                        rng: np.random.Generator, samples: int = 3,
                        h: float = DEFAULT_FD_STEP) -> float:
    """Residual of tr(d nu) = ev_1^* nu - ev_0^* nu - d tr(nu) for a k-form
    nu on the given level (arity = k)."""
    from .forms import de_rham_evaluator

    d_nu = de_rham_evaluator(ps.model, level, comp, h)
    tr_d = ps.transgress(level, d_nu)
    tr = ps.transgress(level, comp)
    worst = 0.0
    for _ in range(samples):
        p = ps.random_point(level, rng)
        fields = tuple(ps.random_tangent(level, rng) for _ in range(arity))
        lhs = tr_d(p, *fields)
        rhs = comp(p.samples[-1], *(f[-1] for f in fields))
        rhs -= comp(p.samples[0], *(f[0] for f in fields))
        rhs -= ps.d_path(level, tr, p, fields, h)
        worst = max(worst, abs(lhs - rhs))
    return worst


def delta_identity_residual(ps: NervePathSpace, level: int, comp, arity: int,
                            rng: np.random.Generator, samples: int = 3) -> float:
    """Residual of tr(delta nu) = delta tr(nu) for a k-form nu on the given
    level, evaluated on paths one level up (both sides exact sums)."""
    from .forms import delta_evaluator

    tr_delta = ps.transgress(level + 1, delta_evaluator(ps.model, level, comp))
    tr = ps.transgress(level, comp)
    worst = 0.0
    for _ in range(samples):
        p = ps.random_point(level + 1, rng)
        fields = tuple(ps.random_tangent(level + 1, rng) for _ in range(arity - 1))
        lhs = tr_delta(p, *fields)
        rhs = 0.0
        for i in range(level + 2):
            fp, ff = ps.face(level + 1, i, p, *fields)
            rhs += ((-1) ** i) * tr(fp, *ff)
        worst = max(worst, abs(lhs - rhs))
    return worst


def transgression_identities(algebra, R: int, rng: np.random.Generator,
                             samples: int = 3, h: float = DEFAULT_FD_STEP) -> dict:
    """Both compatibilities of the transgression on nerve path spaces:
    a constant-coefficient 2-form on the group level, the multiplicative
    2-form on the level of pairs, and the simplicial compatibility."""
    nm = NerveModel(algebra=algebra)
    ps = NervePathSpace(model=nm, R=R)
    n = algebra.dim
    C = rng.standard_normal((n, n))
    C = C - C.T

    def const_two_form(x, a, b):
        return float(a @ C @ b)

    out = {
        "d_identity_constant": d_identity_residual(ps, 1, const_two_form, 2,
                                                   rng, samples, h),
        "d_identity_omega": d_identity_residual(ps, 2, nm.omega, 2, rng, samples, h),
        "delta_identity_omega": delta_identity_residual(ps, 2, nm.omega, 2,
                                                        rng, samples),
    }
    out["max_d_residual"] = max(out["d_identity_constant"], out["d_identity_omega"])
    out["max_delta_residual"] = out["delta_identity_omega"]
    return out


def transgression_oracles(algebra, R: int, rng: np.random.Generator) -> dict:
    """Closed-form checks of the transgression quadrature itself."""
    nm = NerveModel(algebra=algebra)
    ps = NervePathSpace(model=nm, R=R)
    n = algebra.dim
    out = {}

    # endpoint evaluation of the transgressed exact 1-forms: for each
    # coordinate form dx^k, tr(dx^k) on a path equals the net log increment,
    # which for a straight path exp(t a) is a_k.
    a = rng.standard_normal(n) * 0.5
    ts = np.arange(R + 1) / R
    straight = np.stack([algebra.exp(t * a) for t in ts])[:, None]
    p = ps.make(straight)
    worst = 0.0
    for k in range(n):
        comp = (lambda x, v, _k=k: float(v[_k]))
        worst = max(worst, abs(ps.transgress(1, comp)(p) - a[k]))
    out["straight_path_coordinate"] = worst

    # straight path, constant tangents: tr of the Cartan 3-form is the
    # constant integrand <a, [u, v]>.
    u, v = rng.standard_normal(n), rng.standard_normal(n)
    uf = np.tile(u, (R + 1, 1))
    vf = np.tile(v, (R + 1, 1))
    val = ps.transgress(1, nm.theta)(p, uf, vf)
    out["straight_path_cartan"] = abs(val - algebra.pair(a, algebra.bracket(u, v)))
    return out


def quadrature_order(algebra, rng: np.random.Generator,
                     R_coarse: int = 24, R_fine: int = 48) -> float:
    """Observed convergence order of a transgressed form on a shared smooth
    fixture sampled at two resolutions."""
    nm = NerveModel(algebra=algebra)
    n = algebra.dim
    if n < 2:
        return np.inf
    xi = _fourier_coefficient_path(rng, n, 2, 0.4)
    eta = _fourier_coefficient_path(rng, n, 3, 0.5)
    C = rng.standard_normal((n, n))
    C = C - C.T

    def comp(x, v, u):
        return float(v @ C @ u)

    def value(R):
        ps = NervePathSpace(model=nm, R=R)
        ts = np.arange(R + 1) / R
        g = [algebra.identity()]
        for j in range(R):
            g.append(g[-1] @ algebra.exp(xi((j + 0.5) / R) / R))
        p = ps.make(np.stack(g)[:, None])
        uf = np.stack([eta(t) for t in ts])
        return ps.transgress(1, comp)(p, uf)

    ref = value(4 * R_fine)
    e1, e2 = abs(value(R_coarse) - ref), abs(value(R_fine) - ref)
    if e2 < 1e-14:
        return np.inf
    return float(np.log2(e1 / e2) / np.log2(R_fine / R_coarse))
