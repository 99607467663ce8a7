"""Discrete paths and loops in a Lie group.

A grid path holds group samples g_0..g_N on a uniform parameter grid over
[0, 1]; tangent data are left-trivialized node velocities u_0..u_N (flat
layout: node-major, algebra coordinates fastest).

Derivative stencils are chosen as an exact summation-by-parts pair: central
differences in the interior, first-order one-sided differences at the ends,
with trapezoid quadrature weights.  Loops use the periodic central stencil
throughout.  These make discrete integration-by-parts, concatenation, and
reversal identities hold to machine precision rather than discretization
order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .liealg import LieAlgebra


@dataclass
class GridPath:
    """Samples g_0..g_N (shape (N+1, d, d)) of a path in the group."""

    algebra: LieAlgebra
    samples: np.ndarray

    @property
    def segments(self) -> int:
        return self.samples.shape[0] - 1

    @property
    def nodes(self) -> int:
        return self.samples.shape[0]

    def reversed(self) -> "GridPath":
        return GridPath(self.algebra, self.samples[::-1].copy())


def trapezoid_weights(N: int) -> np.ndarray:
    w = np.ones(N + 1)
    w[0] = w[-1] = 0.5
    return w


def edge_logs(path: GridPath) -> np.ndarray:
    """log(g_j^{-1} g_{j+1}) for each edge, shape (N, n)."""
    alg = path.algebra
    g = path.samples
    return np.stack([alg.log(np.linalg.solve(g[j], g[j + 1]))
                     for j in range(path.segments)])

def path_velocity(path: GridPath) -> np.ndarray:
    """Left-trivialized node velocities, shape (N+1, n).

    Interior: log(g_{j-1}^{-1} g_{j+1}) / (2 dt); ends: one-sided one-step
    logs / dt.  Paired with trapezoid weights this satisfies discrete
    integration by parts exactly for scalar sequences.
    """
    alg = path.algebra
    g = path.samples
    N = path.segments
    dt = 1.0 / N
    out = np.zeros((N + 1, alg.dim))
    out[0] = alg.log(np.linalg.solve(g[0], g[1])) / dt
    out[N] = alg.log(np.linalg.solve(g[N - 1], g[N])) / dt
    for j in range(1, N):
        out[j] = alg.log(np.linalg.solve(g[j - 1], g[j + 1])) / (2 * dt)
    return out


def loop_velocity(path: GridPath) -> np.ndarray:
    """Periodic central-difference node velocities for a loop g_0 = g_N.

    Returns shape (N, n) for the nodes 0..N-1 (node N repeats node 0).
    """
    alg = path.algebra
    g = path.samples
    N = path.segments
    dt = 1.0 / N
    out = np.zeros((N, alg.dim))
    for j in range(N):
        out[j] = alg.log(np.linalg.solve(g[(j - 1) % N], g[(j + 1) % N])) / (2 * dt)
    return out


def sbp_residual(N: int, rng: np.random.Generator) -> float:
    """Machine-exactness of the discrete product rule under the stencil pair:
    sum_j w_j (Df g + f Dg)_j dt = f_N g_N - f_0 g_0 for scalar sequences.
    """
    f = rng.standard_normal(N + 1)
    g = rng.standard_normal(N + 1)
    dt = 1.0 / N
    w = trapezoid_weights(N)

    def D(h):
        out = np.zeros(N + 1)
        out[0] = (h[1] - h[0]) / dt
        out[-1] = (h[-1] - h[-2]) / dt
        out[1:-1] = (h[2:] - h[:-2]) / (2 * dt)
        return out

    lhs = float(np.sum(w * (D(f) * g + f * D(g))) * dt)
    return abs(lhs - (f[-1] * g[-1] - f[0] * g[0]))


# -- random smooth paths and loops --------------------------------------------


def _fourier_coefficient_path(rng: np.random.Generator, n: int, modes: int,
                              scale: float) -> "callable":
    a0 = rng.standard_normal(n) * scale
    ac = rng.standard_normal((modes, n)) * scale
    as_ = rng.standard_normal((modes, n)) * scale

    def xi(t: float) -> np.ndarray:
        out = a0.copy()
        for k in range(modes):
            out = out + ac[k] * np.cos(2 * np.pi * (k + 1) * t) \
                      + as_[k] * np.sin(2 * np.pi * (k + 1) * t)
        return out

    return xi


def random_path(alg: LieAlgebra, N: int, rng: np.random.Generator,
                scale: float = 0.4, modes: int = 2) -> GridPath:
    """Random smooth path with g_0 = identity, built by composing one-step
    exponentials of a low-mode driving curve in the algebra."""
    xi = _fourier_coefficient_path(rng, alg.dim, modes, scale)
    dt = 1.0 / N
    g = [alg.identity()]
    for j in range(N):
        g.append(g[-1] @ alg.exp(dt * xi((j + 0.5) * dt)))
    return GridPath(alg, np.stack(g))


def random_loop(alg: LieAlgebra, N: int, rng: np.random.Generator,
                scale: float = 0.4, modes: int = 2) -> GridPath:
    """Random smooth loop with g_0 = g_N = identity.

    Builds a random path and removes the endpoint drift by subtracting a
    smooth bump times the residual log, repeated until closed to roundoff.
    """
    xi = _fourier_coefficient_path(rng, alg.dim, modes, scale)
    dt = 1.0 / N
    drift = np.zeros(alg.dim)
    for _ in range(60):
        g = [alg.identity()]
        for j in range(N):
            t = (j + 0.5) * dt
            bump = 2.0 * np.sin(np.pi * t) ** 2
            g.append(g[-1] @ alg.exp(dt * (xi(t) - bump * drift)))
        err = alg.log(g[-1])
        if np.max(np.abs(err)) < 1e-13:
            break
        drift = drift + err
    g[-1] = alg.identity()
    return GridPath(alg, np.stack(g))


def random_node_tangent(alg: LieAlgebra, N: int, rng: np.random.Generator,
                        zero_start: bool = True, zero_end: bool = False,
                        modes: int = 3, scale: float = 0.5) -> np.ndarray:
    """Random smooth left-trivialized tangent field on the nodes, shape
    (N+1, n); optionally pinned to zero at the ends."""
    xi = _fourier_coefficient_path(rng, alg.dim, modes, scale)
    ts = np.arange(N + 1) / N
    out = np.stack([xi(t) for t in ts])
    if zero_start and zero_end:
        out = out * (np.sin(np.pi * ts) ** 2)[:, None]
    elif zero_start:
        out = out * ts[:, None]
    elif zero_end:
        out = out * (1.0 - ts)[:, None]
    if zero_start:
        out[0] = 0.0
    if zero_end:
        out[-1] = 0.0
    return out


def translate_path(path: GridPath, tangent_nodes: np.ndarray, eps: float) -> GridPath:
    """Pointwise right translation g_j -> g_j exp(eps u_j)."""
    alg = path.algebra
    g = np.stack([path.samples[j] @ alg.exp(eps * tangent_nodes[j])
                  for j in range(path.nodes)])
    return GridPath(alg, g)
