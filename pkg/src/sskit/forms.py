"""Shifted forms on simplicial models: exact simplicial differential, the de
Rham differential by finite differences in left-trivialized charts, the total
differential, and closedness/normalization/alternation reports.

An m-shifted k-form is a family alpha_i of (k + m - i)-forms on the level-i
spaces, i = 0..m.  The total differential is D = delta + (-1)^p d, with
component at level p equal to delta(alpha_{p-1}) + (-1)^p d(alpha_p).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

DEFAULT_FD_STEP = 1e-4


@dataclass
class ShiftedForm:
    model: "object"
    degree: int                    # k
    shift: int                     # m
    components: dict = field(default_factory=dict)  # level -> evaluator

    def arity(self, level: int) -> int:
        return self.degree + self.shift - level

    def evaluate(self, level: int, x, *tangents) -> float:
        comp = self.components.get(level)
        if comp is None:
            return 0.0
        return float(comp(x, *tangents))


def delta_evaluator(model, level: int, comp):
    """Exact simplicial differential: evaluator on level + 1 points."""

    def ev(x, *tangents):
        total = 0.0
        for j in range(level + 2):
            y = model.face(level + 1, j, x)
            ts = [model.tangent_face(level + 1, j, x, v) for v in tangents]
            total += ((-1) ** j) * comp(y, *ts)
        return total

    return ev


def de_rham_evaluator(model, level: int, comp, h: float = DEFAULT_FD_STEP):
    """Palais-formula de Rham differential of a q-form evaluator, using
    constant left-trivialized coordinate extensions: directional derivatives
    by central differences, brackets by the exact pointwise algebra bracket.
    """

    def ev(x, *tangents):
        q1 = len(tangents)
        total = 0.0
        for i in range(q1):
            rest = tangents[:i] + tangents[i + 1:]
            plus = comp(model.translate(level, x, tangents[i], h), *rest)
            minus = comp(model.translate(level, x, tangents[i], -h), *rest)
            total += ((-1) ** i) * (plus - minus) / (2 * h)
        for i in range(q1):
            for j in range(i + 1, q1):
                br = model.tangent_bracket(level, tangents[i], tangents[j])
                rest = tuple(tangents[k] for k in range(q1) if k != i and k != j)
                total += ((-1) ** (i + j)) * comp(x, br, *rest)
        return total

    return ev


def total_D(form: ShiftedForm, h: float = DEFAULT_FD_STEP) -> ShiftedForm:
    """D(alpha), an m-shifted (k+1)-form; component p is
    delta(alpha_{p-1}) + (-1)^p d(alpha_p)."""
    model = form.model
    out = {}
    for p in range(0, form.shift + 2):
        parts = []
        if p - 1 in form.components:
            parts.append((1.0, delta_evaluator(model, p - 1, form.components[p - 1])))
        if p in form.components:
            parts.append(((-1.0) ** p,
                          de_rham_evaluator(model, p, form.components[p], h)))
        if not parts:
            continue

        def ev(x, *tangents, _parts=tuple(parts)):
            return sum(c * f(x, *tangents) for c, f in _parts)

        out[p] = ev
    return ShiftedForm(model=model, degree=form.degree + 1, shift=form.shift,
                       components=out)


def is_closed(form: ShiftedForm, rng: np.random.Generator, samples: int = 5,
              h: float = DEFAULT_FD_STEP) -> dict:
    """Residuals of D(form) = 0 per level, split into levels whose component
    involves only the exact simplicial sum ("delta" levels: alpha_p absent or
    point-independent is not assumed, only alpha_p = 0) and levels involving
    finite differences ("fd" levels)."""
    model = form.model
    D = total_D(form, h)
    report = {"delta_levels": {}, "fd_levels": {}}
    for p, ev in D.components.items():
        if p > model.top:
            continue
        arity = form.degree + 1 + form.shift - p
        if arity < 0 or (arity > 0 and model.tangent_dim(p) == 0):
            continue
        worst = 0.0
        for _ in range(samples):
            x = model.random_point(p, rng)
            ts = [model.random_tangent(p, rng) for _ in range(arity)]
            worst = max(worst, abs(ev(x, *ts)))
        bucket = "fd_levels" if p in form.components else "delta_levels"
        report[bucket][p] = worst
    report["max_delta_residual"] = max(report["delta_levels"].values(), default=0.0)
    report["max_fd_residual"] = max(report["fd_levels"].values(), default=0.0)
    return report


def is_normalized(form: ShiftedForm, rng: np.random.Generator, samples: int = 5) -> dict:
    """max |s_j^* alpha_p| over random samples, for each component level p
    and degeneracy s_j: X_{p-1} -> X_p."""
    model = form.model
    out = {}
    for p, comp in form.components.items():
        if p == 0 or p - 1 > model.top - 1:
            continue
        arity = form.arity(p)
        for j in range(p):
            worst = 0.0
            for _ in range(samples):
                x = model.random_point(p - 1, rng)
                y = model.degeneracy(p - 1, j, x)
                ts = [model.tangent_degeneracy(p - 1, j, x,
                                               model.random_tangent(p - 1, rng))
                      for _ in range(arity)]
                worst = max(worst, abs(comp(y, *ts)))
            out[(p, j)] = worst
    out["max_residual"] = max((v for k, v in out.items() if isinstance(k, tuple)),
                              default=0.0)
    return out


def alternation_check(form: ShiftedForm, rng: np.random.Generator,
                      samples: int = 3) -> float:
    """Sign flip under swapping two random tangent arguments."""
    model = form.model
    worst = 0.0
    for p, comp in form.components.items():
        arity = form.arity(p)
        if arity < 2:
            continue
        for _ in range(samples):
            x = model.random_point(p, rng)
            ts = [model.random_tangent(p, rng) for _ in range(arity)]
            i, j = sorted(rng.choice(arity, size=2, replace=False))
            swapped = list(ts)
            swapped[i], swapped[j] = swapped[j], swapped[i]
            worst = max(worst, abs(comp(x, *ts) + comp(x, *swapped)))
    return worst


def delta_squared_residual(model, level: int, arity: int,
                           rng: np.random.Generator, samples: int = 3) -> float:
    """delta(delta(random multilinear alternating evaluator)) = 0."""
    n = model.tangent_dim(level)
    coeffs = rng.standard_normal((n,) * arity)
    # antisymmetrize
    A = np.zeros_like(coeffs)
    for perm in itertools.permutations(range(arity)):
        sign = perm_sign(perm)
        A += sign * np.transpose(coeffs, perm)

    def comp(x, *ts):
        out = A
        for t in ts:
            out = np.tensordot(out, t, axes=([0], [0]))
        return float(out)

    dd = delta_evaluator(model, level + 1, delta_evaluator(model, level, comp))
    worst = 0.0
    for _ in range(samples):
        x = model.random_point(level + 2, rng)
        ts = [model.random_tangent(level + 2, rng) for _ in range(arity)]
        worst = max(worst, abs(dd(x, *ts)))
    return worst


def perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign
