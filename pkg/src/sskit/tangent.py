"""Tangent complexes at a base point, homology, the shuffle pairing on
homology, nondegeneracy certificates, and structural property checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .simplicial import IndexWord, column_space, enumerate_shuffles, null_space


@dataclass
class ChainComplex:
    """Finite chain complex: dims[l] and boundaries[l]: C_l -> C_{l-1}."""

    dims: list[int]
    boundaries: dict = field(default_factory=dict)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def boundary(self, l: int) -> np.ndarray:
        return self.boundaries.get(l, np.zeros((self.dims[l - 1], self.dims[l])))

    def d2_residual(self) -> float:
        worst = 0.0
        for l in range(2, self.top + 1):
            M = self.boundary(l - 1) @ self.boundary(l)
            if M.size:
                worst = max(worst, float(np.max(np.abs(M))))
        return worst

    def cycles(self, l: int) -> np.ndarray:
        """Orthonormal basis of ker(boundary_l) (all of C_l at l = 0)."""
        if l == 0:
            return np.eye(self.dims[0])
        return null_space(self.boundary(l))

    def boundaries_basis(self, l: int) -> np.ndarray:
        """Orthonormal basis of im(boundary_{l+1}) inside C_l."""
        if l + 1 > self.top:
            return np.zeros((self.dims[l], 0))
        return column_space(self.boundary(l + 1))

    def homology_dim(self, l: int) -> int:
        return self.homology_basis(l).shape[1]

    def homology_basis(self, l: int) -> np.ndarray:
        """Orthonormal cycle representatives spanning a complement of the
        boundaries inside the cycles (columns, in C_l coordinates)."""
        Z = self.cycles(l)
        B = self.boundaries_basis(l)
        if Z.shape[1] == 0:
            return Z
        if B.shape[1] == 0:
            return Z
        # cycles orthogonal to the boundary subspace
        coords = null_space(B.T @ Z)
        return Z @ coords


def tangent_complex(model, top: int | None = None) -> tuple[ChainComplex, list[np.ndarray]]:
    """Kernel-variant tangent complex at the base point.

    T_l = intersection of ker(Td_i) for i < l, with boundary (-1)^l Td_l.
    Returns the complex plus orthonormal bases of T_l inside the ambient
    tangent spaces.
    """
    if top is None:
        top = model.top
    bases = []
    for l in range(top + 1):
        if l == 0:
            bases.append(np.eye(model.tangent_dim(0)))
            continue
        mats = [model.tangent_face_matrix(l, i) for i in range(l)]
        bases.append(null_space(np.vstack(mats)))
    dims = [b.shape[1] for b in bases]
    boundaries = {}
    for l in range(1, top + 1):
        img = ((-1) ** l) * (model.tangent_face_matrix(l, l) @ bases[l])
        coords = bases[l - 1].T @ img
        resid = float(np.max(np.abs(bases[l - 1] @ coords - img))) if img.size else 0.0
        if resid > 1e-8:
            raise ValueError(f"tangent boundary leaves the kernel subspace at level {l} "
                             f"(residual {resid:.2e})")
        boundaries[l] = coords
    return ChainComplex(dims=dims, boundaries=boundaries), bases


def tangent_complex_quotient(model, top: int | None = None) -> tuple[ChainComplex, list[np.ndarray]]:
    """Quotient-variant tangent complex: T_l / sum(im Ts_i), boundary
    sum_i (-1)^i Td_i, realized on orthogonal complements."""
    if top is None:
        top = model.top
    bases = []
    for l in range(top + 1):
        n = model.tangent_dim(l)
        if l == 0:
            bases.append(np.eye(n))
            continue
        imgs = [model.tangent_degeneracy_matrix(l - 1, j) for j in range(l)]
        D = np.hstack(imgs)
        col = column_space(D)
        bases.append(null_space(col.T) if col.shape[1] else np.eye(n))
    dims = [b.shape[1] for b in bases]
    boundaries = {}
    for l in range(1, top + 1):
        d_total = sum(((-1) ** i) * model.tangent_face_matrix(l, i) for i in range(l + 1))
        boundaries[l] = bases[l - 1].T @ (d_total @ bases[l])
    return ChainComplex(dims=dims, boundaries=boundaries), bases


def rank_formula_check(model, top: int | None = None) -> dict:
    """dim T_l (kernel variant) against the inclusion-exclusion prediction
    from the ambient dims K_l = tangent_dim(l):

        dim T_l = K_l - sum_{i=0}^{l-1} (-1)^i C(l, i+1) K_{l-1-i}
    """
    if top is None:
        top = model.top
    complex_, _ = tangent_complex(model, top)
    K = [model.tangent_dim(l) for l in range(top + 1)]
    predicted = []
    for l in range(top + 1):
        corr = sum(((-1) ** i) * comb(l, i + 1) * K[l - 1 - i] for i in range(l))
        predicted.append(K[l] - corr)
    return {
        "computed": complex_.dims,
        "predicted": predicted,
        "match": complex_.dims == predicted,
    }


# -- shuffle pairing on tangent homology ---------------------------------------


def im_pairing(model, form_top, m: int, l: int, v: np.ndarray, w: np.ndarray) -> float:
    """The shuffle pairing lambda(v, w) of the top component of an m-shifted
    2-form against tangents v at level l and w at level m - l.

    form_top(x, a, b) evaluates the level-m component on two tangents at the
    base point of level m.  Degeneracy words lift v via s_{sigma(m-1)} ... s_{sigma(l)}
    and w via s_{sigma(l-1)} ... s_{sigma(0)}, applied smallest-first.
    """
    x_m = model.base_point(m)
    total = 0.0
    for sh in enumerate_shuffles(l, m - l):
        # lift w through the first block indices, v through the second block
        lv = v.copy()
        x = model.base_point(l)
        lvl = l
        for j in sh.second_block:
            lv = model.tangent_degeneracy(lvl, j, x, lv)
            x = model.degeneracy(lvl, j, x)
            lvl += 1
        lw = w.copy()
        x = model.base_point(m - l)
        lvl = m - l
        for j in sh.first_block:
            lw = model.tangent_degeneracy(lvl, j, x, lw)
            x = model.degeneracy(lvl, j, x)
            lvl += 1
        total += sh.sign * form_top(x_m, lv, lw)
    return float(total)


def im_pairing_matrix(model, form_top, m: int, l: int,
                      basis_v: np.ndarray, basis_w: np.ndarray) -> np.ndarray:
    """Matrix of the shuffle pairing between column-bases of tangents at
    levels l and m - l."""
    nv, nw = basis_v.shape[1], basis_w.shape[1]
    M = np.zeros((nv, nw))
    for a in range(nv):
        for b in range(nw):
            M[a, b] = im_pairing(model, form_top, m, l, basis_v[:, a], basis_w[:, b])
    return M


def nondegeneracy_check(model, form_top, m: int = 2, cutoff: float = 1e-9,
                        rng: np.random.Generator | None = None) -> dict:
    """Certify the shuffle pairing between H_l and H_{m-l} of the tangent
    complex: well-defined on homology and nondegenerate.

    Checks (for m = 2, l = 1): pairing of homology representatives has full
    rank; pairing against boundaries vanishes; a second randomized choice of
    representatives gives the same singular values.
    """
    complex_, bases = tangent_complex(model, top=m + 1 if m + 1 <= model.top else model.top)
    l = m - 1 if m == 2 else m // 2
    out = {}
    H_l = complex_.homology_basis(l)
    H_ml = complex_.homology_basis(m - l)
    rep_l = bases[l] @ H_l
    rep_ml = bases[m - l] @ H_ml
    P = im_pairing_matrix(model, form_top, m, l, rep_l, rep_ml)
    s = np.linalg.svd(P, compute_uv=False) if P.size else np.array([])
    out["pairing_matrix"] = P
    out["homology_dims"] = (H_l.shape[1], H_ml.shape[1])
    out["min_singular_value"] = float(s.min()) if s.size else 0.0
    out["max_singular_value"] = float(s.max()) if s.size else 0.0
    out["nondegenerate"] = bool(
        P.shape[0] == P.shape[1]
        and (s.size == 0 or s.min() > cutoff * max(s.max(), 1e-30))
    )

    # boundary insensitivity: pairing of a boundary against homology reps
    worst = 0.0
    B_l = complex_.boundaries_basis(l)
    if B_l.shape[1] and rep_ml.shape[1]:
        rep_b = bases[l] @ B_l
        Q = im_pairing_matrix(model, form_top, m, l, rep_b, rep_ml)
        worst = max(worst, float(np.max(np.abs(Q))))
    B_ml = complex_.boundaries_basis(m - l)
    if B_ml.shape[1] and rep_l.shape[1]:
        rep_b = bases[m - l] @ B_ml
        Q = im_pairing_matrix(model, form_top, m, l, rep_l, rep_b)
        worst = max(worst, float(np.max(np.abs(Q))))
    out["boundary_pairing_residual"] = worst

    # representative independence: shift reps by random boundaries
    if rng is not None and s.size:
        rl, rml = rep_l.copy(), rep_ml.copy()
        if B_l.shape[1]:
            rl = rl + (bases[l] @ B_l) @ rng.standard_normal((B_l.shape[1], rl.shape[1]))
        if B_ml.shape[1]:
            rml = rml + (bases[m - l] @ B_ml) @ rng.standard_normal((B_ml.shape[1], rml.shape[1]))
        P2 = im_pairing_matrix(model, form_top, m, l, rl, rml)
        out["representative_shift_residual"] = float(np.max(np.abs(P2 - P)))
    return out


def random_multiplicative_form(V, m: int, rng: np.random.Generator) -> np.ndarray | None:
    """Random normalized multiplicative 2-form on level m of a simplicial
    vector space: an antisymmetric matrix A with
    sum_i (-1)^i d_i^T A d_i = 0 and s_j^T A s_j = 0 for every degeneracy.
    Returns None when only the zero form satisfies the constraints."""
    N = V.dims[m]
    if N == 0 or m + 1 > V.top:
        return None
    # coordinates: strict upper triangle of A
    pairs = [(i, j) for i in range(N) for j in range(i + 1, N)]
    if not pairs:
        return None

    def assemble(coords):
        A = np.zeros((N, N))
        for c, (i, j) in zip(coords, pairs):
            A[i, j] = c
            A[j, i] = -c
        return A

    rows = []
    for k, (i, j) in enumerate(pairs):
        E = assemble(np.eye(len(pairs))[k])
        delta = sum(((-1) ** idx) * V.face[(m + 1, idx)].T @ E @ V.face[(m + 1, idx)]
                    for idx in range(m + 2))
        parts = [delta.reshape(-1)]
        for jj in range(m):
            S = V.degeneracy[(m - 1, jj)]
            parts.append((S.T @ E @ S).reshape(-1))
        rows.append(np.concatenate(parts))
    M = np.stack(rows, axis=1)
    K = null_space(M)
    if K.shape[1] == 0:
        return None
    coeffs = K @ rng.standard_normal(K.shape[1])
    return assemble(coeffs)


def structural_pairing_properties(model, form_top, m: int = 2,
                        rng: np.random.Generator | None = None,
                        samples: int = 5, phi: dict | None = None,
                        h: float = 1e-4) -> dict:
    """Structural properties of the shuffle pairing of a normalized
    multiplicative top component form_top (a (2 + m - m) = 2-form on level m):

    - vanishing on degenerate vectors in either slot;
    - compatibility with the tangent boundary,
      lambda(bd u, w) + (-1)^(l+1) lambda(u, bd w) = 0 for cycles-free u, w;
    - invariance under shifting the form by a total differential,
      evaluated on homology representatives.

    phi optionally supplies the gauge data {m-1: 2-form evaluator,
    m: 1-form evaluator}; when omitted a random constant-coefficient family
    is drawn.
    """
    rng = rng or np.random.default_rng(0)
    complex_, bases = tangent_complex(model, top=min(m + 1, model.top))
    out = {}

    # (1) degenerate vectors pair to zero
    worst = 0.0
    for l in range(0, m + 1):
        if l == 0 or model.tangent_dim(m - l) == 0 or model.tangent_dim(l - 1) == 0:
            continue
        for j in range(l):
            for _ in range(samples):
                u = model.random_tangent(l - 1, rng)
                x = model.base_point(l - 1)
                su = model.tangent_degeneracy(l - 1, j, x, u)
                w = model.random_tangent(m - l, rng)
                worst = max(worst, abs(im_pairing(model, form_top, m, l, su, w)))
                worst = max(worst, abs(im_pairing(model, form_top, m, m - l, w, su)))
    out["degenerate_vanishing"] = worst

    # (2) boundary compatibility on the tangent complex
    worst = 0.0
    for l in range(0, m):
        dim_u = complex_.dims[l + 1] if l + 1 <= complex_.top else 0
        dim_w = complex_.dims[m - l] if m - l <= complex_.top else 0
        if dim_u == 0 or dim_w == 0:
            continue
        for _ in range(samples):
            cu = rng.standard_normal(dim_u)
            cw = rng.standard_normal(dim_w)
            u = bases[l + 1] @ cu
            w = bases[m - l] @ cw
            du = bases[l] @ (complex_.boundary(l + 1) @ cu)
            dw = bases[m - l - 1] @ (complex_.boundary(m - l) @ cw)
            val = im_pairing(model, form_top, m, l, du, w)
            val += ((-1) ** (l + 1)) * im_pairing(model, form_top, m, l + 1, u, dw)
            worst = max(worst, abs(val))
    out["boundary_compatibility"] = worst

    # (3) invariance under shifting by a total differential, on homology
    from .forms import de_rham_evaluator, delta_evaluator

    if phi is None:
        phi = {}
        n1 = model.tangent_dim(m - 1)
        nm = model.tangent_dim(m)
        if n1:
            C = rng.standard_normal((n1, n1))
            C = C - C.T
            phi[m - 1] = (lambda x, a, b, _C=C: float(a @ _C @ b))
        if nm:
            c = rng.standard_normal(nm)
            phi[m] = (lambda x, a, _c=c: float(_c @ a))
    parts = []
    if m - 1 in phi:
        parts.append((1.0, delta_evaluator(model, m - 1, phi[m - 1])))
    if m in phi:
        parts.append((float((-1) ** m), de_rham_evaluator(model, m, phi[m], h)))

    def shifted_top(x, a, b):
        return form_top(x, a, b) + sum(c * f(x, a, b) for c, f in parts)

    worst = 0.0
    l = max(1, m - 1)
    for (lu, lw) in {(l, m - l), (m - l, l)}:
        if lu > complex_.top or lw > complex_.top:
            continue
        Hu = bases[lu] @ complex_.homology_basis(lu)
        Hw = bases[lw] @ complex_.homology_basis(lw)
        if Hu.shape[1] == 0 or Hw.shape[1] == 0:
            continue
        P0 = im_pairing_matrix(model, form_top, m, lu, Hu, Hw)
        P1 = im_pairing_matrix(model, shifted_top, m, lu, Hu, Hw)
        worst = max(worst, float(np.max(np.abs(P1 - P0))))
    out["gauge_invariance"] = worst
    out["max_residual"] = max(out.values())
    return out


def hypercover_q_check(model, other, tangent_maps, n: int = 2) -> dict:
    """Tangent-level hypercover criterion for a simplicial map f: X -> Y.

    At each level i the combined map q_i = ((d_0, ..., d_i), f_i) lands in the
    matching space of boundary tuples: (u_0, ..., u_i, w) with
    Td_a u_b = Td_{b-1} u_a for a < b and Td_a w = Tf u_a for all a.
    The tangent map Tq_i must be surjective onto the matching tangent space
    for i < n and bijective at i = n.

    tangent_maps[i] is the matrix of Tf_i at the base point of level i.
    """
    out = {"levels": {}, "pass": True}
    for i in range(n + 1):
        KX = [model.tangent_dim(l) for l in range(i + 1)]
        KY = [other.tangent_dim(l) for l in range(i + 1)]
        nu = KX[i - 1] if i >= 1 else 0
        var_dim = (i + 1) * nu + KY[i]
        rows = []
        if i >= 2:
            dX = {a: model.tangent_face_matrix(i - 1, a) for a in range(i)}
            for a in range(i + 1):
                for b in range(a + 1, i + 1):
                    R = np.zeros((KX[i - 2], var_dim))
                    R[:, b * nu:(b + 1) * nu] += dX[a]
                    R[:, a * nu:(a + 1) * nu] -= dX[b - 1]
                    rows.append(R)
        if i >= 1:
            dY = {a: other.tangent_face_matrix(i, a) for a in range(i + 1)}
            F = tangent_maps[i - 1]
            for a in range(i + 1):
                R = np.zeros((KY[i - 1], var_dim))
                R[:, (i + 1) * nu:] += dY[a]
                R[:, a * nu:(a + 1) * nu] -= F
                rows.append(R)
        if rows:
            C = np.vstack(rows)
            matching_dim = null_space(C).shape[1]
        else:
            C = np.zeros((0, var_dim))
            matching_dim = var_dim

        cols = []
        if i >= 1:
            for a in range(i + 1):
                cols.append(model.tangent_face_matrix(i, a))
        cols.append(tangent_maps[i])
        Q = np.vstack(cols) if var_dim else np.zeros((0, KX[i]))
        resid = float(np.max(np.abs(C @ Q))) if C.size and Q.size else 0.0
        if Q.size:
            s = np.linalg.svd(Q, compute_uv=False)
            rank = int(np.sum(s > 1e-9 * max(s.max(), 1e-30)))
        else:
            rank = 0
        surjective = rank == matching_dim
        bijective = surjective and rank == KX[i]
        ok = bijective if i == n else surjective
        out["levels"][i] = {
            "matching_dim": matching_dim,
            "rank": rank,
            "domain_dim": KX[i],
            "surjective": surjective,
            "bijective": bijective,
            "constraint_residual": resid,
            "pass": ok and resid < 1e-8,
        }
        out["pass"] = out["pass"] and out["levels"][i]["pass"]
    return out


def pairing_transport_check(model, other, tangent_maps, form_top_src,
                            form_top_dst, m: int = 2) -> float:
    """Residual of lambda_src(u, v) = lambda_dst(Tf u, Tf v) on homology
    representatives of the source tangent complex at the complementary levels
    (l, m - l)."""
    src, src_b = tangent_complex(model, top=min(m + 1, model.top))
    worst = 0.0
    for l in range(1, m):
        Hu = src_b[l] @ src.homology_basis(l)
        Hw = src_b[m - l] @ src.homology_basis(m - l)
        if Hu.shape[1] == 0 or Hw.shape[1] == 0:
            continue
        P_src = im_pairing_matrix(model, form_top_src, m, l, Hu, Hw)
        P_dst = im_pairing_matrix(other, form_top_dst, m, l,
                                  tangent_maps[l] @ Hu, tangent_maps[m - l] @ Hw)
        worst = max(worst, float(np.max(np.abs(P_src - P_dst))))
    return worst


def hypercover_tangent_check(model, other, point_maps, tangent_maps, top: int = 2) -> dict:
    """Check a simplicial map model -> other is a weak equivalence on tangent
    complexes: the induced chain map commutes with boundaries and is an
    isomorphism on homology in each degree up to ``top``.

    point_maps[l] and tangent_maps[l] give the map and its tangent matrix at
    the base point of level l.
    """
    src, src_b = tangent_complex(model, top)
    dst, dst_b = tangent_complex(other, top)
    out = {"chain_map_residual": 0.0, "iso_levels": []}
    chain = {}
    for l in range(top + 1):
        F = tangent_maps[l]
        chain[l] = dst_b[l].T @ (F @ src_b[l])
        resid = float(np.max(np.abs(dst_b[l] @ chain[l] - F @ src_b[l]))) if src_b[l].size else 0.0
        out["chain_map_residual"] = max(out["chain_map_residual"], resid)
    for l in range(1, top + 1):
        lhs = chain[l - 1] @ src.boundary(l)
        rhs = dst.boundary(l) @ chain[l]
        if lhs.size:
            out["chain_map_residual"] = max(out["chain_map_residual"],
                                            float(np.max(np.abs(lhs - rhs))))
    for l in range(top + 1):
        Hs = src.homology_basis(l)
        Hd = dst.homology_basis(l)
        if Hs.shape[1] != Hd.shape[1]:
            out["iso_levels"].append((l, False, Hs.shape[1], Hd.shape[1]))
            continue
        if Hs.shape[1] == 0:
            out["iso_levels"].append((l, True, 0, 0))
            continue
        # induced map on homology: push reps, project mod boundaries onto Hd
        pushed = chain[l] @ Hs
        Bd = dst.boundaries_basis(l)
        M = Hd.T @ pushed  # Hd orthonormal and orthogonal to boundaries
        resid = pushed - Hd @ M - (Bd @ (Bd.T @ pushed) if Bd.shape[1] else 0.0)
        ok = bool(np.max(np.abs(resid)) < 1e-8) if np.asarray(resid).size else True
        s = np.linalg.svd(M, compute_uv=False)
        ok = ok and bool(s.min() > 1e-9 * max(s.max(), 1e-30))
        out["iso_levels"].append((l, ok, Hs.shape[1], Hd.shape[1]))
    out["homology_iso"] = all(flag for _, flag, _, _ in out["iso_levels"])
    return out
