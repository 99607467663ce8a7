"""Simplex-category combinatorics: face/degeneracy words, shuffles, horns,
simplicial vector spaces and the Dold-Kan normalization.

Face/degeneracy words are normalized by translating them to monotone maps
between finite ordinals and re-factoring through the unique epi-mono
factorization, so composition semantics is preserved by construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

# -- monotone maps of finite ordinals ---------------------------------------
# A map [m] -> [n] is a tuple of length m+1 with values in 0..n, nondecreasing.


def coface(n: int, i: int) -> tuple[int, ...]:
    """delta_i: [n-1] -> [n], the injection missing i."""
    return tuple(x if x < i else x + 1 for x in range(n))


def codegeneracy(n: int, j: int) -> tuple[int, ...]:
    """sigma_j: [n+1] -> [n], hitting j twice."""
    return tuple(x if x <= j else x - 1 for x in range(n + 2))


def compose(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    """f after g."""
    return tuple(f[x] for x in g)


def is_monotone(f: tuple[int, ...]) -> bool:
    return all(f[i] <= f[i + 1] for i in range(len(f) - 1))


def epi_mono_factor(f: tuple[int, ...], n: int) -> tuple[list[int], list[int]]:
    """Unique factorization f = delta_{i_1}..delta_{i_s} sigma_{j_1}..sigma_{j_t}.

    f: [m] -> [n]; returns (decreasing i's missed by f, increasing j's with
    f(j) = f(j+1)).
    """
    image = set(f)
    missed = sorted((i for i in range(n + 1) if i not in image), reverse=True)
    doubled = sorted(j for j in range(len(f) - 1) if f[j] == f[j + 1])
    return missed, doubled


# -- operator words ----------------------------------------------------------


@dataclass(frozen=True)
class IndexWord:
    """A composite of face/degeneracy operators on a simplicial object.

    ``level`` is the simplicial level the word is applied to; ``ops`` is the
    sequence of ('d'|'s', index) applied first-to-last.  Indices must satisfy
    0 <= i <= current level for faces, 0 <= j <= current level for
    degeneracies, tracked while walking the word.
    """

    level: int
    ops: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        lvl = self.level
        for kind, idx in self.ops:
            if kind == "d":
                if lvl <= 0 or not 0 <= idx <= lvl:
                    raise ValueError(f"face d_{idx} not composable at level {lvl}")
                lvl -= 1
            elif kind == "s":
                if not 0 <= idx <= lvl:
                    raise ValueError(f"degeneracy s_{idx} not composable at level {lvl}")
                lvl += 1
            else:
                raise ValueError(f"unknown generator kind {kind!r}")

    @property
    def target_level(self) -> int:
        lvl = self.level
        for kind, _ in self.ops:
            lvl += -1 if kind == "d" else 1
        return lvl

    def to_monotone(self) -> tuple[int, ...]:
        """The monotone map [target] -> [level] the word corresponds to."""
        lvl = self.level
        f = tuple(range(lvl + 1))
        for kind, idx in self.ops:
            if kind == "d":
                f = compose(f, coface(lvl, idx))
                lvl -= 1
            else:
                f = compose(f, codegeneracy(lvl, idx))
                lvl += 1
        return f


def word_from_monotone(f: tuple[int, ...], level: int) -> IndexWord:
    """Normal-form word for the monotone map f: [m] -> [level]."""
    missed, doubled = epi_mono_factor(f, level)
    ops = [("d", i) for i in missed] + [("s", j) for j in doubled]
    return IndexWord(level=level, ops=tuple(ops))


def normalize_word(w: IndexWord) -> IndexWord:
    """Unique normal form: all faces applied first (indices decreasing),
    then all degeneracies; semantics preserved."""
    return word_from_monotone(w.to_monotone(), w.level)


def random_word(rng: np.random.Generator, level: int, length: int, max_level: int) -> IndexWord:
    ops = []
    lvl = level
    for _ in range(length):
        can_face = lvl > 0
        can_degen = lvl < max_level
        if can_face and (not can_degen or rng.random() < 0.5):
            idx = int(rng.integers(0, lvl + 1))
            ops.append(("d", idx))
            lvl -= 1
        elif can_degen:
            idx = int(rng.integers(0, lvl + 1))
            ops.append(("s", idx))
            lvl += 1
    return IndexWord(level=level, ops=tuple(ops))


# -- shuffles ----------------------------------------------------------------


@dataclass(frozen=True)
class Shuffle:
    p: int
    q: int
    image: tuple[int, ...]  # sigma(0), ..., sigma(p+q-1)
    sign: int

    @property
    def first_block(self) -> tuple[int, ...]:
        return self.image[: self.p]

    @property
    def second_block(self) -> tuple[int, ...]:
        return self.image[self.p :]


def permutation_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, cycle = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            cycle += 1
        if cycle % 2 == 0:
            sign = -sign
    return sign


def enumerate_shuffles(p: int, q: int) -> list[Shuffle]:
    """All (p, q)-shuffles: permutations increasing on 0..p-1 and p..p+q-1."""
    if p < 0 or q < 0:
        raise ValueError("p, q must be nonnegative")
    out = []
    universe = range(p + q)
    for first in itertools.combinations(universe, p):
        second = tuple(x for x in universe if x not in first)
        image = first + second
        out.append(Shuffle(p=p, q=q, image=image, sign=permutation_sign(image)))
    return out


# -- simplices, boundaries, horns ---------------------------------------------


def standard_simplex(l: int, k: int) -> list[tuple[int, ...]]:
    """(Delta[l])_k: monotone maps [k] -> [l]."""
    return [f for f in itertools.product(range(l + 1), repeat=k + 1) if is_monotone(f)]


def in_boundary(f: tuple[int, ...], l: int) -> bool:
    return set(f) != set(range(l + 1))


def in_horn(f: tuple[int, ...], l: int, j: int) -> bool:
    return set(f) | {j} != set(range(l + 1))


def horn(l: int, j: int, k: int) -> list[tuple[int, ...]]:
    return [f for f in standard_simplex(l, k) if in_horn(f, l, j)]


def boundary_compatible(faces: list, face_fn, skip: int | None = None, eq=None) -> bool:
    """Check d_a(x_b) = d_{b-1}(x_a) for a < b over a family of (l-1)-cells.

    ``faces[i]`` is the candidate i-th face (ignored when i == skip);
    ``face_fn(a, x)`` applies the face map d_a one level down.
    """
    if eq is None:
        eq = lambda x, y: np.allclose(x, y, atol=1e-12, rtol=0)
    l = len(faces) - 1
    for a in range(l + 1):
        for b in range(a + 1, l + 1):
            if skip is not None and (a == skip or b == skip):
                continue
            if not eq(face_fn(a, faces[b]), face_fn(b - 1, faces[a])):
                return False
    return True


def horn_membership(l: int, j: int, faces: list, face_fn, eq=None) -> bool:
    """Do the given faces (with slot j arbitrary) satisfy horn compatibility?"""
    if not 0 <= j <= l:
        raise ValueError("horn index out of range")
    return boundary_compatible(faces, face_fn, skip=j, eq=eq)


# -- simplicial vector spaces --------------------------------------------------


@dataclass
class SimplicialVectorSpace:
    """Levelwise finite-dimensional simplicial vector space (truncated).

    ``face[(l, i)]``: matrix V_l -> V_{l-1}; ``degeneracy[(l, j)]``: V_l -> V_{l+1}.
    Faces exist for 1 <= l <= top, degeneracies for 0 <= l < top.
    """

    dims: list[int]
    face: dict = field(default_factory=dict)
    degeneracy: dict = field(default_factory=dict)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def identity_residual(self) -> float:
        worst = 0.0

        def upd(A, B):
            nonlocal worst
            worst = max(worst, float(np.max(np.abs(A - B))) if A.size else 0.0)

        for l in range(2, self.top + 1):
            for j in range(l + 1):
                for i in range(j):
                    upd(self.face[(l - 1, i)] @ self.face[(l, j)],
                        self.face[(l - 1, j - 1)] @ self.face[(l, i)])
        for l in range(0, self.top - 1):
            for i in range(l + 1):
                for j in range(i, l + 1):
                    upd(self.degeneracy[(l + 1, i)] @ self.degeneracy[(l, j)],
                        self.degeneracy[(l + 1, j + 1)] @ self.degeneracy[(l, i)])
        for l in range(1, self.top):
            for j in range(l + 1):
                for i in range(l + 2):
                    lhs = self.face[(l + 1, i)] @ self.degeneracy[(l, j)]
                    if i < j:
                        rhs = self.degeneracy[(l - 1, j - 1)] @ self.face[(l, i)]
                    elif i in (j, j + 1):
                        rhs = np.eye(self.dims[l])
                    else:
                        rhs = self.degeneracy[(l - 1, j)] @ self.face[(l, i - 1)]
                    upd(lhs, rhs)
        return worst

    def apply_word(self, w: IndexWord, x: np.ndarray) -> np.ndarray:
        lvl = w.level
        for kind, idx in w.ops:
            if kind == "d":
                x = self.face[(lvl, idx)] @ x
                lvl -= 1
            else:
                x = self.degeneracy[(lvl, idx)] @ x
                lvl += 1
        return x

    def word_matrix(self, w: IndexWord) -> np.ndarray:
        M = np.eye(self.dims[w.level])
        lvl = w.level
        for kind, idx in w.ops:
            if kind == "d":
                M = self.face[(lvl, idx)] @ M
                lvl -= 1
            else:
                M = self.degeneracy[(lvl, idx)] @ M
                lvl += 1
        return M


# -- Dold-Kan ------------------------------------------------------------------


def _surjections(n: int) -> list[tuple[int, ...]]:
    """All epis [n] ->> [k] for k <= n, as monotone surjective tuples."""
    out = []
    for k in range(n + 1):
        for f in itertools.product(range(k + 1), repeat=n + 1):
            if is_monotone(f) and set(f) == set(range(k + 1)):
                out.append(f)
    return out


def dold_kan_gamma(chain_dims: list[int], boundaries: dict, top: int) -> SimplicialVectorSpace:
    """The Dold-Kan functor: build a simplicial vector space from a chain
    complex (C_k, d: C_k -> C_{k-1}), truncated at level ``top``.

    Level n is the sum of copies of C_k over epis [n] ->> [k]; the action of a
    monotone map factors through the epi-mono factorization, with a mono
    contributing the identity (if trivial), the boundary (if it misses exactly
    the top element), and zero otherwise.
    """
    surj = {n: _surjections(n) for n in range(top + 1)}
    offsets = {}
    dims = []
    for n in range(top + 1):
        off, total = {}, 0
        for eta in surj[n]:
            off[eta] = total
            total += chain_dims[max(eta)]
        offsets[n] = off
        dims.append(total)

    def matrix_of(f: tuple[int, ...], m: int, n: int) -> np.ndarray:
        """Matrix of the action of monotone f: [m] -> [n] (maps level n to m)."""
        M = np.zeros((dims[m], dims[n]))
        for eta in surj[n]:
            k = max(eta)
            ck = chain_dims[k]
            if ck == 0:
                continue
            g = compose(eta, f)  # [m] -> [k]
            missed, doubled = epi_mono_factor(g, k)
            eta2 = tuple(g[x] - sum(1 for i in missed if i < g[x]) for x in range(m + 1))
            col = offsets[n][eta]
            if not missed:
                row = offsets[m][eta2]
                M[row : row + ck, col : col + ck] += np.eye(ck)
            elif missed == [k] and k >= 1 and chain_dims[k - 1]:
                row = offsets[m][eta2]
                d = boundaries[k]
                M[row : row + chain_dims[k - 1], col : col + ck] += d
        return M

    V = SimplicialVectorSpace(dims=dims)
    for l in range(1, top + 1):
        for i in range(l + 1):
            V.face[(l, i)] = matrix_of(coface(l, i), l - 1, l)
    for l in range(0, top):
        for j in range(l + 1):
            V.degeneracy[(l, j)] = matrix_of(codegeneracy(l, j), l + 1, l)
    return V


def random_simplicial_vector_space(
    rng: np.random.Generator, top: int = 3, max_dim: int = 4
) -> SimplicialVectorSpace:
    """Random simplicial vector space with exact simplicial identities,
    produced from a random chain complex through Dold-Kan."""
    chain_dims = [int(rng.integers(0, max_dim + 1)) for _ in range(top + 1)]
    if sum(chain_dims) == 0:
        chain_dims[int(rng.integers(0, top + 1))] = 1
    boundaries = {}
    # random maps with d^2 = 0: alternate zero/nonzero levels or factor ranks
    prev = None
    for k in range(1, top + 1):
        d = rng.standard_normal((chain_dims[k - 1], chain_dims[k]))
        if prev is not None and prev.size:
            # project rows onto the kernel of the previous boundary
            u, s, vt = np.linalg.svd(prev, full_matrices=True)
            rank = int(np.sum(s > 1e-12 * (s[0] if len(s) else 1)))
            kernel = vt[rank:].T  # basis of ker(prev) in C_k... (prev: C_{k-1}->C_{k-2})
            d = kernel @ kernel.T @ d
        boundaries[k] = d
        prev = d
    return dold_kan_gamma(chain_dims, boundaries, top)


# -- Moore and quotient complexes ----------------------------------------------


def null_space(A: np.ndarray, cutoff: float = 1e-9) -> np.ndarray:
    """Orthonormal basis (columns) of the kernel of A."""
    if A.shape[0] == 0:
        return np.eye(A.shape[1])
    if A.shape[1] == 0:
        return np.zeros((0, 0))
    u, s, vt = np.linalg.svd(A)
    tol = cutoff * (s[0] if len(s) and s[0] > 0 else 1.0)
    rank = int(np.sum(s > tol))
    return vt[rank:].T


def column_space(A: np.ndarray, cutoff: float = 1e-9) -> np.ndarray:
    """Orthonormal basis (columns) of the range of A."""
    if A.shape[1] == 0 or A.shape[0] == 0:
        return np.zeros((A.shape[0], 0))
    u, s, vt = np.linalg.svd(A)
    tol = cutoff * (s[0] if len(s) and s[0] > 0 else 1.0)
    rank = int(np.sum(s > tol))
    return u[:, :rank]


def moore_complex(V: SimplicialVectorSpace):
    """N V_l = intersection of ker d_i (i < l), boundary (-1)^l d_l.

    Returns (dims, boundaries, bases): boundaries[l] maps coordinates in the
    basis of N V_l to coordinates in the basis of N V_{l-1}.
    """
    from .tangent import ChainComplex

    bases = []
    for l in range(V.top + 1):
        if l == 0:
            bases.append(np.eye(V.dims[0]))
            continue
        stacked = np.vstack([V.face[(l, i)] for i in range(l)])
        bases.append(null_space(stacked))
    dims = [b.shape[1] for b in bases]
    boundaries = {}
    for l in range(1, V.top + 1):
        img = ((-1) ** l) * (V.face[(l, l)] @ bases[l])
        # coordinates of img in the (orthonormal) basis of NV_{l-1}
        coords = bases[l - 1].T @ img
        resid = float(np.max(np.abs(bases[l - 1] @ coords - img))) if img.size else 0.0
        if resid > 1e-9:
            raise ValueError("Moore boundary does not land in the Moore subspace")
        boundaries[l] = coords
    return ChainComplex(dims=dims, boundaries=boundaries), bases


def quotient_complex(V: SimplicialVectorSpace):
    """N-bar V_l = V_l / sum(im s_i), boundary sum_i (-1)^i d_i."""
    from .tangent import ChainComplex

    bases = []  # orthonormal bases of complements of the degenerate subspaces
    for l in range(V.top + 1):
        if l == 0:
            bases.append(np.eye(V.dims[0]))
            continue
        imgs = [V.degeneracy[(l - 1, j)] for j in range(l)]
        D = np.hstack(imgs) if imgs else np.zeros((V.dims[l], 0))
        col = column_space(D)
        # complement = kernel of projection onto the degenerate image
        bases.append(null_space(col.T) if col.size else np.eye(V.dims[l]))
    dims = [b.shape[1] for b in bases]
    boundaries = {}
    for l in range(1, V.top + 1):
        d_total = sum(((-1) ** i) * V.face[(l, i)] for i in range(l + 1))
        # map class [v] to class [d_total v]: project onto the complement basis
        boundaries[l] = bases[l - 1].T @ (d_total @ bases[l])
    return ChainComplex(dims=dims, boundaries=boundaries), bases


def dold_kan_compare(V: SimplicialVectorSpace) -> dict:
    """Moore vs quotient complexes: equal dims levelwise, equal homology dims."""
    moore, _ = moore_complex(V)
    quot, _ = quotient_complex(V)
    hm = [moore.homology_dim(l) for l in range(V.top + 1)]
    hq = [quot.homology_dim(l) for l in range(V.top + 1)]
    return {
        "moore_dims": moore.dims,
        "quotient_dims": quot.dims,
        "dims_equal": moore.dims == quot.dims,
        "moore_homology": hm,
        "quotient_homology": hq,
        "homology_equal": hm == hq,
        "moore_d2_residual": moore.d2_residual(),
        "quotient_d2_residual": quot.d2_residual(),
    }
