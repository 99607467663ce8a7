"""Matrix Lie group / Lie algebra arithmetic with quadratic pairings.

A Lie algebra is described by structure constants, an optional symmetric
pairing and a faithful real matrix representation.  Group elements are
matrices in that representation; tangent vectors cross module boundaries in
left-trivialized coordinates (coefficient vectors in the algebra basis).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm, logm

STRUCTURAL_TOL = 1e-12
TRIVIALIZE_TOL = 1e-9
ROUNDTRIP_TOL = 1e-10


@dataclass
class LieAlgebra:
    """Finite-dimensional real Lie algebra with a matrix representation.

    [e_i, e_j] = sum_k C[i, j, k] e_k, <e_i, e_j> = P[i, j] (optional),
    rep[i] = rho(e_i) with rho a faithful homomorphism into d x d matrices.
    """

    name: str
    dim: int
    structure_constants: np.ndarray  # (n, n, n)
    rep: np.ndarray  # (n, d, d)
    pairing: np.ndarray | None = None  # (n, n)
    _basis_flat: np.ndarray = field(init=False, repr=False)
    _basis_pinv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.structure_constants = np.asarray(self.structure_constants, dtype=float)
        self.rep = np.asarray(self.rep, dtype=float)
        if self.pairing is not None:
            self.pairing = np.asarray(self.pairing, dtype=float)
        n = self.dim
        if self.structure_constants.shape != (n, n, n):
            raise ValueError("structure constants must have shape (n, n, n)")
        if self.rep.shape[0] != n or self.rep.shape[1] != self.rep.shape[2]:
            raise ValueError("rep must be n square matrices")
        self._basis_flat = self.rep.reshape(n, -1)
        self._basis_pinv = np.linalg.pinv(self._basis_flat)
        self._validate()

    # -- construction-time structural checks ------------------------------

    def _validate(self) -> None:
        if self.antisymmetry_residual() > STRUCTURAL_TOL:
            raise ValueError(f"{self.name}: structure constants not antisymmetric")
        if self.jacobi_residual() > STRUCTURAL_TOL:
            raise ValueError(f"{self.name}: Jacobi identity fails")
        if self.rep_residual() > STRUCTURAL_TOL:
            raise ValueError(f"{self.name}: rep is not a homomorphism")
        if self.pairing is not None:
            if np.max(np.abs(self.pairing - self.pairing.T)) > STRUCTURAL_TOL:
                raise ValueError(f"{self.name}: pairing not symmetric")

    def antisymmetry_residual(self) -> float:
        C = self.structure_constants
        return float(np.max(np.abs(C + np.swapaxes(C, 0, 1))))

    def jacobi_residual(self) -> float:
        C = self.structure_constants
        # [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej] = 0
        t = np.einsum("ijm,mkl->ijkl", C, C)
        total = t + np.einsum("jkm,mil->ijkl", C, C) + np.einsum("kim,mjl->ijkl", C, C)
        return float(np.max(np.abs(total))) if self.dim else 0.0

    def rep_residual(self) -> float:
        worst = 0.0
        for i in range(self.dim):
            for j in range(self.dim):
                comm = self.rep[i] @ self.rep[j] - self.rep[j] @ self.rep[i]
                expect = np.einsum("k,kab->ab", self.structure_constants[i, j], self.rep)
                worst = max(worst, float(np.max(np.abs(comm - expect))))
        return worst

    # -- algebra operations ------------------------------------------------

    def bracket(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        if a.shape != (self.dim,) or b.shape != (self.dim,):
            raise ValueError("bracket: dimension mismatch")
        return np.einsum("ijk,i,j->k", self.structure_constants, a, b)

    def pair(self, a: np.ndarray, b: np.ndarray) -> float:
        if self.pairing is None:
            raise ValueError(f"{self.name}: no pairing configured")
        return float(np.asarray(a) @ self.pairing @ np.asarray(b))

    def ad(self, a: np.ndarray) -> np.ndarray:
        """Matrix of ad_a: b -> [a, b] on coordinates."""
        return np.einsum("ijk,i->kj", self.structure_constants, np.asarray(a, dtype=float))

    def cartan_3form(self, u: np.ndarray, v: np.ndarray, w: np.ndarray) -> float:
        """<u, [v, w]> on left-trivialized inputs (base-point independent)."""
        return self.pair(u, self.bracket(v, w))

    def killing(self) -> np.ndarray:
        C = self.structure_constants
        return np.einsum("iab,jba->ij", C, C)

    def check_quadratic(self) -> dict:
        """Ad-invariance residual <[a,b],c> + <b,[a,c]> over basis triples."""
        if self.pairing is None:
            raise ValueError(f"{self.name}: no pairing configured")
        C, P = self.structure_constants, self.pairing
        res = np.einsum("abk,kc->abc", C, P) + np.einsum("ack,bk->abc", C, P)
        svals = np.linalg.svd(P, compute_uv=False)
        min_sv = float(svals.min()) if len(svals) else 0.0
        max_sv = float(svals.max()) if len(svals) else 0.0
        nondeg = bool(max_sv > 0 and min_sv > 1e-9 * max_sv)
        return {
            "ad_invariance_residual": float(np.max(np.abs(res))) if self.dim else 0.0,
            "pairing_min_singular_value": min_sv,
            "pairing_max_singular_value": max_sv,
            "nondegenerate": nondeg,
        }

    # -- group <-> algebra -------------------------------------------------

    @property
    def rep_dim(self) -> int:
        return self.rep.shape[1]

    def identity(self) -> np.ndarray:
        return np.eye(self.rep_dim)

    def to_matrix(self, a: np.ndarray) -> np.ndarray:
        return np.einsum("i,iab->ab", np.asarray(a, dtype=float), self.rep)

    def from_matrix(self, X: np.ndarray, tol: float = TRIVIALIZE_TOL) -> np.ndarray:
        """Coordinates of X in the basis rho(e_i), rejecting off-algebra parts."""
        X = np.asarray(X, dtype=float)
        coords = self._basis_pinv.T @ X.reshape(-1)
        resid = np.max(np.abs(self._basis_flat.T @ coords - X.reshape(-1)))
        scale = max(1.0, float(np.max(np.abs(X))))
        if resid > tol * scale:
            raise ValueError(f"{self.name}: matrix is not in the algebra (residual {resid:.3e})")
        return coords

    def exp(self, a: np.ndarray) -> np.ndarray:
        return expm(self.to_matrix(a))

    def log(self, g: np.ndarray) -> np.ndarray:
        X = logm(np.asarray(g, dtype=float))
        if np.max(np.abs(X.imag)) > 1e-8:
            raise ValueError("log: principal logarithm is not real (point too far from identity)")
        return self.from_matrix(X.real)

    def Ad(self, g: np.ndarray) -> np.ndarray:
        """Matrix of Ad_g on algebra coordinates."""
        g = np.asarray(g, dtype=float)
        ginv = np.linalg.inv(g)
        cols = [self.from_matrix(g @ self.rep[i] @ ginv) for i in range(self.dim)]
        return np.array(cols).T

    def left_trivialize(self, g: np.ndarray, V: np.ndarray) -> np.ndarray:
        """Coordinates of g^{-1} V for V a tangent matrix at g."""
        return self.from_matrix(np.linalg.inv(g) @ np.asarray(V, dtype=float))

    def right_trivialize(self, g: np.ndarray, V: np.ndarray) -> np.ndarray:
        """Coordinates of V g^{-1} for V a tangent matrix at g."""
        return self.from_matrix(np.asarray(V, dtype=float) @ np.linalg.inv(g))

    # -- sampling ----------------------------------------------------------

    def random_vector(self, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
        return scale * rng.standard_normal(self.dim)

    def random_group_element(self, rng: np.random.Generator, scale: float = 0.5) -> np.ndarray:
        return self.exp(self.random_vector(rng, scale))

    # -- serialization -----------------------------------------------------

    def to_config(self) -> dict:
        cfg = {
            "name": self.name,
            "dim": self.dim,
            "structure_constants": self.structure_constants.tolist(),
            "rep": self.rep.tolist(),
            "rep_dim": self.rep_dim,
        }
        if self.pairing is not None:
            cfg["pairing"] = self.pairing.tolist()
        return cfg

    @classmethod
    def from_config(cls, cfg: dict) -> "LieAlgebra":
        return cls(
            name=cfg["name"],
            dim=int(cfg["dim"]),
            structure_constants=np.asarray(cfg["structure_constants"], dtype=float),
            rep=np.asarray(cfg["rep"], dtype=float),
            pairing=np.asarray(cfg["pairing"], dtype=float) if cfg.get("pairing") is not None else None,
        )


def structure_constants_from_rep(rep: np.ndarray) -> np.ndarray:
    """Recover C[i,j,k] from commutators of faithful basis matrices."""
    rep = np.asarray(rep, dtype=float)
    n = rep.shape[0]
    basis_flat = rep.reshape(n, -1)
    pinv = np.linalg.pinv(basis_flat)
    C = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            comm = rep[i] @ rep[j] - rep[j] @ rep[i]
            coords = pinv.T @ comm.reshape(-1)
            resid = np.max(np.abs(basis_flat.T @ coords - comm.reshape(-1)))
            if resid > 1e-10:
                raise ValueError("basis matrices do not close under commutator")
            C[i, j] = coords
    C[np.abs(C) < 1e-13] = 0.0
    return C


# -- built-in algebras -----------------------------------------------------


def abelian(k: int) -> LieAlgebra:
    """Abelian R^k, represented by commuting nilpotent blocks."""
    d = 2 * k
    rep = np.zeros((k, d, d))
    for i in range(k):
        rep[i, 2 * i, 2 * i + 1] = 1.0
    return LieAlgebra(
        name=f"abelian-{k}",
        dim=k,
        structure_constants=np.zeros((k, k, k)),
        rep=rep,
        pairing=np.eye(k),
    )


def so3() -> LieAlgebra:
    """so(3) with Levi-Civita structure constants, adjoint rep, P = -Killing/2."""
    C = np.zeros((3, 3, 3))
    for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        C[i, j, k] = 1.0
        C[j, i, k] = -1.0
    rep = np.einsum("ijk->ikj", C)  # ad(e_i)_{kj} = C[i, j, k]
    K = np.einsum("iab,jba->ij", C, C)
    return LieAlgebra(name="so3", dim=3, structure_constants=C, rep=rep, pairing=-K / 2)


def aff1_double() -> LieAlgebra:
    """aff(1) + aff(1)* with coadjoint action and the duality pairing.

    Basis (x1, x2, f1, f2): [x1,x2]=x2, [x1,f2]=-f2, [x2,f2]=f1, duals abelian.
    Represented on R^3 = span(f1, f2, 1): x acts by the coadjoint action,
    f acts by translation.
    """
    rep = np.zeros((4, 3, 3))
    rep[0, 1, 1] = -1.0  # x1
    rep[1, 0, 1] = 1.0  # x2
    rep[2, 0, 2] = 1.0  # f1
    rep[3, 1, 2] = 1.0  # f2
    C = structure_constants_from_rep(rep)
    P = np.zeros((4, 4))
    P[0, 2] = P[2, 0] = 1.0
    P[1, 3] = P[3, 1] = 1.0
    return LieAlgebra(name="aff1-double", dim=4, structure_constants=C, rep=rep, pairing=P)


def _realify(Z: np.ndarray) -> np.ndarray:
    """Complex 2x2 matrix -> real 4x4 via X = A+iB |-> [[A,-B],[B,A]]."""
    A, B = Z.real, Z.imag
    return np.block([[A, -B], [B, A]])


def sl2c_iwasawa() -> LieAlgebra:
    """Realified sl(2,C) with the imaginary trace pairing.

    Basis 0..2 spans su(2), basis 3..5 spans traceless upper triangular with
    real diagonal; both isotropic for Im tr(XY).
    """
    i = 1j
    basis_c = [
        np.array([[i, 0], [0, -i]]),
        np.array([[0, 1], [-1, 0]]),
        np.array([[0, i], [i, 0]]),
        np.array([[1, 0], [0, -1]]),
        np.array([[0, 1], [0, 0]]),
        np.array([[0, i], [0, 0]]),
    ]
    rep = np.array([_realify(Z) for Z in basis_c])
    C = structure_constants_from_rep(rep)
    n = 6
    P = np.zeros((n, n))
    for a in range(n):
        for b in range(n):
            P[a, b] = np.trace(basis_c[a] @ basis_c[b]).imag
    P[np.abs(P) < 1e-13] = 0.0
    return LieAlgebra(name="sl2c-iwasawa", dim=6, structure_constants=C, rep=rep, pairing=P)


_BUILTIN_FACTORIES = {
    "so3": so3,
    "aff1-double": aff1_double,
    "sl2c-iwasawa": sl2c_iwasawa,
}


def builtin_algebra(name: str) -> LieAlgebra:
    if name.startswith("abelian-"):
        return abelian(int(name.split("-", 1)[1]))
    try:
        return _BUILTIN_FACTORIES[name]()
    except KeyError:
        raise KeyError(f"unknown built-in algebra {name!r}") from None


def load_algebra(name_or_path: str) -> LieAlgebra:
    """Resolve a built-in name or a JSON config path."""
    if name_or_path.startswith("abelian-") or name_or_path in _BUILTIN_FACTORIES:
        return builtin_algebra(name_or_path)
    with open(name_or_path) as fh:
        return LieAlgebra.from_config(json.load(fh))
