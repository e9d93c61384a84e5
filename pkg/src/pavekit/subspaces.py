"""Coordinate-large subspaces and their decompositions: a subspace is
A-large when its orthogonal projector satisfies ||P e_i|| >= A on every
coordinate, and r-decomposable when some partition of the coordinates
makes every block projection map the subspace onto the whole block.

Decomposition goes through the unit-norm coordinate frame
{P e_i / ||P e_i||}: its Riesz classes give blocks on which the
restricted analysis map is onto, which is exactly per-block surjectivity.
"""

from __future__ import annotations

import numpy as np

from ._jsonutil import subject_hash
from .errors import BadPartition, NotLarge
from .frames import Frame
from .linalg import as_matrix
from .paving import CERT_TOL, DEFAULT_BUDGET, SearchBudget, check_partition
from .sequences import RieszCertificate, band_certificate, feichtinger_partition

__all__ = [
    "SubspaceModel",
    "decompose",
    "is_A_large",
    "subspace_from_json",
    "subspace_to_json",
    "verify_decomposition",
]

DEPENDENCE_TOL = 1e-8
SURJECTIVITY_TOL = 1e-8


class SubspaceModel:
    """Subspace of an n-dimensional coordinate space, held as an
    orthonormal basis (columns) with the projector cached.

    Input vectors are orthonormalized on construction; linearly dependent
    input is rejected at tolerance 1e-8.
    """

    __slots__ = ("_B", "_P")

    def __init__(self, basis_vectors, ambient_dim: int | None = None):
        arr = as_matrix(np.asarray(basis_vectors))
        if arr.shape[0] < 1:
            raise ValueError("need at least one basis vector")
        if ambient_dim is not None and arr.shape[1] != ambient_dim:
            raise ValueError(f"vectors live in dimension {arr.shape[1]}, expected {ambient_dim}")
        V = arr.T  # columns spanning the subspace
        if V.shape[1] > V.shape[0]:
            raise ValueError("more basis vectors than ambient dimensions")
        Q, R = np.linalg.qr(V)
        diag = np.abs(np.diag(R))
        if diag.size and diag.min() <= DEPENDENCE_TOL * max(1.0, diag.max()):
            raise ValueError("basis vectors are linearly dependent (tolerance 1e-8)")
        P = Q @ Q.conj().T
        P = (P + P.conj().T) / 2.0
        for a in (Q, P):
            a.setflags(write=False)
        self._B = Q
        self._P = P

    @property
    def ambient_dim(self) -> int:
        return self._B.shape[0]

    @property
    def dim(self) -> int:
        return self._B.shape[1]

    @property
    def basis(self) -> np.ndarray:
        """n x k orthonormal columns (read-only)."""
        return self._B

    @property
    def projector(self) -> np.ndarray:
        return self._P

    def coordinate_norms(self) -> np.ndarray:
        """||P e_i|| for every coordinate i (equals sqrt of diag(P))."""
        d = np.clip(np.real(np.diag(self._P)), 0.0, None)
        return np.sqrt(d)

    def __repr__(self) -> str:
        return f"SubspaceModel(dim={self.dim}, ambient={self.ambient_dim})"


def is_A_large(H: SubspaceModel, A: float, tol: float = 1e-10) -> tuple[bool, float]:
    """Whether every coordinate norm ||P e_i|| reaches A (within tol);
    returns the verdict together with the minimum norm.

    The maximizing unit vector for coordinate i is P e_i / ||P e_i||,
    whose i-th entry is exactly ||P e_i||, so this projector criterion
    and the existential definition agree.
    """
    if not 0.0 < A <= 1.0:
        raise ValueError("A must lie in (0, 1]")
    mn = float(H.coordinate_norms().min())
    return mn >= A - tol, mn


def decompose(
    H: SubspaceModel,
    epsilon: float,
    budget: SearchBudget = DEFAULT_BUDGET,
    tol: float = CERT_TOL,
) -> list[tuple[int, ...]]:
    """Partition the coordinates so every block projection maps H onto the
    corresponding coordinate space.

    Builds the unit-norm coordinate frame {P e_i / ||P e_i||} (Bessel
    bound at most 1/A^2 when H is A-large) in basis coordinates and takes
    its Riesz classes; a class with Gram eigenvalues in [1-eps, 1+eps] is
    linearly independent with a surjective restricted analysis map, which
    is per-block surjectivity.  Raises NotLarge when some ||P e_i|| is
    numerically zero.
    """
    norms = H.coordinate_norms()
    if float(norms.min()) <= SURJECTIVITY_TOL:
        raise NotLarge(f"minimum coordinate norm {norms.min():.3e} is numerically zero")
    U = H.basis.conj().T / norms  # column i: coordinates of P e_i / ||P e_i|| in H
    cert = feichtinger_partition(Frame.from_synthesis(U), epsilon, budget, tol)
    return [tuple(c) for c in cert.classes]


def decompose_certificate(
    H: SubspaceModel,
    epsilon: float,
    budget: SearchBudget = DEFAULT_BUDGET,
    tol: float = CERT_TOL,
) -> RieszCertificate:
    """Like decompose, but returns the full Riesz certificate of the
    coordinate frame, hashed against the subspace (reported class count
    bound (6 (A^2 + 1) / (eps A^2)) ** 4, 8 in the complex case)."""
    norms = H.coordinate_norms()
    if float(norms.min()) <= SURJECTIVITY_TOL:
        raise NotLarge(f"minimum coordinate norm {norms.min():.3e} is numerically zero")
    A = float(norms.min())
    U = H.basis.conj().T / norms
    F = Frame.from_synthesis(U)
    inner = feichtinger_partition(F, epsilon, budget, tol)
    power = 8 if F.is_complex() else 4
    universal_r = float((6.0 * (A**2 + 1.0) / (epsilon * A**2)) ** power)
    from .frames import gram  # local import keeps module load order simple

    return band_certificate(
        subject_hash(subspace_to_json(H)),
        inner.classes,
        gram(F),
        epsilon,
        tol,
        universal_r=universal_r,
        seed=budget.seed,
    )


def verify_decomposition(H: SubspaceModel, partition, tol: float = SURJECTIVITY_TOL) -> bool:
    """Check per-block surjectivity directly: the |S| x dim(H) block of
    H's basis rows must have full row rank (smallest singular value above
    tol)."""
    blocks = check_partition(partition, H.ambient_dim)
    if not blocks and H.ambient_dim:
        raise BadPartition("empty partition")
    B = H.basis
    for block in blocks:
        rows = B[list(block), :]
        if rows.shape[0] > rows.shape[1]:
            return False
        s = np.linalg.svd(rows, compute_uv=False)
        if s.size == 0 or float(s[-1]) <= tol:
            return False
    return True


def subspace_to_json(H: SubspaceModel) -> dict:
    B = H.basis
    if np.iscomplexobj(B):
        rows = [
            [{"re": float(z.real), "im": float(z.imag)} for z in B[:, j]]
            for j in range(B.shape[1])
        ]
    else:
        rows = [[float(x) for x in B[:, j]] for j in range(B.shape[1])]
    return {"ambient_dim": int(H.ambient_dim), "basis": rows}


def subspace_from_json(obj: dict) -> SubspaceModel:
    n = int(obj["ambient_dim"])
    rows = []
    complex_found = False
    for vec in obj["basis"]:
        row = []
        for entry in vec:
            if isinstance(entry, dict):
                complex_found = True
                row.append(complex(float(entry["re"]), float(entry.get("im", 0.0))))
            else:
                row.append(float(entry))
        rows.append(row)
    arr = np.asarray(rows, dtype=np.complex128 if complex_found else np.float64)
    return SubspaceModel(arr, ambient_dim=n)
