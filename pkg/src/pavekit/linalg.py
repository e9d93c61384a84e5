"""Dense linear-algebra kernel: Hermitian eigendecompositions, operator
norms, PSD square roots and coordinate projections.

Everything operates on plain numpy arrays (float64 for real matrices,
complex128 for complex ones) and returns fresh arrays; inputs are never
mutated.  Matrices travel on the wire as
``{"rows": n, "cols": m, "re": [[...]], "im": [[...]]}`` with ``im``
omitted for real entries.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

from .errors import IndexOutOfRange, NonSquare, NotHermitian, NotPSD

__all__ = [
    "EIG_TOL",
    "PSD_CLAMP_TOL",
    "EigenDecomposition",
    "as_matrix",
    "coordinate_projection",
    "delta_diag",
    "hermitian_eig",
    "hermiticity_defect",
    "matrix_from_json",
    "matrix_to_json",
    "op_norm",
    "psd_sqrt",
]

EIG_TOL = 1e-10
PSD_CLAMP_TOL = 1e-9


def as_matrix(data) -> np.ndarray:
    """Coerce ``data`` to a finite 2-d float64/complex128 array (a copy)."""
    M = np.asarray(data)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {M.shape}")
    if np.iscomplexobj(M):
        M = M.astype(np.complex128, copy=True)
    else:
        M = M.astype(np.float64, copy=True)
    if M.size and not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    return M


def _require_square(M: np.ndarray) -> None:
    if M.shape[0] != M.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {M.shape}")


def op_norm(M) -> float:
    """Operator (spectral) norm: the largest singular value of M."""
    M = as_matrix(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.svd(M, compute_uv=False)[0])


def hermiticity_defect(M) -> float:
    """``op_norm(M - M*)`` for a square M; 0 means exactly self-adjoint."""
    M = as_matrix(M)
    _require_square(M)
    return op_norm(M - M.conj().T)


class EigenDecomposition(NamedTuple):
    """Eigenvalues in ascending order, eigenvectors as unitary columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eig(M, tol: float = EIG_TOL) -> EigenDecomposition:
    """Diagonalize a (numerically) Hermitian matrix.

    Raises NotHermitian when ``op_norm(M - M*) > tol``.  The symmetrized
    matrix (M + M*)/2 is what actually gets diagonalized, so results are
    deterministic and exact reconstruction holds to solver precision.
    """
    M = as_matrix(M)
    _require_square(M)
    if op_norm(M - M.conj().T) > tol:
        raise NotHermitian(f"matrix is not self-adjoint within tol={tol}")
    w, V = np.linalg.eigh((M + M.conj().T) / 2.0)
    return EigenDecomposition(w, V)


def psd_sqrt(M, tol: float = PSD_CLAMP_TOL) -> np.ndarray:
    """Hermitian PSD square root; eigenvalues in [-tol, 0) are clamped to 0.

    Raises NotPSD when an eigenvalue sits below -tol.
    """
    dec = hermitian_eig(M, tol)
    w = dec.eigenvalues
    if w.size and w[0] < -tol:
        raise NotPSD(f"minimum eigenvalue {w[0]} below -{tol}")
    root = np.sqrt(np.clip(w, 0.0, None))
    V = dec.eigenvectors
    R = (V * root) @ V.conj().T
    return (R + R.conj().T) / 2.0


def coordinate_projection(S: Iterable[int], n: int) -> np.ndarray:
    """Diagonal 0/1 projection onto the coordinates in S inside dimension n."""
    idx = sorted({int(i) for i in S})
    if idx and (idx[0] < 0 or idx[-1] >= n):
        raise IndexOutOfRange(f"indices {idx} not inside [0, {n})")
    P = np.zeros((n, n))
    for i in idx:
        P[i, i] = 1.0
    return P


def delta_diag(T, mode: str) -> float:
    """Min or max of |t_ii| over the diagonal of a square matrix.

    Both readings are exposed on purpose: the min form matches the
    operator-theory convention, while every paving bound in this package
    consumes the max form (the one the vector-norm hypotheses need).
    """
    T = as_matrix(T)
    _require_square(T)
    d = np.abs(np.diag(T))
    if mode == "min":
        return float(d.min()) if d.size else 0.0
    if mode == "max":
        return float(d.max()) if d.size else 0.0
    raise ValueError(f"mode must be 'min' or 'max', got {mode!r}")


def matrix_to_json(M) -> dict:
    M = as_matrix(M)
    out = {
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]),
        "re": [[float(x) for x in row] for row in M.real],
    }
    if np.iscomplexobj(M):
        out["im"] = [[float(x) for x in row] for row in M.imag]
    return out


def matrix_from_json(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    re = np.asarray(obj["re"], dtype=np.float64)
    if re.shape != (rows, cols):
        raise ValueError(f"re grid shape {re.shape} != ({rows}, {cols})")
    if "im" in obj:
        im = np.asarray(obj["im"], dtype=np.float64)
        if im.shape != (rows, cols):
            raise ValueError(f"im grid shape {im.shape} != ({rows}, {cols})")
        return as_matrix(re + 1j * im)
    return as_matrix(re)
