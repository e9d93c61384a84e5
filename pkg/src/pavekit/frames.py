"""Finite frame machinery: frame/Gram operators, frame bounds, canonical
Parseval frames, dilation of a Parseval frame to an orthonormal basis,
frame projections and kernel-based isomorphism tests.

A :class:`Frame` is an ordered system of m vectors in dimension d, stored
as the columns of its synthesis matrix.  The frame operator ``S = V V*``
(d x d) and the Gram matrix ``G = V* V`` (m x m) are computed once at
construction and cached; a frame is immutable afterwards, so instances
are safe to share between concurrent searches.

Wire format: ``{"dim": d, "vectors": [[...], ...]}`` where each inner
list is one vector, entries either bare floats or ``{"re": x, "im": y}``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import NotAFrame, NotAProjection, NotParseval
from .linalg import as_matrix, op_norm

__all__ = [
    "PARSEVAL_TOL",
    "Frame",
    "FrameBounds",
    "canonical_parseval",
    "frame_bounds",
    "frame_from_json",
    "frame_operator",
    "frame_to_json",
    "frames_isomorphic",
    "gram",
    "naimark_dilate",
    "project_frame",
    "range_frame_bounds",
]

PARSEVAL_TOL = 1e-8


class FrameBounds(NamedTuple):
    lower: float
    upper: float


class Frame:
    """Ordered list of m vectors spanning (a subspace of) dimension d."""

    __slots__ = ("_V", "_S", "_G")

    def __init__(self, vectors, dim: int | None = None):
        V = np.asarray(vectors)
        if V.ndim != 2:
            raise ValueError("vectors must form a 2-d array (one row per vector)")
        if V.shape[0] < 1:
            raise ValueError("a frame needs at least one vector")
        if dim is not None and V.shape[1] != dim:
            raise ValueError(f"vectors live in dimension {V.shape[1]}, expected {dim}")
        self._init_from_synthesis(as_matrix(V).T)

    @classmethod
    def from_synthesis(cls, V) -> "Frame":
        """Build a frame directly from a d x m synthesis matrix (columns = vectors)."""
        self = object.__new__(cls)
        self._init_from_synthesis(as_matrix(V))
        return self

    def _init_from_synthesis(self, V: np.ndarray) -> None:
        if V.shape[1] < 1:
            raise ValueError("a frame needs at least one vector")
        S = V @ V.conj().T
        G = V.conj().T @ V
        for arr in (V, S, G):
            arr.setflags(write=False)
        self._V = V
        self._S = S
        self._G = G

    @property
    def dim(self) -> int:
        return self._V.shape[0]

    @property
    def size(self) -> int:
        return self._V.shape[1]

    @property
    def synthesis(self) -> np.ndarray:
        """d x m matrix whose columns are the frame vectors (read-only)."""
        return self._V

    @property
    def vectors(self) -> np.ndarray:
        """m x d view, one row per vector (read-only)."""
        return self._V.T

    def vector(self, i: int) -> np.ndarray:
        return self._V[:, i]

    def is_complex(self) -> bool:
        return bool(np.iscomplexobj(self._V))

    def subsystem(self, indices) -> "Frame":
        """The frame formed by the listed vectors, in the given order."""
        idx = [int(i) for i in indices]
        return Frame.from_synthesis(self._V[:, idx])

    def __repr__(self) -> str:
        kind = "complex" if self.is_complex() else "real"
        return f"Frame(m={self.size}, dim={self.dim}, {kind})"


def frame_operator(F: Frame) -> np.ndarray:
    """S = sum of outer products f_i f_i*, a Hermitian PSD d x d matrix."""
    return F._S


def gram(F: Frame) -> np.ndarray:
    """G with entries <f_j, f_i>; shares its nonzero spectrum with S."""
    return F._G


def frame_bounds(F: Frame) -> FrameBounds:
    """(min, max) eigenvalue of the frame operator; lower > 0 means spanning."""
    w = np.linalg.eigvalsh(frame_operator(F))
    return FrameBounds(max(float(w[0]), 0.0), float(w[-1]))


def canonical_parseval(F: Frame, tol: float = PARSEVAL_TOL) -> Frame:
    """Apply S^{-1/2} to every vector, producing a Parseval frame.

    Raises NotAFrame when the lower frame bound is at or below ``tol``.
    """
    w, V = np.linalg.eigh(frame_operator(F))
    if w[0] <= tol:
        raise NotAFrame(f"lower frame bound {w[0]} <= tol={tol}; cannot invert S")
    inv_root = (V / np.sqrt(w)) @ V.conj().T
    return Frame.from_synthesis(inv_root @ F.synthesis)


def naimark_dilate(F: Frame, tol: float = PARSEVAL_TOL) -> np.ndarray:
    """Rank-d projection on m-space realizing a Parseval frame as a
    compressed orthonormal basis.

    The returned matrix is the Gram matrix of F; its i-th column is the
    analysis image of f_i.  Raises NotParseval when ``||S - I|| > tol``.
    """
    S = frame_operator(F)
    if op_norm(S - np.eye(F.dim)) > tol:
        raise NotParseval(f"frame operator differs from identity by more than {tol}")
    return np.array(gram(F))


def project_frame(F: Frame, P, tol: float = PARSEVAL_TOL) -> Frame:
    """The image system {P f_i} under an orthogonal projection P."""
    P = _checked_projection(P, tol)
    if P.shape[0] != F.dim:
        raise NotAProjection(f"projection dimension {P.shape[0]} != frame dim {F.dim}")
    return Frame.from_synthesis(P @ F.synthesis)


def range_frame_bounds(F: Frame, P, tol: float = PARSEVAL_TOL) -> FrameBounds:
    """Frame bounds of F computed on the range of the projection P.

    Compresses the frame operator to an orthonormal basis of range(P);
    with P = 0 the bounds are vacuous and (0, 0) is returned.
    """
    P = _checked_projection(P, tol)
    w, U = np.linalg.eigh((P + P.conj().T) / 2.0)
    basis = U[:, w > 0.5]
    if basis.shape[1] == 0:
        return FrameBounds(0.0, 0.0)
    C = basis.conj().T @ frame_operator(F) @ basis
    ev = np.linalg.eigvalsh((C + C.conj().T) / 2.0)
    return FrameBounds(max(float(ev[0]), 0.0), float(ev[-1]))


def frames_isomorphic(F: Frame, G: Frame, tol: float = 1e-8) -> bool:
    """True iff the synthesis kernels of the two systems coincide.

    Coefficient sequences annihilated by ``a -> sum a_i f_i`` are compared
    via mutual containment of orthonormal kernel bases at tolerance
    ``tol`` (largest principal-angle sine).
    """
    if F.size != G.size:
        raise ValueError(f"frames have different sizes {F.size} != {G.size}")
    N1 = _synthesis_kernel(F.synthesis, tol)
    N2 = _synthesis_kernel(G.synthesis, tol)
    if N1.shape[1] != N2.shape[1]:
        return False
    if N1.shape[1] == 0:
        return True
    r1 = N1 - N2 @ (N2.conj().T @ N1)
    r2 = N2 - N1 @ (N1.conj().T @ N2)
    return op_norm(r1) <= tol and op_norm(r2) <= tol


def _synthesis_kernel(V: np.ndarray, tol: float) -> np.ndarray:
    _, s, vh = np.linalg.svd(V, full_matrices=True)
    cutoff = tol * max(1.0, float(s[0]) if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return vh[rank:].conj().T


def _checked_projection(P, tol: float) -> np.ndarray:
    P = as_matrix(P)
    if P.shape[0] != P.shape[1]:
        raise NotAProjection(f"projection must be square, got {P.shape}")
    if op_norm(P - P.conj().T) > tol or op_norm(P @ P - P) > tol:
        raise NotAProjection(f"matrix is not an orthogonal projection within {tol}")
    return P


def frame_to_json(F: Frame) -> dict:
    if F.is_complex():
        vecs = [
            [{"re": float(z.real), "im": float(z.imag)} for z in row]
            for row in F.vectors
        ]
    else:
        vecs = [[float(x) for x in row] for row in F.vectors]
    return {"dim": int(F.dim), "vectors": vecs}


def frame_from_json(obj: dict) -> Frame:
    dim = int(obj["dim"])
    rows = []
    for vec in obj["vectors"]:
        row = []
        for entry in vec:
            if isinstance(entry, dict):
                row.append(complex(float(entry["re"]), float(entry.get("im", 0.0))))
            else:
                row.append(float(entry))
        rows.append(row)
    arr = np.asarray(rows)
    if any(isinstance(e, dict) for vec in obj["vectors"] for e in vec):
        arr = arr.astype(np.complex128)
    return Frame(arr, dim=dim)
