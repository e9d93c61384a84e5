"""Seeded random instances for the searches: Hermitian matrices,
Parseval and unit-norm frames, eta-tight systems, projections and
coordinate-large subspaces.  Everything is a pure function of its seed.
"""

from __future__ import annotations

import numpy as np

from .frames import Frame
from .linalg import op_norm
from .paving import projection_lift
from .subspaces import SubspaceModel, is_A_large

__all__ = [
    "eta_tight_unit_frame",
    "lifted_half_diagonal_projection",
    "random_hermitian",
    "random_large_subspace",
    "random_parseval_frame",
    "random_projection",
    "random_selfadjoint_contraction",
    "random_unit_norm_frame",
]


def _gaussian(rng, shape, complex_entries: bool) -> np.ndarray:
    if complex_entries:
        return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return rng.standard_normal(shape)


def random_hermitian(n, seed, complex_entries=False, zero_diag=False) -> np.ndarray:
    rng = np.random.default_rng(seed)
    A = _gaussian(rng, (n, n), complex_entries)
    H = (A + A.conj().T) / 2.0
    if zero_diag:
        np.fill_diagonal(H, 0.0)
    return H


def random_selfadjoint_contraction(n, seed, complex_entries=False, zero_diag=False) -> np.ndarray:
    """Random self-adjoint matrix scaled to operator norm exactly 1."""
    H = random_hermitian(n, seed, complex_entries, zero_diag)
    nrm = op_norm(H)
    return H / nrm if nrm > 0 else H


def random_parseval_frame(d, m, seed, complex_entries=False) -> Frame:
    """m >= d gaussian vectors pushed through S^{-1/2}: frame operator is
    the identity to solver precision."""
    if m < d:
        raise ValueError("a Parseval frame needs at least d vectors")
    rng = np.random.default_rng(seed)
    V = _gaussian(rng, (d, m), complex_entries)
    S = V @ V.conj().T
    w, U = np.linalg.eigh((S + S.conj().T) / 2.0)
    if w[0] <= 1e-12:
        raise RuntimeError("degenerate gaussian draw; pick another seed")
    V = (U / np.sqrt(w)) @ U.conj().T @ V
    return Frame.from_synthesis(V)


def random_unit_norm_frame(d, m, seed, complex_entries=False) -> Frame:
    rng = np.random.default_rng(seed)
    V = _gaussian(rng, (d, m), complex_entries)
    V = V / np.sqrt(np.sum(np.abs(V) ** 2, axis=0))
    return Frame.from_synthesis(V)


def eta_tight_unit_frame(d, eta, seed, complex_entries=False, tol=1e-6, max_sweeps=500) -> Frame:
    """Seeded unit-norm system of m = eta*d vectors with frame operator
    eta * I to within tol.

    Starts from random unit vectors and alternates two corrections:
    retighten (multiply by sqrt(eta) S^{-1/2}, making the frame operator
    exactly eta*I) and renormalize columns.  Raises RuntimeError if the
    sweep stalls instead of silently accepting a loose instance.
    """
    m_exact = eta * d
    m = int(round(m_exact))
    if abs(m_exact - m) > 1e-9 or m < d:
        raise ValueError(f"eta*d must be an integer vector count >= d, got {m_exact}")
    rng = np.random.default_rng(seed)
    V = _gaussian(rng, (d, m), complex_entries)
    V = V / np.sqrt(np.sum(np.abs(V) ** 2, axis=0))
    eye = np.eye(d)
    for _ in range(max_sweeps):
        S = V @ V.conj().T
        norms = np.sqrt(np.sum(np.abs(V) ** 2, axis=0))
        if op_norm(S - eta * eye) <= tol and np.max(np.abs(norms - 1.0)) <= 1e-8:
            return Frame.from_synthesis(V)
        w, U = np.linalg.eigh((S + S.conj().T) / 2.0)
        if w[0] <= 1e-12:
            raise RuntimeError("rank-deficient sweep state; pick another seed")
        V = np.sqrt(eta) * (U / np.sqrt(w)) @ U.conj().T @ V
        V = V / np.sqrt(np.sum(np.abs(V) ** 2, axis=0))
    raise RuntimeError(f"eta-tight correction sweeps did not converge within {max_sweeps}")


def random_projection(n, rank, seed, complex_entries=False) -> np.ndarray:
    if not 0 <= rank <= n:
        raise ValueError(f"rank must lie in [0, {n}]")
    if rank == 0:
        return np.zeros((n, n))
    rng = np.random.default_rng(seed)
    Q, _ = np.linalg.qr(_gaussian(rng, (n, rank), complex_entries))
    P = Q @ Q.conj().T
    return (P + P.conj().T) / 2.0


def lifted_half_diagonal_projection(n, seed, complex_entries=False) -> np.ndarray:
    """2n x 2n projection with constant diagonal 1/2, obtained by lifting
    a random zero-diagonal self-adjoint contraction."""
    T = random_selfadjoint_contraction(n, seed, complex_entries, zero_diag=True)
    return projection_lift(T, "+")


def random_large_subspace(n, dim, seed, min_coordinate_norm=0.3, max_tries=200) -> SubspaceModel:
    """Rejection-sample a dim-dimensional subspace of R^n whose projector
    keeps every coordinate norm at or above min_coordinate_norm."""
    for t in range(max_tries):
        rng = np.random.default_rng((seed, t))
        basis = _gaussian(rng, (dim, n), False)
        H = SubspaceModel(basis)
        ok, _ = is_A_large(H, min_coordinate_norm)
        if ok:
            return H
    raise RuntimeError(
        f"no {dim}-dim subspace of R^{n} with coordinate norms >= {min_coordinate_norm} "
        f"found in {max_tries} tries"
    )
