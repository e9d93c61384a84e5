"""Riesz-sequence partitions: splitting unit-norm Bessel systems into
classes whose Gram eigenvalues sit inside [1 - eps, 1 + eps], restricted
invertibility subset search, and the renormed counterexample value.

A class is an eps-Riesz sequence exactly when the corresponding
principal submatrix of I - G has norm at most eps (the eigenvalues just
translate), so the partition search is a zero-diagonal paving at an
absolute level and reuses the paving engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

import numpy as np

from ._jsonutil import subject_hash
from .errors import NotUnitNorm, TooLarge
from .frames import Frame, FrameBounds, frame_bounds, frame_to_json, gram
from .linalg import as_matrix, matrix_to_json, op_norm
from .paving import (
    CERT_TOL,
    DEFAULT_BUDGET,
    SearchBudget,
    canonical_partition,
    min_blocks_partition,
)

__all__ = [
    "BT_SUBSET_GUARD",
    "BtSubsetResult",
    "RieszCertificate",
    "bt_partition",
    "bt_subset_search",
    "feichtinger_partition",
    "renorm",
    "renorm_value",
    "riesz_bounds",
    "sundberg_split",
]

BT_SUBSET_GUARD = 18
UNIT_NORM_TOL = 1e-8


@dataclass(frozen=True)
class RieszCertificate:
    """Partition into classes with per-class Gram eigenvalue ranges.

    A class is in-band when its range sits inside
    ``band_center * [1 - epsilon, 1 + epsilon]`` (within ``tolerance``);
    ``band_center`` is 1 for plain Riesz classes and the measure of the
    underlying set for Fourier-frame certificates.  ``universal_r`` is the
    reported worst-case class count from the governing bound formula and
    plays no role in the verdict.  ``window`` is the frequency truncation
    level for Fourier certificates, None otherwise.
    """

    subject_hash: str
    classes: tuple[tuple[int, ...], ...]
    per_class_bounds: tuple[tuple[float, float], ...]
    epsilon: float
    tolerance: float
    verdict: str
    band_center: float = 1.0
    universal_r: float | None = None
    window: int | None = None
    seed: int = 0

    @property
    def valid(self) -> bool:
        return self.verdict == "valid"

    @property
    def r(self) -> int:
        return len(self.classes)

    def to_json(self) -> dict:
        out = {
            "subject_hash": self.subject_hash,
            "classes": [list(map(int, c)) for c in self.classes],
            "per_class_bounds": [[float(lo), float(hi)] for lo, hi in self.per_class_bounds],
            "epsilon": float(self.epsilon),
            "tolerance": float(self.tolerance),
            "verdict": self.verdict,
            "band_center": float(self.band_center),
            "seed": int(self.seed),
        }
        if self.universal_r is not None:
            out["universal_r"] = float(self.universal_r)
        if self.window is not None:
            out["window"] = int(self.window)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "RieszCertificate":
        return cls(
            subject_hash=str(obj["subject_hash"]),
            classes=tuple(tuple(int(i) for i in c) for c in obj["classes"]),
            per_class_bounds=tuple((float(lo), float(hi)) for lo, hi in obj["per_class_bounds"]),
            epsilon=float(obj["epsilon"]),
            tolerance=float(obj["tolerance"]),
            verdict=str(obj["verdict"]),
            band_center=float(obj.get("band_center", 1.0)),
            universal_r=float(obj["universal_r"]) if "universal_r" in obj else None,
            window=int(obj["window"]) if "window" in obj else None,
            seed=int(obj.get("seed", 0)),
        )


def band_certificate(
    subject: str,
    classes,
    G: np.ndarray,
    epsilon: float,
    tol: float = CERT_TOL,
    band_center: float = 1.0,
    universal_r: float | None = None,
    window: int | None = None,
    seed: int = 0,
    class_labels=None,
) -> RieszCertificate:
    """Assemble a certificate from Gram compressions.

    ``classes`` index into G; ``class_labels`` optionally remaps the stored
    class entries (e.g. to frequencies) while eigenvalues always come from
    the positional compression.
    """
    classes = canonical_partition(classes)
    bounds = []
    for cls_idx in classes:
        sub = G[np.ix_(cls_idx, cls_idx)]
        w = np.linalg.eigvalsh((sub + sub.conj().T) / 2.0)
        bounds.append((float(w[0]), float(w[-1])))
    lo_ok = all(lo >= band_center * (1.0 - epsilon) - tol for lo, _ in bounds)
    hi_ok = all(hi <= band_center * (1.0 + epsilon) + tol for _, hi in bounds)
    verdict = "valid" if (lo_ok and hi_ok) else "invalid"
    if class_labels is not None:
        stored = tuple(tuple(int(class_labels[i]) for i in c) for c in classes)
        stored = tuple(sorted(tuple(sorted(c)) for c in stored))
    else:
        stored = classes
    return RieszCertificate(
        subject_hash=subject,
        classes=stored,
        per_class_bounds=tuple(bounds),
        epsilon=float(epsilon),
        tolerance=float(tol),
        verdict=verdict,
        band_center=float(band_center),
        universal_r=universal_r,
        window=window,
        seed=int(seed),
    )


def riesz_bounds(vectors) -> FrameBounds:
    """(min, max) eigenvalue of the Gram matrix of the given vectors."""
    F = vectors if isinstance(vectors, Frame) else Frame(np.asarray(vectors))
    w = np.linalg.eigvalsh(gram(F))
    return FrameBounds(float(w[0]), float(w[-1]))


def _require_unit_norm(V: np.ndarray) -> None:
    norms = np.sqrt(np.sum(np.abs(V) ** 2, axis=0))
    if np.max(np.abs(norms - 1.0)) > UNIT_NORM_TOL:
        raise NotUnitNorm("every vector must have unit norm within 1e-8")


def _riesz_universal_r(bessel: float, epsilon: float, is_complex: bool) -> float:
    power = 8 if is_complex else 4
    return float((6.0 * (bessel + 1.0) / epsilon) ** power)


def feichtinger_partition(
    F: Frame,
    epsilon: float,
    budget: SearchBudget = DEFAULT_BUDGET,
    tol: float = CERT_TOL,
) -> RieszCertificate:
    """Partition a unit-norm Bessel system into the fewest classes found
    whose Gram eigenvalues all lie in [1 - epsilon, 1 + epsilon].

    Works by paving I - G (zero diagonal) at the absolute level epsilon;
    exhaustive and therefore minimal for m <= 14, seeded local search
    above.  ``universal_r`` reports the worst-case class count
    ``(6 (B + 1) / epsilon) ** 4`` (8 in the complex case) for the Bessel
    bound B; desk instances sit far below it.
    """
    V = F.synthesis
    _require_unit_norm(V)
    G = gram(F)
    M = np.eye(F.size) - G
    blocks = min_blocks_partition(M, epsilon, budget, tol)
    if blocks is None:  # unreachable: I - G has zero diagonal, singletons work
        raise RuntimeError("paving of I - G failed unexpectedly")
    bessel = op_norm(G)
    return band_certificate(
        subject_hash_of_frame(F),
        blocks,
        G,
        epsilon,
        tol,
        universal_r=_riesz_universal_r(bessel, epsilon, F.is_complex()),
        seed=budget.seed,
    )


def subject_hash_of_frame(F: Frame) -> str:
    return subject_hash(frame_to_json(F))


class BtSubsetResult(NamedTuple):
    subset: tuple[int, ...]
    achieved_lower_bound: float
    invertibility_ratio: float


def bt_subset_search(T, A: float) -> BtSubsetResult:
    """Largest column subset whose Gram keeps its smallest eigenvalue at or
    above A, by decreasing-cardinality enumeration (guarded to n <= 18).

    Also reports |subset| * ||T||^2 / n, the empirical ratio behind the
    restricted-invertibility constant; nothing is asserted about it.
    """
    T = as_matrix(T)
    n = T.shape[1]
    if n > BT_SUBSET_GUARD:
        raise TooLarge(f"n={n} exceeds the subset enumeration guard {BT_SUBSET_GUARD}")
    _require_unit_norm(T)
    G = T.conj().T @ T
    G = (G + G.conj().T) / 2.0
    nrm = op_norm(T)

    def lam_min(idx: tuple[int, ...]) -> float:
        return float(np.linalg.eigvalsh(G[np.ix_(idx, idx)])[0])

    if lam_min(tuple(range(n))) >= A:
        return BtSubsetResult(tuple(range(n)), lam_min(tuple(range(n))), nrm**2)
    for k in range(n - 1, 0, -1):
        for idx in combinations(range(n), k):
            lam = lam_min(idx)
            if lam >= A:
                return BtSubsetResult(idx, lam, k * nrm**2 / n)
    return BtSubsetResult((), math.inf, 0.0)


def bt_partition(
    T,
    epsilon: float,
    budget: SearchBudget = DEFAULT_BUDGET,
    tol: float = CERT_TOL,
) -> RieszCertificate:
    """Partition the unit-norm columns of T into classes that are
    eps-Riesz sequences; same pipeline as feichtinger_partition, with the
    worst-case class count reported for B = ||T|| instead of the Bessel
    bound."""
    T = as_matrix(T)
    _require_unit_norm(T)
    F = Frame.from_synthesis(T)
    G = gram(F)
    M = np.eye(F.size) - G
    blocks = min_blocks_partition(M, epsilon, budget, tol)
    if blocks is None:
        raise RuntimeError("paving of I - G failed unexpectedly")
    return band_certificate(
        subject_hash(matrix_to_json(T)),
        blocks,
        G,
        epsilon,
        tol,
        universal_r=_riesz_universal_r(op_norm(T), epsilon, bool(np.iscomplexobj(T))),
        seed=budget.seed,
    )


def renorm(coeffs) -> float:
    """The equivalent norm ||a||_2 + sup |a_i| on coefficient sequences."""
    a = np.asarray(coeffs, dtype=np.complex128).ravel()
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a) + np.max(np.abs(a)))


def renorm_value(n: int) -> float:
    """Renormed size of the flat combination of n disjoint two-term unit
    vectors f_i = (e_{2i} + e_{2i+1}) / (sqrt(2) + 1) with coefficients
    1/sqrt(n): equals (sqrt(2) + 1/sqrt(n)) / (sqrt(2) + 1).

    Strictly decreasing in n, equal to 1 at n = 1 and tending to
    sqrt(2)/(sqrt(2) + 1) ~ 0.5857864: bounded away from 1, which is what
    breaks the two-sided Riesz bounds for this equivalent norm.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    s = math.sqrt(2.0)
    return (s + 1.0 / math.sqrt(n)) / (s + 1.0)


def sundberg_split(
    F: Frame,
    epsilon: float,
    budget: SearchBudget = DEFAULT_BUDGET,
    tol: float = 1e-8,
) -> list[tuple[int, ...]]:
    """Write a unit-norm Bessel system as a finite union of non-spanning
    sets: partition into Riesz classes, then split every spanning class
    into one vector plus the rest (a Riesz class has at most dim
    vectors, so both halves lose the span).

    Every returned set is re-checked to have rank below the ambient
    dimension; needs dim >= 2.
    """
    if F.dim < 2:
        raise ValueError("ambient dimension must be at least 2; every unit vector spans dim 1")
    cert = feichtinger_partition(F, epsilon, budget)
    sets: list[tuple[int, ...]] = []
    for cls_idx in cert.classes:
        if frame_bounds(F.subsystem(cls_idx)).lower > tol and len(cls_idx) >= F.dim:
            sets.append((cls_idx[0],))
            sets.append(tuple(cls_idx[1:]))
        else:
            sets.append(tuple(cls_idx))
    sets.sort()
    for s in sets:
        if len(s) >= F.dim and frame_bounds(F.subsystem(s)).lower > tol:
            raise RuntimeError(f"split produced a spanning set {s}")
    return sets
