"""Fourier frames of a measurable union of intervals E in [0, 1]: exact
Fourier coefficients of the indicator, Toeplitz Gram compressions over a
finite frequency window, arithmetic-progression norm-distribution checks,
general-set partitions and syndetic gap analysis.

All statements live on a declared window [-N, N]; the truncation level is
recorded in every certificate.  Fourier coefficients use the closed form
of the integral, so no quadrature error enters the checks.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._jsonutil import subject_hash
from .errors import EmptySet
from .paving import CERT_TOL, DEFAULT_BUDGET, SearchBudget, min_blocks_partition
from .sequences import RieszCertificate, band_certificate

__all__ = [
    "FreqWindow",
    "IntervalSet",
    "SyndeticReport",
    "ap_partition_check",
    "chi_hat",
    "fourier_gram",
    "general_set_partition",
    "syndetic_analyze",
]


class IntervalSet:
    """Finite union of subintervals of [0, 1], normalized to sorted
    disjoint form (overlapping or touching pieces are merged).

    Endpoints may be given as floats, Fractions or strings understood by
    Fraction; they are stored as floats.
    """

    __slots__ = ("intervals",)

    def __init__(self, intervals):
        parsed = []
        for a, b in intervals:
            fa, fb = _as_endpoint(a), _as_endpoint(b)
            if not (0.0 <= fa < fb <= 1.0):
                raise ValueError(f"bad interval ({a}, {b}): need 0 <= a < b <= 1")
            parsed.append((fa, fb))
        parsed.sort()
        merged: list[tuple[float, float]] = []
        for a, b in parsed:
            if merged and a <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], b))
            else:
                merged.append((a, b))
        if not merged:
            raise ValueError("an interval set needs positive measure")
        self.intervals = tuple(merged)

    @property
    def measure(self) -> float:
        return float(sum(b - a for a, b in self.intervals))

    def to_json(self) -> dict:
        return {"intervals": [[float(a), float(b)] for a, b in self.intervals]}

    @classmethod
    def from_json(cls, obj: dict) -> "IntervalSet":
        return cls(obj["intervals"])

    def __repr__(self) -> str:
        parts = " u ".join(f"[{a:g},{b:g}]" for a, b in self.intervals)
        return f"IntervalSet({parts})"


def _as_endpoint(x) -> float:
    if isinstance(x, str):
        return float(Fraction(x))
    if isinstance(x, Fraction):
        return float(x)
    return float(x)


@dataclass(frozen=True)
class FreqWindow:
    """Frequencies [-N, N] (or a chosen subset) standing in for the
    integers; every harmonic certificate is relative to one."""

    N: int
    indices: tuple[int, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("window level N must be at least 1")
        idx = self.indices
        if idx is None:
            idx = tuple(range(-self.N, self.N + 1))
        else:
            idx = tuple(sorted({int(i) for i in idx}))
            if idx and (idx[0] < -self.N or idx[-1] > self.N):
                raise ValueError(f"indices must sit inside [-{self.N}, {self.N}]")
        object.__setattr__(self, "indices", idx)

    @property
    def size(self) -> int:
        return len(self.indices)


def chi_hat(E: IntervalSet, k: int) -> complex:
    """k-th Fourier coefficient of the indicator of E (exact closed form):
    integral over E of e^{-2 pi i k t} dt; the measure of E at k = 0."""
    if k == 0:
        return complex(E.measure)
    w = -2j * cmath.pi * k
    return sum((cmath.exp(w * b) - cmath.exp(w * a)) / w for a, b in E.intervals)


def fourier_gram(E: IntervalSet, W: FreqWindow) -> np.ndarray:
    """Gram matrix of the exponentials restricted to E over the window:
    entry (i, j) is chi_hat(E, n_j - n_i).

    Toeplitz with constant diagonal equal to the measure of E, Hermitian
    PSD with spectrum inside [0, 1] (a compression of a multiplication
    projection); lags share one computed coefficient so the Toeplitz
    structure is bit-exact.
    """
    idx = W.indices
    m = len(idx)
    lags = {}
    for i in range(m):
        for j in range(m):
            lag = idx[j] - idx[i]
            if abs(lag) not in lags:
                lags[abs(lag)] = chi_hat(E, abs(lag))
    G = np.empty((m, m), dtype=np.complex128)
    for i in range(m):
        for j in range(m):
            lag = idx[j] - idx[i]
            c = lags[abs(lag)]
            G[i, j] = c if lag >= 0 else c.conjugate()
    return G


def _harmonic_subject(E: IntervalSet, W: FreqWindow) -> str:
    payload = dict(E.to_json())
    payload["window"] = [int(i) for i in W.indices]
    return subject_hash(payload)


def ap_partition_check(
    E: IntervalSet,
    r: int,
    epsilon: float,
    W: FreqWindow,
    tol: float = CERT_TOL,
) -> RieszCertificate:
    """Split the window frequencies into the r arithmetic progressions
    mod r and check each Gram compression against the eigenvalue band
    measure * [1 - epsilon, 1 + epsilon].

    Only single intervals qualify: progressions are exactly right for
    them (for E = [0, 1/q] and r = q the compressions are (1/q) I to
    rounding), while general sets need the searched partition.
    """
    if len(E.intervals) != 1:
        raise ValueError("arithmetic-progression check applies to a single interval")
    if r < 1:
        raise ValueError("r must be at least 1")
    idx = W.indices
    classes: dict[int, list[int]] = {}
    for pos, n in enumerate(idx):
        classes.setdefault(n % r, []).append(pos)
    G = fourier_gram(E, W)
    return band_certificate(
        _harmonic_subject(E, W),
        list(classes.values()),
        G,
        epsilon,
        tol,
        band_center=E.measure,
        window=W.N,
        class_labels=idx,
    )


def general_set_partition(
    E: IntervalSet,
    epsilon: float,
    W: FreqWindow,
    budget: SearchBudget = DEFAULT_BUDGET,
    tol: float = CERT_TOL,
) -> RieszCertificate:
    """Search a partition of the window frequencies whose Gram
    compressions have all eigenvalues in measure * [1 - eps, 1 + eps].

    Normalizing the Gram by the measure gives unit diagonal, so this is
    a zero-diagonal absolute paving of I - G/|E| at level epsilon;
    exhaustive (hence r-minimal) for windows of at most 14 frequencies.
    ``universal_r`` reports (6 (|E| + 1) / (eps |E|)) ** 8.
    """
    idx = W.indices
    G = fourier_gram(E, W)
    mu = E.measure
    M = np.eye(len(idx)) - G / mu
    blocks = min_blocks_partition(M, epsilon, budget, tol)
    if blocks is None:  # zero diagonal: singletons always qualify
        raise RuntimeError("paving of I - G/|E| failed unexpectedly")
    universal_r = float((6.0 * (mu + 1.0) / (epsilon * mu)) ** 8)
    return band_certificate(
        _harmonic_subject(E, W),
        blocks,
        G,
        epsilon,
        tol,
        band_center=mu,
        universal_r=universal_r,
        window=W.N,
        class_labels=idx,
    )


@dataclass(frozen=True)
class SyndeticReport:
    """Gap length p of a set inside a window, with the witnessing shifts
    {0, ..., p-1}: every p consecutive integers in the window meet the
    set.  ``within_r`` compares p against a supplied class count."""

    gap_length: int
    witness_shifts: tuple[int, ...]
    window: FreqWindow
    within_r: bool | None = None

    def to_json(self) -> dict:
        out = {
            "gap_length": int(self.gap_length),
            "witness_shifts": [int(s) for s in self.witness_shifts],
            "window": int(self.window.N),
        }
        if self.within_r is not None:
            out["within_r"] = bool(self.within_r)
        return out


def syndetic_analyze(S, W: FreqWindow, r: int | None = None) -> SyndeticReport:
    """Measure the largest gap of S inside [-N, N], counting the runs
    before the first and after the last element, and report the shift
    set {0, ..., p-1} that covers the window."""
    elems = sorted({int(s) for s in S if -W.N <= int(s) <= W.N})
    if not elems:
        raise EmptySet("the set does not meet the window")
    gaps = [elems[i + 1] - elems[i] for i in range(len(elems) - 1)]
    gaps.append(elems[0] - (-W.N) + 1)  # run of missing integers at the left edge
    gaps.append(W.N - elems[-1] + 1)  # and at the right edge
    p = max(gaps)
    within = None if r is None else bool(p <= r)
    return SyndeticReport(p, tuple(range(p)), W, within)
