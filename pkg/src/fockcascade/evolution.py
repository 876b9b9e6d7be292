"""Exact spectral propagation of an initial basis state.

The Hamiltonian is diagonalized once; evolution at arbitrary t is then a
phase rotation in the eigenbasis (hbar = 1, time in units hbar/d0).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DiagonalizationError(RuntimeError):
    pass


@dataclass(eq=False)
class SpectralDecomposition:
    eigenvalues: np.ndarray    # ascending
    eigenvectors: np.ndarray   # orthogonal, columns are eigenstates
    residual_norm: float       # max |H v - E v| over columns

    @property
    def size(self) -> int:
        return self.eigenvalues.size


@dataclass(eq=False)
class PacketSnapshot:
    t: float
    amplitudes: np.ndarray     # complex A_f(t)
    probabilities: np.ndarray  # w_f = |A_f|^2
    W0: float                  # probability at the initial index


def diagonalize(ham) -> SpectralDecomposition:
    """Full symmetric eigendecomposition with a reproducible sign gauge."""
    H = getattr(ham, "matrix", ham)
    H = np.asarray(H, dtype=float)
    try:
        evals, vecs = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise DiagonalizationError(f"eigensolver failed: {exc}") from exc

    # sign gauge: largest-magnitude component of each column positive
    piv = np.argmax(np.abs(vecs), axis=0)
    flip = np.sign(vecs[piv, np.arange(vecs.shape[1])])
    flip[flip == 0] = 1.0
    vecs = vecs * flip

    residual = float(np.max(np.abs(H @ vecs - vecs * evals)))
    ortho = float(np.max(np.abs(vecs.T @ vecs - np.eye(vecs.shape[1]))))
    span = float(evals[-1] - evals[0]) if evals.size > 1 else 1.0
    if ortho > 1e-10 or residual > 1e-9 * max(span, 1.0):
        raise DiagonalizationError(
            f"decomposition out of tolerance: ortho={ortho:.3e}, "
            f"residual={residual:.3e}")
    return SpectralDecomposition(eigenvalues=evals, eigenvectors=vecs,
                                 residual_norm=residual)


def evolve(spec: SpectralDecomposition, initial: int, t: float) -> PacketSnapshot:
    """A_f(t) = sum_k C_0^(k) C_f^(k) exp(-i E^(k) t)."""
    if t < 0:
        raise ValueError("t must be >= 0")
    c0 = spec.eigenvectors[initial]
    phases = np.exp(-1j * spec.eigenvalues * t)
    amp = spec.eigenvectors @ (c0 * phases)
    w = np.abs(amp) ** 2
    return PacketSnapshot(t=t, amplitudes=amp, probabilities=w,
                          W0=float(w[initial]))


def evolve_many(spec: SpectralDecomposition, initial: int, ts) -> np.ndarray:
    """Amplitude matrix A[f, i] at the grid times ts (one BLAS call)."""
    ts = np.asarray(ts, dtype=float)
    c0 = spec.eigenvectors[initial]
    phases = np.exp(-1j * np.outer(spec.eigenvalues, ts))
    return spec.eigenvectors @ (c0[:, None] * phases)


def propagate(spec: SpectralDecomposition, amplitudes, t: float) -> np.ndarray:
    """Advance an arbitrary amplitude vector by time t (t may be negative)."""
    coeff = spec.eigenvectors.T @ np.asarray(amplitudes)
    return spec.eigenvectors @ (coeff * np.exp(-1j * spec.eigenvalues * t))


def survival_amplitude(spec: SpectralDecomposition, initial: int, t: float) -> complex:
    """A_0(t) = sum_k |C_0^(k)|^2 exp(-i E^(k) t)."""
    w0k = spec.eigenvectors[initial] ** 2
    return complex(np.sum(w0k * np.exp(-1j * spec.eigenvalues * t)))


def stationary_distribution(spec: SpectralDecomposition, initial: int) -> np.ndarray:
    """Infinite-time average w_f^s = sum_k |C_0^(k)|^2 |C_f^(k)|^2."""
    w0k = spec.eigenvectors[initial] ** 2
    return (spec.eigenvectors ** 2) @ w0k
