"""Packet observables: entropy, IPR, width, and the strength function."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit
from scipy.signal import find_peaks

from .evolution import SpectralDecomposition


class DistributionError(ValueError):
    pass


def _check_distribution(w: np.ndarray) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    if np.any(w < 0):
        raise DistributionError("probabilities must be non-negative")
    if abs(w.sum() - 1.0) > 1e-8:
        raise DistributionError(f"probabilities sum to {w.sum()}, not 1")
    return w


def entropy(w) -> float:
    """Shannon entropy -sum w ln w in nats, with 0 ln 0 := 0."""
    w = _check_distribution(w)
    nz = w[w > 0]
    return float(-np.sum(nz * np.log(nz)))


def ipr(w) -> float:
    """Inverse participation ratio 1 / sum w_f^2."""
    w = _check_distribution(w)
    return float(1.0 / np.sum(w ** 2))


def packet_width(w, indices, n0: int) -> float:
    """RMS spread of the packet over basis indices about n0."""
    w = _check_distribution(w)
    d = np.asarray(indices, dtype=float) - float(n0)
    return float(math.sqrt(np.sum(d * d * w)))


def dominant_period(t, y, settle_time: float,
                    sat_window: float = 0.25) -> float:
    """Dominant oscillation period of y(t) after it has settled.

    The saturation level (mean over the trailing sat_window fraction of
    the grid) is subtracted; the period is the lag of the first
    autocorrelation maximum of the residual, a robust estimate of the
    mean peak-to-peak spacing.  Requires a uniform time grid.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    dt = t[1] - t[0]
    if not np.allclose(np.diff(t), dt, rtol=1e-8):
        raise ValueError("dominant_period needs a uniform time grid")
    sat = float(np.mean(y[t >= t[0] + (1 - sat_window) * (t[-1] - t[0])]))
    r = y[t >= settle_time] - sat
    r = r - r.mean()
    ac = np.correlate(r, r, "full")[r.size - 1:]
    peaks, _ = find_peaks(ac)
    if peaks.size == 0:
        return math.nan
    return float(peaks[0] * dt)


# ---------------------------------------------------------------------------
# Strength function (LDOS)

SHAPE_BREIT_WIGNER = "breit-wigner"
SHAPE_GAUSSIAN = "gaussian"
SHAPE_INTERMEDIATE = "intermediate"


@dataclass(eq=False)
class StrengthFunction:
    energies: np.ndarray       # evaluation grid
    P0: np.ndarray             # smoothed LDOS on the grid
    fitted_gamma: float        # Lorentzian half-width
    fitted_sigma: float        # Gaussian width
    lorentz_residual: float    # sum of squared fit residuals
    gauss_residual: float
    shape: str
    ratio: float               # Gamma_0 / Delta_E


def lorentzian(e, center, gamma):
    return (gamma / (2 * math.pi)) / ((e - center) ** 2 + gamma ** 2 / 4)


def gaussian(e, center, sigma):
    return np.exp(-0.5 * ((e - center) / sigma) ** 2) / (
        math.sqrt(2 * math.pi) * sigma)


def smoothed_density(weights, centers, grid, bandwidth) -> np.ndarray:
    """Gaussian-kernel estimate sum_k w_k K_h(E - E_k) on the grid."""
    diff = (grid[:, None] - centers[None, :]) / bandwidth
    kern = np.exp(-0.5 * diff ** 2) / (math.sqrt(2 * math.pi) * bandwidth)
    return kern @ np.asarray(weights)


def sf_bandwidth(spec: SpectralDecomposition, gamma_0: float | None) -> float:
    evals = spec.eigenvalues
    if evals[-1] - evals[0] <= 0:
        raise DistributionError("degenerate spectrum span")
    spacing = (evals[-1] - evals[0]) / (evals.size - 1)
    h = 3.0 * spacing
    if gamma_0 is not None:
        h = max(h, gamma_0 / 5.0)
    return h


def strength_function(spec: SpectralDecomposition, initial: int,
                      gamma_0: float | None = None,
                      delta_e: float | None = None,
                      n_grid: int = 1200) -> StrengthFunction:
    """Kernel-smoothed P0(E) with Lorentzian and Gaussian shape fits.

    Shape classification follows the width ratio: Breit-Wigner for
    Gamma_0 < Delta_E, Gaussian for Gamma_0 >= 2 Delta_E, intermediate
    between.  Delta_E defaults to the exact second moment of the LDOS.
    """
    evals = spec.eigenvalues
    w0k = spec.eigenvectors[initial] ** 2
    e0 = float(np.sum(w0k * evals))
    if delta_e is None:
        delta_e = float(math.sqrt(np.sum(w0k * (evals - e0) ** 2)))

    h = sf_bandwidth(spec, gamma_0)
    grid = np.linspace(evals[0] - 6 * h, evals[-1] + 6 * h, n_grid)
    P0 = smoothed_density(w0k, evals, grid, h)

    # restrict fits to the shell around e0 where the SF lives
    win = np.abs(grid - e0) <= 6 * max(delta_e, h)
    eg, pg = grid[win], P0[win]
    lp, _ = curve_fit(lorentzian, eg, pg, p0=[e0, max(delta_e, 1e-6)],
                      maxfev=20000)
    gp, _ = curve_fit(gaussian, eg, pg, p0=[e0, max(delta_e, 1e-6)],
                      maxfev=20000)
    res_l = float(np.sum((lorentzian(eg, *lp) - pg) ** 2))
    res_g = float(np.sum((gaussian(eg, *gp) - pg) ** 2))

    if gamma_0 is None:
        ratio = math.nan
        shape = SHAPE_BREIT_WIGNER if res_l < res_g else SHAPE_GAUSSIAN
    else:
        ratio = gamma_0 / delta_e
        if ratio < 1.0:
            shape = SHAPE_BREIT_WIGNER
        elif ratio >= 2.0:
            shape = SHAPE_GAUSSIAN
        else:
            shape = SHAPE_INTERMEDIATE
    return StrengthFunction(energies=grid, P0=P0,
                            fitted_gamma=abs(float(lp[1])),
                            fitted_sigma=abs(float(gp[1])),
                            lorentz_residual=res_l, gauss_residual=res_g,
                            shape=shape, ratio=ratio)
