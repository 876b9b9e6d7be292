"""Closed-form predictions of the Fock-space cascade model.

The cascade picture: probability flows from class k to class k+1 at rate
Gamma, each state branching into M others, giving Poisson class
populations in x = ln(1/W0).  All formulas below are pure functions of
the few parameters collected in CascadeParams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_REL_TOL = 1e-15          # series truncation threshold
_I0_CROSSOVER = 20.0      # switch to the asymptotic expansion


@dataclass(frozen=True)
class CascadeParams:
    gamma: float            # spreading width
    delta_e: float          # SF width
    M: int                  # branching number (class-1 size)
    npc_inf: float = math.nan   # saturation exp(S)
    ipr_inf: float = math.nan   # saturation IPR
    n_classes: float = math.inf


def bessel_i0(z: float) -> float:
    """Modified Bessel function I0, relative error ~1e-12.

    Power series below the crossover argument, asymptotic expansion
    beyond (both all-positive, no cancellation).
    """
    z = abs(float(z))
    if z <= _I0_CROSSOVER:
        total = term = 1.0
        k = 0
        while term > _REL_TOL * total:
            k += 1
            term *= (z * z) / (4.0 * k * k)
            total += term
        return total
    # I0(z) ~ e^z / sqrt(2 pi z) * sum_k ((2k-1)!!)^2 / (k! (8z)^k)
    total = term = 1.0
    k = 0
    while True:
        k += 1
        nxt = term * (2 * k - 1) ** 2 / (8.0 * k * z)
        if nxt >= term:
            break               # asymptotic series started diverging
        term = nxt
        total += term
        if term < _REL_TOL * total:
            break
    return math.exp(z) / math.sqrt(2 * math.pi * z) * total


def survival_theory(t, gamma_p: float, delta_e: float):
    """W0(t): Gaussian branch up to t_c = Gamma_p/Delta_E^2, then exponential.

    The continuation constant fixed by continuity at t_c equals 1.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be >= 0")
    tc = gamma_p / delta_e ** 2
    c = math.exp(gamma_p * tc - (delta_e * tc) ** 2)
    w = np.where(t <= tc,
                 np.exp(-(delta_e * t) ** 2),
                 c * np.exp(-gamma_p * t))
    return float(w) if w.ndim == 0 else w


def class_population(k: int, W0: float) -> float:
    """W_k = (ln 1/W0)^k / k! * W0, Poisson in x = ln(1/W0)."""
    if k < 0:
        raise ValueError("class index must be >= 0")
    if not 0 < W0 <= 1:
        raise ValueError("need 0 < W0 <= 1")
    if k == 0:
        return W0
    x = -math.log(W0)
    if x == 0.0:
        return 0.0
    return math.exp(k * math.log(x) - math.lgamma(k + 1)) * W0


def entropy_cascade(t: float, gamma: float, M: float) -> float:
    """Full cascade entropy series with N_n = M^n.

    S = Gamma t ln M + Gamma t - e^(-Gamma t) sum_n p_n ln p_n-style term,
    truncated when a term drops below 1e-15 of the partial sum.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if M < 2:
        raise ValueError("branching number M must be >= 2")
    x = gamma * t
    if x == 0.0:
        return 0.0
    # sum_n (x^n / n!) * ln(x^n / n!)
    tail = 0.0
    p = 1.0                 # x^0 / 0!
    n = 0
    n_max = int(x + 40 * math.sqrt(x + 1) + 60)
    for n in range(1, n_max):
        p *= x / n
        term = p * (n * math.log(x) - math.lgamma(n + 1))
        tail += term
        if p < _REL_TOL and n > x:
            break
    return x * math.log(M) + x - math.exp(-x) * tail


def entropy_small_time(t: float, delta_e: float, n1: float) -> float:
    """Perturbative entropy Delta_E^2 t^2 (1 + ln(N1 / Delta_E^2 t^2))."""
    v = (delta_e * t) ** 2
    if v == 0.0:
        return 0.0
    return v * (1.0 + math.log(n1 / v))


def entropy_one_class(W0, npc_inf: float):
    """One-class estimate -W0 ln W0 - (1-W0) ln((1-W0)/N_pc)."""
    W0 = np.asarray(W0, dtype=float)
    W0c = np.clip(W0, 1e-300, 1.0)
    rest = np.clip(1.0 - W0c, 1e-300, 1.0)
    s = -W0c * np.log(W0c) - rest * np.log(rest / npc_inf)
    s = np.where(W0 >= 1.0, 0.0, s)
    return float(s) if s.ndim == 0 else s


def inv_ipr_cascade(W0: float, M: float) -> float:
    """(l_ipr)^-1 = W0^2 I0(2 ln(1/W0) / sqrt(M))."""
    if not 0 < W0 <= 1:
        raise ValueError("need 0 < W0 <= 1")
    if M < 1:
        raise ValueError("need M >= 1")
    x = -math.log(W0)
    return W0 ** 2 * bessel_i0(2.0 * x / math.sqrt(M))


def ipr_cascade(W0: float, M: float) -> float:
    return 1.0 / inv_ipr_cascade(W0, M)


def ipr_one_class(W0, ipr_inf: float):
    """(l_ipr)^-1 = W0^2 + (1-W0)^2 / l_ipr(inf)."""
    W0 = np.asarray(W0, dtype=float)
    inv = W0 ** 2 + (1.0 - W0) ** 2 / ipr_inf
    out = 1.0 / inv
    return float(out) if out.ndim == 0 else out


def perturbative_population(h0f: float, omega_0f: float, gamma: float,
                            t: float) -> float:
    """w_f of a directly coupled state while the packet still decays."""
    if gamma <= 0:
        raise ValueError("gamma must be > 0")
    osc = abs(np.exp((1j * omega_0f - gamma / 2) * t) - 1.0) ** 2
    return h0f ** 2 / (omega_0f ** 2 + gamma ** 2 / 4) * float(osc)


def width_ballistic_wbrm(t, V0: float, b: int):
    """Ballistic width Delta(t) = t sqrt(2/3) V0 b^(3/2)."""
    return np.asarray(t, dtype=float) * math.sqrt(2.0 / 3.0) * V0 * b ** 1.5


def width_ballistic_tbri(t, slope: float):
    """Ballistic width t * V0 * Delta_0; slope from ballistic_slope_tbri."""
    return np.asarray(t, dtype=float) * slope


def ballistic_slope_tbri(ham, initial: int) -> float:
    """sqrt(sum_f (f - n0)^2 H_0f^2) from one sampled row (= V0 Delta_0)."""
    row = ham.matrix[initial].copy()
    row[initial] = 0.0
    d = np.arange(row.size, dtype=float) - initial
    return math.sqrt(float(np.sum(d * d * row * row)))


def wbrm_saturation_time(b: int) -> float:
    """Ballistic spread terminates near t_m = sqrt(6)/b."""
    return math.sqrt(6.0) / b


def oscillation_period(n_c: float, gamma: float) -> float:
    """Fock-space reflection period T = 2 n_c / Gamma."""
    if gamma <= 0:
        raise ValueError("gamma must be > 0")
    return 2.0 * n_c / gamma
