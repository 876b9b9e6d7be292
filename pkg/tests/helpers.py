"""Independent oracles used by the test suite.

These deliberately avoid the code paths of the package: the integrator
advances the Schrodinger equation step by step instead of using the
spectral decomposition, and the operator-algebra builder assembles the
two-body matrix from tuple-based creation/annihilation operators instead
of bitmask moves.
"""

import numpy as np


def rk4_evolve(H, initial, times, dt=1e-4):
    """Integrate i dA/dt = H A from a basis state; A[:, j] at times[j].

    Classic fixed-step fourth-order Runge-Kutta; times must be ascending
    and start at >= 0.
    """
    H = np.asarray(H, dtype=float)
    N = H.shape[0]
    a = np.zeros(N, dtype=complex)
    a[initial] = 1.0

    def deriv(v):
        return -1j * (H @ v)

    out = np.empty((N, len(times)), dtype=complex)
    t = 0.0
    for j, target in enumerate(times):
        while t < target - 1e-12:
            h = min(dt, target - t)
            k1 = deriv(a)
            k2 = deriv(a + 0.5 * h * k1)
            k3 = deriv(a + 0.5 * h * k2)
            k4 = deriv(a + h * k3)
            a = a + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            t += h
        out[:, j] = a
    return out


# ---------------------------------------------------------------------------
# Tuple-based second quantization

def _annihilate(occ, k):
    """a_k on an ascending occupation tuple; returns (tuple, sign) or None."""
    if k not in occ:
        return None
    pos = occ.index(k)
    sign = -1 if pos % 2 else 1
    return occ[:pos] + occ[pos + 1:], sign


def _create(occ, k):
    """a+_k on an ascending occupation tuple; returns (tuple, sign) or None."""
    if k in occ:
        return None
    pos = sum(1 for s in occ if s < k)
    sign = -1 if pos % 2 else 1
    return occ[:pos] + (k,) + occ[pos:], sign


def apply_pair_operator(occ, p, q, r, s):
    """a+_r a+_s a_q a_p |occ>; returns (tuple, sign) or None."""
    state, total = occ, 1
    for op, k in ((_annihilate, p), (_annihilate, q),
                  (_create, s), (_create, r)):
        res = op(state, k)
        if res is None:
            return None
        state, sign = res
        total *= sign
    return state, total


def two_body_matrix_oracle(n, m, amplitudes):
    """Dense two-body interaction matrix from operator algebra.

    amplitudes maps the canonical key ((p, q), (r, s)) with p < q, r < s
    and key <= swapped key to a Gaussian amplitude; states are ordered by
    the canonical itertools.combinations enumeration.
    """
    from itertools import combinations

    states = list(combinations(range(m), n))
    index = {s: i for i, s in enumerate(states)}
    N = len(states)
    H = np.zeros((N, N))
    for i, occ in enumerate(states):
        for p, q in combinations(occ, 2):
            remaining = tuple(x for x in occ if x not in (p, q))
            free = [x for x in range(m) if x not in remaining]
            for r, s in combinations(free, 2):
                if (r, s) == (p, q):
                    continue
                key = ((p, q), (r, s))
                if key[1] < key[0]:
                    key = (key[1], key[0])
                res = apply_pair_operator(occ, p, q, r, s)
                assert res is not None
                state, sign = res
                H[index[state], i] += sign * amplitudes[key]
    return H, states
