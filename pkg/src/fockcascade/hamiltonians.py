"""TBRI and WBRM Hamiltonian ensembles and their characteristic widths.

TBRI: mean-field diagonal (sum of occupied single-particle energies) plus
Gaussian two-body matrix elements coupling determinants differing by at
most two orbitals.  One independent Gaussian amplitude is drawn per
unordered pair-transition {p<q} -> {r<s} and reused, with the fermionic
sign, in every matrix element it contributes to; one-particle moves are
spectator sums over such amplitudes.  This keeps the two-body correlations
that distinguish the ensemble from a sparse GOE.

WBRM: sorted random diagonal with mean spacing D plus an independent
Gaussian band of half-width b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.sparse import coo_matrix

from .basis import ManyBodyBasis, enumerate_basis


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class TbriParams:
    n: int
    m: int
    V0sq: float          # variance of the two-body matrix elements
    d0: float = 1.0      # mean single-particle level spacing
    seed: int | None = None

    def __post_init__(self):
        if self.V0sq < 0:
            raise ModelError("V0sq must be >= 0")
        if self.d0 <= 0:
            raise ModelError("d0 must be > 0")


@dataclass(frozen=True)
class WbrmParams:
    N: int
    b: int               # band half-width
    D: float             # mean diagonal spacing
    V0: float            # off-diagonal standard deviation
    seed: int | None = None

    def __post_init__(self):
        if not 1 <= self.b < self.N:
            raise ModelError(f"need 1 <= b < N, got b={self.b}, N={self.N}")
        if self.D <= 0:
            raise ModelError("D must be > 0")


@dataclass(eq=False)
class Hamiltonian:
    matrix: np.ndarray
    params: TbriParams | WbrmParams
    basis: ManyBodyBasis | None = None

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


def sample_single_particle_energies(m: int, d0: float, rng) -> np.ndarray:
    """Jittered lattice eps_s = s*d0 + U(-d0/2, d0/2), sorted.

    Pins the mean spacing at d0 exactly (in expectation) while keeping the
    spectrum random.
    """
    if m < 1:
        raise ModelError("m must be >= 1")
    if d0 <= 0:
        raise ModelError("d0 must be > 0")
    eps = d0 * np.arange(m) + rng.uniform(-d0 / 2, d0 / 2, size=m)
    eps.sort()
    return eps


# ---------------------------------------------------------------------------
# TBRI construction
#
# The seed-independent structure (which amplitude feeds which element, with
# which sign) is cached per (n, m) in the canonical combinations order of
# the masks; a realization only draws the amplitude vector and permutes
# rows/columns into the energy ordering of its basis.

def _jw_sign(mask: int, idx: int) -> int:
    """Jordan-Wigner parity of occupied orbitals below idx."""
    return -1 if (mask & ((1 << idx) - 1)).bit_count() & 1 else 1


def pair_move(mask: int, src: tuple, dst: tuple):
    """Apply a+_r a+_s a_q a_p to |mask> for src=(p<q), dst=(r<s).

    Returns (new_mask, sign); callers guarantee src occupied and dst free
    after the removal.
    """
    p, q = src
    r, s = dst
    sign = 1
    for idx in (p, q):
        sign *= _jw_sign(mask, idx)
        mask ^= 1 << idx
    for idx in (s, r):
        sign *= _jw_sign(mask, idx)
        mask |= 1 << idx
    return mask, sign


@dataclass(eq=False)
class TbriStructure:
    n: int
    m: int
    masks: tuple            # canonical (combinations) order
    rows: np.ndarray        # upper-triangle entries: canonical row index
    cols: np.ndarray
    key_idx: np.ndarray     # which amplitude feeds the entry
    signs: np.ndarray
    keys: tuple             # canonical key order used for the draw
    n_keys: int


_structure_cache: dict = {}


def tbri_structure(n: int, m: int) -> TbriStructure:
    if (n, m) in _structure_cache:
        return _structure_cache[(n, m)]
    masks = []
    for occ in combinations(range(m), n):
        mask = 0
        for s in occ:
            mask |= 1 << s
        masks.append(mask)
    index = {s: i for i, s in enumerate(masks)}

    entries = []            # (i, j, key, sign) with i < j only
    key_index: dict = {}
    for i, mask in enumerate(masks):
        occ = [s for s in range(m) if mask >> s & 1]
        for src in combinations(occ, 2):
            removed = mask ^ (1 << src[0]) ^ (1 << src[1])
            free = [s for s in range(m) if not removed >> s & 1]
            for dst in combinations(free, 2):
                if dst == src:
                    continue
                new_mask, sign = pair_move(mask, src, dst)
                j = index[new_mask]
                if j < i:
                    continue    # mirror of an entry generated from j
                key = (src, dst) if src <= dst else (dst, src)
                k = key_index.setdefault(key, len(key_index))
                entries.append((i, j, k, sign))

    rows = np.array([e[0] for e in entries], dtype=np.int64)
    cols = np.array([e[1] for e in entries], dtype=np.int64)
    key_idx = np.array([e[2] for e in entries], dtype=np.int64)
    signs = np.array([e[3] for e in entries], dtype=np.float64)
    keys = tuple(sorted(key_index, key=key_index.get))
    struct = TbriStructure(n=n, m=m, masks=tuple(masks), rows=rows,
                           cols=cols, key_idx=key_idx, signs=signs,
                           keys=keys, n_keys=len(keys))
    _structure_cache[(n, m)] = struct
    return struct


def draw_amplitudes(struct: TbriStructure, V0sq: float, rng) -> np.ndarray:
    """One Gaussian amplitude per pair-transition key, in key order."""
    return rng.normal(0.0, math.sqrt(V0sq), size=struct.n_keys)


def build_tbri(params: TbriParams, basis: ManyBodyBasis, rng=None) -> Hamiltonian:
    """Assemble a TBRI realization on the given basis."""
    if basis.n != params.n or basis.m != params.m:
        raise ModelError("basis does not match params (n, m)")
    if rng is None:
        rng = np.random.default_rng(params.seed)
    struct = tbri_structure(params.n, params.m)
    g = draw_amplitudes(struct, params.V0sq, rng)

    N = basis.size
    vals = struct.signs * g[struct.key_idx]
    upper = coo_matrix((vals, (struct.rows, struct.cols)),
                       shape=(N, N)).toarray()
    H_canon = upper + upper.T      # bitwise-symmetric by construction

    canon_index = {s: i for i, s in enumerate(struct.masks)}
    perm = np.array([canon_index[s] for s in basis.states], dtype=np.int64)
    H = H_canon[np.ix_(perm, perm)]
    H[np.diag_indices(N)] = basis.energies
    return Hamiltonian(matrix=H, params=params, basis=basis)


def build_wbrm(params: WbrmParams, rng=None) -> Hamiltonian:
    """Assemble a WBRM realization."""
    if rng is None:
        rng = np.random.default_rng(params.seed)
    N, b = params.N, params.b
    diag = params.D * np.arange(N) + rng.uniform(-params.D / 2,
                                                 params.D / 2, size=N)
    diag.sort()
    H = np.zeros((N, N))
    for k in range(1, b + 1):
        v = rng.normal(0.0, params.V0, size=N - k)
        i = np.arange(N - k)
        H[i, i + k] = v
        H[i + k, i] = v
    H[np.diag_indices(N)] = diag
    return Hamiltonian(matrix=H, params=params)


# ---------------------------------------------------------------------------
# Characteristic widths

def delta_E_analytic(n: int, m: int, V0sq: float) -> float:
    """Closed-form SF width: Delta_E^2 = V0^2 n(n-1)(m-n)(m-n+3)/4.

    Valid for n >= 2; the n(n-1) factor forces 0 for a single particle,
    where the formula does not apply.
    """
    return math.sqrt(0.25 * V0sq * n * (n - 1) * (m - n) * (m - n + 3))


def delta_E_numeric(ham: Hamiltonian, initial: int) -> float:
    """Square root of the SF second moment, sum of squared row couplings."""
    row = ham.matrix[initial].copy()
    row[initial] = 0.0
    return math.sqrt(float(np.dot(row, row)))


def delta_E_wbrm(params: WbrmParams) -> float:
    """Band formula Delta_E^2 = 2 b V0^2."""
    return math.sqrt(2 * params.b) * params.V0


def gamma0(ham: Hamiltonian, initial: int | None = None) -> float:
    """Fermi-golden-rule spreading width of the strength function.

    WBRM: 2 pi rho_0 V0^2 with rho_0 = 1/D.  TBRI: 2 pi mean(H_0f^2)
    rho_f(E_0), with rho_f a Gaussian fit to the unperturbed energies of
    the directly coupled states.
    """
    if isinstance(ham.params, WbrmParams):
        return 2 * math.pi * ham.params.V0 ** 2 / ham.params.D
    if initial is None:
        raise ModelError("TBRI gamma0 needs the initial state index")
    row = ham.matrix[initial].copy()
    row[initial] = 0.0
    coupled = np.flatnonzero(row)
    if coupled.size < 10:
        raise ModelError(
            f"only {coupled.size} coupled states; density fit unreliable")
    e_coupled = ham.basis.energies[coupled]
    e0 = ham.basis.energies[initial]
    mu = float(e_coupled.mean())
    sigma = float(e_coupled.std())
    rho = coupled.size / (math.sqrt(2 * math.pi) * sigma) * math.exp(
        -0.5 * ((e0 - mu) / sigma) ** 2)
    return 2 * math.pi * float(np.mean(row[coupled] ** 2)) * rho


def dump_matrix(ham: Hamiltonian, path) -> None:
    """Plain-text triplet dump (row, col, value), row-major, 17 digits."""
    H = ham.matrix
    with open(path, "w") as fh:
        for i in range(H.shape[0]):
            for j in range(H.shape[1]):
                fh.write(f"{i} {j} {H[i, j]:.17g}\n")
