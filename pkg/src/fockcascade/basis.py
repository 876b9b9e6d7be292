"""Many-fermion basis enumeration and Fock-space class decomposition.

Basis states are Slater determinants encoded as occupation bitmasks:
bit s set means orbital s is occupied.  States are ordered by unperturbed
energy (sum of occupied single-particle energies), ties broken by bitmask
value, so that "the state at the center of the spectrum" is well defined.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

MAX_ORBITALS = 64


class BasisError(ValueError):
    pass


@dataclass(eq=False)
class ManyBodyBasis:
    """Ordered basis of all n-particle Slater determinants over m orbitals."""

    n: int
    m: int
    states: tuple          # occupation bitmasks, energy order
    energies: np.ndarray   # unperturbed energies E_f, same order
    eps: np.ndarray        # single-particle energies
    _index: dict = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.states)

    # alias used throughout the formulas
    @property
    def N(self) -> int:
        return len(self.states)

    def index_of(self, mask: int) -> int:
        if self._index is None:
            self._index = {s: i for i, s in enumerate(self.states)}
        return self._index[mask]


@dataclass(eq=False)
class ClassDecomposition:
    """BFS distance of every basis state from the initial one.

    Edges connect determinants differing in at most two occupied orbitals
    (structural connectivity, independent of sampled matrix values).
    """

    class_of: np.ndarray   # per-state class index k >= 0
    class_sizes: list      # N_k for k = 0 .. n_classes-1
    n_classes: int


def enumerate_basis(n: int, m: int, eps) -> ManyBodyBasis:
    """Enumerate all binomial(m, n) determinants, ordered by energy.

    eps must be strictly increasing single-particle energies of length m.
    """
    if n <= 0 or n > m:
        raise BasisError(f"need 0 < n <= m, got n={n}, m={m}")
    if m > MAX_ORBITALS:
        raise BasisError(f"m={m} exceeds bitmask capacity {MAX_ORBITALS}")
    eps = np.asarray(eps, dtype=float)
    if eps.shape != (m,):
        raise BasisError(f"eps must have length m={m}")
    if m > 1 and not np.all(np.diff(eps) > 0):
        raise BasisError("eps must be strictly increasing")

    masks = []
    energies = []
    for occ in combinations(range(m), n):
        mask = 0
        e = 0.0
        for s in occ:
            mask |= 1 << s
            e += eps[s]
        masks.append(mask)
        energies.append(e)
    masks = np.asarray(masks, dtype=np.int64)
    energies = np.asarray(energies)
    order = np.lexsort((masks, energies))
    return ManyBodyBasis(
        n=n, m=m,
        states=tuple(int(s) for s in masks[order]),
        energies=energies[order],
        eps=eps,
    )


def direct_coupling_count(n: int, m: int) -> int:
    """Number M of basis states directly coupled by a two-body interaction."""
    if n <= 0 or n > m:
        raise BasisError(f"need 0 < n <= m, got n={n}, m={m}")
    return n * (m - n) + n * (n - 1) * (m - n) * (m - n - 1) // 4


def neighbors(mask: int, m: int):
    """Masks reachable from `mask` by moving one or two particles."""
    occ = [s for s in range(m) if mask >> s & 1]
    free = [s for s in range(m) if not mask >> s & 1]
    out = set()
    for p in occ:
        for r in free:
            out.add(mask ^ (1 << p) | (1 << r))
    for p, q in combinations(occ, 2):
        for r, s in combinations(free, 2):
            out.add(mask ^ (1 << p) ^ (1 << q) | (1 << r) | (1 << s))
    return out


def classify(basis: ManyBodyBasis, initial: int) -> ClassDecomposition:
    """Breadth-first class decomposition around the initial state."""
    N = basis.size
    if not 0 <= initial < N:
        raise IndexError(f"initial index {initial} out of range [0, {N})")
    dist = np.full(N, -1, dtype=np.int64)
    dist[initial] = 0
    queue = deque([initial])
    while queue:
        i = queue.popleft()
        for nb in neighbors(basis.states[i], basis.m):
            j = basis.index_of(nb)
            if dist[j] < 0:
                dist[j] = dist[i] + 1
                queue.append(j)
    # single-particle moves connect every pair of determinants
    n_classes = int(dist.max()) + 1
    sizes = np.bincount(dist, minlength=n_classes)
    return ClassDecomposition(
        class_of=dist,
        class_sizes=[int(c) for c in sizes],
        n_classes=n_classes,
    )


def effective_class_count(N: float, M: float) -> float:
    """Effective number of classes n_c solving M**n_c = N."""
    if N <= 1 or M <= 1:
        raise BasisError("need N > 1 and M > 1")
    return math.log(N) / math.log(M)


def center_index(N: int) -> int:
    """Index of the state at the center of the energy spectrum (ceil(N/2))."""
    return min(-(-N // 2), N - 1)
