import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fockcascade.basis import (BasisError, center_index, classify,
                               direct_coupling_count, effective_class_count,
                               enumerate_basis, neighbors)


def lattice(m):
    return np.arange(m, dtype=float)


def test_size_is_binomial():
    basis = enumerate_basis(3, 7, lattice(7))
    assert basis.size == math.comb(7, 3)
    assert basis.N == basis.size


def test_states_sorted_by_energy():
    rng = np.random.default_rng(0)
    eps = np.sort(rng.uniform(0, 10, size=8))
    basis = enumerate_basis(4, 8, eps)
    assert np.all(np.diff(basis.energies) >= 0)
    for mask, e in zip(basis.states, basis.energies):
        occ = [s for s in range(8) if mask >> s & 1]
        assert e == pytest.approx(sum(eps[s] for s in occ))


def test_index_of_roundtrip():
    basis = enumerate_basis(2, 6, lattice(6))
    for i, mask in enumerate(basis.states):
        assert basis.index_of(mask) == i


def test_validation_errors():
    with pytest.raises(BasisError):
        enumerate_basis(0, 4, lattice(4))
    with pytest.raises(BasisError):
        enumerate_basis(5, 4, lattice(4))
    with pytest.raises(BasisError):
        enumerate_basis(2, 65, np.arange(65, dtype=float))
    with pytest.raises(BasisError):
        enumerate_basis(2, 4, [0.0, 1.0, 1.0, 2.0])   # not strictly increasing
    with pytest.raises(BasisError):
        enumerate_basis(2, 4, [0.0, 1.0, 2.0])        # wrong length


def test_direct_coupling_count_reference_values():
    assert direct_coupling_count(6, 12) == 261
    assert direct_coupling_count(1, 5) == 4      # single particle: n(m-n)
    assert direct_coupling_count(2, 4) == 5


def test_direct_coupling_count_matches_neighbor_enumeration():
    for n, m in [(2, 5), (3, 6), (2, 7), (4, 8)]:
        mask = (1 << n) - 1
        assert len(neighbors(mask, m)) == direct_coupling_count(n, m)


def test_neighbors_change_at_most_two_orbitals():
    mask = 0b1011
    for nb in neighbors(mask, 6):
        assert nb != mask
        assert bin(mask ^ nb).count("1") in (2, 4)


def test_classify_reference_decomposition():
    basis = enumerate_basis(6, 12, lattice(12))
    dec = classify(basis, center_index(basis.size))
    assert dec.class_sizes == [1, 261, 625, 37]
    assert dec.n_classes == 4
    assert sum(dec.class_sizes) == basis.size


def test_classify_class_one_equals_direct_coupling_count():
    for n, m in [(2, 5), (3, 6), (3, 7)]:
        basis = enumerate_basis(n, m, lattice(m))
        dec = classify(basis, center_index(basis.size))
        assert dec.class_sizes[1] == direct_coupling_count(n, m)


def test_classify_bad_initial():
    basis = enumerate_basis(2, 4, lattice(4))
    with pytest.raises(IndexError):
        classify(basis, basis.size)


def test_effective_class_count():
    n_c = effective_class_count(924, 261)
    assert n_c == pytest.approx(1.2272, abs=1e-3)
    assert effective_class_count(100, 10) == pytest.approx(2.0)
    with pytest.raises(BasisError):
        effective_class_count(1, 10)


def test_center_index():
    assert center_index(924) == 462
    assert center_index(5) == 3
    assert center_index(1) == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(4, 9), st.integers(0, 2 ** 31))
def test_class_sizes_independent_of_level_jitter(n, m, seed):
    """The connectivity graph only sees which orbitals exist, not their
    energies, so the class-size multiset is jitter invariant."""
    if math.comb(m, n) > 200:
        return
    rng = np.random.default_rng(seed)
    eps = np.sort(lattice(m) + rng.uniform(-0.4, 0.4, size=m))
    ref = classify(enumerate_basis(n, m, lattice(m)),
                   center_index(math.comb(m, n)))
    jit = classify(enumerate_basis(n, m, eps),
                   center_index(math.comb(m, n)))
    assert sorted(ref.class_sizes) == sorted(jit.class_sizes)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(4, 9))
def test_class_one_size_formula_property(n, m):
    if n >= m or math.comb(m, n) > 200:
        return
    basis = enumerate_basis(n, m, lattice(m))
    for initial in (0, basis.size // 2, basis.size - 1):
        dec = classify(basis, initial)
        assert dec.class_sizes[1] == direct_coupling_count(n, m)


def test_neighbors_symmetry():
    """j in neighbors(i) iff i in neighbors(j)."""
    basis = enumerate_basis(3, 6, lattice(6))
    for mask in basis.states[:6]:
        for nb in neighbors(mask, 6):
            assert mask in neighbors(nb, 6)
