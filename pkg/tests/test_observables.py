import math

import numpy as np
import pytest

from fockcascade.evolution import SpectralDecomposition
from fockcascade.observables import (SHAPE_BREIT_WIGNER, SHAPE_GAUSSIAN,
                                     SHAPE_INTERMEDIATE, DistributionError,
                                     dominant_period, entropy, gaussian, ipr,
                                     lorentzian, packet_width,
                                     smoothed_density, strength_function)


def test_entropy_limits():
    N = 64
    assert entropy(np.full(N, 1.0 / N)) == pytest.approx(math.log(N))
    delta = np.zeros(N)
    delta[3] = 1.0
    assert entropy(delta) == 0.0


def test_ipr_limits():
    N = 50
    assert ipr(np.full(N, 1.0 / N)) == pytest.approx(N)
    delta = np.zeros(N)
    delta[0] = 1.0
    assert ipr(delta) == pytest.approx(1.0)


def test_distribution_validation():
    with pytest.raises(DistributionError):
        entropy([0.5, -0.1, 0.6])
    with pytest.raises(DistributionError):
        ipr([0.5, 0.4])           # sums to 0.9


def test_packet_width_two_point():
    w = np.zeros(11)
    w[2] = w[8] = 0.5
    assert packet_width(w, np.arange(11), 5) == pytest.approx(3.0)


def test_shape_functions_normalized():
    e = np.linspace(-3000, 3000, 600001)
    assert np.trapezoid(lorentzian(e, 0.0, 2.0), e) == pytest.approx(
        1.0, abs=1e-3)
    assert np.trapezoid(gaussian(e, 0.0, 2.0), e) == pytest.approx(
        1.0, abs=1e-12)


def test_smoothed_density_integrates_to_one():
    rng = np.random.default_rng(0)
    centers = rng.normal(size=200)
    weights = np.full(200, 1.0 / 200)
    grid = np.linspace(-8, 8, 4001)
    dens = smoothed_density(weights, centers, grid, 0.3)
    assert np.trapezoid(dens, grid) == pytest.approx(1.0, abs=1e-6)


def _fake_spec(evals, weights):
    """Spectral decomposition whose initial-row overlaps are sqrt(weights)."""
    N = evals.size
    vecs = np.zeros((N, N))
    vecs[0] = np.sqrt(weights)
    return SpectralDecomposition(eigenvalues=evals, eigenvectors=vecs,
                                 residual_norm=0.0)


def test_strength_function_recovers_gaussian_shape():
    evals = np.linspace(-10, 10, 2000)
    w = gaussian(evals, 0.0, 1.5)
    w /= w.sum()
    sf = strength_function(_fake_spec(evals, w), 0)
    assert sf.gauss_residual < sf.lorentz_residual
    assert sf.shape == SHAPE_GAUSSIAN
    assert sf.fitted_sigma == pytest.approx(1.5, rel=0.05)


def test_strength_function_recovers_lorentzian_shape():
    evals = np.linspace(-100, 100, 2000)
    w = lorentzian(evals, 0.0, 2.0)
    w /= w.sum()
    sf = strength_function(_fake_spec(evals, w), 0)
    assert sf.lorentz_residual < sf.gauss_residual
    assert sf.shape == SHAPE_BREIT_WIGNER
    assert sf.fitted_gamma == pytest.approx(2.0, rel=0.1)


def test_strength_function_ratio_classification():
    evals = np.linspace(-10, 10, 1000)
    w = gaussian(evals, 0.0, 1.0)
    w /= w.sum()
    spec = _fake_spec(evals, w)
    assert strength_function(spec, 0, gamma_0=0.5).shape == SHAPE_BREIT_WIGNER
    assert strength_function(spec, 0, gamma_0=1.5).shape == SHAPE_INTERMEDIATE
    assert strength_function(spec, 0, gamma_0=3.0).shape == SHAPE_GAUSSIAN


def test_strength_function_normalized_on_grid():
    evals = np.linspace(-5, 5, 500)
    w = gaussian(evals, 0.0, 1.0)
    w /= w.sum()
    sf = strength_function(_fake_spec(evals, w), 0)
    assert np.trapezoid(sf.P0, sf.energies) == pytest.approx(1.0, abs=1e-3)


def test_dominant_period_damped_cosine():
    t = np.linspace(0, 40, 400)
    y = 2.0 + 0.3 * np.exp(-t / 30) * np.cos(2 * np.pi * t / 6.5)
    period = dominant_period(t, y, settle_time=5.0)
    assert period == pytest.approx(6.5, abs=0.3)


def test_dominant_period_needs_uniform_grid():
    t = np.geomspace(1, 40, 100)
    with pytest.raises(ValueError):
        dominant_period(t, np.cos(t), settle_time=2.0)
