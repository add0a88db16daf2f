import numpy as np
import pytest

from exact_uncertainty.grids import (
    GridSpec,
    fourier_interpolate,
    local_derivative,
    spectral_derivative,
)


def test_grid_spec_invariants(grid):
    assert grid.dx == pytest.approx(40.0 / 1024)
    assert grid.momentum_spacing(hbar=1.0) == pytest.approx(2 * np.pi / (1024 * grid.dx))
    assert grid.momentum_spacing(hbar=0.5) == pytest.approx(np.pi / (1024 * grid.dx))
    p = grid.conjugate_grid().points()
    assert p[1] - p[0] == pytest.approx(grid.momentum_spacing())
    assert np.all(np.diff(p) > 0)


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(7, 0.0, 1.0)
    with pytest.raises(ValueError):
        GridSpec(16, 1.0, 1.0)


def test_derivative_exact_fourier_mode(grid):
    x = grid.points()
    length = grid.length
    f = np.sin(2 * np.pi * x / length)
    expected = (2 * np.pi / length) * np.cos(2 * np.pi * x / length)
    assert np.max(np.abs(spectral_derivative(f, grid) - expected)) < 1e-10


def test_derivative_gaussian_closed_form(grid):
    # psi = exp(-x^2 / 4 sigma^2) has psi' = -(x / 2 sigma^2) psi
    sigma = 1.2
    x = grid.points()
    f = np.exp(-(x ** 2) / (4 * sigma ** 2))
    closed = -(x / (2 * sigma ** 2)) * f
    spectral = np.real(spectral_derivative(f, grid))
    assert np.max(np.abs(spectral - closed)) < 1e-8 * np.max(np.abs(closed))
    # finite differences as the independent oracle
    fd = local_derivative(f, grid.dx)
    assert np.max(np.abs(spectral - fd)) < 1e-3


def test_derivative_constant_is_zero(grid):
    out = spectral_derivative(np.ones(grid.n_points), grid)
    assert np.max(np.abs(out)) < 1e-12


def test_fourier_interpolation_is_exact_at_nodes_and_modes():
    grid = GridSpec(64, 0.0, 2 * np.pi)
    x = grid.points()
    f = np.exp(1j * 3 * x) + 0.5 * np.exp(-1j * 5 * x)
    fine = fourier_interpolate(f, 2)
    assert np.max(np.abs(fine[::2] - f)) < 1e-12
    x_fine = np.arange(128) * np.pi / 64
    exact = np.exp(1j * 3 * x_fine) + 0.5 * np.exp(-1j * 5 * x_fine)
    assert np.max(np.abs(fine - exact)) < 1e-12


def test_fourier_interpolation_2d():
    grid = GridSpec(32, 0.0, 2 * np.pi)
    x = grid.points()
    f = np.outer(np.cos(2 * x), np.sin(3 * x))
    fine = fourier_interpolate(f, 2)
    assert np.max(np.abs(fine[::2, ::2] - f)) < 1e-12
    assert np.max(np.abs(fine.imag)) < 1e-12
