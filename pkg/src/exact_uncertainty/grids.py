"""Uniform spatial grids and the spectral (DFT-based) calculus on them.

All states live on periodic uniform grids; derivatives and Fourier
conjugation are spectral, so smooth well-contained states are resolved to
near machine precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GridSpec:
    """A uniform grid of ``n_points`` samples on ``[x_min, x_max)``."""

    n_points: int
    x_min: float
    x_max: float

    def __post_init__(self):
        if self.n_points < 8 or self.n_points % 2 != 0:
            raise ValueError(f"n_points must be even and >= 8, got {self.n_points}")
        if not self.x_min < self.x_max:
            raise ValueError(f"need x_min < x_max, got [{self.x_min}, {self.x_max}]")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_points

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    def points(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n_points)

    def wavenumbers(self) -> np.ndarray:
        """Signed spatial frequencies k (in fft order), so d/dx <-> i*k."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.dx)

    def momenta(self, hbar: float = 1.0) -> np.ndarray:
        """Conjugate momentum lattice p = hbar*k in fft order; dp = 2*pi*hbar/(n*dx)."""
        return hbar * self.wavenumbers()

    def momentum_spacing(self, hbar: float = 1.0) -> float:
        return 2.0 * np.pi * hbar / (self.n_points * self.dx)

    def conjugate_grid(self, hbar: float = 1.0) -> "GridSpec":
        """The momentum-side grid, with points sorted increasingly."""
        dp = self.momentum_spacing(hbar)
        half = self.n_points // 2
        return GridSpec(self.n_points, -half * dp, half * dp)


def spectral_derivative(values, grid: GridSpec, order: int = 1) -> np.ndarray:
    """Differentiate samples of a periodic (or box-decayed) function.

    Exact for band-limited inputs.  The Nyquist mode is zeroed for odd
    orders, where its derivative is not representable on the grid.
    """
    values = np.asarray(values, dtype=complex)
    k = grid.wavenumbers()
    mult = (1j * k) ** order
    if order % 2 == 1:
        mult[grid.n_points // 2] = 0.0
    return np.fft.ifft(mult * np.fft.fft(values))


def spectral_derivative_axis(values, grid: GridSpec, axis: int) -> np.ndarray:
    """Spectral first derivative of a matrix of samples along one axis."""
    values = np.asarray(values, dtype=complex)
    k = grid.wavenumbers()
    k = k.copy()
    k[grid.n_points // 2] = 0.0
    shape = [1] * values.ndim
    shape[axis] = grid.n_points
    mult = (1j * k).reshape(shape)
    return np.fft.ifft(mult * np.fft.fft(values, axis=axis), axis=axis)


def local_derivative(values, dx: float) -> np.ndarray:
    """Second-order finite differences: central interior, one-sided ends.

    Used where spectral differentiation is invalid (discontinuities,
    densities that do not decay at the array ends).
    """
    return np.gradient(np.asarray(values, dtype=float), dx, edge_order=2)


def fourier_interpolate(values, factor: int = 2) -> np.ndarray:
    """Trigonometric upsampling of periodic samples by an integer factor.

    Works on 1D vectors or 2D matrices (both axes upsampled).  Nyquist
    bins are split evenly, which preserves real-valuedness and norm.
    """
    values = np.asarray(values, dtype=complex)
    if values.ndim == 1:
        return _interp_axis(values, factor, axis=0)
    out = _interp_axis(values, factor, axis=0)
    return _interp_axis(out, factor, axis=1)


def _interp_axis(values: np.ndarray, factor: int, axis: int) -> np.ndarray:
    n = values.shape[axis]
    spec = np.fft.fft(values, axis=axis)
    spec = np.moveaxis(spec, axis, 0)
    m = factor * n
    padded = np.zeros((m,) + spec.shape[1:], dtype=complex)
    half = n // 2
    padded[:half] = spec[:half]
    padded[m - half:] = spec[half:]
    # split the Nyquist bin between +n/2 and -n/2
    padded[half] = 0.5 * spec[half]
    padded[m - half] = 0.5 * spec[half]
    out = np.fft.ifft(padded, axis=0) * factor
    return np.moveaxis(out, 0, axis)
