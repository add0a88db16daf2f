"""Probability densities on lines, circles, planes, and discrete labels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import GridSpec

MASK_FLOOR = 1e-12  # labels with p below this fraction of max(p) are masked


@dataclass(frozen=True)
class LineDensity:
    """Nonnegative samples p(x_k) on a uniform grid, integral dx = 1."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.grid.n_points,):
            raise ValueError("value count does not match grid")
        if vals.min() < -1e-14 * max(vals.max(), 1.0):
            raise ValueError("density has negative values")
        object.__setattr__(self, "values", np.clip(vals, 0.0, None))

    @property
    def total(self) -> float:
        return float(np.sum(self.values) * self.grid.dx)

    def normalized(self) -> "LineDensity":
        return LineDensity(self.grid, self.values / self.total)

    def mask(self) -> np.ndarray:
        return self.values > MASK_FLOOR * self.values.max()

    def masked_mass(self) -> float:
        return float(np.sum(self.values[~self.mask()]) * self.grid.dx)


@dataclass(frozen=True)
class CircleDensity:
    """Samples p(phi_m) on the uniform grid phi_m = 2*pi*m/M over [0, 2*pi)."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 8:
            raise ValueError("need at least 8 circle samples")
        if vals.min() < -1e-14 * max(vals.max(), 1.0):
            raise ValueError("density has negative values")
        object.__setattr__(self, "values", np.clip(vals, 0.0, None))

    @property
    def n_points(self) -> int:
        return self.values.size

    @property
    def dphi(self) -> float:
        return 2.0 * np.pi / self.values.size

    def angles(self) -> np.ndarray:
        return self.dphi * np.arange(self.values.size)

    @property
    def total(self) -> float:
        return float(np.sum(self.values) * self.dphi)

    def normalized(self) -> "CircleDensity":
        return CircleDensity(self.values / self.total)

    def mask(self) -> np.ndarray:
        return self.values > MASK_FLOOR * self.values.max()

    def value_at(self, phi: float) -> float:
        """Linear interpolation on the periodic grid."""
        m = self.values.size
        t = (phi % (2.0 * np.pi)) / self.dphi
        lo = int(np.floor(t)) % m
        frac = t - np.floor(t)
        return float((1.0 - frac) * self.values[lo] + frac * self.values[(lo + 1) % m])


@dataclass(frozen=True)
class PlaneDensity:
    """Nonnegative samples p(x_k, y_l); integral dx dy = 1."""

    grid_x: GridSpec
    grid_y: GridSpec
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.grid_x.n_points, self.grid_y.n_points):
            raise ValueError("value shape does not match grids")
        object.__setattr__(self, "values", np.clip(vals, 0.0, None))

    @property
    def measure(self) -> float:
        return self.grid_x.dx * self.grid_y.dx

    @property
    def total(self) -> float:
        return float(np.sum(self.values) * self.measure)

    def normalized(self) -> "PlaneDensity":
        return PlaneDensity(self.grid_x, self.grid_y, self.values / self.total)

    def mask(self) -> np.ndarray:
        return self.values > MASK_FLOOR * self.values.max()


@dataclass(frozen=True)
class DiscreteDistribution:
    """Probabilities over a finite outcome set."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.min() < -1e-14:
            raise ValueError("negative probability")
        object.__setattr__(self, "probs", np.clip(p, 0.0, None))

    @property
    def n_outcomes(self) -> int:
        return self.probs.size

    def normalized(self) -> "DiscreteDistribution":
        return DiscreteDistribution(self.probs / self.probs.sum())
