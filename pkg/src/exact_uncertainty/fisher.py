"""Fisher lengths, Fisher covariance matrices, entropies, collision lengths.

The Fisher length delta_X = [integral p (d ln p / dx)^2 dx]^{-1/2} is the
translation Cramer-Rao bound: delta_X <= Delta_X with equality only for
Gaussians.  In the continuum it vanishes for discontinuous densities; on a
grid a jump is diagnosed by the broadband content it injects into the
spectral derivative, and such densities get an explicit flag instead of a
meaningless number (a dyadic coarsening study rides along as provenance).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .densities import CircleDensity, DiscreteDistribution, LineDensity, PlaneDensity
from .errors import SingularInformation, UnstableStep, VanishingDensity
from .grids import local_derivative, spectral_derivative, spectral_derivative_axis
from .states import GridMixedState

FINITE = "finite"
ZERO_BY_DISCONTINUITY = "zero-by-discontinuity"
INFINITE_BY_UNIFORMITY = "infinite-by-uniformity"

# a density jump puts broadband (Gibbs) content into the spectral derivative
# that no local stencil sees: the spectral Fisher length collapses far below
# the local-difference one (measured ~3e-4 of it for a truncated Gaussian),
# while even badly under-resolved smooth structure keeps them within ~2x.
DISCONTINUITY_RATIO = 0.3

# information below (this / support^2) means a flat density whose derivative
# samples are pure rounding noise
UNIFORMITY_FLOOR = 1e-8


@dataclass(frozen=True)
class FisherMetrics:
    """Fisher length of a density together with its divergence diagnosis."""

    fisher_length: float
    fisher_information: float
    divergence_flag: str
    masked_mass: float = 0.0
    refinement_study: tuple = ()

    @property
    def is_finite(self) -> bool:
        return self.divergence_flag == FINITE


def _information(p: np.ndarray, dp_dx: np.ndarray, weight: float, mask: np.ndarray,
                 periodic: bool = False) -> float:
    """Quadrature of (p')^2 / p over retained points.

    When only a handful of points are masked (isolated zeros of an analytic
    density), the integrand has a finite removable limit there; dropping the
    cells would cost O(dphi) accuracy, so those values are filled by
    interpolation instead.  Long masked runs (tails, dead intervals) stay
    excluded.
    """
    integrand = np.zeros_like(p)
    integrand[mask] = dp_dx[mask] ** 2 / p[mask]
    n_masked = int(np.sum(~mask))
    if 0 < n_masked <= max(4, p.size // 200):
        idx = np.arange(p.size, dtype=float)
        period = float(p.size) if periodic else None
        integrand[~mask] = np.interp(idx[~mask], idx[mask], integrand[mask], period=period)
        return float(np.sum(integrand) * weight)
    return float(np.sum(integrand[mask]) * weight)


def _coarsening_study(p: np.ndarray, dx: float, periodic: bool) -> list[tuple[float, float]]:
    """delta_X recomputed from every 1st, 2nd, 4th sample (local derivatives)."""
    study = []
    for step in (1, 2, 4):
        if p.size % step != 0 or p.size // step < 8:
            break
        q = p[::step]
        h = dx * step
        q = q / (np.sum(q) * h)
        if periodic:
            dq = periodic_central_difference(q, h)
        else:
            dq = local_derivative(q, h)
        mask = q > 1e-12 * q.max()
        info = _information(q, dq, h, mask, periodic)
        study.append((h, float(info ** -0.5) if info > 0 else np.inf))
    return study


def periodic_central_difference(values: np.ndarray, h: float) -> np.ndarray:
    """Central differences with periodic wrap (local stencil, no Gibbs)."""
    return (np.roll(values, -1) - np.roll(values, 1)) / (2.0 * h)


def _jump_detected(info_spectral: float, info_local: float) -> bool:
    return info_spectral > info_local / DISCONTINUITY_RATIO ** 2


def fisher_length(density: LineDensity) -> FisherMetrics:
    """Fisher length of a line density.

    The reported value uses spectral differentiation when the density decays
    at the array ends (box-contained states) and local differences otherwise
    (half-line supports such as exponential densities, whose periodic wrap
    is a grid artifact rather than an interior jump).
    """
    density = density.normalized()
    p = density.values
    dx = density.grid.dx
    mask = density.mask()
    masked_mass = density.masked_mass()

    info_fd = max(_information(p, local_derivative(p, dx), dx, mask), 1e-300)
    decayed_edges = max(p[0], p[-1]) <= 1e-8 * p.max()
    if not decayed_edges:
        return FisherMetrics(info_fd ** -0.5, info_fd, FINITE, masked_mass, ())

    dp = np.real(spectral_derivative(p, density.grid))
    info = max(_information(p, dp, dx, mask), 1e-300)

    # near-flat densities carry ~no information; the derivative samples are
    # rounding noise and no diagnosis beyond "finite but huge" is possible
    if info * density.grid.length ** 2 < UNIFORMITY_FLOOR:
        return FisherMetrics(info ** -0.5, info, FINITE, masked_mass, ())

    study = _coarsening_study(p, dx, periodic=False)
    if _jump_detected(info, info_fd):
        return FisherMetrics(info_fd ** -0.5, info_fd, ZERO_BY_DISCONTINUITY,
                             masked_mass, tuple(study))
    return FisherMetrics(info ** -0.5, info, FINITE, masked_mass, tuple(study))


def fisher_length_periodic(density: CircleDensity) -> FisherMetrics:
    """Fisher length of a circle density (period 2*pi).

    A uniform density has no information at all and is flagged infinite
    rather than encoded as a float sentinel.
    """
    density = density.normalized()
    p = density.values
    dphi = density.dphi
    mask = density.mask()
    masked_mass = float(np.sum(p[~mask]) * dphi)

    # circle grids are genuinely periodic: spectral differentiation is exact
    m = density.n_points
    k = np.fft.fftfreq(m, d=1.0 / m)  # integer harmonics
    dp = np.real(np.fft.ifft(1j * k * np.fft.fft(p)))
    info = _information(p, dp, dphi, mask, periodic=True)
    if info * (2.0 * np.pi) ** 2 < UNIFORMITY_FLOOR:
        return FisherMetrics(np.inf, info, INFINITE_BY_UNIFORMITY, masked_mass, ())

    info_fd = max(_information(p, periodic_central_difference(p, dphi), dphi, mask,
                               periodic=True), 1e-300)
    study = _coarsening_study(p, dphi, periodic=True)
    # circle densities are trigonometric polynomials sampled at >= 8 points
    # per harmonic, so an O(max) swing between adjacent cells can only be a
    # jump, never under-resolved smooth structure
    cell_swing = float(np.max(np.abs(np.diff(p, append=p[0])))) / p.max()
    if _jump_detected(info, info_fd) or cell_swing > 0.25:
        return FisherMetrics(info_fd ** -0.5, info_fd, ZERO_BY_DISCONTINUITY,
                             masked_mass, tuple(study))
    return FisherMetrics(info ** -0.5, info, FINITE, masked_mass, tuple(study))


def fisher_length_mixed(state: GridMixedState) -> FisherMetrics:
    """Fisher length of the position density of a density matrix.

    Uses the commutator representation: <x|[P,rho]|x> = -i*hbar * d/dx of the
    diagonal density, evaluated by spectral differentiation of rho along each
    index.  Agrees with fisher_length of the diagonal for smooth states.
    """
    grid = state.grid
    d0 = spectral_derivative_axis(state.matrix, grid, axis=0)
    d1 = spectral_derivative_axis(state.matrix, grid, axis=1)
    comm_diag = np.diag(d0) + np.diag(d1)  # equals d/dx rho(x,x)
    p = state.position_density()
    total = float(np.sum(p) * grid.dx)
    p = p / total
    dp = np.real(comm_diag) / total
    mask = p > 1e-12 * p.max()
    masked_mass = float(np.sum(p[~mask]) * grid.dx)
    if masked_mass > 0.2:
        raise VanishingDensity("more than 20% of mass on masked points")
    info = max(_information(p, dp, grid.dx, mask), 1e-300)
    if info * grid.length ** 2 < UNIFORMITY_FLOOR:
        return FisherMetrics(info ** -0.5, info, FINITE, masked_mass, ())
    info_fd = max(_information(p, local_derivative(p, grid.dx), grid.dx, mask), 1e-300)
    study = _coarsening_study(p, grid.dx, periodic=False)
    if _jump_detected(info, info_fd):
        return FisherMetrics(info_fd ** -0.5, info_fd, ZERO_BY_DISCONTINUITY,
                             masked_mass, tuple(study))
    return FisherMetrics(info ** -0.5, info, FINITE, masked_mass, tuple(study))


def phase_variance(density: CircleDensity, theta: float) -> float:
    """Variance of the angle about theta, integrated over (theta-pi, theta+pi]."""
    density = density.normalized()
    phi = density.angles()
    d = np.mod(phi - theta + np.pi, 2.0 * np.pi) - np.pi
    return float(np.sum(d ** 2 * density.values) * density.dphi)


def circular_mean(density: CircleDensity) -> float:
    density = density.normalized()
    phi = density.angles()
    z = np.sum(np.exp(1j * phi) * density.values) * density.dphi
    return float(np.angle(z) % (2.0 * np.pi))


def entropy(density) -> float:
    """Differential entropy -integral p ln p under the density's measure."""
    if isinstance(density, LineDensity):
        w, p = density.grid.dx, density.normalized().values
    elif isinstance(density, CircleDensity):
        w, p = density.dphi, density.normalized().values
    elif isinstance(density, PlaneDensity):
        w, p = density.measure, density.normalized().values
    elif isinstance(density, DiscreteDistribution):
        w, p = 1.0, density.normalized().probs
    else:
        raise TypeError(f"no entropy for {type(density).__name__}")
    terms = np.where(p > 0, p * np.log(np.where(p > 0, p, 1.0)), 0.0)
    return float(-np.sum(terms) * w)


def collision_length(distribution: DiscreteDistribution) -> float:
    """1 / sum p_j^2: ranges from 1 (point mass) to n (uniform over n)."""
    p = distribution.normalized().probs
    return float(1.0 / np.sum(p ** 2))


def fisher_covariance(density) -> np.ndarray:
    """Inverse of the translation Fisher information matrix.

    Symmetric positive definite for smooth strictly positive densities;
    equals the covariance matrix exactly for Gaussians.  A line density
    yields the 1x1 matrix [[delta_X^2]].
    """
    if isinstance(density, LineDensity):
        fm = fisher_length(density)
        return np.array([[fm.fisher_length ** 2]])
    density = density.normalized()
    p = density.values
    mask = density.mask()
    gx = np.real(spectral_derivative_axis(p, density.grid_x, axis=0))
    gy = np.real(spectral_derivative_axis(p, density.grid_y, axis=1))
    w = density.measure
    info = np.zeros((2, 2))
    for i, a in enumerate((gx, gy)):
        for j, b in enumerate((gx, gy)):
            integrand = np.zeros_like(p)
            integrand[mask] = a[mask] * b[mask] / p[mask]
            info[i, j] = np.sum(integrand) * w
    try:
        cond = np.linalg.cond(info)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise SingularInformation("Fisher information matrix is singular") from exc
    if not np.isfinite(cond) or cond > 1e14:
        raise SingularInformation("Fisher information matrix is numerically singular")
    return np.linalg.inv(info)


@dataclass(frozen=True)
class DiffusionRun:
    """Entropy history of a density under Gaussian diffusion with drift."""

    gamma: float
    drift: float
    dt: float
    steps: int
    entropies: np.ndarray
    rate_estimates: np.ndarray
    fisher_lengths: np.ndarray


def diffusion_entropy_rate(density: LineDensity, gamma: float, drift: float,
                           dt: float, steps: int) -> DiffusionRun:
    """Evolve dp/dt = gamma p'' + drift p' and trace the entropy production.

    Stepping is exact in Fourier space (heat-kernel multiplication), so the
    measured entropy rate can be compared against gamma / delta_X(t)^2
    without time-discretization error.  Raises UnstableStep if entropy
    decreases while gamma > 0.
    """
    density = density.normalized()
    grid = density.grid
    k = grid.wavenumbers()
    kernel = np.exp((-gamma * k ** 2 + 1j * drift * k) * dt)
    spec = np.fft.fft(density.values.astype(complex))

    entropies, lengths = [], []
    cur = density
    for step in range(steps + 1):
        entropies.append(entropy(cur))
        lengths.append(fisher_length(cur).fisher_length)
        if step < steps:
            spec = spec * kernel
            vals = np.clip(np.real(np.fft.ifft(spec)), 0.0, None)
            cur = LineDensity(grid, vals).normalized()
    entropies = np.array(entropies)
    if gamma > 0 and np.any(np.diff(entropies) < -1e-12):
        raise UnstableStep("entropy decreased under pure diffusion")

    rates = np.gradient(entropies, dt)
    return DiffusionRun(gamma, drift, dt, steps, entropies, rates, np.array(lengths))
