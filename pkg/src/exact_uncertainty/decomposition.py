"""Best-estimate (classical) components of observables and their residuals.

For a measured basis {|a>} and observable B on state rho, the classical
component is the function

    B_cl(a) = <a|B rho + rho B|a> / (2 <a|rho|a>),

the estimate of B compatible with measuring A that minimizes the mean square
error.  Its residual statistics define the nonclassical fluctuation strength
entering the exact uncertainty relations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CutoffTooSmall, UnsupportedObservable, VanishingDensity
from .grids import spectral_derivative, spectral_derivative_axis
from .states import (
    Constants,
    FockMixedState,
    FockState,
    GridMixedState,
    GridPureState,
    PeriodicMixedState,
    PeriodicState,
    evolve_step,
    moment,
    to_momentum,
    variance,
)

MASKED_MASS_LIMIT = 0.2


@dataclass(frozen=True)
class ClassicalComponent:
    """B_cl(a) over the measured basis, with its moment summary."""

    labels: np.ndarray          # basis labels (grid points, angles, eigenvalues)
    values: np.ndarray          # B_cl on the labels (masked entries hold 0)
    weights: np.ndarray         # probability mass per label, p(a) * measure
    mask: np.ndarray            # True where the label is retained
    observable: str
    basis: str
    masked_mass: float

    @property
    def mean(self) -> float:
        return float(np.sum(self.weights[self.mask] * self.values[self.mask]))

    @property
    def second_moment(self) -> float:
        return float(np.sum(self.weights[self.mask] * self.values[self.mask] ** 2))

    @property
    def variance(self) -> float:
        return self.second_moment - self.mean ** 2


@dataclass(frozen=True)
class DecompositionSummary:
    var_total: float
    var_classical: float
    var_nonclassical: float
    additivity_residual: float
    min_error: float


@dataclass(frozen=True)
class PomObservable:
    """Outcome values with positive effects summing to the identity."""

    outcomes: np.ndarray
    effects: np.ndarray  # stacked (n_outcomes, d, d) positive matrices
    mean: float
    variance: float
    cutoff_study: tuple = ()

    def completeness_residual(self) -> float:
        total = np.sum(self.effects, axis=0)
        return float(np.max(np.abs(total - np.eye(total.shape[0]))))


def _masked_component(labels, numerator, density, weight_measure, observable, basis):
    """Assemble a ClassicalComponent, masking labels with negligible density."""
    mask = density > 1e-12 * density.max()
    masked_mass = float(np.sum(density[~mask]) * weight_measure)
    if masked_mass > MASKED_MASS_LIMIT:
        raise VanishingDensity(
            f"{masked_mass:.2f} of the probability mass lies on masked labels")
    values = np.zeros_like(density)
    values[mask] = numerator[mask] / density[mask]
    weights = density * weight_measure
    return ClassicalComponent(labels, values, weights, mask, observable, basis, masked_mass)


def classical_estimate(state, basis: str, observable: str) -> ClassicalComponent:
    """The best estimate of `observable` compatible with measuring `basis`.

    Supported combinations: grid states with (position, P) and (momentum, X);
    rotator states with (phase, J); Fock states with (phase, N) and
    (extended-phase, N).
    """
    key = (basis, observable)
    if isinstance(state, (GridPureState, GridMixedState)):
        if key == ("position", "P"):
            return _grid_momentum_estimate(state)
        if key == ("momentum", "X"):
            return _grid_position_estimate(state)
    elif isinstance(state, PeriodicState) and key == ("phase", "J"):
        return _rotator_estimate(state)
    elif isinstance(state, PeriodicMixedState) and key == ("phase", "J"):
        return _circle_mixed_estimate(state, state.constants.hbar * state.j_values, "J")
    elif isinstance(state, FockState) and key in (("phase", "N"), ("extended-phase", "N")):
        return _fock_number_estimate(state)
    elif isinstance(state, FockMixedState) and key in (("phase", "N"), ("extended-phase", "N")):
        return _circle_mixed_estimate(state, state.n_values.astype(float), "N")
    raise UnsupportedObservable(f"no estimate of {observable} from {basis} "
                                f"for {type(state).__name__}")


def _circle_mixed_estimate(state, b_values: np.ndarray, observable: str) -> ClassicalComponent:
    """<phi|B rho + rho B|phi>/2 / p(phi) for circle-family density matrices."""
    m = state.default_phase_points()
    t = state.phase_kernel(m)
    rho = state.matrix
    b_rho = b_values[:, None] * rho
    numerator = np.real(np.einsum("mj,jk,mk->m", t, b_rho, t.conj()))
    density = np.real(np.einsum("mj,jk,mk->m", t, rho, t.conj()))
    return _masked_component(state.phase_grid(m), numerator, np.clip(density, 0.0, None),
                             2.0 * np.pi / m, observable, "phase")


def _grid_momentum_estimate(state) -> ClassicalComponent:
    """P_cl(x); for pure psi this is hbar * Im[psi* psi'] / |psi|^2 (branch-free)."""
    hbar = state.constants.hbar
    grid = state.grid
    x = grid.points()
    if isinstance(state, GridPureState):
        psi = state.amplitudes
        dpsi = spectral_derivative(psi, grid)
        numerator = hbar * np.imag(np.conj(psi) * dpsi)
        density = np.abs(psi) ** 2
    else:
        d0 = spectral_derivative_axis(state.matrix, grid, axis=0)
        d1 = spectral_derivative_axis(state.matrix, grid, axis=1)
        # <x|P rho + rho P|x>/2 with P = -i hbar d/dx
        numerator = np.real(0.5 * (-1j * hbar * np.diag(d0) + 1j * hbar * np.diag(d1)))
        density = state.position_density()
    return _masked_component(x, numerator, density, grid.dx, "P", "position")


def _grid_position_estimate(state) -> ClassicalComponent:
    """X_cl(p) in the momentum representation (X acts as +i*hbar d/dp)."""
    hbar = state.constants.hbar
    if isinstance(state, GridPureState):
        mom = to_momentum(state)
        pgrid = mom.grid
        phi = mom.amplitudes
        dphi = spectral_derivative(phi, pgrid)
        numerator = -hbar * np.imag(np.conj(phi) * dphi)
        density = np.abs(phi) ** 2
    else:
        from .states import _momentum_matrix

        rho_p = _momentum_matrix(state)
        pgrid = state.grid.conjugate_grid(hbar)
        d0 = spectral_derivative_axis(rho_p, pgrid, axis=0)
        d1 = spectral_derivative_axis(rho_p, pgrid, axis=1)
        numerator = np.real(0.5 * (1j * hbar * np.diag(d0) - 1j * hbar * np.diag(d1)))
        density = np.real(np.diag(rho_p))
    return _masked_component(pgrid.points(), numerator, density, pgrid.dx, "X", "momentum")


def _rotator_estimate(state: PeriodicState) -> ClassicalComponent:
    """J_cl(phi) = hbar * Im[f* f'] / |f|^2 on the phase grid."""
    hbar = state.constants.hbar
    m = state.default_phase_points()
    f = state.phase_samples(m)
    df = state.phase_samples(m, weights=1j * state.j_values)
    numerator = hbar * np.imag(np.conj(f) * df)
    density = np.abs(f) ** 2
    return _masked_component(state.phase_grid(m), numerator, density,
                             2.0 * np.pi / m, "J", "phase")


def _fock_number_estimate(state: FockState) -> ClassicalComponent:
    """N_cl(phi) = Re[<psi|phi><phi|N|psi>] / p(phi)."""
    m = state.default_phase_points()
    f = state.phase_samples(m)
    g = state.phase_samples(m, weights=state.n_values.astype(complex))
    numerator = np.real(np.conj(f) * g)
    density = np.abs(f) ** 2
    return _masked_component(state.phase_grid(m), numerator, density,
                             2.0 * np.pi / m, "N", "phase")


def estimate_error(state, candidate, basis: str, observable: str) -> float:
    """Mean square error <(B - B~)^2> of an arbitrary compatible estimate.

    `candidate` is sampled on the same labels as the classical estimate.
    Always >= the minimum error, with equality iff candidate = B_cl on the
    retained support.
    """
    comp = classical_estimate(state, basis, observable)
    cand = np.asarray(candidate, dtype=float)
    if cand.shape != comp.values.shape:
        raise ValueError("candidate must be sampled on the basis labels")
    b_second = moment(state, observable, 2)
    m = comp.mask
    cross = float(np.sum(comp.weights[m] * cand[m] * comp.values[m]))
    cand_sq = float(np.sum(comp.weights[m] * cand[m] ** 2))
    return b_second - 2.0 * cross + cand_sq


def minimum_error(state, basis: str, observable: str) -> float:
    """<B^2> - <B_cl^2>, the error of the best compatible estimate."""
    comp = classical_estimate(state, basis, observable)
    return moment(state, observable, 2) - comp.second_moment


def decomposition_summary(state, basis: str, observable: str) -> DecompositionSummary:
    """Variance split Var B = Var B_cl + Var B_nc with its numerical residual.

    The nonclassical variance is the independently computed minimum error,
    so the residual genuinely measures the mean-equality <B> = <B_cl>.
    """
    comp = classical_estimate(state, basis, observable)
    var_total = variance(state, observable)
    var_cl = comp.variance
    min_err = moment(state, observable, 2) - comp.second_moment
    var_nc = min_err  # <B_nc^2> with <B_nc> = 0
    residual = abs(var_total - var_cl - var_nc)
    return DecompositionSummary(var_total, var_cl, var_nc, residual, min_err)


def energy_split(state: FockState, constants: Constants | None = None) -> tuple[float, float]:
    """(E_cl, E_nc) with E_cl = hbar*omega*<N_cl> and E_cl + E_nc = hbar*omega*<N + 1/2>."""
    c = constants or state.constants
    comp = classical_estimate(state, "phase", "N")
    e_cl = c.hbar * c.omega * comp.mean
    total = c.hbar * c.omega * (moment(state, "N", 1) + 0.5)
    return e_cl, total - e_cl


# ---------------------------------------------------------------------------
# extended-space construction of the nonclassical number observable


def extended_number_nonclassical(state: FockState, cutoff: int) -> PomObservable:
    """POM for the nonclassical number component via the extended space.

    The number space is extended with negative labels n = -cutoff..cutoff so
    phase kets become orthogonal; there N* - N*_cl is a genuine Hermitian
    operator, and projecting its eigenprojections back onto the physical
    subspace yields the effects.  Doubling the cutoff must leave the
    variance within 1e-4 relative, else CutoffTooSmall is raised.
    """
    if cutoff < state.n_max:
        raise ValueError("cutoff must cover the physical support")

    outcomes, effects, mean, var = _extended_pom(state, cutoff)
    _, _, mean2, var2 = _extended_pom(state, 2 * cutoff)
    scale = max(abs(var), abs(var2), 1e-30)
    if abs(var2 - var) / scale > 1e-4 and scale > 1e-12:
        raise CutoffTooSmall(
            f"Var N_nc moved from {var:.6g} to {var2:.6g} when doubling the cutoff")
    return PomObservable(outcomes, effects, mean, var,
                         cutoff_study=((cutoff, mean, var), (2 * cutoff, mean2, var2)))


def _extended_pom(state: FockState, cutoff: int):
    labels = np.arange(-cutoff, cutoff + 1)
    dim = labels.size
    m_grid = 1 << max(12, int(np.ceil(np.log2(16 * dim))))
    phi = 2.0 * np.pi * np.arange(m_grid) / m_grid

    # <phi*|psi> and <phi*|N*|psi> for the embedded physical state
    f = state.phase_samples(m_grid)
    g = state.phase_samples(m_grid, weights=state.n_values.astype(complex))
    density = np.abs(f) ** 2
    mask = density > 1e-12 * density.max()
    ncl = np.zeros(m_grid)
    ncl[mask] = np.real(np.conj(f[mask]) * g[mask]) / density[mask]
    if not mask.all():
        # fill masked points by interpolation so the Fourier analysis of
        # N*_cl(phi) is not polluted by artificial spikes
        idx = np.arange(m_grid)
        ncl[~mask] = np.interp(idx[~mask], idx[mask], ncl[mask], period=m_grid)

    # Toeplitz matrix elements <m|N*_cl|n> = (2 pi)^-1 int N*_cl e^{i(m-n)phi}
    coeffs = np.fft.ifft(ncl)  # coeffs[k] = (1/M) sum_m ncl_m e^{+2 pi i k m / M}
    order = np.subtract.outer(labels, labels)  # m - n
    ncl_matrix = coeffs[np.mod(order, m_grid)]

    nstar = np.diag(labels.astype(float))
    nonclassical = nstar - ncl_matrix
    herm_defect = np.max(np.abs(nonclassical - nonclassical.conj().T))
    nonclassical = 0.5 * (nonclassical + nonclassical.conj().T)
    if herm_defect > 1e-8:
        raise CutoffTooSmall("extended operator lost Hermiticity; raise the cutoff")

    eigvals, eigvecs = np.linalg.eigh(nonclassical)
    phys = slice(cutoff, cutoff + state.n_max + 1)  # labels 0..n_max
    proj = eigvecs[phys, :]  # rows: physical block of each eigenvector
    effects = np.einsum("il,jl->lij", proj, proj.conj())

    amps = state.amplitudes
    probs = np.real(np.einsum("i,lij,j->l", amps.conj(), effects, amps))
    probs = np.clip(probs, 0.0, None)
    mean = float(np.sum(eigvals * probs))
    second = float(np.sum(eigvals ** 2 * probs))
    return eigvals, effects, mean, second - mean ** 2


# ---------------------------------------------------------------------------
# continuity-equation cross-check


def continuity_residual(state, potential, dt: float) -> float:
    """Max-norm residual of d(p)/dt + d/dx [p * v_cl].

    The time derivative is a symmetric difference of single split steps; the
    flux divergence is spectral.  Valid for Hamiltonians quadratic in the
    conjugate observable.
    """
    if isinstance(state, GridPureState):
        grid = state.grid
        psi = state.amplitudes
        dpsi = spectral_derivative(psi, grid)
        flux = state.constants.hbar / state.constants.mass * np.imag(np.conj(psi) * dpsi)
        div = np.real(spectral_derivative(flux, grid))
        fwd = evolve_step(state, potential, dt)
        bwd = evolve_step(state, potential, -dt)
        dpdt = (fwd.position_density() - bwd.position_density()) / (2.0 * dt)
        return float(np.max(np.abs(dpdt + div)))
    if isinstance(state, PeriodicState):
        m = state.default_phase_points()
        f = state.phase_samples(m)
        df = state.phase_samples(m, weights=1j * state.j_values)
        flux = (state.constants.hbar / state.constants.moment_of_inertia
                * np.imag(np.conj(f) * df))
        k = np.fft.fftfreq(m, d=1.0 / m)
        div = np.real(np.fft.ifft(1j * k * np.fft.fft(flux)))
        fwd = evolve_step(state, potential, dt)
        bwd = evolve_step(state, potential, -dt)
        dpdt = (fwd.phase_density(m) - bwd.phase_density(m)) / (2.0 * dt)
        return float(np.max(np.abs(dpdt + div)))
    raise UnsupportedObservable(f"no continuity equation for {type(state).__name__}")
