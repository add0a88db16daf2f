"""Pure and mixed quantum states on grids, circles, Fock and finite spaces.

Every state is immutable after construction and every operation is a pure
function, so concurrent evaluation on distinct inputs is always safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import UnsupportedObservable, ZeroNorm
from .grids import GridSpec

NORM_TOL = 1e-10
EDGE_DECAY = 1e-12  # box convention: amplitude at edges relative to peak


@dataclass(frozen=True)
class Constants:
    """Physical constants; defaults are natural units."""

    hbar: float = 1.0
    mass: float = 1.0
    omega: float = 1.0
    moment_of_inertia: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mass", "omega", "moment_of_inertia"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class GridPureState:
    """Wavefunction samples psi(x_k) on a uniform grid, unit L2(dx) norm."""

    grid: GridSpec
    amplitudes: np.ndarray
    constants: Constants = field(default_factory=Constants)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.grid.n_points,):
            raise ValueError("amplitude count does not match grid")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.grid.dx)

    def position_density(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def box_warning(self) -> bool:
        """True when the state has not decayed below EDGE_DECAY at the box edges."""
        a = np.abs(self.amplitudes)
        peak = a.max()
        return bool(peak > 0 and max(a[0], a[-1]) > EDGE_DECAY * peak)


@dataclass(frozen=True)
class GridMixedState:
    """Density-matrix samples rho(x_k, x_l) on a uniform grid.

    Trace convention: sum(diag) * dx = 1, matching the continuum kernel.
    """

    grid: GridSpec
    matrix: np.ndarray
    constants: Constants = field(default_factory=Constants)

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        n = self.grid.n_points
        if mat.shape != (n, n):
            raise ValueError("matrix shape does not match grid")
        herm = np.max(np.abs(mat - mat.conj().T))
        if herm > 1e-10 * max(1.0, np.max(np.abs(mat))):
            raise ValueError("density matrix is not Hermitian")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_ensemble(cls, weighted_states) -> "GridMixedState":
        """Mix (weight, GridPureState) pairs; weights are renormalized."""
        weights = np.array([w for w, _ in weighted_states], dtype=float)
        weights = weights / weights.sum()
        first = weighted_states[0][1]
        mat = np.zeros((first.grid.n_points,) * 2, dtype=complex)
        for w, st in zip(weights, (s for _, s in weighted_states)):
            if st.grid != first.grid:
                raise ValueError("ensemble members must share one grid")
            mat += w * np.outer(st.amplitudes, st.amplitudes.conj())
        return cls(first.grid, mat, first.constants)

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)) * self.grid.dx)

    @property
    def purity(self) -> float:
        # tr[rho^2] = sum |rho_ij|^2 for Hermitian rho
        return float(np.sum(np.abs(self.matrix) ** 2) * self.grid.dx ** 2)

    def position_density(self) -> np.ndarray:
        return np.real(np.diag(self.matrix))

    def box_warning(self) -> bool:
        d = np.abs(np.diag(self.matrix))
        peak = d.max()
        return bool(peak > 0 and max(d[0], d[-1]) > (EDGE_DECAY ** 2) * peak)


@dataclass(frozen=True)
class Grid2DPureState:
    """Two-particle wavefunction psi(x_k, y_l); per-axis grids may differ."""

    grid_x: GridSpec
    grid_y: GridSpec
    amplitudes: np.ndarray
    constants: Constants = field(default_factory=Constants)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.grid_x.n_points, self.grid_y.n_points):
            raise ValueError("amplitude shape does not match grids")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def measure(self) -> float:
        return self.grid_x.dx * self.grid_y.dx

    @property
    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.measure)

    def position_density(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def box_warning(self) -> bool:
        a = np.abs(self.amplitudes)
        peak = a.max()
        edge = max(a[0, :].max(), a[-1, :].max(), a[:, 0].max(), a[:, -1].max())
        return bool(peak > 0 and edge > EDGE_DECAY * peak)


@dataclass(frozen=True)
class PeriodicState:
    """Rotator state: amplitudes psi_j over angular-momentum labels j.

    The phase wavefunction is f(phi) = (2*pi)**-0.5 * sum_j psi_j e^{i j phi}.
    """

    j_min: int
    j_max: int
    amplitudes: np.ndarray
    constants: Constants = field(default_factory=Constants)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if self.j_min > self.j_max:
            raise ValueError("need j_min <= j_max")
        if amps.shape != (self.j_max - self.j_min + 1,):
            raise ValueError("amplitude count does not match j range")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def j_values(self) -> np.ndarray:
        return np.arange(self.j_min, self.j_max + 1)

    @property
    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def default_phase_points(self) -> int:
        span = self.j_max - self.j_min + 1
        m = 256
        while m < 8 * span:
            m *= 2
        return m

    def phase_grid(self, m: int | None = None) -> np.ndarray:
        m = m or self.default_phase_points()
        return 2.0 * np.pi * np.arange(m) / m

    def phase_samples(self, m: int | None = None, weights=None) -> np.ndarray:
        """f(phi) on m uniform points; `weights` multiplies psi_j first."""
        m = m or self.default_phase_points()
        coeff = self.amplitudes if weights is None else self.amplitudes * weights
        g = np.zeros(m, dtype=complex)
        np.add.at(g, np.mod(self.j_values, m), coeff)
        return m * np.fft.ifft(g) / np.sqrt(2.0 * np.pi)

    def phase_density(self, m: int | None = None) -> np.ndarray:
        return np.abs(self.phase_samples(m)) ** 2

    def edge_warning(self) -> bool:
        a = np.abs(self.amplitudes)
        peak = a.max()
        return bool(peak > 0 and max(a[0], a[-1]) > EDGE_DECAY * peak)


@dataclass(frozen=True)
class FockState:
    """Photon-number state: amplitudes c_n, n = 0..n_max (pure form).

    Phase-observable machinery lives in the decomposition module; here the
    state only knows its amplitudes and the conjugate-phase kernel
    <phi|psi> = (2*pi)**-0.5 * sum_n c_n e^{-i n phi}.
    """

    n_max: int
    amplitudes: np.ndarray
    constants: Constants = field(default_factory=Constants)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.n_max + 1,):
            raise ValueError("amplitude count does not match n_max")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_values(self) -> np.ndarray:
        return np.arange(self.n_max + 1)

    @property
    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def default_phase_points(self) -> int:
        m = 1024
        while m < 32 * (self.n_max + 1):
            m *= 2
        return m

    def phase_grid(self, m: int | None = None) -> np.ndarray:
        m = m or self.default_phase_points()
        return 2.0 * np.pi * np.arange(m) / m

    def phase_samples(self, m: int | None = None, weights=None) -> np.ndarray:
        """<phi|psi> on m uniform points; `weights` multiplies c_n first."""
        m = m or self.default_phase_points()
        coeff = self.amplitudes if weights is None else self.amplitudes * weights
        g = np.zeros(m, dtype=complex)
        g[: self.n_max + 1] = coeff
        return np.fft.fft(g) / np.sqrt(2.0 * np.pi)

    def phase_density(self, m: int | None = None) -> np.ndarray:
        return np.abs(self.phase_samples(m)) ** 2


@dataclass(frozen=True)
class PeriodicMixedState:
    """Rotator density matrix in the angular-momentum basis."""

    j_min: int
    j_max: int
    matrix: np.ndarray
    constants: Constants = field(default_factory=Constants)

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        d = self.j_max - self.j_min + 1
        if mat.shape != (d, d):
            raise ValueError("matrix shape does not match j range")
        if np.max(np.abs(mat - mat.conj().T)) > 1e-10 * max(1.0, np.max(np.abs(mat))):
            raise ValueError("density matrix is not Hermitian")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_ensemble(cls, weighted_states) -> "PeriodicMixedState":
        weights = np.array([w for w, _ in weighted_states], dtype=float)
        weights = weights / weights.sum()
        first = weighted_states[0][1]
        d = first.j_max - first.j_min + 1
        mat = np.zeros((d, d), dtype=complex)
        for w, st in zip(weights, (s for _, s in weighted_states)):
            mat += w * np.outer(st.amplitudes, st.amplitudes.conj())
        return cls(first.j_min, first.j_max, mat, first.constants)

    @property
    def j_values(self) -> np.ndarray:
        return np.arange(self.j_min, self.j_max + 1)

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    def default_phase_points(self) -> int:
        span = self.j_max - self.j_min + 1
        m = 256
        while m < 8 * span:
            m *= 2
        return m

    def phase_grid(self, m: int | None = None) -> np.ndarray:
        m = m or self.default_phase_points()
        return 2.0 * np.pi * np.arange(m) / m

    def phase_kernel(self, m: int | None = None) -> np.ndarray:
        """Rows <phi_m| restricted to the j window: e^{+i j phi} / sqrt(2 pi)."""
        m = m or self.default_phase_points()
        phi = self.phase_grid(m)
        return np.exp(1j * np.outer(phi, self.j_values)) / np.sqrt(2.0 * np.pi)

    def phase_density(self, m: int | None = None) -> np.ndarray:
        t = self.phase_kernel(m)
        return np.real(np.einsum("mj,jk,mk->m", t, self.matrix, t.conj()))


@dataclass(frozen=True)
class FockMixedState:
    """Photon-number density matrix in the number basis."""

    n_max: int
    matrix: np.ndarray
    constants: Constants = field(default_factory=Constants)

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (self.n_max + 1, self.n_max + 1):
            raise ValueError("matrix shape does not match n_max")
        if np.max(np.abs(mat - mat.conj().T)) > 1e-10 * max(1.0, np.max(np.abs(mat))):
            raise ValueError("density matrix is not Hermitian")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_ensemble(cls, weighted_states) -> "FockMixedState":
        weights = np.array([w for w, _ in weighted_states], dtype=float)
        weights = weights / weights.sum()
        first = weighted_states[0][1]
        mat = np.zeros((first.n_max + 1,) * 2, dtype=complex)
        for w, st in zip(weights, (s for _, s in weighted_states)):
            mat += w * np.outer(st.amplitudes, st.amplitudes.conj())
        return cls(first.n_max, mat, first.constants)

    @property
    def n_values(self) -> np.ndarray:
        return np.arange(self.n_max + 1)

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    def default_phase_points(self) -> int:
        m = 1024
        while m < 32 * (self.n_max + 1):
            m *= 2
        return m

    def phase_grid(self, m: int | None = None) -> np.ndarray:
        m = m or self.default_phase_points()
        return 2.0 * np.pi * np.arange(m) / m

    def phase_kernel(self, m: int | None = None) -> np.ndarray:
        """Rows <phi_m|: e^{-i n phi} / sqrt(2 pi)."""
        m = m or self.default_phase_points()
        phi = self.phase_grid(m)
        return np.exp(-1j * np.outer(phi, self.n_values)) / np.sqrt(2.0 * np.pi)

    def phase_density(self, m: int | None = None) -> np.ndarray:
        t = self.phase_kernel(m)
        return np.real(np.einsum("mj,jk,mk->m", t, self.matrix, t.conj()))


@dataclass(frozen=True)
class FiniteState:
    """Density matrix on a d-dimensional Hilbert space (pure = rank one)."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 2:
            raise ValueError("matrix must be square with dimension >= 2")
        if np.max(np.abs(mat - mat.conj().T)) > 1e-12 * max(1.0, np.max(np.abs(mat))):
            raise ValueError("density matrix is not Hermitian")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_vector(cls, vec) -> "FiniteState":
        v = np.asarray(vec, dtype=complex)
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def purity(self) -> float:
        return float(np.sum(np.abs(self.matrix) ** 2))


# ---------------------------------------------------------------------------
# operations


def normalize(state):
    """Return the unit-norm version of any state; direction and phase kept."""
    if isinstance(state, GridPureState):
        return _scale_check(state, state.norm_squared)
    if isinstance(state, Grid2DPureState):
        return _scale_check(state, state.norm_squared)
    if isinstance(state, (PeriodicState, FockState)):
        return _scale_check(state, state.norm_squared)
    if isinstance(state, (GridMixedState, PeriodicMixedState, FockMixedState)):
        tr = state.trace
        _check_scale(tr)
        return replace(state, matrix=state.matrix / tr)
    if isinstance(state, FiniteState):
        tr = float(np.real(np.trace(state.matrix)))
        _check_scale(tr)
        return replace(state, matrix=state.matrix / tr)
    raise UnsupportedObservable(f"cannot normalize {type(state).__name__}")


def _check_scale(norm_sq: float):
    if norm_sq < 1e-14:
        raise ZeroNorm("state norm is numerically zero")


def _scale_check(state, norm_sq: float):
    _check_scale(norm_sq)
    return replace(state, amplitudes=state.amplitudes / np.sqrt(norm_sq))


def embed_in_larger_box(state: GridPureState, factor: int = 4) -> GridPureState:
    """Zero-pad a box-decayed state into a factor-times larger box.

    Exact for decayed states, and refines the conjugate momentum lattice by
    the same factor: needed when momentum-side structure (interference
    oscillations with period 2*pi*hbar / lump separation) sits close to the
    bare lattice spacing.
    """
    grid = state.grid
    if factor < 1 or (factor * grid.n_points) % 2 != 0:
        raise ValueError("factor must be a positive integer on an even grid")
    pad = (factor - 1) * grid.n_points // 2
    amps = np.concatenate([np.zeros(pad), state.amplitudes,
                           np.zeros((factor - 1) * grid.n_points - pad)])
    big = GridSpec(factor * grid.n_points, grid.x_min - pad * grid.dx,
                   grid.x_max + ((factor - 1) * grid.n_points - pad) * grid.dx)
    return GridPureState(big, amps, state.constants)


def to_momentum(state: GridPureState) -> GridPureState:
    """Momentum-representation wavefunction on the conjugate lattice.

    Convention P = -i*hbar*d/dx, so psi~(p) = (2*pi*hbar)**-0.5 *
    integral psi(x) e^{-i p x / hbar} dx; Parseval holds exactly on the grid.
    """
    hbar = state.constants.hbar
    grid = state.grid
    k = grid.wavenumbers()
    phases = np.exp(-1j * k * grid.x_min)
    tilde = grid.dx / np.sqrt(2.0 * np.pi * hbar) * phases * np.fft.fft(state.amplitudes)
    pgrid = grid.conjugate_grid(hbar)
    return GridPureState(pgrid, np.fft.fftshift(tilde), state.constants)


def from_momentum(state: GridPureState, xgrid: GridSpec) -> GridPureState:
    """Inverse of :func:`to_momentum` back onto the original position grid."""
    hbar = state.constants.hbar
    tilde = np.fft.ifftshift(state.amplitudes)
    k = xgrid.wavenumbers()
    phases = np.exp(1j * k * xgrid.x_min)
    amps = np.fft.ifft(tilde * phases) * np.sqrt(2.0 * np.pi * hbar) / xgrid.dx
    return GridPureState(xgrid, amps, state.constants)


def momentum_density(state) -> tuple[np.ndarray, np.ndarray]:
    """(p values sorted, |psi~(p)|^2) for a grid pure or mixed state."""
    if isinstance(state, GridPureState):
        mom = to_momentum(state)
        return mom.grid.points(), np.abs(mom.amplitudes) ** 2
    if isinstance(state, GridMixedState):
        rho_p = _momentum_matrix(state)
        pgrid = state.grid.conjugate_grid(state.constants.hbar)
        return pgrid.points(), np.real(np.diag(rho_p))
    raise UnsupportedObservable("momentum density needs a grid state")


def _momentum_matrix(state: GridMixedState) -> np.ndarray:
    """rho in the momentum representation (sorted lattice), trace dp = 1."""
    grid, hbar = state.grid, state.constants.hbar
    k = grid.wavenumbers()
    phases = np.exp(-1j * k * grid.x_min)
    # forward transform on axis 0, conjugate transform on axis 1
    m = np.fft.fft(state.matrix, axis=0) * phases[:, None]
    m = np.conj(np.fft.fft(np.conj(m), axis=1)) * np.conj(phases)[None, :]
    m *= grid.dx ** 2 / (2.0 * np.pi * hbar)
    return np.fft.fftshift(m)


def moment(state, observable: str, k: int = 1) -> float:
    """<B^k> for B in {X, P, J, N}, k = 1 or 2, via the natural quadrature."""
    if k not in (1, 2):
        raise ValueError("only first and second moments are supported")
    if observable == "X":
        if isinstance(state, GridPureState) or isinstance(state, GridMixedState):
            x = state.grid.points()
            p = state.position_density()
            return float(np.sum(x ** k * p) * state.grid.dx)
    elif observable == "P":
        if isinstance(state, (GridPureState, GridMixedState)):
            p, dens = momentum_density(state)
            dp = state.grid.momentum_spacing(state.constants.hbar)
            return float(np.sum(p ** k * dens) * dp)
    elif observable == "J":
        if isinstance(state, PeriodicState):
            jv = state.constants.hbar * state.j_values
            return float(np.sum(jv ** k * np.abs(state.amplitudes) ** 2))
        if isinstance(state, PeriodicMixedState):
            jv = state.constants.hbar * state.j_values
            return float(np.sum(jv ** k * np.real(np.diag(state.matrix))))
    elif observable == "N":
        if isinstance(state, FockState):
            return float(np.sum(state.n_values ** k * np.abs(state.amplitudes) ** 2))
        if isinstance(state, FockMixedState):
            return float(np.sum(state.n_values ** k * np.real(np.diag(state.matrix))))
    raise UnsupportedObservable(f"{observable!r} is not defined for {type(state).__name__}")


def variance(state, observable: str) -> float:
    return moment(state, observable, 2) - moment(state, observable, 1) ** 2


def evolve_step(state, potential, dt: float):
    """One Strang split step under H = (kinetic) + V; unitary, O(dt^2) accurate.

    `potential` is sampled on the state's grid (position points for grid
    states, the default phase grid for rotator states); None means free.
    """
    if isinstance(state, GridPureState):
        return _evolve_grid(state, potential, dt)
    if isinstance(state, PeriodicState):
        return _evolve_rotator(state, potential, dt)
    raise UnsupportedObservable(f"cannot evolve {type(state).__name__}")


def _evolve_grid(state: GridPureState, potential, dt: float) -> GridPureState:
    c = state.constants
    psi = state.amplitudes
    if potential is not None:
        half = np.exp(-0.5j * np.asarray(potential) * dt / c.hbar)
        psi = half * psi
    p = state.grid.momenta(c.hbar)
    kin = np.exp(-0.5j * p ** 2 * dt / (c.mass * c.hbar))
    psi = np.fft.ifft(kin * np.fft.fft(psi))
    if potential is not None:
        psi = half * psi
    return replace(state, amplitudes=psi)


def _evolve_rotator(state: PeriodicState, potential, dt: float) -> PeriodicState:
    c = state.constants
    j = state.j_values
    kin = np.exp(-0.5j * c.hbar * j.astype(float) ** 2 * dt / c.moment_of_inertia)
    amps = state.amplitudes
    if potential is None:
        return replace(state, amplitudes=kin * amps)
    m = state.default_phase_points()
    v = np.asarray(potential, dtype=float)
    if v.shape != (m,):
        raise ValueError(f"potential must be sampled on the {m}-point phase grid")
    half = np.exp(-0.5j * v * dt / c.hbar)

    def apply_phase_factor(coeffs):
        g = np.zeros(m, dtype=complex)
        np.add.at(g, np.mod(j, m), coeffs)
        f = np.fft.ifft(g)  # values on the phase grid (up to scale)
        g2 = np.fft.fft(half * f)
        return g2[np.mod(j, m)]

    amps = apply_phase_factor(amps)
    amps = kin * amps
    amps = apply_phase_factor(amps)
    return replace(state, amplitudes=amps)


# ---------------------------------------------------------------------------
# in-memory JSON schema (file I/O lives in the CLI)


def state_to_dict(state) -> dict:
    """Serialize a state to the JSON-ready schema dictionary."""
    if isinstance(state, GridPureState):
        return {
            "family": "grid",
            "grid": {"n_points": state.grid.n_points, "x_min": state.grid.x_min,
                     "x_max": state.grid.x_max},
            "amplitudes": _complex_list(state.amplitudes),
        }
    if isinstance(state, GridMixedState):
        return {
            "family": "grid",
            "grid": {"n_points": state.grid.n_points, "x_min": state.grid.x_min,
                     "x_max": state.grid.x_max},
            "matrix": [_complex_list(row) for row in state.matrix],
        }
    if isinstance(state, PeriodicState):
        return {
            "family": "periodic",
            "grid": {"j_min": state.j_min, "j_max": state.j_max},
            "amplitudes": _complex_list(state.amplitudes),
        }
    if isinstance(state, FockState):
        return {
            "family": "fock",
            "grid": {"n_max": state.n_max},
            "amplitudes": _complex_list(state.amplitudes),
        }
    if isinstance(state, FiniteState):
        return {
            "family": "finite",
            "grid": {"dimension": state.dimension},
            "matrix": [_complex_list(row) for row in state.matrix],
        }
    raise UnsupportedObservable(f"cannot serialize {type(state).__name__}")


def state_from_dict(doc: dict, constants: Constants | None = None):
    """Parse the JSON schema dictionary back into a state object."""
    from .errors import ParseError

    constants = constants or Constants()
    try:
        family = doc["family"]
        grid = doc.get("grid", {})
        if family == "grid":
            spec = GridSpec(int(grid["n_points"]), float(grid["x_min"]), float(grid["x_max"]))
            if "matrix" in doc:
                return GridMixedState(spec, _complex_array(doc["matrix"]), constants)
            return GridPureState(spec, _complex_array(doc["amplitudes"]), constants)
        if family == "periodic":
            return PeriodicState(int(grid["j_min"]), int(grid["j_max"]),
                                 _complex_array(doc["amplitudes"]), constants)
        if family == "fock":
            return FockState(int(grid["n_max"]), _complex_array(doc["amplitudes"]), constants)
        if family == "finite":
            return FiniteState(_complex_array(doc["matrix"]))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"bad state document: {exc}") from exc
    raise ParseError(f"unknown state family {doc.get('family')!r}")


def _complex_list(values) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex)]


def _complex_array(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


# convenience constructors used across tests, demos and the CLI


def gaussian_state(grid: GridSpec, sigma: float, center: float = 0.0, momentum: float = 0.0,
                   chirp: float = 0.0, constants: Constants | None = None) -> GridPureState:
    """Normalized Gaussian with position spread sigma, optional boost and chirp."""
    constants = constants or Constants()
    x = grid.points()
    psi = np.exp(-((x - center) ** 2) / (4.0 * sigma ** 2)
                 + 1j * (momentum * x + chirp * (x - center) ** 2) / constants.hbar)
    return normalize(GridPureState(grid, psi, constants))


def fock_basis_state(n: int, n_max: int | None = None,
                     constants: Constants | None = None) -> FockState:
    n_max = n_max if n_max is not None else max(n, 1)
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[n] = 1.0
    return FockState(n_max, amps, constants or Constants())
