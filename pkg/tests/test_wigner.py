import numpy as np
import pytest

from exact_uncertainty.decomposition import classical_estimate
from exact_uncertainty.grids import GridSpec
from exact_uncertainty.random_states import random_smooth_grid_state
from exact_uncertainty.states import (
    GridMixedState,
    GridPureState,
    gaussian_state,
    normalize,
    to_momentum,
)
from exact_uncertainty.wigner import (
    position_classical_in_momentum,
    wigner_average_momentum,
    wigner_transform,
)


def gaussian_wigner_oracle(x, p, sigma, hbar=1.0):
    # closed form for psi ~ exp(-x^2 / 4 sigma^2)
    return np.exp(-x ** 2 / (2 * sigma ** 2) - 2 * sigma ** 2 * p ** 2 / hbar ** 2) \
        / (np.pi * hbar)


class TestTransform:
    def test_gaussian_closed_form(self, grid):
        sigma = 1.1
        w = wigner_transform(gaussian_state(grid, sigma))
        x, p = np.meshgrid(w.x_grid.points(), w.p_grid.points(), indexing="ij")
        assert np.max(np.abs(w.values - gaussian_wigner_oracle(x, p, sigma))) < 1e-12
        assert w.total == pytest.approx(1.0, abs=1e-8)
        assert w.imaginary_residue < 1e-12

    def test_cat_state_interference_fringe(self):
        # closed-form oracle: two displaced Gaussians plus an oscillating
        # interference term centred between them.  The coherence block
        # rho(x, -x) extends twice as far in the slice direction as the
        # density does, so the box must be bigger than for a single lump.
        grid = GridSpec(1024, -24.0, 24.0)
        a, sigma = 4.0, 1.0
        raw = gaussian_state(grid, sigma, center=-a).amplitudes \
            + gaussian_state(grid, sigma, center=a).amplitudes
        cat = normalize(GridPureState(grid, raw))
        w = wigner_transform(cat)
        x, p = np.meshgrid(w.x_grid.points(), w.p_grid.points(), indexing="ij")
        overlap = np.exp(-a ** 2 / (2 * sigma ** 2))
        oracle = (gaussian_wigner_oracle(x - a, p, sigma)
                  + gaussian_wigner_oracle(x + a, p, sigma)
                  + 2 * gaussian_wigner_oracle(x, p, sigma) * np.cos(2 * a * p)) \
            / (2 * (1 + overlap))
        assert np.max(np.abs(w.values - oracle)) < 1e-12
        assert w.values.min() < -0.05

    def test_boost_shifts_momentum(self, grid):
        k = 1.4
        sigma = 1.0
        w = wigner_transform(gaussian_state(grid, sigma, momentum=k))
        x, p = np.meshgrid(w.x_grid.points(), w.p_grid.points(), indexing="ij")
        assert np.max(np.abs(w.values - gaussian_wigner_oracle(x, p - k, sigma))) < 1e-12

    def test_marginals(self, rng, grid):
        st = random_smooth_grid_state(rng, grid)
        w = wigner_transform(st)
        assert np.max(np.abs(w.position_marginal() - st.position_density())) < 1e-8
        mom = to_momentum(st)
        assert np.max(np.abs(w.momentum_marginal() - np.abs(mom.amplitudes) ** 2)) < 1e-8

    def test_mixed_state_linearity(self):
        grid = GridSpec(256, -12.0, 12.0)
        a = gaussian_state(grid, 1.0, center=-2.0, momentum=0.5)
        b = gaussian_state(grid, 0.8, center=2.0)
        mix = GridMixedState.from_ensemble([(0.3, a), (0.7, b)])
        w_mix = wigner_transform(mix)
        w_sum = 0.3 * wigner_transform(a).values + 0.7 * wigner_transform(b).values
        assert np.max(np.abs(w_mix.values - w_sum)) < 1e-10


class TestAverageMomentum:
    def test_real_gaussian_zero(self, grid):
        w = wigner_transform(gaussian_state(grid, 1.0))
        x, pav, mask = wigner_average_momentum(w)
        weighted = np.abs(pav) * w.position_marginal()
        assert weighted[mask].max() < 1e-10

    def test_boosted_gaussian_constant(self, grid):
        k = 1.7
        w = wigner_transform(gaussian_state(grid, 1.0, momentum=k))
        _, pav, mask = wigner_average_momentum(w)
        core = w.position_marginal() > 1e-6 * w.position_marginal().max()
        assert np.max(np.abs(pav[core] - k)) < 1e-8

    def test_matches_classical_estimate_on_superposition(self, grid):
        raw = gaussian_state(grid, 1.0, center=-3.0, momentum=1.0).amplitudes \
            + gaussian_state(grid, 0.9, center=3.0, momentum=-0.6).amplitudes
        st = normalize(GridPureState(grid, raw))
        w = wigner_transform(st)
        _, pav, mask = wigner_average_momentum(w)
        comp = classical_estimate(st, "position", "P")
        marginal = w.position_marginal()
        weighted = np.abs(pav - comp.values) * marginal
        assert weighted[mask & comp.mask].max() < 1e-6

    def test_identity_over_random_suite(self, rng, grid):
        # the weighted deviation bound 1e-6 * hbar / L, over 20 random
        # states, pure and mixed
        bound = 1e-6 / grid.length
        for index in range(20):
            st = random_smooth_grid_state(rng, grid)
            if index % 4 == 0:
                st = GridMixedState.from_ensemble(
                    [(0.5, st), (0.5, random_smooth_grid_state(rng, grid))])
            w = wigner_transform(st)
            _, pav, mask = wigner_average_momentum(w)
            comp = classical_estimate(st, "position", "P")
            weighted = np.abs(pav - comp.values) * w.position_marginal()
            assert weighted[mask & comp.mask].max() < bound


class TestPositionClassical:
    def test_gaussian_zero(self, grid):
        p, xcl, mask = position_classical_in_momentum(gaussian_state(grid, 1.0))
        weighted = np.abs(xcl)
        core = mask  # symmetric: all retained points should vanish
        w = wigner_transform(gaussian_state(grid, 1.0)).momentum_marginal()
        assert np.max(np.abs(xcl[w > 1e-6 * w.max()])) < 1e-8

    def test_displaced_gaussian_constant(self, grid):
        a = 3.0
        st = gaussian_state(grid, 1.0, center=a)
        p, xcl, mask = position_classical_in_momentum(st)
        w = wigner_transform(st).momentum_marginal()
        core = w > 1e-6 * w.max()
        assert np.max(np.abs(xcl[core] - a)) < 1e-7

    def test_chirped_gaussian_linear(self, grid):
        # Gaussian moment oracle: for psi ~ exp(-x^2/4s^2 + i beta x^2),
        # X_cl(p) = Cov(X,P)/Var(P) * p with Cov(X,P) = 2 beta s^2 and
        # Var P = 1/4s^2 + 4 beta^2 s^4 / s^2 ... computed directly below
        sigma, beta = 1.0, 0.4
        st = gaussian_state(grid, sigma, chirp=beta)
        var_x = sigma ** 2
        cov_xp = 2 * beta * sigma ** 2  # <xp+px>/2 for this family
        var_p = 1.0 / (4 * sigma ** 2) + 4 * beta ** 2 * sigma ** 2
        slope = cov_xp / var_p
        p, xcl, mask = position_classical_in_momentum(st)
        w = wigner_transform(st).momentum_marginal()
        core = w > 1e-6 * w.max()
        assert np.max(np.abs(xcl[core] - slope * p[core])) < 1e-6

    def test_agrees_with_momentum_basis_estimate(self, rng, grid):
        st = random_smooth_grid_state(rng, grid)
        p, xcl, mask = position_classical_in_momentum(st)
        comp = classical_estimate(st, "momentum", "X")
        w = wigner_transform(st).momentum_marginal()
        weighted = np.abs(xcl - comp.values) * w
        assert weighted[mask & comp.mask].max() < 1e-6
