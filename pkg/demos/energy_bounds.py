"""Ground-state energy from information alone: the Fisher-length identity
and the entropy route evaluated for the Coulomb well, the harmonic
oscillator, and a particle bouncing on a floor."""

import math

from exact_uncertainty import (
    EnergyModel,
    airy_first_zero,
    bouncer_exact_energy,
    coulomb_groundstate_bound,
    energy_identity,
    entropic_groundstate_bound,
    fisher_groundstate_bound,
    gaussian_state,
)
from exact_uncertainty.grids import GridSpec

print("== the energy identity on the oscillator ground state ==")
grid = GridSpec(1024, -16.0, 16.0)
state = gaussian_state(grid, math.sqrt(0.5))
parts = energy_identity(state, EnergyModel("harmonic"))
print(f"hbar^2 / 8 m dX^2 : {parts['fisher_term']:.6f}")
print(f"<P_cl^2> / 2m     : {parts['drift_term']:.2e}")
print(f"<V>               : {parts['potential_term']:.6f}")
print(f"sum vs direct <H> : {parts['total']:.6f} vs {parts['direct_energy']:.6f}")

print("\n== Coulomb: minimize over the mean inverse radius ==")
report = coulomb_groundstate_bound(1.0, 1.0)
print(f"numeric minimum {report.bound:.9f}  (closed form {report.comparison})"
      f"  at <1/|x|> = {report.minimizer['mean_inverse_radius']:.6f}")

print("\n== harmonic oscillator: maximize entropy, then minimize ==")
report = entropic_groundstate_bound(EnergyModel("harmonic"))
print(f"entropic bound {report.bound:.9f}  = the true ground energy hbar*omega/2")

print("\n== bouncer in uniform gravity ==")
model = EnergyModel("gravity")
ent = entropic_groundstate_bound(model)
fis = fisher_groundstate_bound(model)
exact = bouncer_exact_energy(model)
print(f"entropic route : {ent.bound:.6f}  (coefficient ~ 1.249)")
print(f"fisher route   : {fis.bound:.6f}  (weaker for the exponential family)")
print(f"exact energy   : {exact:.6f}  (coefficient ~ 1.856, first Airy zero "
      f"{airy_first_zero():.7f})")
