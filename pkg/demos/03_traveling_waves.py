"""
A family of traveling waves
===========================

For ``0 < c < sqrt(2 lam)`` the wave is ``rho e^{i theta}``. The modulus
solves ``(rho')^2 = g_c(rho)`` starting at its minimum ``y0``, and the phase
follows from ``theta' = (c/2)(1 - 1/rho^2)``.
"""
import numpy as np

from loggp import Grid, Params, energy_report, eta_identity_residual, stationary_residual, traveling_wave

grid = Grid.centered(60.0, 6144)
print(f"{'c':>5} {'min|phi|':>10} {'winding':>10} {'energy':>10} {'residual':>10} {'eta id':>10}")
for c in (0.3, 0.6, 0.9, 1.2, 1.4):
    p = Params(1.0, c)
    w = traveling_wave(p, grid)
    e = energy_report(w.as_gridfunction(), p).total_loggp
    print(f"{c:5.2f} {w.rho.min():10.6f} {w.phase_winding:10.6f} {e:10.6f} "
          f"{stationary_residual(w):10.2e} {eta_identity_residual(w):10.2e}")

# Faster waves are shallower, carry less energy and wind the phase less.
# The speed enters the profile equation only through c^2 and the phase
# through c, so reversing the direction conjugates the wave.
a = traveling_wave(Params(1.0, 1.0), grid)
b = traveling_wave(Params(1.0, -1.0), grid)
print("\nphi_{-c} == conj(phi_c):", np.allclose(b.phi, np.conj(a.phi)))
