"""
The black soliton
=================

At zero speed the profile is real, odd and passes through zero once. It is
built by integrating ``phi' = sqrt(lam F(phi^2))`` outward from the origin,
where ``F(y) = y ln y - y + 1``.
"""
import math

import numpy as np

from loggp import Grid, Params, black_soliton, energy_report, first_integral_residual, stationary_residual

p = Params(1.0)
w = black_soliton(p, Grid.centered(40.0, 4096))
x, phi = w.grid.x, w.phi.real

print("phi(0) =", phi[w.grid.index_of(0.0)])
print("phi(+-20) =", phi[0], phi[-1])
print("strictly increasing where |phi| < 1:", bool(np.all(np.diff(phi)[np.abs(phi[1:]) < 1] > 0)))

# The approach to +-1 is exponential with rate sqrt(2 lam).
sel = (x > 4) & (x < 10)
rate = -np.polyfit(x[sel], np.log(1 - phi[sel]), 1)[0]
print(f"tail rate {rate:.5f} vs sqrt(2 lam) = {math.sqrt(2):.5f}")

# Kinetic and potential energies agree, as the first integral predicts.
e = energy_report(w.as_gridfunction(), p)
print(f"kinetic {e.kinetic:.10f}  potential {e.pot_log:.10f}")

# Near the zero phi behaves like x + (lam/3) x^3 ln x^2, whose fourth
# derivative blows up. Finite differences of any order are only first-order
# accurate in a neighbourhood of x = 0, but converge fast everywhere else.
print(f"\n{'n':>6} {'residual':>12} {'|x| > 1':>12} {'first integral':>15}")
for n in (1024, 2048, 4096, 8192):
    wn = black_soliton(p, Grid.centered(40.0, n))
    far = np.abs(wn.grid.x) > 1
    print(f"{n:6d} {stationary_residual(wn):12.3e} {stationary_residual(wn, region=far):12.3e} "
          f"{np.abs(first_integral_residual(wn)).max():15.3e}")
