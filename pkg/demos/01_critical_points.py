"""
Where traveling waves can exist
===============================

A wave moving at speed ``c`` has a modulus that dips from 1 down to a
minimum ``y0`` and back. The dip depth is a root of ``g_c``, and two more
roots (of ``f_c`` and ``f_c'``) sit between it and 1. Above the speed
``sqrt(2 lam)`` no dip exists at all.
"""
import math

import numpy as np

from loggp import Params, VelocityAboveThreshold, find_critical_points, g_c, h_c

# The three roots for the reference case lam = c = 1.
cp = find_critical_points(Params(1.0, 1.0), xtol=0)
print("lam = 1, c = 1:", cp.as_dict())

# Sweep the speed. The dip gets shallower as c grows and disappears at the threshold.
print(f"\n{'c':>6} {'y0':>10} {'y1':>10} {'y2':>10}")
for c in np.linspace(0.2, 1.4, 7):
    r = find_critical_points(Params(1.0, c))
    print(f"{c:6.2f} {r.y0:10.6f} {r.y1:10.6f} {r.y2:10.6f}")

for c in (math.sqrt(2.0), 1.5):
    try:
        find_critical_points(Params(1.0, c))
    except VelocityAboveThreshold as exc:
        print(f"c = {c:.4f}: {exc}")

# At and above the threshold h_c stays negative on (0, 1], so the defect
# 1 - |phi|^2 has no turning point.
eta = np.linspace(1e-4, 1.0, 2001)
for c in (math.sqrt(2.0), 1.5, 2.0):
    print(f"max h_c on (0, 1] for c = {c:.3f}: {h_c(eta, Params(1.0, c)).max():.3e}")

# Below y0 the first integral is negative (no real slope), above it positive.
p = Params(1.0, 1.0)
print("g_c just below / above y0:", g_c(cp.y0 * (1 - 1e-6), p), g_c(cp.y0 * (1 + 1e-6), p))
