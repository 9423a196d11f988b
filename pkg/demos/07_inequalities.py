"""
Fuzzing the elementary inequalities
===================================

Three pointwise inequalities underpin the energy estimates:

* ``|Im((z2 ln|z2|^2 - z1 ln|z1|^2) conj(z2 - z1))| <= 2 |z2 - z1|^2``
* a Holder-type bound on ``z ln|z|^2`` with exponent ``1 - eps``
* ``ln2 f^2 <= f^2 ln(2 + |z|) <= ln3 f^2 + C3 |f|^3`` with ``f = |z| - 1``

The last upper bound does not hold with ``ln 2`` in front of ``f^2``:
near ``|z| = 1`` the middle term is ``ln 3 f^2``. The constant ``C3`` is
fitted from samples and frozen at 1/3.
"""
from loggp.verify import C3_FROZEN, fuzz_inequalities

res = fuzz_inequalities(1_000_000, seed=0)
print(f"pairs tested: {res['pairs']}")
for key in ("stability", "lipschitz", "potential_lower", "potential_upper"):
    print(f"  {key:<16} violations: {res[key]}")
print(f"with ln 2 instead of ln 3: {res['potential_upper_ln2']} violations")
print(f"largest fitted C3: {res['fitted_C3']:.6f} (frozen at {C3_FROZEN:.6f})")
