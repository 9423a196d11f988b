"""The ten acceptance criteria at their stated tolerances (full tier).

Each criterion maps onto the verification checks tagged with its number, so
this suite and ``loggp verify`` measure exactly the same quantities.
Criteria 1 and 2 currently fail: the black soliton behaves like
``x + a x^3 ln x^2`` at its zero, which caps fourth-order finite differences
at first-order accuracy there (see test_profiles for the local analysis).
"""
import pytest

from loggp.verify import CHECK_GROUPS, run_suite

from conftest import ACCEPTANCE

CRITERIA = {
    1: "black soliton residual < 1e-6, fourth-order self-convergence",
    2: "first integral < 1e-8, equipartition < 1e-6",
    3: "eta identity < 1e-7, min modulus = y0 to 1e-6",
    4: "velocity threshold scan",
    5: "monotone, odd, limits, tail rate",
    6: "zero frequency, probe calibration",
    7: "energy drift, L2 per step, Strang order",
    8: "cubic dark soliton translate",
    9: "Galerkin energy, gradient bound, cross-solver gaps",
    10: "inequality fuzzing, 1e6 pairs",
}


@pytest.fixture(scope="module")
def report():
    return run_suite(quick=False, seed=0, workers=min(4, len(CHECK_GROUPS)))


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(report, n):
    checks = [c for c in report.checks if c.criterion == n]
    assert checks, f"no checks tagged with criterion {n}"
    failed = [c for c in checks if not c.passed]
    summary = "; ".join(f"{c.name} {c.metric:.3e} {c.comparison} {c.tolerance:.1e}" for c in checks)
    ACCEPTANCE[n] = (not failed, summary)
    print(f"criterion {n}: {'PASS' if not failed else 'FAIL'} ({CRITERIA[n]})")
    assert not failed, "; ".join(f"{c.name}: {c.metric:.3e} vs {c.tolerance:.1e} {c.detail}" for c in failed)
