import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loggp import (
    DomainError,
    NoInteriorRoot,
    Params,
    VelocityAboveThreshold,
    f_c,
    f_c_prime,
    find_critical_points,
    g_c,
    h_c,
    log_nonlinearity,
    potential_F,
)
from loggp.scalars import bisect, mutated

lams = st.floats(0.05, 20.0)


@st.composite
def subsonic(draw):
    lam = draw(lams)
    frac = draw(st.floats(0.02, 0.98))
    sign = draw(st.sampled_from([-1.0, 1.0]))
    return Params(lam, sign * frac * math.sqrt(2 * lam))


def test_params_validation():
    with pytest.raises(DomainError):
        Params(0.0)
    with pytest.raises(DomainError):
        Params(-1.0, 0.5)
    with pytest.raises(DomainError):
        Params(1.0, math.inf)
    assert Params(1.0, 1.0).subsonic
    assert not Params(1.0, math.sqrt(2.0)).subsonic


@pytest.mark.parametrize("y, expected", [(1.0, 0.0), (0.0, 1.0), (math.e, 1.0)])
def test_potential_examples(y, expected):
    assert potential_F(y) == pytest.approx(expected, abs=1e-15)


def test_potential_rejects_negative():
    with pytest.raises(DomainError):
        potential_F(-1e-3)


def test_potential_vacuum_limit_is_continuous():
    # y ln y -> 0, so F tends to 1 as y -> 0 (including subnormal inputs)
    ys = np.array([1e-320, 1e-300, 1e-200, 1e-30, 1e-12])
    assert np.allclose(potential_F(ys), 1.0, atol=1e-10)


@given(st.floats(0.0, 1e6))
def test_potential_taylor_bounds(y):
    val = potential_F(y)
    assert 0.0 <= val <= (y - 1.0) ** 2 * (1 + 1e-12) + 1e-300


def test_potential_dense_scan_bounds():
    y = np.linspace(0, 10, 200_001)
    val = potential_F(y)
    assert np.all(val >= 0)
    assert np.all(val <= (y - 1) ** 2 * (1 + 1e-12))


def test_potential_series_branch_matches_direct():
    # both evaluations around the switch point agree to relative precision
    d = np.array([-1.1e-3, -0.9e-3, 0.9e-3, 1.1e-3])
    y = 1 + d
    direct = y * np.log(y) - d
    assert np.allclose(potential_F(y), direct, rtol=1e-9)


@pytest.mark.parametrize("z, eps, expected", [(1.0, 0.0, 0.0), (0.0, 0.0, 0.0),
                                                (1j * math.e, 0.0, 2j * math.e)])
def test_log_nonlinearity_examples(z, eps, expected):
    assert log_nonlinearity(z, eps) == pytest.approx(expected, abs=1e-14)


def test_log_nonlinearity_regularized():
    assert log_nonlinearity(0.0, 1e-8) == 0.0
    z = 0.3 + 0.4j
    assert log_nonlinearity(z, 0.5) == pytest.approx(z * math.log(0.75))
    with pytest.raises(DomainError):
        log_nonlinearity(z, -1.0)


def test_fc_examples():
    p = Params(1.0, 1.0)
    assert f_c(1.0, p) == pytest.approx(0.0, abs=1e-15)
    assert f_c(1.0, Params(1.0, 0.0)) == 0.0
    # hand arithmetic: c^2/4 (1/y^3 - y) + lam y ln y^2 at y = 1/2
    oracle = 0.25 * (8.0 - 0.5) + 0.5 * math.log(0.25)
    assert f_c(0.5, p) == pytest.approx(oracle, rel=1e-15)
    assert oracle == pytest.approx(1.1818528194400546, rel=1e-15)


@pytest.mark.parametrize("fun", [f_c, f_c_prime, g_c])
def test_domain_errors(fun):
    with pytest.raises(DomainError):
        fun(0.0, Params(1.0, 1.0))
    with pytest.raises(DomainError):
        fun(np.array([0.5, -0.1]), Params(1.0, 1.0))


@given(st.floats(0.01, 3.0), lams)
def test_g_at_zero_velocity_is_potential(y, lam):
    assert g_c(y, Params(lam, 0.0)) == pytest.approx(lam * potential_F(y * y), rel=1e-12, abs=1e-300)


def test_g_examples():
    assert g_c(1.0, Params(1.0, 1.0)) == 0.0
    cp = find_critical_points(Params(1.0, 1.0))
    assert abs(g_c(cp.y0, Params(1.0, 1.0))) < 1e-12


@settings(max_examples=60)
@given(subsonic(), st.floats(0.2, 2.0))
def test_g_derivative_is_twice_f(p, y):
    # central differences converge at second order towards 2 f_c
    errs = []
    for h in (1e-3, 5e-4):
        fd = (g_c(y + h, p) - g_c(y - h, p)) / (2 * h)
        errs.append(abs(fd - 2 * f_c(y, p)))
    scale = 1 + abs(f_c(y, p)) + p.c**2 / y**5
    assert errs[1] < 1e-5 * scale
    if errs[0] > 1e-9 * scale:
        assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.1)


@given(subsonic(), st.floats(1e-3, 2.0))
def test_change_of_variables_identity(p, rho):
    lhs = 4 * rho**2 * g_c(rho, p)
    rhs = 2 * h_c(1 - rho**2, p)
    scale = 1 + abs(lhs) + p.lam * (1 + rho**4)
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_h_examples():
    p = Params(1.0, 1.0)
    assert h_c(0.0, p) == 0.0
    assert h_c(1.0, p) == pytest.approx(-0.5)
    assert h_c(1.0, Params(2.0, 0.7)) == pytest.approx(2.0 - (4.0 + 0.49) / 2)
    rho = math.sqrt(0.5)
    assert h_c(0.5, p) == pytest.approx(2 * rho**2 * g_c(rho, p), rel=1e-14)


def test_critical_points_example():
    cp = find_critical_points(Params(1.0, 1.0))
    assert 0.61 < cp.y0 < 0.62
    assert 0 < cp.y0 < cp.y1 < cp.y2 < 1
    p = Params(1.0, 1.0)
    assert abs(f_c(cp.y1, p)) < 1e-12 and abs(f_c_prime(cp.y2, p)) < 1e-11


def test_critical_points_near_threshold():
    cp = find_critical_points(Params(1.0, 1.4))
    assert 0 < cp.y0 < cp.y1 < cp.y2 < 1


def test_critical_points_errors():
    with pytest.raises(VelocityAboveThreshold, match="threshold"):
        find_critical_points(Params(1.0, math.sqrt(2.0)))
    with pytest.raises(NoInteriorRoot):
        find_critical_points(Params(1.0, 0.0))


def test_independent_y0_oracle():
    # own sign-change bracket on g_c, then plain bisection
    p = Params(1.0, 1.0)
    lo, hi = 0.61, 0.62
    assert g_c(lo, p) < 0 < g_c(hi, p)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if g_c(mid, p) < 0 else (lo, mid)
    assert find_critical_points(p).y0 == pytest.approx(lo, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(subsonic())
def test_roots_ordered_and_hc_single_zero(p):
    cp = find_critical_points(p)
    assert 0 < cp.y0 < cp.y1 < cp.y2 < 1
    eta = np.linspace(1e-9, 1.0, 100_001)
    vals = h_c(eta, p)
    s = np.sign(vals)
    idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
    assert len(idx) == 1
    assert eta[idx[0]] == pytest.approx(1 - cp.y0**2, abs=2e-5)


@settings(max_examples=40)
@given(lams, st.floats(1.0, 3.0))
def test_hc_negative_above_threshold(lam, factor):
    p = Params(lam, math.sqrt(2 * lam) * factor)
    eta = np.linspace(1e-9, 1.0, 20_001)
    assert np.all(h_c(eta, p) < 0)


def test_bisect():
    assert bisect(lambda x: x * x - 2, 0, 2, xtol=0) == pytest.approx(math.sqrt(2), abs=4e-16)
    with pytest.raises(NoInteriorRoot):
        bisect(lambda x: x * x + 1, -1, 1)


def test_mutation_flips_fc_sign():
    p = Params(1.0, 1.0)
    base = f_c(0.5, p)
    with mutated("fc-sign"):
        assert f_c(0.5, p) == -base
    assert f_c(0.5, p) == base
    with pytest.raises(ValueError):
        with mutated("nope"):
            pass
