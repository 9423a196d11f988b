"""Verification suite: every invariant the library promises, run at one of
two resolution tiers and collected into a deterministic report.

Each check returns a numeric metric and a tolerance. A check whose
computation raises is recorded as failed with the largest finite float as
its metric, so a report is always complete.
"""
from __future__ import annotations

import math
import sys
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import scalars
from .energy import energy_report, equivalence_ratio, modulus_gap_l2
from .errors import LogGPError, VelocityAboveThreshold
from .evolution import (
    EvolutionConfig,
    Nonlinearity,
    SplitStepper,
    evolve,
    frequency_probe,
    l2_distance,
    make_pair_box,
)
from .galerkin import galerkin_evolve, galerkin_state, holder_constant
from .grid import BC, Grid, GridFunction, _integrate_real
from .profiles import (
    black_soliton,
    eta_identity_residual,
    first_integral_residual,
    gp_dark_soliton,
    stationary_residual,
    traveling_wave,
)
from .scalars import Params, g_c, h_c

__all__ = ["Check", "Tier", "TIERS", "VerificationReport", "run_suite", "CHECK_GROUPS",
           "K0_FROZEN", "C3_FROZEN", "fuzz_inequalities"]

FAILED_METRIC = sys.float_info.max

# pointwise ratio F(y^2) / ((y-1)^2 ln(2+y)) ranges over [1/ln 2, 2)
K0_FROZEN = 2.0
# ln(3 + f) <= ln 3 + f/3 for f >= -1
C3_FROZEN = 1.0 / 3.0
LIP_EPSILONS = (0.1, 0.25, 0.5, 0.9)


@dataclass(frozen=True)
class Check:
    name: str
    paper_ref: str
    metric: float
    tolerance: float
    comparison: str = "<="
    passed: bool = False
    criterion: int | None = None
    detail: str = ""

    @classmethod
    def make(cls, name, ref, metric, tol, comparison="<=", criterion=None, detail=""):
        metric = float(metric)
        if not math.isfinite(metric):
            ok = False
            metric = FAILED_METRIC
        elif comparison == "<=":
            ok = metric <= tol
        elif comparison == ">=":
            ok = metric >= tol
        else:
            raise ValueError(comparison)
        return cls(name, ref, metric, float(tol), comparison, bool(ok), criterion, detail)


@dataclass(frozen=True)
class Tier:
    name: str
    n_profile: int
    length: float
    dt: float
    t_end: float
    n_box: int
    fuzz_pairs: int
    galerkin_orders: tuple = (16, 32, 64)


TIERS = {
    "quick": Tier("quick", 1024, 40.0, 1e-3, 1.0, 1024, 100_000),
    "full": Tier("full", 4096, 40.0, 1e-3, 5.0, 2048, 1_000_000),
}


@dataclass
class VerificationReport:
    tier: str
    seed: int
    mutation: str | None
    checks: list
    environment: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c.name for c in self.checks if not c.passed]

    def as_dict(self):
        return {
            "tier": self.tier,
            "seed": self.seed,
            "mutation": self.mutation,
            "passed": self.passed,
            "failures": self.failures,
            "environment": self.environment,
            "checks": [asdict(c) for c in self.checks],
        }


# --- scalars ----------------------------------------------------------------

def check_roots(tier, seed):
    p = Params(1.0, 1.0)
    cp = scalars.find_critical_points(p)
    ys = np.linspace(0.05, 0.999, 2001)
    ident = np.max(np.abs(2 * ys**2 * g_c(ys, p) - h_c(1 - ys**2, p)))
    ordered = 0.0 if 0 < cp.y0 < cp.y1 < cp.y2 < 1 else 1.0
    return [
        Check.make("roots_ordered", "0 < y0 < y1 < y2 < 1 and f_c, g_c sign structure",
                   ordered, 0.0, detail=str(cp.as_dict())),
        Check.make("gc_hc_identity", "2 rho^2 g_c(rho) = h_c(1 - rho^2)", ident, 1e-12),
    ]


def check_threshold(tier, seed):
    lam = 1.0
    n = 2048 if tier.name == "quick" else tier.n_profile
    grid = Grid.centered(tier.length, n)
    sub = [0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4]
    sup = [math.sqrt(2.0), 1.5, 2.0]
    failures = []
    for c in sub:
        try:
            traveling_wave(Params(lam, c), grid)
        except LogGPError as exc:
            failures.append(f"c={c}: {exc}")
    accepted = []
    for c in sup:
        try:
            traveling_wave(Params(lam, c), grid)
            accepted.append(c)
        except VelocityAboveThreshold:
            pass
    eta = np.linspace(1e-6, 1.0, 200_001)
    zeros = 0
    for c in sup:
        s = np.sign(h_c(eta, Params(lam, c)))
        zeros += int(np.count_nonzero(s[:-1] * s[1:] <= 0))
    ref = "non-constant traveling waves exist iff c^2 < 2 lambda"
    return [
        Check.make("threshold_subsonic_exist", ref, len(failures), 0, criterion=4,
                   detail="; ".join(failures)),
        Check.make("threshold_supersonic_rejected", ref, len(accepted), 0, criterion=4,
                   detail=f"accepted: {accepted}"),
        Check.make("threshold_hc_no_zero", ref, zeros, 0, criterion=4),
    ]


# --- fuzzed inequalities ------------------------------------------------------

def _log_abs2(z):
    r2 = np.abs(z) ** 2
    with np.errstate(divide="ignore"):
        return np.where(r2 > 0, np.log(np.where(r2 > 0, r2, 1.0)), 0.0)


def _random_pairs(rng, n):
    third = n // 3

    def polar(m, lo, hi):
        return 10.0 ** rng.uniform(lo, hi, m) * np.exp(2j * np.pi * rng.random(m))

    z1 = polar(n, -6, 3)
    z2 = polar(n, -6, 3)
    # near-coincident pairs and moduli close to 1 stress the small-difference regime
    z2[:third] = z1[:third] + np.abs(z1[:third]) * polar(third, -8, 0)
    ring = slice(third, 2 * third)
    m = 2 * third - third
    z1[ring] = (1.0 + rng.choice([-1.0, 1.0], m) * 10.0 ** rng.uniform(-7, -0.05, m)) \
        * np.exp(2j * np.pi * rng.random(m))
    return z1, z2


def fuzz_inequalities(n_pairs, seed):
    """Count violations of the three elementary inequalities on random pairs.

    Returns a dict of violation counts plus the empirical constants.
    """
    rng = np.random.default_rng(seed)
    out = {"stability": 0, "lipschitz": 0, "potential_lower": 0, "potential_upper": 0,
           "potential_upper_ln2": 0, "fitted_C3": 0.0, "pairs": 0}
    chunk = 200_000
    done = 0
    while done < n_pairs:
        m = min(chunk, n_pairs - done)
        z1, z2 = _random_pairs(rng, m)
        L1, L2 = _log_abs2(z1), _log_abs2(z2)
        d = z2 - z1
        ad = np.abs(d)
        scale = (np.abs(z1) + np.abs(z2)) * (1.0 + np.abs(L1) + np.abs(L2))
        lhs = np.abs(np.imag((z2 * L2 - z1 * L1) * np.conj(d)))
        out["stability"] += int(np.count_nonzero(lhs > 2 * ad**2 + 1e-13 * scale * ad))

        diff = np.abs(z1 * L1 - z2 * L2)
        a1, a2 = np.abs(z1), np.abs(z2)
        l1, l2 = 0.5 * np.abs(L1), 0.5 * np.abs(L2)
        for eps in LIP_EPSILONS:
            rhs = 2.0 ** (1 + eps) * (a1**eps * l1 + a2**eps * l2) * ad ** (1 - eps) + 2 * ad
            out["lipschitz"] += int(np.count_nonzero(diff > rhs + 1e-13 * scale))

        for v in (z1, z2):
            f = np.abs(v) - 1.0
            mid = f * f * np.log(2.0 + np.abs(v))
            out["potential_lower"] += int(np.count_nonzero(math.log(2.0) * f * f > mid))
            upper = math.log(3.0) * f * f + C3_FROZEN * np.abs(f) ** 3
            out["potential_upper"] += int(np.count_nonzero(mid > upper * (1 + 1e-14)))
            out["potential_upper_ln2"] += int(np.count_nonzero(
                mid > math.log(2.0) * f * f + C3_FROZEN * np.abs(f) ** 3))
            nz = np.abs(f) > 1e-3
            if np.any(nz):
                fit = (mid[nz] - math.log(3.0) * f[nz] ** 2) / np.abs(f[nz]) ** 3
                out["fitted_C3"] = max(out["fitted_C3"], float(fit.max()))
        done += m
    out["pairs"] = done
    return out


def check_inequalities(tier, seed):
    res = fuzz_inequalities(tier.fuzz_pairs, seed)
    n = res["pairs"]
    return [
        Check.make("fuzz_stability_inequality",
                   "|Im((z2 ln|z2|^2 - z1 ln|z1|^2)(conj z2 - conj z1))| <= 2 |z2 - z1|^2",
                   res["stability"], 0, criterion=10, detail=f"{n} pairs"),
        Check.make("fuzz_lipschitz_inequality",
                   "Hoelder-type continuity of z ln|z|^2 with constant 2^(1+eps)",
                   res["lipschitz"], 0, criterion=10,
                   detail=f"{n} pairs x eps in {list(LIP_EPSILONS)}"),
        Check.make("fuzz_potential_lower", "ln 2 ||v|-1|^2 <= (|v|-1)^2 ln(2+|v|)",
                   res["potential_lower"], 0, criterion=10, detail=f"{2 * n} samples"),
        Check.make("fuzz_potential_upper",
                   "(|v|-1)^2 ln(2+|v|) <= ln 3 ||v|-1|^2 + C_3 ||v|-1|^3 with C_3 = 1/3",
                   res["potential_upper"], 0, criterion=10,
                   detail=(f"fitted C_3 = {res['fitted_C3']:.6f}; with ln 2 in place of ln 3 the "
                           f"bound fails on {res['potential_upper_ln2']} samples")),
    ]


# --- energies -----------------------------------------------------------------

def _random_fields(rng, grid, count):
    x = grid.x
    for _ in range(count):
        amp = rng.normal(size=3) + 1j * rng.normal(size=3)
        cen = rng.uniform(-5, 5, size=3)
        wid = rng.uniform(0.3, 2.0, size=3)
        bump = sum(a * np.exp(-((x - c) / w) ** 2) for a, c, w in zip(amp, cen, wid))
        yield GridFunction(grid, np.exp(1j * rng.uniform(0, 2 * np.pi)) + bump)


def check_energy_bounds(tier, seed):
    rng = np.random.default_rng(seed + 1)
    grid = Grid.periodic(40.0, 1024, x0=-20.0)
    lam = 0.7
    p = Params(lam)
    lower = dom = 0
    ratio_lo, ratio_hi = math.inf, 0.0
    for u in _random_fields(rng, grid, 50):
        rep = energy_report(u, p)
        gap = modulus_gap_l2(u)
        lower += int(math.log(2.0) * gap > rep.e_pot_hat)
        bound = lam * _integrate_real(grid, (np.abs(u.values) ** 2 - 1) ** 2)
        dom += int(rep.pot_log > bound * (1 + 1e-12))
        r = equivalence_ratio(u, p)
        ratio_lo, ratio_hi = min(ratio_lo, r), max(ratio_hi, r)
    spread = max(ratio_hi, 1.0 / ratio_lo)
    return [
        Check.make("energy_potential_lower_bound", "ln 2 ||v|-1||^2 <= E_pot(v)", lower, 0),
        Check.make("energy_log_below_cubic", "lambda int F(|u|^2) <= lambda int (|u|^2-1)^2",
                   dom, 0),
        Check.make("energy_equivalence", "both potential energies are equivalent (K_0 = 2)",
                   spread, K0_FROZEN, detail=f"ratio range [{ratio_lo:.4f}, {ratio_hi:.4f}]"),
    ]


# --- profiles -----------------------------------------------------------------

def _black(tier, n=None):
    n = n or tier.n_profile
    return black_soliton(Params(1.0), Grid.centered(tier.length, n))


def check_black_residual(tier, seed):
    ref = "black soliton solves phi'' = lambda phi ln phi^2"
    r1 = stationary_residual(_black(tier))
    r0 = stationary_residual(_black(tier, tier.n_profile // 2))
    order = math.log2(r0 / r1) if r1 > 0 else math.inf
    return [
        Check.make("black_soliton_residual", ref, r1, 1e-6, criterion=1),
        Check.make("black_soliton_residual_order", ref, order, 3.6, ">=", criterion=1,
                   detail=f"residuals {r0:.3e} -> {r1:.3e} when dx is halved"),
    ]


def check_black_energy(tier, seed):
    w = _black(tier)
    lam = w.p.lam
    ident = float(np.max(np.abs(first_integral_residual(w)))) / lam
    rep = energy_report(w.as_gridfunction(), w.p)
    equi = abs(rep.kinetic - rep.pot_log) / rep.total_loggp
    return [
        Check.make("black_soliton_first_integral",
                   "(phi_0')^2 = lambda F(phi_0^2) with no integration constant",
                   ident, 1e-8, criterion=2),
        Check.make("black_soliton_equipartition", "kinetic = potential for the black soliton",
                   equi, 1e-6, criterion=2),
    ]


def check_black_shape(tier, seed):
    lam = 1.0
    dx = tier.length / tier.n_profile
    grid = Grid(-20.0, dx, int(round(40.0 / dx)) + 1, BC.FREE)
    w = black_soliton(Params(lam), grid)
    phi = w.phi.real
    live = np.abs(phi) < 1 - 1e-12
    inc = np.diff(phi)
    nonmono = int(np.count_nonzero(inc[live[:-1] & live[1:]] <= 0)) + int(np.count_nonzero(inc < 0))
    odd = float(np.max(np.abs(phi + phi[::-1])))
    limits = max(abs(phi[0] + 1), abs(phi[-1] - 1))
    rates = []
    for lam_t in (1.0, 2.0):
        wt = black_soliton(Params(lam_t), grid)
        x = grid.x
        sel = (x > 4) & (x < 10)
        slope = -np.polyfit(x[sel], np.log(1 - wt.phi.real[sel]), 1)[0]
        rates.append(float(abs(slope / math.sqrt(2 * lam_t) - 1)))
    ref = "black soliton is odd, increasing, with limits -1 and +1"
    return [
        Check.make("black_soliton_monotone", ref, nonmono, 0, criterion=5),
        Check.make("black_soliton_odd", ref, odd, 1e-12, criterion=5),
        Check.make("black_soliton_limits", ref, limits, 1e-8, criterion=5),
        Check.make("black_soliton_tail_rate", "tail decays like exp(-sqrt(2 lambda) |x|)",
                   max(rates), 0.1, criterion=5, detail="relative errors " + ", ".join(f"{r:.3e}" for r in rates)),
    ]


def check_traveling(tier, seed):
    p = Params(1.0, 1.0)
    w = traveling_wave(p, Grid.centered(tier.length, tier.n_profile))
    # independent root: Brent's method on g_c inside the scan bracket
    y0 = brentq(lambda y: float(g_c(y, p)), 0.3, 0.7, xtol=1e-15, rtol=1e-15)
    ref = "eta = 1 - |phi|^2 satisfies (eta')^2 / 2 = h_c(eta)"
    return [
        Check.make("traveling_eta_identity", ref, eta_identity_residual(w), 1e-7, criterion=3),
        Check.make("traveling_min_modulus", "min |phi_c| = y0", abs(w.rho.min() - y0), 1e-6,
                   criterion=3, detail=f"y0 = {y0!r}"),
        Check.make("traveling_residual", "phi_c solves -i c phi' + phi'' = lambda phi ln|phi|^2",
                   stationary_residual(w), 1e-6),
    ]


# --- evolution ----------------------------------------------------------------

def _black_half_line(lam=1.0):
    return black_soliton(Params(lam), Grid.half_line(40.0, 1025))


def check_black_evolution(tier, seed):
    w = _black_half_line()
    u0 = w.as_gridfunction()
    runs = {}
    for eps in (0.0, 1e-8):
        nl = Nonlinearity.LOG if eps == 0 else Nonlinearity.LOG_REGULARIZED
        cfg = EvolutionConfig(w.p, tier.dt, tier.t_end, eps=eps, nonlinearity=nl, record_every=100)
        runs[eps] = evolve(u0, cfg)
    tr = runs[0.0]
    slope = frequency_probe(tr, w)
    omega = 0.37
    synthetic = type(tr)(
        times=tr.times, energy_series=tr.energy_series, mass_defect_series=tr.mass_defect_series,
        final=tr.final, config=tr.config,
        snapshots=np.array([w.phi * np.exp(1j * omega * t) for t in tr.times]))
    calib = abs(frequency_probe(synthetic, w) - omega)
    h2 = tr.h2_series
    return [
        Check.make("black_soliton_frequency", "stationary waves have zero frequency",
                   abs(slope), 1e-3, criterion=6),
        Check.make("frequency_probe_calibration", "probe recovers an injected rotation rate",
                   calib, 1e-6, criterion=6),
        Check.make("black_soliton_stationary", "black soliton is a stationary solution",
                   l2_distance(tr.final, u0), 1e-4),
        Check.make("black_soliton_energy_drift", "energy is conserved", tr.energy_drift, 1e-4),
        Check.make("black_soliton_energy_drift_regularized", "energy is conserved",
                   runs[1e-8].energy_drift, 1e-6),
        Check.make("black_soliton_h2_bounded", "u - u0 stays bounded in H^2",
                   float(h2.max() / h2[0]), 2.0),
    ]


def check_regularization(tier, seed):
    w = _black_half_line()
    u0 = w.as_gridfunction()
    t_end = min(tier.t_end, 1.0)
    base = evolve(u0, EvolutionConfig(w.p, tier.dt, t_end), keep_snapshots=False).final
    dists = []
    for eps in (1e-6, 1e-8, 1e-10):
        cfg = EvolutionConfig(w.p, tier.dt, t_end, eps=eps, nonlinearity=Nonlinearity.LOG_REGULARIZED)
        dists.append(l2_distance(evolve(u0, cfg, keep_snapshots=False).final, base))
    bad = int(not (dists[0] > dists[1] > dists[2]))
    return [Check.make("regularization_monotone", "regularized flows converge as eps -> 0",
                       bad, 0, detail="distances to eps=0: " + ", ".join(f"{d:.6e}" for d in dists))]


def _bump(grid):
    return GridFunction.from_callable(grid, lambda x: 1.0 + 0.5 * np.exp(-x * x))


def check_bump_conservation(tier, seed):
    p = Params(1.0)
    grid = Grid.periodic(80.0, 2048, x0=-40.0)
    u0 = _bump(grid)
    tr = evolve(u0, EvolutionConfig(p, 1e-3, tier.t_end, record_every=500), keep_snapshots=False)
    cfg = EvolutionConfig(p, 1e-3, 1.0)
    st = SplitStepper(grid, cfg)
    v = st.to_work(u0.values)
    worst = 0.0
    for _ in range(100):
        m0 = np.vdot(v, v).real
        v = st.step(v)
        worst = max(worst, abs(np.vdot(v, v).real - m0) / m0)
    return [
        Check.make("bump_energy_drift", "energy is conserved", tr.energy_drift, 1e-6, criterion=7),
        Check.make("l2_per_step", "both substeps are unitary", worst, 1e-12, criterion=7),
    ]


def check_strang_order(tier, seed):
    p = Params(1.0)
    grid = Grid.periodic(80.0, 1024, x0=-40.0)
    u0 = _bump(grid)

    def run(dt):
        return evolve(u0, EvolutionConfig(p, dt, 1.0, record_every=10**9), keep_snapshots=False).final

    dts = (0.04, 0.02, 0.01)
    ref = run(dts[-1] / 16)
    errs = [l2_distance(run(dt), ref) for dt in dts]
    ratios = [errs[i] / errs[i + 1] for i in range(2)]
    return [Check.make("strang_order", "second-order splitting", max(abs(r - 4) for r in ratios),
                       0.4, criterion=7, detail="ratios " + ", ".join(f"{r:.6f}" for r in ratios))]


def check_stability_echo(tier, seed):
    rng = np.random.default_rng(seed + 2)
    lam = 1.0
    p = Params(lam)
    grid = Grid.periodic(80.0, tier.n_box, x0=-40.0)
    u0 = _bump(grid)
    pert = np.exp(-((grid.x - 1.0) ** 2)) * (rng.normal() + 1j * rng.normal())
    delta = 1e-3
    pert *= delta / l2_distance(pert, 0 * pert, grid)
    v0 = GridFunction(grid, u0.values + pert)
    cfg = EvolutionConfig(p, tier.dt, 1.0, record_every=50)
    a, b = evolve(u0, cfg), evolve(v0, cfg)
    ratio = max(l2_distance(sa, sb, grid) / (delta * math.exp(2 * lam * t))
                for t, sa, sb in zip(a.times, a.snapshots, b.snapshots))
    return [Check.make("stability_echo", "L2 differences grow at most like exp(2 lambda t)",
                       ratio, 1.01)]


def check_gp_dark(tier, seed):
    c, S = 0.5, 40.0
    w = gp_dark_soliton(c, Grid.centered(120.0, 12288))
    dx = 2 * S / tier.n_box
    u0 = make_pair_box(w, S, dx=dx)
    cfg = EvolutionConfig(Params(1.0, c), tier.dt, tier.t_end, nonlinearity=Nonlinearity.CUBIC_GP,
                          record_every=1000)
    tr = evolve(u0, cfg, keep_snapshots=False)
    exact = make_pair_box(w, S, shift=c * tier.t_end, dx=dx)
    return [
        Check.make("gp_dark_soliton_translate", "explicit dark soliton of the cubic equation",
                   l2_distance(tr.final, exact), 1e-4, criterion=8),
        Check.make("gp_dark_soliton_energy_drift", "energy is conserved", tr.energy_drift, 1e-6),
    ]


def check_traveling_evolution(tier, seed):
    c, S = 1.0, 40.0
    p = Params(1.0, c)
    w = traveling_wave(p, Grid.centered(120.0, 12288))
    dx = 2 * S / tier.n_box
    t_end = min(2.0, tier.t_end)
    u0 = make_pair_box(w, S, dx=dx)
    tr = evolve(u0, EvolutionConfig(p, tier.dt, t_end, record_every=100))
    exact = make_pair_box(w, S, shift=c * t_end, dx=dx)
    slope = frequency_probe(tr, lambda t: make_pair_box(w, S, shift=c * t, dx=dx).values)
    return [
        Check.make("traveling_wave_translate", "phi_c(x - c t) solves the equation",
                   l2_distance(tr.final, exact), 1e-3),
        Check.make("traveling_wave_frequency", "traveling waves have zero frequency",
                   abs(slope), 1e-2),
    ]


# --- galerkin -----------------------------------------------------------------

def check_galerkin(tier, seed):
    p = Params(1.0)
    dx = 60.0 / 2048
    grid = Grid.centered(60.0, 2048)
    u0 = _bump(grid)
    box = Grid.periodic(240.0, 8192, x0=-120.0)
    ref = evolve(_bump(box), EvolutionConfig(p, 1e-4, 1.0, record_every=10**9),
                 keep_snapshots=False).final
    i0 = box.index_of(grid.x[0])
    ref_window = ref.values[i0 : i0 + grid.n]
    gaps, drifts, holders, ratios = [], [], [], []
    for m in tier.galerkin_orders:
        dt = 2.5e-4 if m > 32 else 5e-4
        tr = galerkin_evolve(u0, m, EvolutionConfig(p, dt, 1.0, record_every=int(0.05 / dt)))
        drifts.append(tr.energy_drift)
        ratios.append(float(np.max(tr.extras["gradient_norm"]) / tr.extras["gradient_bound"]))
        holders.append(holder_constant(tr))
        gaps.append(math.sqrt(np.sum(np.abs(tr.final.values - ref_window) ** 2) * dx))
    decreasing = int(not all(a > b for a, b in zip(gaps, gaps[1:])))
    sv = np.linalg.svd(galerkin_state(u0, tier.galerkin_orders[-1]).stiffness, compute_uv=False)
    holder_change = abs(holders[-1] - holders[-2]) / holders[-1]
    return [
        Check.make("galerkin_energy", "Galerkin energy is conserved", max(drifts), 1e-8,
                   criterion=9),
        Check.make("galerkin_gradient_bound", "||grad phi_m|| <= 2 sqrt(E(u0))", max(ratios),
                   1.0, criterion=9),
        Check.make("galerkin_cross_solver", "Galerkin approximations converge to the flow",
                   decreasing, 0, criterion=9, detail="L2 gaps " + ", ".join(f"{g:.6e}" for g in gaps)
                   + f" for m = {list(tier.galerkin_orders)}"),
        Check.make("galerkin_holder_stable", "phi_m bounded in C^(0,1/2)(I, L^2)",
                   holder_change, 0.1, detail="constants " + ", ".join(f"{h:.6f}" for h in holders)),
        Check.make("galerkin_stiffness_definite", "basis gradients are linearly independent",
                   float(sv.min()), 1e-12, ">="),
    ]


CHECK_GROUPS = [
    ("roots", check_roots, ["roots_ordered", "gc_hc_identity"]),
    ("threshold", check_threshold,
     ["threshold_subsonic_exist", "threshold_supersonic_rejected", "threshold_hc_no_zero"]),
    ("inequalities", check_inequalities,
     ["fuzz_stability_inequality", "fuzz_lipschitz_inequality", "fuzz_potential_lower",
      "fuzz_potential_upper"]),
    ("energy_bounds", check_energy_bounds,
     ["energy_potential_lower_bound", "energy_log_below_cubic", "energy_equivalence"]),
    ("black_residual", check_black_residual,
     ["black_soliton_residual", "black_soliton_residual_order"]),
    ("black_energy", check_black_energy,
     ["black_soliton_first_integral", "black_soliton_equipartition"]),
    ("black_shape", check_black_shape,
     ["black_soliton_monotone", "black_soliton_odd", "black_soliton_limits",
      "black_soliton_tail_rate"]),
    ("traveling", check_traveling,
     ["traveling_eta_identity", "traveling_min_modulus", "traveling_residual"]),
    ("black_evolution", check_black_evolution,
     ["black_soliton_frequency", "frequency_probe_calibration", "black_soliton_stationary",
      "black_soliton_energy_drift", "black_soliton_energy_drift_regularized",
      "black_soliton_h2_bounded"]),
    ("regularization", check_regularization, ["regularization_monotone"]),
    ("bump_conservation", check_bump_conservation, ["bump_energy_drift", "l2_per_step"]),
    ("strang_order", check_strang_order, ["strang_order"]),
    ("stability_echo", check_stability_echo, ["stability_echo"]),
    ("gp_dark", check_gp_dark, ["gp_dark_soliton_translate", "gp_dark_soliton_energy_drift"]),
    ("traveling_evolution", check_traveling_evolution,
     ["traveling_wave_translate", "traveling_wave_frequency"]),
    ("galerkin", check_galerkin,
     ["galerkin_energy", "galerkin_gradient_bound", "galerkin_cross_solver",
      "galerkin_holder_stable", "galerkin_stiffness_definite"]),
]


def _run_group(args):
    index, tier_name, seed, mutation = args
    name, fn, names = CHECK_GROUPS[index]
    tier = TIERS[tier_name]
    try:
        if mutation:
            with scalars.mutated(mutation):
                return fn(tier, seed)
        return fn(tier, seed)
    except Exception as exc:  # a crashing group is a failed check, not a crash
        msg = "".join(traceback.format_exception_only(type(exc), exc)).strip()
        return [Check.make(n, f"check group '{name}' completed", math.inf, 0.0, detail=msg)
                for n in names]


def run_suite(quick=False, seed=0, mutation=None, workers=1, groups=None) -> VerificationReport:
    """Run the checks (optionally a subset of group names) and collect a report."""
    if mutation is not None and mutation != "fc-sign":
        raise ValueError(f"unknown mutation {mutation!r}")
    tier = TIERS["quick" if quick else "full"]
    indices = [i for i, (name, _, _) in enumerate(CHECK_GROUPS) if groups is None or name in groups]
    jobs = [(i, tier.name, seed, mutation) for i in indices]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_group, jobs))
    else:
        results = [_run_group(j) for j in jobs]
    checks = [c for group in results for c in group]
    env = {
        "resolution": tier.n_profile,
        "box_resolution": tier.n_box,
        "dt": tier.dt,
        "t_end": tier.t_end,
        "lambda": 1.0,
        "c_grid": [0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, math.sqrt(2.0), 1.5, 2.0],
        "fuzz_pairs": tier.fuzz_pairs,
    }
    return VerificationReport(tier.name, seed, mutation, checks, env)
