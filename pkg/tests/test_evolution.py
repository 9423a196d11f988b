import math

import numpy as np
import pytest

from loggp import (
    BC,
    EvolutionConfig,
    EvolutionError,
    GluingError,
    Grid,
    GridFunction,
    Nonlinearity,
    Params,
    black_soliton,
    evolve,
    frequency_probe,
    l2_distance,
    make_pair_box,
    strang_step,
    traveling_wave,
)
from loggp.evolution import SplitStepper
from loggp.profiles import WaveProfile

from conftest import cached_traveling

P1 = Params(1.0)


def periodic(length=2 * math.pi, n=64):
    return Grid(0.0, length / n, n, BC.PERIODIC)


def cfg(dt=0.01, t_end=0.01, **kw):
    return EvolutionConfig(kw.pop("p", P1), dt, t_end, **kw)


# --- single steps with closed-form answers -------------------------------------

def test_constant_one_is_fixed():
    g = periodic()
    u = GridFunction(g, np.ones(g.n, dtype=complex))
    assert np.max(np.abs(strang_step(u, cfg()).values - 1)) < 1e-15


@pytest.mark.parametrize("r, alpha", [(0.5, 0.0), (2.0, 1.3)])
def test_constant_rotates_at_log_frequency(r, alpha):
    g = periodic()
    dt = 0.01
    u = GridFunction(g, np.full(g.n, r * np.exp(1j * alpha)))
    out = strang_step(u, cfg(dt)).values
    expected = r * np.exp(1j * (alpha - dt * math.log(r * r)))
    assert np.max(np.abs(out - expected)) < 1e-14


@pytest.mark.parametrize("k, amp", [(3, 1.0), (2, 0.7)])
def test_plane_wave_is_exact(k, amp):
    g = periodic()
    lam, dt = 1.5, 0.02
    u0 = amp * np.exp(1j * k * g.x)
    traj = evolve(GridFunction(g, u0), cfg(dt, 1.0, p=Params(lam), record_every=10))
    expected = u0 * np.exp(-1j * (k * k + lam * math.log(amp * amp)) * 1.0)
    assert np.max(np.abs(traj.final.values - expected)) < 1e-12


def test_regularized_constant():
    g = periodic()
    eps = 0.25
    u = GridFunction(g, np.full(g.n, 0.5 + 0j))
    c = cfg(0.1, 0.1, eps=eps, nonlinearity=Nonlinearity.LOG_REGULARIZED)
    expected = 0.5 * np.exp(-1j * 0.1 * math.log(0.25 + eps))
    assert np.max(np.abs(strang_step(u, c).values - expected)) < 1e-15


def test_cubic_constant_is_fixed():
    g = periodic()
    u = GridFunction(g, np.full(g.n, np.exp(0.4j)))
    out = strang_step(u, cfg(nonlinearity=Nonlinearity.CUBIC_GP)).values
    assert np.max(np.abs(out - np.exp(0.4j))) < 1e-15


def test_vacuum_stays_finite():
    g = periodic()
    vals = np.where(np.arange(g.n) % 2 == 0, 0.0, 1.0).astype(complex)
    st = SplitStepper(g, cfg())
    out = st.nonlinear(vals)
    assert np.all(np.isfinite(out)) and np.all(out[::2] == 0)


# --- contracts -----------------------------------------------------------------

def test_free_grid_rejected():
    g = Grid(-1.0, 0.1, 21, BC.FREE)
    with pytest.raises(ValueError, match="PERIODIC or DIRICHLET_ODD"):
        strang_step(GridFunction(g, np.ones(g.n)), cfg())


def test_nan_input_raises():
    g = periodic()
    st = SplitStepper(g, cfg())
    work = st.to_work(np.ones(g.n, dtype=complex))
    work[5] = np.nan
    with pytest.raises(EvolutionError) as info:
        st.advance(work, 3, start_index=7)
    assert info.value.step == 8


@pytest.mark.parametrize(
    "kw",
    [dict(dt=0.0), dict(dt=0.1, t_end=0.01), dict(eps=-1.0),
     dict(nonlinearity="log_regularized"), dict(record_every=0), dict(nonlinearity="bogus")],
)
def test_config_validation(kw):
    args = dict(dt=0.01, t_end=1.0)
    args.update(kw)
    with pytest.raises(ValueError):
        EvolutionConfig(P1, **args)


def test_unitarity_in_l2():
    rng = np.random.default_rng(3)
    g = periodic(20.0, 256)
    u = GridFunction(g, 1 + 0.3 * rng.standard_normal(g.n) + 0.3j * rng.standard_normal(g.n))
    norm0 = l2_distance(u.values, np.zeros(g.n), g)
    out = strang_step(u, cfg(0.01))
    assert l2_distance(out.values, np.zeros(g.n), g) == pytest.approx(norm0, rel=1e-13)


def test_dirichlet_odd_preserves_black_soliton():
    g = Grid.half_line(20.0, 513)
    w = black_soliton(P1, g)
    traj = evolve(GridFunction(g, w.phi), cfg(1e-3, 0.5, record_every=100))
    assert abs(traj.final.values[0]) < 1e-12
    assert traj.mass_defect_series.max() < 1e-3
    assert traj.energy_drift < 1e-5


def test_trajectory_records():
    g = periodic(20.0, 128)
    u = GridFunction(g, np.ones(g.n, dtype=complex) + 0.1 * np.exp(-((g.x - 10) ** 2)))
    traj = evolve(u, cfg(0.01, 0.25, record_every=10))
    assert np.allclose(traj.times, [0.0, 0.1, 0.2, 0.25])
    assert traj.snapshots.shape == (4, g.n)
    assert traj.mass_defect_series[0] == 0
    assert len(traj.h2_series) == 4
    d = traj.as_dict()
    assert d["config"]["dt"] == 0.01 and len(d["energy"]) == 4
    assert evolve(u, cfg(0.01, 0.25, record_every=10), keep_snapshots=False).snapshots is None


def test_split_step_matches_reference_on_smooth_data():
    # halving dt reduces the error against a fine-step reference about fourfold
    g = periodic(20.0, 256)
    u = GridFunction(g, (1 + 0.2 * np.exp(-((g.x - 10) ** 2))).astype(complex))
    ref = evolve(u, cfg(1e-4, 0.2, record_every=2000), keep_snapshots=False).final
    errs = [l2_distance(evolve(u, cfg(dt, 0.2, record_every=1000), keep_snapshots=False).final, ref)
            for dt in (0.02, 0.01)]
    assert math.log2(errs[0] / errs[1]) == pytest.approx(2.0, abs=0.15)


# --- periodization -------------------------------------------------------------

def test_pair_box_too_small():
    with pytest.raises(GluingError, match="too small"):
        make_pair_box(cached_traveling(), 2.0)


def test_pair_box_of_constant():
    g = Grid.centered(40.0, 1024)
    w = WaveProfile(g, np.ones(g.n, dtype=complex), np.ones(g.n), np.zeros(g.n), Params(1.0, 1.0))
    box = make_pair_box(w, 30.0)
    assert box.grid.bc is BC.PERIODIC and box.grid.x0 == -15.0
    assert np.max(np.abs(box.values - 1)) < 1e-14


def test_black_pair_box():
    w = black_soliton(P1, Grid.centered(40.0, 2048))
    box = make_pair_box(w, 30.0)
    x = box.grid.x
    edge = np.abs(np.abs(x) - 15.0) < 1.0
    assert np.max(np.abs(np.abs(box.values[edge]) - 1)) < 1e-8
    j0 = box.grid.index_of(0.0)
    assert box.values[j0] == 0
    # mirror image: u(S - x) = u(x) holds for the real odd profile
    assert np.allclose(box.values[j0 + 1 : j0 + 200], box.values[j0 + 1536 - 1 : j0 + 1536 - 200 : -1])


def test_traveling_pair_box_is_glued_smoothly():
    w = traveling_wave(Params(1.0, 1.0), Grid.centered(80.0, 4096))
    box = make_pair_box(w, 40.0)
    assert np.max(np.abs(np.diff(box.values))) < 0.02
    assert box.grid.n == 2 * 40.0 / w.grid.dx


# --- probes --------------------------------------------------------------------

def test_frequency_probe_calibration():
    g = periodic(20.0, 128)
    omega = 0.37
    w = WaveProfile(g, np.ones(g.n, dtype=complex), np.ones(g.n), np.zeros(g.n), P1)
    c = cfg(0.01, 1.0, record_every=10)
    times = np.linspace(0, 1, 11)
    snaps = np.array([np.exp(-1j * omega * t) * np.ones(g.n) for t in times])
    traj = evolve(GridFunction(g, np.ones(g.n, dtype=complex)), c)
    traj.times, traj.snapshots = times, snaps
    assert frequency_probe(traj, w) == pytest.approx(-omega, abs=1e-14)
    assert frequency_probe(traj, lambda t: np.ones(g.n)) == pytest.approx(-omega, abs=1e-14)


def test_frequency_probe_needs_snapshots():
    g = periodic()
    traj = evolve(GridFunction(g, np.ones(g.n, dtype=complex)), cfg(), keep_snapshots=False)
    with pytest.raises(ValueError):
        frequency_probe(traj, lambda t: np.ones(g.n))


def test_black_soliton_has_zero_frequency():
    g = Grid.half_line(20.0, 513)
    w = black_soliton(P1, g)
    traj = evolve(GridFunction(g, w.phi), cfg(1e-3, 0.5, record_every=50))
    assert abs(frequency_probe(traj, w)) < 1e-5


@pytest.mark.slow
def test_traveling_wave_pair_translates():
    w = traveling_wave(Params(1.0, 1.0), Grid.centered(80.0, 4096))
    box = make_pair_box(w, 40.0)
    traj = evolve(box, cfg(1e-3, 0.5, record_every=100))
    # the first copy moves right, its mirror image left
    shifted = make_pair_box(w, 40.0, shift=0.5).values
    assert l2_distance(traj.final.values, shifted, box.grid) < 1e-5
    assert traj.energy_drift < 1e-6
