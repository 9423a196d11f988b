"""Strang split-step time integration of the logarithmic and cubic
Gross-Pitaevskii equations on periodic (or odd-reflected) grids.

The kinetic substep is exact in Fourier space, ``u_hat *= exp(-i k^2 dt)``.
The nonlinear substep is exact pointwise because it only rotates the phase:
``u *= exp(-i dt N(|u|^2))`` with ``N = lam ln(|u|^2 + eps)`` or ``|u|^2 - 1``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .energy import EnergyReport, energy_report
from .errors import EvolutionError, GluingError
from .grid import (
    BC,
    Grid,
    GridFunction,
    _integrate_real,
    derivative,
    extended_grid,
    integrate,
    odd_extension,
)
from .profiles import WaveProfile
from .scalars import Params

__all__ = [
    "Nonlinearity",
    "EvolutionConfig",
    "Trajectory",
    "SplitStepper",
    "strang_step",
    "evolve",
    "make_pair_box",
    "frequency_probe",
    "l2_distance",
]

VACUUM_FLOOR = 1e-150


class Nonlinearity(str, enum.Enum):
    LOG = "log"
    LOG_REGULARIZED = "log_regularized"
    CUBIC_GP = "cubic_gp"


@dataclass(frozen=True)
class EvolutionConfig:
    p: Params
    dt: float
    t_end: float
    eps: float = 0.0
    nonlinearity: Nonlinearity = Nonlinearity.LOG
    record_every: int = 100

    def __post_init__(self):
        object.__setattr__(self, "nonlinearity", Nonlinearity(self.nonlinearity))
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if not self.t_end >= self.dt:
            raise ValueError("t_end must be at least dt")
        if self.eps < 0:
            raise ValueError("eps must be nonnegative")
        if self.nonlinearity is Nonlinearity.LOG_REGULARIZED and not self.eps > 0:
            raise ValueError("the regularized nonlinearity needs eps > 0")
        if int(self.record_every) != self.record_every or self.record_every < 1:
            raise ValueError("record_every must be a positive integer")

    @property
    def n_steps(self):
        return max(1, round(self.t_end / self.dt))

    def total_of(self, report: EnergyReport) -> float:
        if self.nonlinearity is Nonlinearity.CUBIC_GP:
            return report.total_gp
        return report.total_loggp

    def as_dict(self):
        return {
            "lambda": self.p.lam,
            "c": self.p.c,
            "dt": self.dt,
            "t_end": self.t_end,
            "eps": self.eps,
            "nonlinearity": self.nonlinearity.value,
            "record_every": self.record_every,
        }


@dataclass
class Trajectory:
    times: np.ndarray
    energy_series: list
    mass_defect_series: np.ndarray
    final: GridFunction
    config: EvolutionConfig
    h2_series: np.ndarray | None = None
    snapshots: np.ndarray | None = None
    extras: dict = field(default_factory=dict)

    def totals(self):
        return np.array([self.config.total_of(e) for e in self.energy_series])

    @property
    def energy_drift(self) -> float:
        """``max_t |E(t) - E(0)| / max(E(0), 1)``."""
        tot = self.totals()
        return float(np.max(np.abs(tot - tot[0])) / max(abs(tot[0]), 1.0))

    def as_dict(self):
        out = {
            "config": self.config.as_dict(),
            "grid": self.final.grid.as_dict(),
            "times": [float(t) for t in self.times],
            "energy": [e.as_dict() for e in self.energy_series],
            "mass_defect": [float(m) for m in self.mass_defect_series],
            "energy_drift": self.energy_drift,
        }
        if self.h2_series is not None:
            out["h2_norm"] = [float(h) for h in self.h2_series]
        for key, val in self.extras.items():
            out[key] = [float(v) for v in np.ravel(val)] if isinstance(val, np.ndarray) else val
        return out


class SplitStepper:
    """Precomputed propagators for one grid and configuration.

    Work arrays live on the periodic grid (the extended one for
    DIRICHLET_ODD data); use :meth:`to_work` and :meth:`from_work`.
    """

    def __init__(self, grid: Grid, cfg: EvolutionConfig):
        if grid.bc is BC.FREE:
            raise ValueError("evolution needs a PERIODIC or DIRICHLET_ODD grid")
        self.grid = grid
        self.cfg = cfg
        self.work_grid = extended_grid(grid) if grid.bc is BC.DIRICHLET_ODD else grid
        k2 = self.work_grid.wavenumbers() ** 2
        self.half_kin = np.exp(-0.5j * cfg.dt * k2)
        self.full_kin = np.exp(-1j * cfg.dt * k2)

    def to_work(self, values):
        if self.grid.bc is BC.DIRICHLET_ODD:
            return odd_extension(values)
        return np.array(values, dtype=complex)

    def from_work(self, work):
        return np.array(work[: self.grid.n])

    def nonlinear(self, v, dt=None):
        dt = self.cfg.dt if dt is None else dt
        cfg = self.cfg
        r2 = v.real**2 + v.imag**2
        if cfg.nonlinearity is Nonlinearity.CUBIC_GP:
            rate = r2 - 1.0
        else:
            eps = cfg.eps
            if eps > 0:
                rate = cfg.p.lam * np.log(r2 + eps)
            else:
                live = r2 > VACUUM_FLOOR**2
                rate = np.where(live, cfg.p.lam * np.log(np.where(live, r2, 1.0)), 0.0)
        return v * np.exp(-1j * dt * rate)

    def kinetic(self, v, propagator):
        return np.fft.ifft(propagator * np.fft.fft(v))

    def step(self, v):
        v = self.kinetic(v, self.half_kin)
        v = self.nonlinear(v)
        return self.kinetic(v, self.half_kin)

    def advance(self, v, nsteps, start_index=0):
        """``nsteps`` Strang steps with adjacent half kinetic steps fused."""
        if nsteps <= 0:
            return v
        v = self.kinetic(v, self.half_kin)
        for i in range(nsteps):
            v = self.nonlinear(v)
            v = self.kinetic(v, self.full_kin if i < nsteps - 1 else self.half_kin)
            if not np.all(np.isfinite(v)):
                raise EvolutionError(start_index + i + 1)
        return v


def strang_step(u: GridFunction, cfg: EvolutionConfig) -> GridFunction:
    """One Strang step: half kinetic, full nonlinear rotation, half kinetic."""
    st = SplitStepper(u.grid, cfg)
    return GridFunction(u.grid, st.from_work(st.step(st.to_work(u.values))))


def l2_distance(a, b, grid: Grid | None = None) -> float:
    if isinstance(a, GridFunction):
        grid = a.grid
        a = a.values
    if isinstance(b, GridFunction):
        b = b.values
    return math.sqrt(_integrate_real(grid, np.abs(np.asarray(a) - np.asarray(b)) ** 2))


def evolve(u0: GridFunction, cfg: EvolutionConfig, keep_snapshots=True) -> Trajectory:
    """Integrate to ``cfg.t_end``, recording energies, ``||u(t) - u0||``,
    ``||u_xx(t)||`` and (optionally) snapshots every ``record_every`` steps."""
    grid = u0.grid
    st = SplitStepper(grid, cfg)
    nsteps = cfg.n_steps
    marks = list(range(0, nsteps, cfg.record_every)) + [nsteps]
    times, energies, defects, h2, snaps = [], [], [], [], []

    def record(step, values):
        gf = GridFunction(grid, values)
        times.append(step * cfg.dt)
        energies.append(energy_report(gf, cfg.p))
        defects.append(l2_distance(gf.values, u0.values, grid))
        h2.append(math.sqrt(_integrate_real(grid, np.abs(derivative(gf, 2).values) ** 2)))
        if keep_snapshots:
            snaps.append(np.array(values))

    work = st.to_work(u0.values)
    record(0, u0.values)
    for prev, nxt in zip(marks[:-1], marks[1:]):
        work = st.advance(work, nxt - prev, start_index=prev)
        record(nxt, st.from_work(work))
    return Trajectory(
        times=np.array(times),
        energy_series=energies,
        mass_defect_series=np.array(defects),
        final=GridFunction(grid, st.from_work(work)),
        config=cfg,
        h2_series=np.array(h2),
        snapshots=np.array(snaps) if keep_snapshots else None,
    )


# --- periodization -----------------------------------------------------------

def _profile_sampler(w: WaveProfile):
    x = w.grid.x
    re = CubicSpline(x, w.phi.real)
    im = CubicSpline(x, w.phi.imag)
    lo, hi = x[0], x[-1]

    def sample(s):
        s = np.clip(s, lo, hi)
        return re(s) + 1j * im(s)

    return sample


def _smoothstep(t):
    t = np.clip(t, 0.0, 1.0)
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t))


def make_pair_box(w: WaveProfile, separation: float, shift: float = 0.0,
                  dx: float | None = None, ramp: float = 0.1, tol: float = 1e-6) -> GridFunction:
    """Periodic composite of ``w`` and its mirror image on ``[-S/2, 3S/2)``.

    The first copy ``w(x - shift)`` sits near 0, the mirrored copy
    ``w(S - x - shift)`` near ``S`` (it travels with velocity ``-c``), so
    phases and moduli match at the gluing points ``x = S/2`` and
    ``x = -S/2 ~ 3S/2``. The copies are blended with a smooth step over
    ``ramp * S`` around each gluing point. Raises :class:`GluingError` if
    ``|u|`` differs from 1 by more than ``tol`` there.
    """
    S = float(separation)
    dx = w.grid.dx if dx is None else dx
    n = int(round(2 * S / dx))
    grid = Grid(-0.5 * S, 2 * S / n, n, BC.PERIODIC)
    x = grid.x
    sample = _profile_sampler(w)
    half = 0.5 * ramp * S

    def a(s):
        return sample(s - shift)

    def b(s):
        return sample(S - s - shift)

    def ramp_weight(left_edge):
        return _smoothstep((x - left_edge) / (2 * half))

    conds = [
        x < -0.5 * S + half,
        x < 0.5 * S - half,
        x < 0.5 * S + half,
        x < 1.5 * S - half,
    ]
    s0, s1, s2 = ramp_weight(-0.5 * S - half), ramp_weight(0.5 * S - half), ramp_weight(1.5 * S - half)
    choices = [
        (1 - s0) * b(x + 2 * S) + s0 * a(x),
        a(x),
        (1 - s1) * a(x) + s1 * b(x),
        b(x),
    ]
    u = np.select(conds, choices, default=(1 - s2) * b(x) + s2 * a(x - 2 * S))
    for xg in (-0.5 * S, 0.5 * S):
        dev = abs(abs(sample(np.array([xg - shift]))[0]) - 1.0)
        dev = max(dev, abs(abs(sample(np.array([S - xg - shift]))[0]) - 1.0))
        if dev > tol:
            raise GluingError(f"|u| deviates from 1 by {dev:.3e} at x = {xg}: separation {S} too small")
    return GridFunction(grid, u)


def frequency_probe(traj: Trajectory, reference) -> float:
    """Least-squares slope of ``arg <u(t), w_t>`` against ``t``.

    ``reference`` is either a callable ``t -> samples`` of the expected
    profile at time ``t``, or a WaveProfile on the trajectory grid that is
    translated spectrally by ``c t`` (periodic grids) or used as is
    (``c = 0``). Requires recorded snapshots.
    """
    if traj.snapshots is None:
        raise ValueError("frequency_probe needs a trajectory with snapshots")
    grid = traj.final.grid
    if callable(reference):
        ref_at = reference
    else:
        w = reference
        c = w.p.c
        if c == 0:
            ref_at = lambda t: w.phi  # noqa: E731
        else:
            if grid.bc is not BC.PERIODIC:
                raise ValueError("translated references need a periodic grid")
            k = grid.wavenumbers()
            what = np.fft.fft(w.phi)
            ref_at = lambda t: np.fft.ifft(what * np.exp(-1j * k * c * t))  # noqa: E731
    phases = []
    for t, snap in zip(traj.times, traj.snapshots):
        ip = integrate(GridFunction(grid, snap * np.conj(ref_at(t))))
        phases.append(np.angle(ip))
    phases = np.unwrap(np.array(phases))
    slope, _ = np.polyfit(traj.times, phases, 1)
    return float(slope)
