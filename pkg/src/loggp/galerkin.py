"""Hermite-Galerkin approximation ``u_m = u0 + sum_k g_k(t) w_k``.

The coefficients solve the projected equation
``<w_j, i d_t u_m + u_m'' - lam u_m ln|u_m|^2> = 0`` for ``j <= m``, i.e.

    i g_j' = sum_k S_jk g_k + b_j + lam <w_j, u_m ln|u_m|^2>

with ``S_jk = <w_j', w_k'>`` and ``b_j = <w_j', u0'>`` (the basis is real).
All inner products use the trapezoid weights of the sampling grid, and the
energy is evaluated with the same weights, which makes it an exact invariant
of the semi-discrete system.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .energy import EnergyReport
from .errors import BasisTruncationError, EvolutionError
from .evolution import EvolutionConfig, Trajectory
from .grid import BC, Grid, GridFunction, derivative, quadrature_weights
from .scalars import Params, log_nonlinearity, potential_F

__all__ = [
    "HermiteBasis",
    "GalerkinState",
    "hermite_basis",
    "galerkin_state",
    "galerkin_rhs",
    "galerkin_energy",
    "galerkin_evolve",
    "holder_constant",
]

EDGE_TOL = 1e-12


@dataclass(frozen=True)
class HermiteBasis:
    grid: Grid
    values: np.ndarray  # (m+1, n)
    derivs: np.ndarray  # (m+1, n)

    @property
    def m(self):
        return self.values.shape[0] - 1

    def gram(self):
        w = quadrature_weights(self.grid)
        return (self.values * w) @ self.values.T


def hermite_basis(m: int, grid: Grid) -> HermiteBasis:
    """Orthonormal Hermite functions ``w_0..w_m`` and their derivatives.

    Uses ``w_{k+1} = sqrt(2/(k+1)) x w_k - sqrt(k/(k+1)) w_{k-1}`` and
    ``w_k' = sqrt(k/2) w_{k-1} - sqrt((k+1)/2) w_{k+1}``.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    x = grid.x
    h = np.empty((m + 2, grid.n))
    h[0] = math.pi**-0.25 * np.exp(-0.5 * x * x)
    if m + 1 >= 1:
        h[1] = math.sqrt(2.0) * x * h[0]
    for k in range(1, m + 1):
        h[k + 1] = math.sqrt(2.0 / (k + 1)) * x * h[k] - math.sqrt(k / (k + 1)) * h[k - 1]
    edge = np.abs(h[:, [0, -1]]).max()
    if edge > EDGE_TOL:
        raise BasisTruncationError(
            f"Hermite functions up to order {m + 1} are {edge:.1e} at the window edges; "
            f"need a half-width beyond about {math.sqrt(2 * m + 3) + 6:.1f}"
        )
    d = np.empty((m + 1, grid.n))
    for k in range(m + 1):
        d[k] = -math.sqrt((k + 1) / 2.0) * h[k + 1]
        if k > 0:
            d[k] += math.sqrt(k / 2.0) * h[k - 1]
    return HermiteBasis(grid, h[: m + 1], d)


@dataclass
class GalerkinState:
    m: int
    coeffs: np.ndarray
    basis: np.ndarray
    basis_dx: np.ndarray
    u0: GridFunction
    stiffness: np.ndarray
    forcing: np.ndarray
    weights: np.ndarray
    u0_kinetic: float

    def field(self, coeffs=None) -> np.ndarray:
        g = self.coeffs if coeffs is None else coeffs
        return self.u0.values + g @ self.basis

    def gradient_norm(self, coeffs=None) -> float:
        """``||d_x sum_k g_k w_k||`` computed from the stiffness matrix."""
        g = self.coeffs if coeffs is None else coeffs
        return math.sqrt(max(float(np.real(np.conj(g) @ self.stiffness @ g)), 0.0))


def galerkin_state(u0: GridFunction, m: int, coeffs=None) -> GalerkinState:
    if u0.grid.bc is not BC.FREE:
        raise ValueError("the Galerkin solver samples on a FREE grid")
    hb = hermite_basis(m, u0.grid)
    w = quadrature_weights(u0.grid)
    du0 = derivative(u0, 1).values
    stiffness = (hb.derivs * w) @ hb.derivs.T
    forcing = (hb.derivs * w) @ du0
    return GalerkinState(
        m=m,
        coeffs=np.zeros(m + 1, dtype=complex) if coeffs is None else np.asarray(coeffs, dtype=complex),
        basis=hb.values,
        basis_dx=hb.derivs,
        u0=u0,
        stiffness=stiffness,
        forcing=forcing,
        weights=w,
        u0_kinetic=float(w @ np.abs(du0) ** 2),
    )


def galerkin_rhs(state: GalerkinState, p: Params, coeffs=None) -> np.ndarray:
    """Time derivative of the coefficients."""
    g = state.coeffs if coeffs is None else coeffs
    nl = log_nonlinearity(state.field(g))
    projected = (state.basis * state.weights) @ nl
    return -1j * (state.stiffness @ g + state.forcing + p.lam * projected)


def galerkin_energy(state: GalerkinState, p: Params, coeffs=None) -> EnergyReport:
    """Energy of ``u_m`` with the kinetic part assembled from ``S`` and ``b``."""
    g = state.coeffs if coeffs is None else coeffs
    u = state.field(g)
    kinetic = (
        state.u0_kinetic
        + 2.0 * float(np.real(np.conj(g) @ state.forcing))
        + float(np.real(np.conj(g) @ state.stiffness @ g))
    )
    w = state.weights
    mod2 = np.abs(u) ** 2
    mod = np.sqrt(mod2)
    pot_log = p.lam * float(w @ potential_F(mod2))
    pot_gl = 0.5 * float(w @ (mod2 - 1.0) ** 2)
    e_hat = float(w @ ((mod - 1.0) ** 2 * np.log(2.0 + mod)))
    return EnergyReport(kinetic, pot_log, pot_gl, e_hat, kinetic + pot_log, kinetic + pot_gl)


def galerkin_evolve(u0: GridFunction, m: int, cfg: EvolutionConfig,
                    keep_snapshots=True, bound_rtol=1e-9) -> Trajectory:
    """Integrate the coefficient system by classical Runge-Kutta from
    ``g(0) = 0``.

    Records the energy of ``u_m``, ``||u_m(t) - u0||`` and
    ``||d_x (u_m - u0)||`` (in ``extras["gradient_norm"]``); raises
    :class:`EvolutionError` if the gradient ever exceeds ``2 sqrt(E(u0))``.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    p = cfg.p
    state = galerkin_state(u0, m)
    e0 = galerkin_energy(state, p).total_loggp
    bound = 2.0 * math.sqrt(max(e0, 0.0))
    dt = cfg.dt
    nsteps = cfg.n_steps
    g = state.coeffs.copy()

    times, energies, defects, grads, snaps = [], [], [], [], []

    def record(step):
        times.append(step * dt)
        energies.append(galerkin_energy(state, p, g))
        phi = g @ state.basis
        defects.append(math.sqrt(float(state.weights @ np.abs(phi) ** 2)))
        grad = state.gradient_norm(g)
        grads.append(grad)
        if grad > bound * (1.0 + bound_rtol) + 1e-14:
            raise EvolutionError(step, f"gradient bound violated ({grad:.6e} > {bound:.6e})")
        if keep_snapshots:
            snaps.append(state.u0.values + phi)

    def rhs(c):
        return galerkin_rhs(state, p, c)

    record(0)
    for step in range(1, nsteps + 1):
        k1 = rhs(g)
        k2 = rhs(g + 0.5 * dt * k1)
        k3 = rhs(g + 0.5 * dt * k2)
        k4 = rhs(g + dt * k3)
        g = g + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(g)):
            raise EvolutionError(step, "Galerkin coefficients blew up")
        if step % cfg.record_every == 0 or step == nsteps:
            record(step)
    state.coeffs = g
    return Trajectory(
        times=np.array(times),
        energy_series=energies,
        mass_defect_series=np.array(defects),
        final=GridFunction(u0.grid, state.field(g)),
        config=cfg,
        snapshots=np.array(snaps) if keep_snapshots else None,
        extras={"gradient_norm": np.array(grads), "gradient_bound": bound, "m": m},
    )


def holder_constant(traj: Trajectory) -> float:
    """Smallest ``C`` with ``||u(t) - u(s)|| <= C |t - s|^(1/2)`` over all
    recorded pairs (needs snapshots)."""
    if traj.snapshots is None or len(traj.times) < 2:
        raise ValueError("holder_constant needs at least two snapshots")
    w = quadrature_weights(traj.final.grid)
    snaps = traj.snapshots
    best = 0.0
    for i in range(len(snaps)):
        diff = snaps[i + 1 :] - snaps[i]
        dist = np.sqrt(np.abs(diff) ** 2 @ w)
        gaps = np.sqrt(traj.times[i + 1 :] - traj.times[i])
        if len(dist):
            best = max(best, float(np.max(dist / gaps)))
    return best
