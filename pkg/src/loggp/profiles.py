"""Solitary and traveling wave profiles in one space dimension.

A traveling wave ``u(t, x) = phi(x - c t)`` of ``i u_t + u_xx = lam u ln|u|^2``
solves ``-i c phi' + phi'' = lam phi ln|phi|^2``. For ``c = 0`` the profile is
the real, odd, increasing black soliton; for ``0 < c**2 < 2 lam`` it is a dark
soliton ``rho e^{i theta}`` whose modulus dips to ``y0 > 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import scalars
from .errors import DomainError, VelocityAboveThreshold, WrongBranch
from .grid import BC, Grid, GridFunction, _CENTRAL, odd_extension
from .scalars import Params, _F_scalar, find_critical_points

__all__ = [
    "WaveProfile",
    "black_soliton",
    "traveling_modulus",
    "traveling_phase",
    "traveling_wave",
    "gp_dark_soliton",
    "stationary_residual",
    "eta_identity_residual",
    "first_integral_residual",
]

SUBSTEPS = 8
SATURATION = 1e-13


@dataclass(frozen=True)
class WaveProfile:
    grid: Grid
    phi: np.ndarray
    rho: np.ndarray
    theta: np.ndarray
    p: Params
    y0: float | None = None
    theta0: float = 0.0
    x_shift: float = 0.0
    omega: float = 0.0
    nonlinearity: str = "log"
    extras: dict = field(default_factory=dict, compare=False)

    @property
    def eta(self):
        return 1.0 - self.rho**2

    @property
    def x(self):
        return self.grid.x

    def as_gridfunction(self) -> GridFunction:
        return GridFunction(self.grid, self.phi)

    @property
    def phase_winding(self) -> float:
        return float(self.theta[-1] - self.theta[0]) if self.y0 is not None else 0.0


def _rk4_step(rhs, y, h):
    k1 = rhs(y)
    k2 = rhs([a + 0.5 * h * b for a, b in zip(y, k1)])
    k3 = rhs([a + 0.5 * h * b for a, b in zip(y, k2)])
    k4 = rhs([a + h * b for a, b in zip(y, k3)])
    return [a + h / 6.0 * (b + 2 * c + 2 * d + e) for a, b, c, d, e in zip(y, k1, k2, k3, k4)]


def _march(rhs, y, start, nodes, dx, switch=None):
    """Integrate from ``start`` through increasing ``nodes`` with substeps of
    at most ``dx / SUBSTEPS``. ``switch(y)`` may return a replacement
    ``(rhs, y)`` pair, or ``"stop"`` to freeze the state from then on."""
    out = []
    x = start
    frozen = False
    for node in nodes:
        if not frozen:
            gap = node - x
            k = max(1, math.ceil(SUBSTEPS * gap / dx - 1e-9)) if gap > 0 else 0
            for _ in range(k):
                y = _rk4_step(rhs, y, gap / k)
            if not all(map(math.isfinite, y)):
                raise FloatingPointError(f"profile integration diverged near x = {node}")
            x = node
            if switch is not None:
                action = switch(y)
                if action == "stop":
                    frozen = True
                elif action is not None:
                    rhs, y = action
        out.append(list(y))
    return out


def _mirror_nodes(grid: Grid):
    x = grid.x
    ax = np.abs(x)
    uniq, inverse = np.unique(ax, return_inverse=True)
    return x, uniq, inverse


def _phase_field(phi, theta0):
    return np.where(np.abs(phi) > 0, np.angle(phi * np.exp(-1j * theta0)) + theta0, theta0)


def black_soliton(p: Params, grid: Grid, theta0: float = 0.0) -> WaveProfile:
    """Stationary odd profile with ``phi' = sqrt(lam F(phi^2))``, ``phi(0) = 0``.

    Integrated from 0 outward by classical Runge-Kutta with steps of at most
    ``dx/8``; once ``1 - phi < 1e-13`` the remaining tail is set to 1.
    """
    sl = math.sqrt(p.lam)

    def rhs(y):
        v = min(y[0] * y[0], 1.0)
        return [sl * math.sqrt(_F_scalar(v))]

    def saturate(y):
        if 1.0 - y[0] < SATURATION:
            y[0] = 1.0
            return "stop"
        return None

    x, uniq, inverse = _mirror_nodes(grid)
    pos = [u for u in uniq if u > 0]
    vals = _march(rhs, [0.0], 0.0, pos, grid.dx, switch=saturate)
    table = np.array(([0.0] if uniq[0] == 0 else []) + [v[0] for v in vals])
    phi_real = np.sign(x) * table[inverse]
    phi = phi_real * np.exp(1j * theta0)
    rho = np.abs(phi_real)
    theta = np.where(x < 0, theta0 + math.pi, theta0)
    return WaveProfile(grid, phi, rho, theta, p, y0=None, theta0=theta0)


def traveling_modulus(p: Params, grid: Grid, roots=None) -> np.ndarray:
    """Even modulus ``rho_c`` with ``rho'' = f_c(rho)``, ``rho(0) = y0``,
    ``rho'(0) = 0``.

    The second-order system is integrated up to the inflection level ``y1``;
    beyond it the stable first-order form ``rho' = sqrt(g_c(rho))`` takes
    over, since the second-order flow is a saddle at ``rho = 1`` and would
    amplify round-off exponentially in the tails.
    """
    if p.c == 0:
        raise WrongBranch("c = 0: use black_soliton")
    if not p.subsonic:
        raise VelocityAboveThreshold(p.c, p.lam)
    cp = roots or find_critical_points(p, xtol=0.0)
    lam, q = p.lam, 0.25 * p.c * p.c
    sign = scalars._fc_sign

    def fc(r):
        return sign * (q * (1.0 / r**3 - r) + lam * r * math.log(r * r))

    def gc(r):
        return -q * (1.0 - r * r) ** 2 / (r * r) + lam * _F_scalar(r * r)

    def rhs2(y):
        if y[0] <= 0:
            raise FloatingPointError("modulus reached zero")
        return [y[1], fc(y[0])]

    def rhs1(y):
        r = min(y[0], 1.0)
        return [math.sqrt(max(gc(r), 0.0)), 0.0]

    state = {"first_order": False}

    def switch(y):
        if not 0 < y[0] <= 1.0 + 1e-12:
            raise FloatingPointError(f"modulus left (0, 1]: rho = {y[0]}")
        if state["first_order"]:
            if 1.0 - y[0] < SATURATION:
                y[0] = 1.0
                return "stop"
            return None
        if y[0] >= cp.y1 and y[1] > 0:
            state["first_order"] = True
            return rhs1, [y[0], 0.0]
        return None

    x, uniq, inverse = _mirror_nodes(grid)
    pos = [u for u in uniq if u > 0]
    vals = _march(rhs2, [cp.y0, 0.0], 0.0, pos, grid.dx, switch=switch)
    table = np.array(([cp.y0] if uniq[0] == 0 else []) + [v[0] for v in vals])
    return table[inverse]


def traveling_phase(rho: GridFunction, p: Params, theta0: float = 0.0) -> np.ndarray:
    """Phase with ``theta' = (c/2)(1 - 1/rho^2)`` and ``theta(0) = theta0``.

    Cumulative trapezoid quadrature outward from the node at 0, with the
    Euler-Maclaurin end correction ``-(h^2/12)(g'(x) - g'(0))`` that makes it
    fourth order.
    """
    r = np.asarray(rho.values.real, dtype=float)
    if np.any(r <= 0):
        raise DomainError("traveling_phase needs a modulus bounded away from 0")
    grid = rho.grid
    integrand = 0.5 * p.c * (1.0 - 1.0 / r**2)
    if p.c == 0:
        return np.full(grid.n, float(theta0))
    dg = np.gradient(integrand, grid.dx, edge_order=2)
    interior = slice(2, -2)
    dg[interior] = sum(_CENTRAL[1][i] * integrand[i : grid.n - 4 + i] for i in range(5)) / grid.dx
    j0 = grid.index_of(0.0)
    h = grid.dx
    trap = np.concatenate([[0.0], np.cumsum(0.5 * h * (integrand[1:] + integrand[:-1]))])
    trap -= trap[j0]
    corr = -(h * h / 12.0) * (dg - dg[j0])
    return theta0 + trap + corr


def traveling_wave(p: Params, grid: Grid, theta0: float = 0.0) -> WaveProfile:
    """Traveling wave of speed ``c``; ``c = 0`` gives the black soliton."""
    if not p.subsonic:
        raise VelocityAboveThreshold(p.c, p.lam)
    if p.c == 0:
        return black_soliton(p, grid, theta0)
    cp = find_critical_points(p, xtol=0.0)
    rho = traveling_modulus(p, grid, roots=cp)
    theta = traveling_phase(GridFunction(grid, rho), p, theta0)
    phi = rho * np.exp(1j * theta)
    return WaveProfile(grid, phi, rho, theta, p, y0=cp.y0, theta0=theta0,
                       extras={"y1": cp.y1, "y2": cp.y2})


def gp_dark_soliton(c: float, grid: Grid) -> WaveProfile:
    """Closed-form dark soliton of the cubic equation ``i u_t + u_xx = (|u|^2-1) u``."""
    if c * c >= 2.0:
        raise VelocityAboveThreshold(c, 1.0)
    a = math.sqrt(1.0 - 0.5 * c * c)
    x = grid.x
    phi = a * np.tanh(a * x / math.sqrt(2.0)) + 1j * c / math.sqrt(2.0)
    rho = np.abs(phi)
    theta = _phase_field(phi, 0.0)
    return WaveProfile(grid, phi, rho, theta, Params(1.0, c),
                       y0=abs(c) / math.sqrt(2.0) if c else None, nonlinearity="cubic")


def _centered_stencil_values(values, grid: Grid):
    """Samples padded so that every returned point has two neighbours on each
    side; returns ``(padded, slice_of_points)``."""
    if grid.bc is BC.PERIODIC:
        return np.concatenate([values[-2:], values, values[:2]]), slice(0, grid.n)
    if grid.bc is BC.DIRICHLET_ODD:
        ext = odd_extension(values)
        return np.concatenate([ext[-2:], ext[: grid.n + 2]]), slice(0, grid.n)
    return values, slice(2, grid.n - 2)


def _fd(values, grid, order):
    padded, pts = _centered_stencil_values(np.asarray(values, dtype=complex), grid)
    m = len(padded)
    w = _CENTRAL[order]
    d = sum(w[i] * padded[i : m - 4 + i] for i in range(5)) / grid.dx**order
    if grid.bc is BC.FREE:
        return d, pts
    return d, slice(0, grid.n)


def stationary_residual(w: WaveProfile, region=None) -> float:
    """Max of ``|-i c phi' + phi'' - N(phi)|`` over interior nodes, with
    fourth-order centred differences (``N`` the log or cubic nonlinearity).

    ``region`` optionally restricts the maximum to a boolean mask over grid
    nodes (used for diagnostics only).
    """
    grid = w.grid
    d1, pts = _fd(w.phi, grid, 1)
    d2, _ = _fd(w.phi, grid, 2)
    phi = np.asarray(w.phi)[pts]
    if w.nonlinearity == "cubic":
        nl = (np.abs(phi) ** 2 - 1.0) * phi
    else:
        nl = w.p.lam * scalars.log_nonlinearity(phi)
    res = np.abs(-1j * w.p.c * d1 + d2 - nl)
    if region is not None:
        res = res[np.asarray(region)[pts]]
    return float(res.max())


def first_integral_residual(w: WaveProfile) -> np.ndarray:
    """``(phi')^2 - lam F(phi^2)`` for the black soliton, per interior node."""
    d1, pts = _fd(w.phi, w.grid, 1)
    phi = np.asarray(w.phi)[pts]
    return np.abs(d1) ** 2 - w.p.lam * scalars.potential_F(np.abs(phi) ** 2)


def eta_identity_residual(w: WaveProfile) -> float:
    """Max of ``|(eta')^2/2 - h_c(eta)|`` over interior nodes."""
    eta = w.eta
    d1, pts = _fd(eta, w.grid, 1)
    return float(np.max(np.abs(0.5 * d1.real**2 - scalars.h_c(eta[pts], w.p))))
