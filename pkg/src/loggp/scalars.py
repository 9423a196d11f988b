"""Scalar building blocks: the log potential, the nonlinearity and the
auxiliary functions governing one-dimensional traveling waves.

All array-valued functions accept scalars or numpy arrays and broadcast.
"""
from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoInteriorRoot, VelocityAboveThreshold

__all__ = [
    "Params",
    "CriticalPoints",
    "potential_F",
    "log_nonlinearity",
    "f_c",
    "f_c_prime",
    "g_c",
    "h_c",
    "bisect",
    "find_critical_points",
    "mutated",
]

ROOT_TOL = 1e-12
SCAN_POINTS = 10_000
_SERIES_RADIUS = 1e-3
_TINY = 1e-300

# fault injection for the verification harness; 1.0 in normal operation
_fc_sign = 1.0


@contextlib.contextmanager
def mutated(name):
    """Temporarily inject a known fault (only ``"fc-sign"`` is supported)."""
    global _fc_sign
    if name != "fc-sign":
        raise ValueError(f"unknown mutation {name!r}")
    _fc_sign = -1.0
    try:
        yield
    finally:
        _fc_sign = 1.0


@dataclass(frozen=True)
class Params:
    """Nonlinearity strength ``lam`` (> 0) and frame velocity ``c``."""

    lam: float = 1.0
    c: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise DomainError(f"lambda must be positive and finite, got {self.lam!r}")
        if not math.isfinite(self.c):
            raise DomainError(f"c must be finite, got {self.c!r}")

    @property
    def subsonic(self) -> bool:
        """True when non-constant traveling waves exist (``c**2 < 2 lam``)."""
        return self.c * self.c < 2.0 * self.lam


@dataclass(frozen=True)
class CriticalPoints:
    """Interior roots of ``g_c`` (y0), ``f_c`` (y1) and ``f_c'`` (y2)."""

    y0: float
    y1: float
    y2: float

    def as_dict(self):
        return {"y0": float(self.y0), "y1": float(self.y1), "y2": float(self.y2)}


def potential_F(y):
    """``F(y) = y ln y - y + 1`` with ``F(0) = 1``.

    Evaluated as ``(1+d) log1p(d) - d`` with ``d = y - 1`` for ``|d| < 1/2``
    and by its Taylor series close to ``y = 1``, so that the double zero at 1
    keeps full relative accuracy.
    """
    y = np.asarray(y, dtype=float)
    if np.any(y < 0) or np.any(np.isnan(y)):
        raise DomainError("potential_F is defined on [0, inf)")
    d = y - 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        # log1p keeps relative accuracy near 1; plain log avoids y - 1 == -1
        logs = np.where(np.abs(d) < 0.5, np.log1p(d), np.log(np.where(y > 0, y, 1.0)))
        direct = y * logs - d
    small = np.abs(d) < _SERIES_RADIUS
    series = np.zeros_like(d)
    power = d * d
    for k in range(2, 10):
        series = series + (-1) ** k * power / (k * (k - 1))
        power = power * d
    out = np.where(small, series, direct)
    out = np.where(y < _TINY, 1.0, out)
    out = np.maximum(out, 0.0)
    return out[()] if out.ndim == 0 else out


def _F_scalar(y):
    # math-only twin of potential_F for the ODE inner loops
    if y < _TINY:
        return 1.0
    d = y - 1.0
    if abs(d) < _SERIES_RADIUS:
        s, power = 0.0, d * d
        for k in range(2, 10):
            s += (-1) ** k * power / (k * (k - 1))
            power *= d
        return max(s, 0.0)
    logy = math.log1p(d) if abs(d) < 0.5 else math.log(y)
    return max(y * logy - d, 0.0)


def log_nonlinearity(z, eps=0.0):
    """``z ln(|z|^2 + eps)``, extended by 0 at ``z = 0`` when ``eps = 0``."""
    if eps < 0:
        raise DomainError("eps must be nonnegative")
    z = np.asarray(z, dtype=complex)
    r2 = z.real**2 + z.imag**2 + eps
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(r2 > 0, z * np.log(np.where(r2 > 0, r2, 1.0)), 0.0)
    return out[()] if out.ndim == 0 else out


def _require_positive(y, name):
    y = np.asarray(y, dtype=float)
    if np.any(~(y > 0)):
        raise DomainError(f"{name} requires y > 0")
    return y


def f_c(y, p: Params):
    """Right-hand side of the modulus equation ``rho'' = f_c(rho)``."""
    y = _require_positive(y, "f_c")
    c2 = p.c * p.c
    out = _fc_sign * (0.25 * c2 * (1.0 / y**3 - y) + p.lam * y * np.log(y * y))
    return out[()] if np.ndim(out) == 0 else out


def f_c_prime(y, p: Params):
    y = _require_positive(y, "f_c_prime")
    c2 = p.c * p.c
    out = 0.25 * c2 * (-3.0 / y**4 - 1.0) + 2.0 * p.lam * np.log(y) + 2.0 * p.lam
    return out[()] if np.ndim(out) == 0 else out


def g_c(y, p: Params):
    """First integral of the modulus equation: ``(rho')**2 = g_c(rho)``."""
    y = _require_positive(y, "g_c")
    c2 = p.c * p.c
    out = -0.25 * c2 * (1.0 - y * y) ** 2 / (y * y) + p.lam * potential_F(y * y)
    return out[()] if np.ndim(out) == 0 else out


def h_c(y, p: Params):
    """First integral for ``eta = 1 - |phi|**2``: ``(eta')**2 / 2 = h_c(eta)``.

    At ``y = 1`` this takes its continuous value ``-c**2 / 2``.
    """
    y = np.asarray(y, dtype=float)
    out = p.lam * potential_F((1.0 - y) ** 2) - 0.5 * (2.0 * p.lam + p.c * p.c) * y * y
    return out[()] if np.ndim(out) == 0 else out


def bisect(fun, a, b, xtol=ROOT_TOL, maxiter=200):
    """Bracketing bisection; ``fun(a)`` and ``fun(b)`` must differ in sign.

    ``xtol=0`` runs until the bracket cannot shrink in double precision.
    """
    fa, fb = fun(a), fun(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if (fa > 0) == (fb > 0):
        raise NoInteriorRoot(f"no sign change on [{a}, {b}]")
    for _ in range(maxiter):
        mid = 0.5 * (a + b)
        if b - a <= xtol or mid == a or mid == b:
            break
        fm = fun(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


def _sign_changes(values):
    s = np.sign(values)
    return np.nonzero(s[:-1] * s[1:] < 0)[0]


def find_critical_points(p: Params, xtol=ROOT_TOL) -> CriticalPoints:
    """Locate ``0 < y0 < y1 < y2 < 1`` for ``0 < c**2 < 2 lam``.

    A uniform scan brackets each root, bisection refines it, and the sign
    pattern of ``f_c`` and ``g_c`` on the scan grid is checked.
    """
    if not p.subsonic:
        raise VelocityAboveThreshold(p.c, p.lam)
    if p.c == 0:
        raise NoInteriorRoot("g_0 > 0 on (0, 1): no interior zero y0 when c = 0")
    ys = np.linspace(1e-6, 1 - 1e-6, SCAN_POINTS)

    def refine(fun, label, lo=None):
        vals = fun(ys)
        idx = _sign_changes(vals)
        if lo is not None:
            idx = idx[ys[idx] >= lo]
        if len(idx) != 1:
            raise NoInteriorRoot(f"expected one sign change of {label}, found {len(idx)}")
        i = idx[0]
        return bisect(lambda y: float(fun(y)), ys[i], ys[i + 1], xtol=xtol)

    y0 = refine(lambda y: g_c(y, p), "g_c")
    y1 = refine(lambda y: f_c(y, p), "f_c")
    y2 = refine(lambda y: f_c_prime(y, p), "f_c'")
    if not 0 < y0 < y1 < y2 < 1:
        raise NoInteriorRoot(f"root ordering violated: y0={y0}, y1={y1}, y2={y2}")
    fv, gv = f_c(ys, p), g_c(ys, p)
    if np.any(fv[ys < y1 - 1e-9] <= 0) or np.any(fv[ys > y1 + 1e-9] >= 0):
        raise NoInteriorRoot("f_c sign pattern differs from (+ on (0,y1), - on (y1,1))")
    if np.any(gv[ys < y0 - 1e-9] >= 0) or np.any(gv[ys > y0 + 1e-9] <= 0):
        raise NoInteriorRoot("g_c sign pattern differs from (- on (0,y0), + on (y0,1))")
    return CriticalPoints(y0, y1, y2)
