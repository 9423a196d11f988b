"""Uniform one-dimensional grids, sampled complex fields and discrete calculus.

Three boundary treatments are supported:

``PERIODIC``
    samples ``x0 + j*dx`` for ``j < n`` on a box of length ``n*dx``;
    derivatives are spectral.
``DIRICHLET_ODD``
    samples on ``[0, L]`` including both ends, for fields that are odd about
    ``x = 0`` and flat at ``x = L``. The field is extended oddly about 0 and
    evenly about ``L`` to a periodic sequence of length ``4*(n-1)``, where
    derivatives are spectral.
``FREE``
    no boundary information; fourth-order finite differences with one-sided
    stencils at the two outermost points of each edge.
"""
from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CsvFormatError

__all__ = [
    "BC",
    "Grid",
    "GridFunction",
    "fd_weights",
    "derivative",
    "integrate",
    "quadrature_weights",
    "odd_extension",
    "restrict_extension",
    "write_csv",
    "read_csv",
]


class BC(str, enum.Enum):
    PERIODIC = "periodic"
    DIRICHLET_ODD = "dirichlet_odd"
    FREE = "free"


@dataclass(frozen=True)
class Grid:
    x0: float
    dx: float
    n: int
    bc: BC = BC.FREE

    def __post_init__(self):
        object.__setattr__(self, "bc", BC(self.bc))
        if not (self.dx > 0 and math.isfinite(self.dx)):
            raise ValueError(f"dx must be positive, got {self.dx!r}")
        if int(self.n) != self.n or self.n < 8:
            raise ValueError(f"need at least 8 samples, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if self.bc is BC.DIRICHLET_ODD and self.x0 != 0:
            raise ValueError("DIRICHLET_ODD grids start at x = 0")

    @classmethod
    def centered(cls, length, n, bc=BC.FREE):
        """``n`` nodes with spacing ``length/n`` and a node at ``x = 0``."""
        dx = length / n
        return cls(-(n // 2) * dx, dx, n, bc)

    @classmethod
    def periodic(cls, length, n, x0=None):
        dx = length / n
        return cls(-(n // 2) * dx if x0 is None else x0, dx, n, BC.PERIODIC)

    @classmethod
    def half_line(cls, length, n):
        """DIRICHLET_ODD grid on ``[0, length]`` with both ends sampled."""
        return cls(0.0, length / (n - 1), n, BC.DIRICHLET_ODD)

    @property
    def x(self):
        return self.x0 + self.dx * np.arange(self.n)

    @property
    def length(self):
        if self.bc is BC.PERIODIC:
            return self.n * self.dx
        return (self.n - 1) * self.dx

    def index_of(self, x, tol=1e-9):
        """Index of the node at ``x``; raises if ``x`` is not a node."""
        j = round((x - self.x0) / self.dx)
        if not 0 <= j < self.n or abs(self.x0 + j * self.dx - x) > tol * self.dx:
            raise ValueError(f"x = {x} is not a grid node")
        return j

    def wavenumbers(self):
        return 2 * np.pi * np.fft.fftfreq(self.n, d=self.dx)

    def as_dict(self):
        return {"x0": self.x0, "dx": self.dx, "n": self.n, "bc": self.bc.value}


@dataclass(frozen=True)
class GridFunction:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} samples, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("grid function samples must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, grid, fun):
        return cls(grid, fun(grid.x))

    @property
    def x(self):
        return self.grid.x

    def __len__(self):
        return self.grid.n

    def with_values(self, values):
        return GridFunction(self.grid, values)


def fd_weights(offsets, order):
    """Finite-difference weights for the ``order``-th derivative at 0 from
    samples at integer ``offsets`` (unit spacing), exact for polynomials of
    degree ``len(offsets) - 1``."""
    offsets = np.asarray(offsets, dtype=float)
    k = len(offsets)
    vander = np.vander(offsets, k, increasing=True).T
    rhs = np.zeros(k)
    rhs[order] = math.factorial(order)
    return np.linalg.solve(vander, rhs)


_CENTRAL = {1: fd_weights([-2, -1, 0, 1, 2], 1), 2: fd_weights([-2, -1, 0, 1, 2], 2)}


def _fd_free(v, dx, order):
    n = len(v)
    out = np.empty_like(v)
    w = _CENTRAL[order]
    out[2:-2] = sum(w[i] * v[i : n - 4 + i] for i in range(5))
    width = 5 if order == 1 else 6
    for j in (0, 1):
        wl = fd_weights(np.arange(width) - j, order)
        out[j] = wl @ v[:width]
        out[n - 1 - j] = wl[::-1] @ v[n - width :] * (-1) ** order
    return out / dx**order


def _spectral(v, k, order):
    vh = np.fft.fft(v)
    if order == 1:
        mult = 1j * k
        if len(v) % 2 == 0:
            mult[len(v) // 2] = 0.0
    else:
        mult = -(k**2)
    return np.fft.ifft(mult * vh)


def odd_extension(values):
    """Periodic extension of half-line samples: odd about 0, even about L.

    The sample at ``x = 0`` is treated as 0. Returns ``4*(n-1)`` samples.
    """
    v = np.asarray(values, dtype=complex)
    half = np.concatenate([v, v[-2:0:-1]])
    half[0] = 0.0
    return np.concatenate([half, -half])


def restrict_extension(ext, n):
    return np.asarray(ext)[:n]


def extended_grid(grid: Grid) -> Grid:
    """Periodic grid carrying :func:`odd_extension` samples (starts at 0)."""
    return Grid(0.0, grid.dx, 4 * (grid.n - 1), BC.PERIODIC)


def derivative(gf: GridFunction, order: int = 1) -> GridFunction:
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    g = gf.grid
    if g.bc is BC.PERIODIC:
        out = _spectral(gf.values, g.wavenumbers(), order)
    elif g.bc is BC.DIRICHLET_ODD:
        eg = extended_grid(g)
        out = _spectral(odd_extension(gf.values), eg.wavenumbers(), order)[: g.n]
    else:
        out = _fd_free(gf.values, g.dx, order)
    return GridFunction(g, out)


def quadrature_weights(grid: Grid):
    w = np.full(grid.n, grid.dx)
    if grid.bc is not BC.PERIODIC:
        w[0] = w[-1] = 0.5 * grid.dx
    return w


def integrate(gf) -> complex:
    """Trapezoid rule (rectangle rule on periodic grids) over the samples."""
    return complex(quadrature_weights(gf.grid) @ gf.values)


def _integrate_real(grid, values):
    return float(quadrature_weights(grid) @ values)


# --- CSV ---------------------------------------------------------------------

def _fmt(v):
    return format(float(v), ".17g")


def write_csv(path, obj):
    """Write a GridFunction (``x,re,im``) or WaveProfile (``+ rho,theta``)."""
    from .profiles import WaveProfile  # noqa: PLC0415  (circular at import time)

    path = Path(path)
    if isinstance(obj, WaveProfile):
        grid, values = obj.grid, obj.phi
        extra = [obj.rho, obj.theta]
        header = ["x", "re", "im", "rho", "theta"]
    else:
        grid, values, extra = obj.grid, obj.values, []
        header = ["x", "re", "im"]
    x = grid.x
    with path.open("w", newline="") as fh:
        fh.write(f"# grid x0={_fmt(grid.x0)} dx={_fmt(grid.dx)} n={grid.n} bc={grid.bc.value}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for j in range(grid.n):
            row = [x[j], values[j].real, values[j].imag] + [col[j] for col in extra]
            writer.writerow([_fmt(v) for v in row])
    return path


def read_csv(path, bc=None) -> GridFunction:
    """Read ``x,re,im[,...]`` into a GridFunction.

    The grid is taken from the ``# grid`` comment when present, otherwise it is
    inferred from the ``x`` column with boundary treatment ``bc`` (default FREE).
    """
    path = Path(path)
    meta = {}
    xs, re, im = [], [], []
    header_seen = False
    with path.open(newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split()[1:]:
                    key, _, val = tok.partition("=")
                    meta[key] = val
                continue
            cells = line.split(",")
            if not header_seen:
                header_seen = True
                if cells[:3] != ["x", "re", "im"]:
                    raise CsvFormatError(f"line {lineno}: expected header x,re,im")
                width = len(cells)
                continue
            if len(cells) != width:
                raise CsvFormatError(f"line {lineno}: expected {width} cells, got {len(cells)}")
            try:
                a, b, c = (float(s) for s in cells[:3])
            except ValueError:
                raise CsvFormatError(f"line {lineno}: non-numeric cell in {line!r}") from None
            xs.append(a)
            re.append(b)
            im.append(c)
    if not xs:
        raise CsvFormatError(f"{path}: no samples")
    if meta:
        grid = Grid(float(meta["x0"]), float(meta["dx"]), int(meta["n"]), BC(meta["bc"]))
        if grid.n != len(xs):
            raise CsvFormatError(f"{path}: header declares {grid.n} samples, found {len(xs)}")
    else:
        n = len(xs)
        dx = (xs[-1] - xs[0]) / (n - 1)
        grid = Grid(xs[0], dx, n, BC(bc or BC.FREE))
    return GridFunction(grid, np.array(re) + 1j * np.array(im))
