"""Graph-side checks that share no code with the curvature machinery.

A graph ``z = u(x, y)`` is stationary for

    E[u] = int |Du|^2 + lam int u

exactly when ``u_xx + u_yy = lam / 2``. This module samples ``u`` on a
uniform grid and checks that equation with the five-point stencil, and
checks stationarity directly through a symmetric difference of a discrete
version of ``E``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import GridTooSmallError, InvalidPerturbationError


@dataclass(frozen=True)
class GridFunction:
    """Samples ``values[i, j] = u(x0 + i hx, y0 + j hy)`` on an ``nx`` by ``ny`` grid."""

    nx: int
    ny: int
    hx: float
    hy: float
    origin: tuple
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float).reshape(self.nx, self.ny)
        object.__setattr__(self, "values", vals)
        if self.hx <= 0 or self.hy <= 0:
            raise ValueError("grid spacings must be positive")
        if not np.all(np.isfinite(vals)):
            raise ValueError("grid values must be finite")

    @classmethod
    def sample(cls, f: Callable, x_range, y_range, nx: int, ny: int) -> "GridFunction":
        x0, x1 = map(float, x_range)
        y0, y1 = map(float, y_range)
        if nx < 2 or ny < 2:
            raise GridTooSmallError("need at least two nodes per direction")
        hx, hy = (x1 - x0) / (nx - 1), (y1 - y0) / (ny - 1)
        x, y = np.meshgrid(x0 + hx * np.arange(nx), y0 + hy * np.arange(ny), indexing="ij")
        return cls(nx, ny, hx, hy, (x0, y0), np.broadcast_to(f(x, y), x.shape))

    def coords(self):
        x0, y0 = self.origin
        return np.meshgrid(x0 + self.hx * np.arange(self.nx),
                           y0 + self.hy * np.arange(self.ny), indexing="ij")

    def with_values(self, values) -> "GridFunction":
        return GridFunction(self.nx, self.ny, self.hx, self.hy, self.origin, values)


@dataclass(frozen=True)
class PdeReport:
    max_residual: float
    mean_residual: float
    order_estimate: float = float("nan")
    levels: tuple = field(default_factory=tuple)
    roundoff_floor: float = 0.0

    def exact(self, tol: float) -> bool:
        """Residual at or below ``tol`` or the stencil's own rounding level."""
        return self.max_residual <= max(tol, self.roundoff_floor)


def _require(u: GridFunction, n: int = 3):
    if u.nx < n or u.ny < n:
        raise GridTooSmallError(f"grid must have at least {n} nodes per direction")


def fd_laplacian(u: GridFunction) -> np.ndarray:
    """Five-point Laplacian on interior nodes."""
    _require(u)
    v = u.values
    dxx = (v[2:, 1:-1] - 2.0 * v[1:-1, 1:-1] + v[:-2, 1:-1]) / u.hx**2
    dyy = (v[1:-1, 2:] - 2.0 * v[1:-1, 1:-1] + v[1:-1, :-2]) / u.hy**2
    return dxx + dyy


def stencil_roundoff(u: GridFunction) -> float:
    """Rounding level of the five-point stencil applied to the samples of ``u``."""
    scale = float(np.max(np.abs(u.values)))
    return 64.0 * np.finfo(float).eps * scale * (2.0 / u.hx**2 + 2.0 / u.hy**2)


def fd_laplacian_residual(u: GridFunction, lam: float) -> PdeReport:
    """``|Delta_h u - lam/2|`` over interior nodes on a single grid."""
    r = np.abs(fd_laplacian(u) - 0.5 * lam)
    return PdeReport(float(r.max()), float(r.mean()), levels=(float(r.max()),),
                     roundoff_floor=stencil_roundoff(u))


def observed_order(errors, ratio: float = 2.0) -> float:
    """Least-squares slope of ``log error`` against ``log h`` over the levels."""
    e = np.asarray(errors, dtype=float)
    if len(e) < 2 or np.any(e <= 0):
        return float("nan")
    k = np.arange(len(e))
    return float(-np.polyfit(k * np.log(ratio), np.log(e), 1)[0])


def refinement_levels(n0: int, levels: int = 3):
    """Node counts with the spacing halved at each level, sharing the coarse nodes."""
    return [(n0 - 1) * 2**k + 1 for k in range(levels)]


def laplacian_refinement_study(f: Callable, lam: float, x_range, y_range,
                               n0: int = 17, levels: int = 3) -> PdeReport:
    """Stencil residual of ``u = f(x, y)`` on ``levels`` grids, halving ``h`` each time.

    The order estimate is the fitted slope of the max residual; it is NaN
    when every level is exact (zero residual).
    """
    if levels < 3:
        raise ValueError("a refinement study needs at least three levels")
    reports = [fd_laplacian_residual(GridFunction.sample(f, x_range, y_range, n, n), lam)
               for n in refinement_levels(n0, levels)]
    maxes = tuple(r.max_residual for r in reports)
    return PdeReport(max(maxes), reports[-1].mean_residual, observed_order(maxes), maxes,
                     max(r.roundoff_floor for r in reports))


def _trapezoid2(u: GridFunction, v) -> float:
    return float(np.trapezoid(np.trapezoid(v, dx=u.hy, axis=1), dx=u.hx))


def _trapezoid_weights(n: int) -> np.ndarray:
    w = np.ones(n)
    w[0] = w[-1] = 0.5
    return w


def discrete_energy(u: GridFunction, lam: float) -> float:
    """Discrete ``int |Du|^2 + lam int u`` on the grid.

    Each partial derivative is the central difference at the midpoint of a
    grid edge. Its square is integrated by the midpoint rule along the edge
    direction and the trapezoid rule across it; ``int u`` uses the trapezoid
    rule. The first variation of this energy at interior nodes is exactly
    ``-2 Delta_h u + lam`` with the five-point Laplacian, so for boundary
    supported perturbations its error expands in even powers of ``h``.
    """
    _require(u)
    v = u.values
    dx = np.diff(v, axis=0) / u.hx
    dy = np.diff(v, axis=1) / u.hy
    cell = u.hx * u.hy
    gx = np.sum((dx * dx) @ _trapezoid_weights(u.ny))
    gy = np.sum(_trapezoid_weights(u.nx) @ (dy * dy))
    return float(cell * (gx + gy)) + lam * integrate(u)


def integrate(u: GridFunction) -> float:
    """Trapezoid quadrature of the sampled values."""
    return _trapezoid2(u, u.values)


def _check_bump(u: GridFunction, bump: GridFunction):
    if (bump.nx, bump.ny, bump.hx, bump.hy) != (u.nx, u.ny, u.hx, u.hy) or \
            tuple(bump.origin) != tuple(u.origin):
        raise ValueError("bump must live on the same grid as u")
    b = bump.values
    edge = np.concatenate([b[0], b[-1], b[:, 0], b[:, -1]])
    tol = 1e-12 * max(1.0, float(np.max(np.abs(b))))
    if np.max(np.abs(edge)) > tol:
        raise InvalidPerturbationError("perturbation must vanish on the grid boundary")


def first_variation_test(u: GridFunction, lam: float, bump: GridFunction,
                         eps: float | None = None) -> float:
    """``dE(u + eps bump)/d eps`` at 0 by a symmetric difference.

    The default step is ``1e-5`` times the size of ``u``. ``E`` is quadratic
    in ``u``, so the symmetric difference has no truncation error.
    """
    _require(u)
    _check_bump(u, bump)
    if eps is None:
        eps = 1e-5 * max(1.0, float(np.max(np.abs(u.values))))
    plus = discrete_energy(u.with_values(u.values + eps * bump.values), lam)
    minus = discrete_energy(u.with_values(u.values - eps * bump.values), lam)
    return (plus - minus) / (2.0 * eps)


def random_bump(rng: np.random.Generator, x_range, y_range, modes: int = 3,
                zero_mean: bool = True) -> Callable:
    """Random sine series vanishing on the rectangle's boundary.

    With ``zero_mean`` the coefficient of the lowest mode is chosen so that
    the exact integral over the rectangle is zero.
    """
    x0, x1 = map(float, x_range)
    y0, y1 = map(float, y_range)
    ks = np.arange(1, modes + 1)
    coef = rng.normal(size=(modes, modes))

    def mean_factor(k):
        return (1.0 - np.cos(k * np.pi)) / (k * np.pi)

    if zero_mean:
        weights = np.outer(mean_factor(ks), mean_factor(ks))
        coef[0, 0] = -(np.sum(coef * weights) - coef[0, 0] * weights[0, 0]) / weights[0, 0]

    def b(x, y):
        xi = (np.asarray(x) - x0) / (x1 - x0)
        eta = (np.asarray(y) - y0) / (y1 - y0)
        sx = np.sin(np.pi * np.multiply.outer(ks, xi))
        sy = np.sin(np.pi * np.multiply.outer(ks, eta))
        return np.einsum("kl,k...,l...->...", coef, sx, sy)

    return b


def first_variation_study(f: Callable, lam: float, bump: Callable, x_range, y_range,
                          n0: int = 17, levels: int = 3) -> PdeReport:
    """``|dE|`` of ``u = f(x, y)`` along ``bump`` over grids with halving spacing."""
    vals = []
    for n in refinement_levels(n0, levels):
        u = GridFunction.sample(f, x_range, y_range, n, n)
        b = GridFunction.sample(bump, x_range, y_range, n, n)
        b = b.with_values(_zero_edges(b.values))
        vals.append(abs(first_variation_test(u, lam, b)))
    return PdeReport(max(vals), vals[-1], observed_order(vals), tuple(vals))


def _zero_edges(v):
    """Sine series vanish on the boundary only up to roundoff; make it exact."""
    v = np.array(v, dtype=float)
    v[0], v[-1], v[:, 0], v[:, -1] = 0.0, 0.0, 0.0, 0.0
    return v
