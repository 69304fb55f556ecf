"""Jets of parametrized surfaces and their fundamental forms.

Vectors are numpy arrays whose first axis holds the three ambient
components; any trailing axes index a batch of parameter points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateParametrizationError, EvaluationDomainError
from .jet import Jet

E3 = np.array([0.0, 0.0, 1.0])

# |Xs x Xt|^2 < REGULARITY_TOL * |Xs|^2 |Xt|^2 marks a degenerate point
REGULARITY_TOL = 1e-24

SurfaceMap = Callable[[Jet, Jet], Sequence]


@dataclass(frozen=True)
class SurfaceJet2:
    """Position and all partial derivatives up to order two at (s, t)."""

    X: np.ndarray
    Xs: np.ndarray
    Xt: np.ndarray
    Xss: np.ndarray
    Xst: np.ndarray
    Xtt: np.ndarray

    @property
    def shape(self):
        return self.X.shape[1:]

    def transformed(self, matrix=None, shift=None, scale=1.0) -> "SurfaceJet2":
        """Jet of ``scale * matrix @ X + shift`` (an ambient similarity)."""
        m = np.eye(3) if matrix is None else np.asarray(matrix, dtype=float)

        def lin(v):
            return scale * np.tensordot(m, v, axes=1)

        X = lin(self.X)
        if shift is not None:
            X = X + np.reshape(shift, (3,) + (1,) * (X.ndim - 1))
        return SurfaceJet2(X, lin(self.Xs), lin(self.Xt),
                           lin(self.Xss), lin(self.Xst), lin(self.Xtt))


@dataclass(frozen=True)
class FundamentalData:
    """First and second fundamental forms at a point (or batch of points).

    ``h11, h12, h22`` are the coefficients of the second fundamental form
    ``<nu, X_ij>``; multiply by ``sqrt(detG)`` to get the determinants
    ``det(Xs, Xt, X_ij)``.
    """

    g11: np.ndarray
    g12: np.ndarray
    g22: np.ndarray
    detG: np.ndarray
    h11: np.ndarray
    h12: np.ndarray
    h22: np.ndarray
    nu: np.ndarray
    nu3: np.ndarray

    @property
    def sqrt_detG(self):
        return np.sqrt(self.detG)

    def det_h(self):
        """The determinants ``det(Xs, Xt, Xss)``, ``det(Xs, Xt, Xst)``, ``det(Xs, Xt, Xtt)``."""
        r = self.sqrt_detG
        return self.h11 * r, self.h12 * r, self.h22 * r


def _components(c, shape):
    if isinstance(c, Jet):
        fields = (c.v, c.s, c.t, c.ss, c.st, c.tt)
    else:
        fields = (c, 0.0, 0.0, 0.0, 0.0, 0.0)
    return [np.broadcast_to(np.asarray(f, dtype=float), shape) for f in fields]


def jet_of(surface: SurfaceMap, s, t, strict: bool = True) -> SurfaceJet2:
    """Evaluate ``surface`` on seeded jets and collect its 2-jet at ``(s, t)``.

    ``s`` and ``t`` may be arrays of a common (broadcastable) shape. With
    ``strict=False`` non-finite samples are passed through instead of raising.
    """
    s_arr, t_arr = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(t, dtype=float))
    shape = s_arr.shape
    with np.errstate(all="ignore"):
        out = surface(Jet.variable_s(s_arr), Jet.variable_t(t_arr))
    if len(out) != 3:
        raise ValueError("surface map must return three components")
    comps = [_components(c, shape) for c in out]
    fields = [np.stack([comps[k][i] for k in range(3)]) for i in range(6)]
    if strict and not all(np.all(np.isfinite(f)) for f in fields):
        raise EvaluationDomainError("surface map is not finite at the requested point")
    return SurfaceJet2(*fields)


def cross(a, b):
    return np.cross(a, b, axis=0)


def dot(a, b):
    return np.sum(a * b, axis=0)


def regular_mask(jet: SurfaceJet2) -> np.ndarray:
    """True where the parametrization is regular (scale-aware test)."""
    n = cross(jet.Xs, jet.Xt)
    with np.errstate(invalid="ignore"):
        n2 = dot(n, n)
        return (n2 > 0) & (n2 >= REGULARITY_TOL * dot(jet.Xs, jet.Xs) * dot(jet.Xt, jet.Xt))


def fundamental_data(jet: SurfaceJet2, strict: bool = True) -> FundamentalData:
    """First/second fundamental forms with normal ``Xs x Xt / |Xs x Xt|``.

    Degenerate points raise :class:`DegenerateParametrizationError`, or
    become NaN when ``strict`` is false.
    """
    Xs, Xt = jet.Xs, jet.Xt
    g11, g12, g22 = dot(Xs, Xs), dot(Xs, Xt), dot(Xt, Xt)
    n = cross(Xs, Xt)
    n2 = dot(n, n)
    ok = regular_mask(jet)
    if not np.all(ok):
        if strict:
            raise DegenerateParametrizationError("Xs x Xt vanishes: degenerate parametrization")
        n2 = np.where(ok, n2, np.nan)
    with np.errstate(invalid="ignore"):
        nu = n / np.sqrt(n2)
    return FundamentalData(
        g11=g11,
        g12=g12,
        g22=g22,
        detG=g11 * g22 - g12 * g12,
        h11=dot(nu, jet.Xss),
        h12=dot(nu, jet.Xst),
        h22=dot(nu, jet.Xtt),
        nu=nu,
        nu3=nu[2],
    )


def mean_curvature(fd: FundamentalData):
    """Mean curvature ``(1/2) tr(G^-1 h)`` for the chosen normal."""
    return 0.5 * (fd.g22 * fd.h11 - 2.0 * fd.g12 * fd.h12 + fd.g11 * fd.h22) / fd.detG


def gauss_curvature(fd: FundamentalData):
    return (fd.h11 * fd.h22 - fd.h12 * fd.h12) / fd.detG


def graph_map(u: Callable) -> SurfaceMap:
    """Parametrization ``(x, y) -> (x, y, u(x, y))`` of a graph."""

    def X(x, y):
        return (x, y, u(x, y))

    return X
