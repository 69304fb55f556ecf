"""Anisotropic mean curvature for energies ``int F(nu_3) dSigma``.

The Dirichlet energy of a graph corresponds to ``F(x) = 1/x - x``. The
anisotropic mean curvature ``Lambda`` is evaluated in the principal frame
of the Wulff shape, ``E1 = e3 - nu3 nu`` and ``E2 = nu x E1``, through the
identity

    Lambda nu3^3 (1 - nu3^2) sqrt(det g) = 2 h(E1, E1) + 2 nu3^2 h(E2, E2)

where ``h`` is expanded in the coordinate basis with the determinants
``det(Xs, Xt, X_ij)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import EvaluationDomainError, HorizontalTangentError, UndefinedLambdaError
from .geometry import E3, FundamentalData, SurfaceJet2, cross, dot, fundamental_data

# 1 - nu3^2 at or below this is treated as a horizontal tangent plane
HORIZONTAL_TOL = 1e-12
# |nu3| at or below this leaves Lambda undetermined
VERTICAL_TOL = 1e-12


@dataclass(frozen=True)
class AxisymFunctional:
    """Energy density ``F(nu3)`` with its first two derivatives."""

    F: Callable
    Fp: Callable
    Fpp: Callable
    domain: tuple = (0.0, 1.0)
    name: str = "F"

    def check_domain(self, nu3):
        lo, hi = self.domain
        nu3 = np.asarray(nu3, dtype=float)
        bad = ~np.isfinite(nu3) | (nu3 <= lo) | (nu3 > hi) | (nu3 == 0.0)
        if np.any(bad):
            raise EvaluationDomainError(f"nu3 outside the domain ({lo}, {hi}] of {self.name}")


@dataclass(frozen=True)
class WulffInverseCurvatures:
    inv_mu1: np.ndarray
    inv_mu2: np.ndarray


@dataclass(frozen=True)
class PrincipalFrame:
    """Principal directions of the Wulff shape and their coordinates in ``{Xs, Xt}``."""

    E1: np.ndarray
    E2: np.ndarray
    normSq: np.ndarray
    c11: np.ndarray
    c12: np.ndarray
    c21: np.ndarray
    c22: np.ndarray


def dirichlet_functional(domain=(0.0, 1.0)) -> AxisymFunctional:
    """``F(x) = 1/x - x``, the Dirichlet energy written on the surface.

    The default domain is the upper hemisphere where ``F > 0``; pass
    ``(-1.0, 1.0)`` to evaluate downward-oriented patches, on which the
    Wulff curvatures are continued as odd functions of ``nu3``.
    """
    return AxisymFunctional(
        F=lambda x: 1.0 / x - x,
        Fp=lambda x: -1.0 / (x * x) - 1.0,
        Fpp=lambda x: 2.0 / (x * x * x),
        domain=tuple(domain),
        name="dirichlet",
    )


def wulff_inverse_curvatures(f: AxisymFunctional, nu3) -> WulffInverseCurvatures:
    f.check_domain(nu3)
    nu3 = np.asarray(nu3, dtype=float)
    inv_mu2 = f.F(nu3) - nu3 * f.Fp(nu3)
    inv_mu1 = (1.0 - nu3 * nu3) * f.Fpp(nu3) + inv_mu2
    return WulffInverseCurvatures(inv_mu1, inv_mu2)


def _frame_ok(nu3):
    return 1.0 - nu3 * nu3 > HORIZONTAL_TOL


def principal_frame(jet: SurfaceJet2, fd: FundamentalData, strict: bool = True) -> PrincipalFrame:
    """``E1 = e3 - nu3 nu``, ``E2 = nu x E1`` and their ``{Xs, Xt}`` coordinates.

    The coordinates solve the Gram system ``g c_i = (<E_i, Xs>, <E_i, Xt>)``.
    """
    nu, nu3 = fd.nu, fd.nu3
    ok = _frame_ok(nu3)
    if strict and not np.all(ok):
        raise HorizontalTangentError("nu3^2 = 1: principal frame undefined")
    e3 = np.reshape(E3, (3,) + (1,) * (nu.ndim - 1))
    E1 = e3 - nu3 * nu
    E2 = cross(nu, E1)

    def coords(E):
        b1, b2 = dot(E, jet.Xs), dot(E, jet.Xt)
        return ((fd.g22 * b1 - fd.g12 * b2) / fd.detG,
                (fd.g11 * b2 - fd.g12 * b1) / fd.detG)

    c11, c12 = coords(E1)
    c21, c22 = coords(E2)
    if not strict:
        c11, c12, c21, c22 = (np.where(ok, c, np.nan) for c in (c11, c12, c21, c22))
    return PrincipalFrame(E1, E2, 1.0 - nu3 * nu3, c11, c12, c21, c22)


def _sides(jet: SurfaceJet2, strict: bool):
    fd = fundamental_data(jet, strict=strict)
    pf = principal_frame(jet, fd, strict=strict)
    d11, d12, d22 = fd.det_h()
    rhs = 2.0 * (pf.c11**2 * d11 + 2.0 * pf.c11 * pf.c12 * d12 + pf.c12**2 * d22)
    rhs = rhs + 2.0 * fd.nu3**2 * (pf.c21**2 * d11 + 2.0 * pf.c21 * pf.c22 * d12 + pf.c22**2 * d22)
    factor = fd.nu3**3 * (1.0 - fd.nu3**2) * fd.sqrt_detG
    return fd, factor, rhs


def lambda_residual(jet: SurfaceJet2, lam, strict: bool = True):
    """LHS - RHS of the coordinate identity; zero where the anisotropic mean curvature is ``lam``."""
    _, factor, rhs = _sides(jet, strict)
    return lam * factor - rhs


def lambda_value(jet: SurfaceJet2, strict: bool = True):
    """Anisotropic mean curvature of the Dirichlet energy, solved pointwise."""
    fd, factor, rhs = _sides(jet, strict)
    vertical = np.abs(fd.nu3) <= VERTICAL_TOL
    if np.any(vertical):
        if strict:
            raise UndefinedLambdaError("nu3 = 0: Lambda is undetermined")
        factor = np.where(vertical, np.nan, factor)
    return rhs / factor


def anisotropic_mean_curvature(jet: SurfaceJet2, f: AxisymFunctional | None = None):
    """Anisotropic mean curvature from the orthonormalized principal frame.

    Uses ``Lambda = h(e1, e1)/mu1 + h(e2, e2)/mu2`` with unit ``e_i = E_i/|E_i|``
    and the Wulff curvatures of ``f``; independent of the coordinate
    identity used by :func:`lambda_value`.
    """
    f = dirichlet_functional((-1.0, 1.0)) if f is None else f
    fd = fundamental_data(jet)
    nu3 = fd.nu3
    if not np.all(_frame_ok(nu3)):
        raise HorizontalTangentError("nu3^2 = 1: principal frame undefined")
    if np.any(np.abs(nu3) <= VERTICAL_TOL):
        raise UndefinedLambdaError("nu3 = 0: energy density singular")
    w = wulff_inverse_curvatures(f, nu3)
    e3 = np.reshape(E3, (3,) + (1,) * (fd.nu.ndim - 1))
    E1 = e3 - nu3 * fd.nu
    E2 = cross(fd.nu, E1)
    norm = np.sqrt(1.0 - nu3 * nu3)
    # second fundamental form as an ambient bilinear form: J G^-1 h G^-1 J^T
    ginv = np.array([[fd.g22, -fd.g12], [-fd.g12, fd.g11]]) / fd.detG
    h = np.array([[fd.h11, fd.h12], [fd.h12, fd.h22]])
    J = np.stack([jet.Xs, jet.Xt], axis=1)  # (3, 2, ...)
    P = np.einsum("aj...,jk...->ak...", J, ginv)  # (3, 2, ...)
    S = np.einsum("ai...,ij...,bj...->ab...", P, h, P)

    def hform(v):
        return np.einsum("a...,ab...,b...->...", v, S, v)

    return hform(E1 / norm) * w.inv_mu1 + hform(E2 / norm) * w.inv_mu2
