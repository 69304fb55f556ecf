"""Non-cylindrical ruled surfaces ``X(s, t) = alpha(s) + t beta(s)``.

The ruling direction ``beta`` is an arc-length curve on the unit sphere with
moving frame ``v1 = beta, v2 = beta', v3 = beta x beta'`` and the directrix
is ``alpha = a v2 + b v3``. Residuals of the anisotropic mean curvature
identity, multiplied by ``W^2`` with ``W = det g``, are polynomials of degree
five in ``t``; :func:`coeff_extract` recovers their coefficients by
interpolation and :func:`branch_coefficients` evaluates the closed forms
that hold under the hypotheses of each case of the classification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from . import jet as J
from .anisotropy import lambda_residual
from .errors import (
    BranchMismatchError,
    DegenerateParametrizationError,
    GeometryError,
    NodePlacementError,
)
from .geometry import FundamentalData, fundamental_data, jet_of
from .jet import Jet

DEFAULT_NODES = (-3.0, -2.0, -1.0, 1.0, 2.0, 3.0)
HELD_OUT_NODES = (-2.5, -1.5, -0.5, 0.5, 1.5, 2.5)
POLY_RTOL = 1e-8
STRICTION_TOL = 1e-12


def vadd(*vs):
    return tuple(sum(c) for c in zip(*vs))


def vscale(k, v):
    return tuple(k * c for c in v)


def vcross(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def _unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


class CircleCurve:
    """Arc-length circle on the unit sphere with constant geodesic curvature.

    ``beta(s0) = v1`` and ``beta'(s0) = v2``; ``kappa = 0`` gives the great
    circle ``cos(s - s0) v1 + sin(s - s0) v2``.
    """

    def __init__(self, v1, v2, kappa: float = 0.0, s0: float = 0.0):
        v1, v2 = _unit(v1), _unit(v2)
        if abs(v1 @ v2) > 1e-12:
            raise GeometryError("v1 and v2 must be orthogonal")
        v3 = np.cross(v1, v2)
        rho = np.arctan2(1.0, kappa)
        self.kappa = float(kappa)
        self.s0 = float(s0)
        self.cos_rho, self.sin_rho = np.cos(rho), np.sin(rho)
        self.center = self.cos_rho * v1 + self.sin_rho * v3
        self.p = self.sin_rho * v1 - self.cos_rho * v3
        self.q = v2

    @classmethod
    def great(cls, u1, u2, s0: float = 0.0) -> "CircleCurve":
        return cls(u1, u2, 0.0, s0)

    def _angle(self, s):
        return (s - self.s0) / self.sin_rho

    def beta(self, s):
        sig = self._angle(s)
        c, sn = J.cos(sig), J.sin(sig)
        return tuple(self.cos_rho * n + self.sin_rho * (c * p + sn * q)
                     for n, p, q in zip(self.center, self.p, self.q))

    def dbeta(self, s):
        sig = self._angle(s)
        c, sn = J.cos(sig), J.sin(sig)
        return tuple(-sn * p + c * q for p, q in zip(self.p, self.q))


class TaylorCurve:
    """Cubic Taylor model of an arc-length spherical curve about ``s0``.

    Only the jet at ``s0`` is exact: ``beta = v1``, ``beta' = v2``,
    ``beta'' = -v1 + kappa v3``, ``beta''' = -(1 + kappa^2) v2 + dkappa v3``.
    Enough to evaluate every pointwise quantity of the ruled surface at
    ``s = s0`` for arbitrary curvature data.
    """

    def __init__(self, v1, v2, kappa: float, dkappa: float = 0.0, s0: float = 0.0):
        v1, v2 = _unit(v1), _unit(v2)
        v3 = np.cross(v1, v2)
        self.s0 = float(s0)
        self.k0 = v1
        self.k1 = v2
        self.k2 = -v1 + kappa * v3
        self.k3 = -(1.0 + kappa * kappa) * v2 + dkappa * v3

    def beta(self, s):
        h = s - self.s0
        return tuple(c0 + h * c1 + h * h * (c2 / 2.0) + h * h * h * (c3 / 6.0)
                     for c0, c1, c2, c3 in zip(self.k0, self.k1, self.k2, self.k3))

    def dbeta(self, s):
        h = s - self.s0
        return tuple(c1 + h * c2 + h * h * (c3 / 2.0)
                     for c1, c2, c3 in zip(self.k1, self.k2, self.k3))


@dataclass(frozen=True)
class RuledSpec:
    """Ruled surface in frame coordinates: ruling curve and directrix coefficients.

    ``a`` and ``b`` must accept jets as well as floats.
    """

    curve: object
    a: Callable
    b: Callable
    lam: float = 0.0
    name: str = "ruled"
    params: dict = field(default_factory=dict)

    def surface(self):
        return ruled_surface(self)


@dataclass(frozen=True)
class FrameData:
    """Pointwise data of a ruled spec at ``s``: profiles, curvature, frame coordinates of e3."""

    s: float
    a: float
    a1: float
    a2: float
    b: float
    b1: float
    b2: float
    kappa: float
    dkappa: float
    e11: float
    e22: float
    e33: float
    v1: np.ndarray
    v2: np.ndarray
    v3: np.ndarray


@dataclass(frozen=True)
class SphericalCurveJet:
    beta: np.ndarray
    beta1: np.ndarray
    beta2: np.ndarray
    beta3: np.ndarray
    kappa: float
    v1: np.ndarray
    v2: np.ndarray
    v3: np.ndarray


def _scalar_jet(x):
    if isinstance(x, Jet):
        return float(x.v), float(x.s), float(x.ss)
    return float(x), 0.0, 0.0


def _vector_jet(vs):
    parts = [_scalar_jet(c) for c in vs]
    return tuple(np.array([p[i] for p in parts]) for i in range(3))


def curve_jet(curve, s: float) -> SphericalCurveJet:
    S = Jet.variable_s(float(s))
    beta, _, _ = _vector_jet(curve.beta(S))
    b1, b2, b3 = _vector_jet(curve.dbeta(S))
    v3 = np.cross(beta, b1)
    return SphericalCurveJet(beta, b1, b2, b3, float(b2 @ v3), beta, b1, v3)


def frame_data(spec: RuledSpec, s: float) -> FrameData:
    S = Jet.variable_s(float(s))
    a = _scalar_jet(spec.a(S))
    b = _scalar_jet(spec.b(S))
    cj = curve_jet(spec.curve, s)
    return FrameData(
        s=float(s),
        a=a[0], a1=a[1], a2=a[2],
        b=b[0], b1=b[1], b2=b[2],
        kappa=cj.kappa,
        dkappa=float(cj.beta3 @ cj.v3),
        e11=float(cj.v1[2]), e22=float(cj.v2[2]), e33=float(cj.v3[2]),
        v1=cj.v1, v2=cj.v2, v3=cj.v3,
    )


def ruled_surface(spec: RuledSpec):
    """Ambient map ``(s, t) -> a(s) beta'(s) + b(s) beta x beta' + t beta(s)``."""

    def X(s, t):
        beta = spec.curve.beta(s)
        dbeta = spec.curve.dbeta(s)
        alpha = vadd(vscale(spec.a(s), dbeta), vscale(spec.b(s), vcross(beta, dbeta)))
        return vadd(alpha, vscale(t, beta))

    return X


def directrix(spec: RuledSpec, s):
    """Ambient directrix ``alpha(s)`` as an array of shape ``(3, ...)``."""
    jet = jet_of(ruled_surface(spec), s, 0.0, strict=False)
    return jet.X


def closed_form_fundamentals(spec: RuledSpec, s: float, t) -> FundamentalData:
    """Fundamental forms of a ruled surface from frame-coordinate closed forms.

    With ``p = a' - kappa b`` and ``q = b' + kappa a``:
    ``W = (p + t)^2 + q^2``, ``g11 = W + a^2``, ``g12 = -a``, ``g22 = 1``,
    ``det(Xs, Xt, Xst) = q`` and ``det(Xs, Xt, Xtt) = 0``.
    """
    f = frame_data(spec, s)
    t = np.asarray(t, dtype=float)
    k = f.kappa
    p = f.a1 - k * f.b
    q = f.b1 + k * f.a
    W = (p + t) ** 2 + q * q
    if np.any(W <= STRICTION_TOL):
        raise DegenerateParametrizationError("det g vanishes (striction degeneracy)")
    root = np.sqrt(W)
    h11 = (-(q * (-f.a2 + f.a * (k * k + 1.0) + 2.0 * k * f.b1 + f.b * f.dkappa))
           - (p + t) * (k * (2.0 * f.a1 - f.b * k + t) + f.a * f.dkappa + f.b2))
    nu = (np.multiply.outer(f.v2, q * np.ones_like(t)) - np.multiply.outer(f.v3, p + t)) / root
    nu3 = (-f.e33 * f.a1 + f.e22 * f.a * k + f.e22 * f.b1 + f.e33 * f.b * k - f.e33 * t) / root
    return FundamentalData(
        g11=W + f.a * f.a,
        g12=-f.a * np.ones_like(t),
        g22=np.ones_like(t),
        detG=W,
        h11=h11 / root,
        h12=q / root,
        h22=np.zeros_like(t),
        nu=nu,
        nu3=nu3,
    )


@dataclass(frozen=True)
class CoeffVector:
    """Coefficients ``A[0..5]`` of ``W^2 * residual`` as a polynomial in ``t``."""

    s: float
    A: np.ndarray
    nodes: tuple
    fit_error: float

    def __call__(self, t):
        return np.polynomial.polynomial.polyval(t, self.A)


def _as_map(spec_or_map):
    if isinstance(spec_or_map, RuledSpec):
        return ruled_surface(spec_or_map)
    if hasattr(spec_or_map, "surface"):
        return spec_or_map.surface()
    return spec_or_map


def cleared_residual(spec_or_map, lam, s, t):
    """``det(g)^2`` times the residual of the Lambda identity at ``(s, t)``."""
    jet = jet_of(_as_map(spec_or_map), s, t)
    detg = fundamental_data(jet).detG
    return detg * detg * lambda_residual(jet, lam)


def coeff_extract(spec_or_map, lam, s: float, nodes=DEFAULT_NODES, seed: int | None = 0,
                  rtol: float = POLY_RTOL) -> CoeffVector:
    """Recover the coefficients of the degree-5 residual polynomial at ``s``.

    Interpolates on six nodes and validates polynomiality on six held-out
    nodes. Degenerate nodes trigger a seeded fallback to random nodes.
    """
    s = float(s)
    rng = np.random.default_rng(seed)
    nodes = np.asarray(nodes, dtype=float)
    held = np.asarray(HELD_OUT_NODES, dtype=float)
    for attempt in range(8):
        try:
            P = cleared_residual(spec_or_map, lam, s, nodes)
            P_held = cleared_residual(spec_or_map, lam, s, held)
            break
        except GeometryError:
            if seed is None:
                raise NodePlacementError("degenerate interpolation node") from None
            nodes = np.sort(rng.uniform(-3.0, 3.0, 6))
            held = np.sort(rng.uniform(-3.0, 3.0, 6))
    else:
        raise NodePlacementError(f"no admissible interpolation nodes at s={s}")
    V = np.vander(nodes, 6, increasing=True)
    if np.linalg.cond(V) > 1e10:
        raise NodePlacementError("interpolation nodes are ill-conditioned")
    A = np.linalg.solve(V, P)
    fit = np.polynomial.polynomial.polyval(held, A)
    scale = max(np.max(np.abs(P)), np.max(np.abs(P_held)), 1.0)
    err = float(np.max(np.abs(fit - P_held)) / scale)
    if err > rtol:
        raise NodePlacementError(f"residual is not a degree-5 polynomial in t (rel err {err:.3g})")
    return CoeffVector(s, A, tuple(nodes), err)


class Branch(str, Enum):
    """Cases of the coefficient analysis, each with its own closed forms."""

    LEADING = "leading"
    ZERO_LAMBDA = "zero_lambda"
    GREAT_CIRCLE = "great_circle"
    HORIZONTAL_EQUATOR = "horizontal_equator"
    TILTED = "tilted"
    TILTED_PLANE = "tilted_plane"
    TILTED_SOLVED = "tilted_solved"
    VERTICAL = "vertical"
    VERTICAL_GREAT_CIRCLE = "vertical_great_circle"
    VERTICAL_REDUCED = "vertical_reduced"
    VERTICAL_SOLVED = "vertical_solved"
    HORIZONTAL_LAMBDA = "horizontal_lambda"


HYPOTHESIS_TOL = 1e-9
ZERO_LAMBDA_SCALE = -2.0


def _close(x, y=0.0, scale=1.0):
    return abs(x - y) <= HYPOTHESIS_TOL * max(1.0, abs(scale))


def _hypotheses(branch: Branch, f: FrameData, lam: float) -> list[tuple[str, bool]]:
    flat = _close(f.kappa) and _close(f.dkappa)
    e11, e22, e33 = f.e11, f.e22, f.e33
    tilted_a3 = (e11 * e11 - 1.0) * f.b2 + 2.0 * e11 * e22 * f.b1
    tilted_a2 = (1.0 - e11 * e11) * (f.a + f.a2) + 2.0 * e11 * e33 * f.b1
    vert_a3 = e22 * f.b2 - 2.0 * e11 * f.b1
    vert_a2 = -2.0 * f.a + e22 * lam * f.b1**2 - 2.0 * f.a2
    tilted = [
        ("lambda = 0", _close(lam)),
        ("kappa = 0", flat),
        ("e11^2 + e22^2 != 0", not _close(e11 * e11 + e22 * e22)),
        ("e11^2 != 1", not _close(e11 * e11, 1.0)),
        ("(e11^2-1) b'' + 2 e11 e22 b' = 0", _close(tilted_a3, 0.0, abs(f.b1) + abs(f.b2))),
    ]
    vertical = [("lambda != 0", not _close(lam)), ("e33 = 0", _close(e33))]
    vgc = vertical + [("kappa = 0", flat)]
    vred = vgc + [("e22 != 0", not _close(e22)),
                  ("e22 b'' = 2 e11 b'", _close(vert_a3, 0.0, abs(f.b1) + abs(f.b2)))]
    table = {
        Branch.LEADING: [],
        Branch.ZERO_LAMBDA: [("lambda = 0", _close(lam))],
        Branch.GREAT_CIRCLE: [("lambda = 0", _close(lam)), ("kappa = 0", flat)],
        Branch.HORIZONTAL_EQUATOR: [("lambda = 0", _close(lam)), ("kappa = 0", flat),
                                    ("e33 = 1", _close(e33, 1.0))],
        Branch.TILTED: tilted,
        Branch.TILTED_PLANE: tilted + [("b' = 0", _close(f.b1))],
        Branch.TILTED_SOLVED: tilted + [
            ("(1-e11^2)(a+a'') + 2 e11 e33 b' = 0",
             _close(tilted_a2, 0.0, abs(f.a) + abs(f.a2) + abs(f.b1)))],
        Branch.VERTICAL: vertical,
        Branch.VERTICAL_GREAT_CIRCLE: vgc,
        Branch.VERTICAL_REDUCED: vred,
        Branch.VERTICAL_SOLVED: vred + [
            ("a'' = -a + e22 lambda b'^2 / 2",
             _close(vert_a2, 0.0, abs(f.a) + abs(f.a2) + abs(lam) * f.b1**2))],
        Branch.HORIZONTAL_LAMBDA: [("lambda != 0", not _close(lam)), ("kappa = 0", flat),
                                   ("e33 = 1", _close(e33, 1.0))],
    }
    return table[branch]


def branch_holds(branch: Branch, spec: RuledSpec, lam: float, s: float) -> bool:
    return all(ok for _, ok in _hypotheses(Branch(branch), frame_data(spec, s), lam))


def _closed_forms(branch: Branch, f: FrameData, lam: float) -> dict[int, float]:
    e11, e22, e33 = f.e11, f.e22, f.e33
    a, a1, a2, b1, b2, k = f.a, f.a1, f.a2, f.b1, f.b2, f.kappa
    # the Lambda = 0 forms below are written for the cleared polynomial
    # divided by -2; rescale them to the normalization of coeff_extract
    z = ZERO_LAMBDA_SCALE
    if branch is Branch.LEADING:
        return {5: e33**3 * (e33**2 - 1.0) * lam}
    if branch is Branch.ZERO_LAMBDA:
        return {5: 0.0, 4: z * -k * (e22**2 + e11**2 * e33**2)}
    if branch is Branch.GREAT_CIRCLE:
        return {5: 0.0, 4: 0.0,
                3: z * (e11**2 + e22**2) * (2.0 * e11 * e22 * b1 + (e11**2 - 1.0) * b2)}
    if branch is Branch.HORIZONTAL_EQUATOR:
        return {5: 0.0, 4: 0.0, 3: 0.0, 2: 0.0,
                1: z * -b1**2 * b2, 0: z * b1**2 * (b1 * (a + a2) - a1 * b2)}
    if branch is Branch.TILTED:
        return {5: 0.0, 4: 0.0, 3: 0.0,
                2: z * (e11**2 + e22**2) * b1 * ((1.0 - e11**2) * (a + a2) + 2.0 * e11 * e33 * b1)}
    if branch in (Branch.TILTED_PLANE, Branch.TILTED_SOLVED, Branch.VERTICAL_SOLVED):
        return {n: 0.0 for n in range(6)}
    if branch is Branch.VERTICAL:
        return {5: 0.0, 4: 2.0 * e22**2 * k}
    if branch is Branch.VERTICAL_GREAT_CIRCLE:
        return {5: 0.0, 4: 0.0, 3: 2.0 * e22 * (e22 * b2 - 2.0 * e11 * b1)}
    if branch is Branch.VERTICAL_REDUCED:
        return {5: 0.0, 4: 0.0, 3: 0.0,
                2: e22**2 * b1 * (-2.0 * a + e22 * lam * b1**2 - 2.0 * a2)}
    if branch is Branch.HORIZONTAL_LAMBDA:
        return {5: 0.0, 4: 0.0, 3: -lam * b1**2}
    raise ValueError(branch)


def branch_coefficients(branch, spec: RuledSpec, lam: float, s: float) -> dict[int, float]:
    """Closed-form coefficients ``{n: A_n}`` valid under ``branch``'s hypotheses."""
    branch = Branch(branch)
    f = frame_data(spec, s)
    failed = [name for name, ok in _hypotheses(branch, f, lam) if not ok]
    if failed:
        raise BranchMismatchError(f"{branch.value}: hypotheses fail: {', '.join(failed)}")
    return _closed_forms(branch, f, lam)


# most specific first
_DETECTION_ORDER = (
    Branch.HORIZONTAL_EQUATOR,
    Branch.TILTED_PLANE,
    Branch.TILTED_SOLVED,
    Branch.TILTED,
    Branch.GREAT_CIRCLE,
    Branch.ZERO_LAMBDA,
    Branch.HORIZONTAL_LAMBDA,
    Branch.VERTICAL_SOLVED,
    Branch.VERTICAL_REDUCED,
    Branch.VERTICAL_GREAT_CIRCLE,
    Branch.VERTICAL,
    Branch.LEADING,
)


def detect_branch(spec: RuledSpec, lam: float, s: float) -> Branch:
    f = frame_data(spec, s)
    for branch in _DETECTION_ORDER:
        if all(ok for _, ok in _hypotheses(branch, f, lam)):
            return branch
    return Branch.LEADING
