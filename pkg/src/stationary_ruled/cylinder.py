"""Cylindrical surfaces ``X(s, t) = alpha(s) + t w``.

The directrix lies in the plane spanned by ``v1, v2`` of a positively
oriented constant basis with ``v3 = w``, and is parametrized by arc length
through its tangent angle: ``alpha' = cos(theta) v1 + sin(theta) v2``.
Writing ``e3 = (cos(varphi) cos(phi), cos(varphi) sin(phi), sin(varphi))``
in that basis, the anisotropic mean curvature is ``lam`` exactly when

    theta' = -(lam / 2) cos(varphi) sin(theta - phi)^3

which makes the directrix a parabola (a straight line when ``lam = 0``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, UndefinedLambdaError
from .geometry import E3

BASIS_TOL = 1e-12


@dataclass(frozen=True)
class CylSpec:
    """Basis ``(v1, v2, v3 = w)`` as rows, anisotropic mean curvature and initial data."""

    basis: np.ndarray
    lam: float
    theta0: float = 0.0
    origin: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        B = np.asarray(self.basis, dtype=float)
        object.__setattr__(self, "basis", B)
        if B.shape != (3, 3):
            raise GeometryError("basis must be three vectors in R^3")
        if np.max(np.abs(B @ B.T - np.eye(3))) > BASIS_TOL or np.linalg.det(B) < 0:
            raise GeometryError("basis must be orthonormal and positively oriented")

    @property
    def v1(self):
        return self.basis[0]

    @property
    def v2(self):
        return self.basis[1]

    @property
    def w(self):
        return self.basis[2]

    @property
    def e3_coords(self):
        """``(a1, a2, a3)``: coordinates of e3 in the basis."""
        return self.basis @ E3

    @property
    def varphi(self):
        return float(np.arcsin(np.clip(self.e3_coords[2], -1.0, 1.0)))

    @property
    def phi(self):
        a1, a2, _ = self.e3_coords
        return float(np.arctan2(a2, a1))


def cylspec_from_angles(varphi: float, phi: float, lam: float, theta0: float = 0.0,
                        origin=(0.0, 0.0, 0.0)) -> CylSpec:
    """A basis in which ``e3`` has the coordinates given by ``varphi, phi``."""
    w = np.array([np.cos(varphi), 0.0, np.sin(varphi)])
    p = np.array([-np.sin(varphi), 0.0, np.cos(varphi)])
    q = np.cross(w, p)
    v1 = np.cos(phi) * p - np.sin(phi) * q
    v2 = np.sin(phi) * p + np.cos(phi) * q
    return CylSpec(np.array([v1, v2, w]), lam, theta0, tuple(origin))


def example_vertical_plane(lam: float = 2.0, theta0: float = np.pi / 2) -> CylSpec:
    """Directrix in the xz-plane, rulings along y (``varphi = phi = 0``)."""
    return CylSpec(np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]), lam, theta0)


def example_tilted(lam: float = 2.0, theta0: float = 0.0) -> CylSpec:
    """Rulings along ``(0, 1, 1)/sqrt(2)`` (``varphi = pi/4, phi = -pi/2``)."""
    r = 1.0 / np.sqrt(2.0)
    return CylSpec(np.array([[1.0, 0.0, 0.0], [0.0, r, -r], [0.0, r, r]]), lam, theta0)


def theta_rate(spec: CylSpec, theta):
    return -0.5 * spec.lam * np.cos(spec.varphi) * np.sin(theta - spec.phi) ** 3


def _rhs(spec: CylSpec, y):
    theta = y[0]
    c, s = np.cos(theta), np.sin(theta)
    v1 = spec.v1.reshape((3,) + (1,) * np.ndim(theta))
    v2 = spec.v2.reshape((3,) + (1,) * np.ndim(theta))
    return np.concatenate([np.asarray(theta_rate(spec, theta))[None], c * v1 + s * v2])


def rk4_step(spec: CylSpec, y, h):
    """One classical Runge-Kutta step for ``(theta, alpha)``; ``h`` may be an array."""
    k1 = _rhs(spec, y)
    k2 = _rhs(spec, y + 0.5 * h * k1)
    k3 = _rhs(spec, y + 0.5 * h * k2)
    k4 = _rhs(spec, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


@dataclass(frozen=True)
class Trajectory:
    s: np.ndarray
    theta: np.ndarray
    alpha: np.ndarray  # (3, n)

    @property
    def step(self):
        return float(self.s[1] - self.s[0])


def integrate_theta(spec: CylSpec, s_span=(0.0, 4.0), step: float = 0.01) -> Trajectory:
    """Fixed-step RK4 for the tangent angle and the directrix.

    The step is adjusted down so that an integer number of steps spans ``s_span``.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    s0, s1 = map(float, s_span)
    n = max(1, int(np.ceil(abs(s1 - s0) / step - 1e-9)))
    s = np.linspace(s0, s1, n + 1)
    h = (s1 - s0) / n
    y = np.empty((4, n + 1))
    y[:, 0] = [spec.theta0, *spec.origin]
    for i in range(n):
        y[:, i + 1] = rk4_step(spec, y[:, i], h)
    return Trajectory(s, y[0].copy(), y[1:].copy())


def state_at(spec: CylSpec, traj: Trajectory, s):
    """``(theta, alpha)`` at arbitrary ``s``: one RK4 step from the nearest node."""
    s = np.asarray(s, dtype=float)
    idx = np.clip(np.rint((s - traj.s[0]) / traj.step).astype(int), 0, len(traj.s) - 1)
    y0 = np.concatenate([traj.theta[idx][None], traj.alpha[:, idx]])
    y = rk4_step(spec, y0, s - traj.s[idx])
    return y[0], y[1:]


def cylinder_surface(spec: CylSpec, traj: Trajectory):
    """Jet-capable map ``(s, t) -> alpha(s) + t w`` over an integrated directrix.

    Tangent and curvature come from the angle and the ODE right-hand side,
    so the jet is exact for the sampled angle.
    """
    v1, v2, w = spec.v1, spec.v2, spec.w

    def X(s, t):
        sv = getattr(s, "v", s)
        theta, alpha = state_at(spec, traj, sv)
        c, sn = np.cos(theta), np.sin(theta)
        dtheta = theta_rate(spec, theta)
        out = []
        for k in range(3):
            d1 = c * v1[k] + sn * v2[k]
            d2 = dtheta * (-sn * v1[k] + c * v2[k])
            ak = s.compose(alpha[k], d1, d2) if hasattr(s, "compose") else alpha[k]
            out.append(ak + t * w[k])
        return tuple(out)

    return X


def frame_coords(spec: CylSpec, theta):
    """Coordinates ``(e11, e22, e33)`` of e3 in ``{alpha', w, n}``."""
    a1, a2, a3 = spec.e3_coords
    theta = np.asarray(theta, dtype=float)
    return (a1 * np.cos(theta) + a2 * np.sin(theta),
            a3 * np.ones_like(theta),
            a1 * np.sin(theta) - a2 * np.cos(theta))


def verify_cylindrical_balance(spec: CylSpec, theta, dtheta):
    """``lam e33^3 (1 - e33^2) - 2 kappa (e11^2 + e22^2 e33^2)`` with ``kappa = -theta'``."""
    e11, e22, e33 = frame_coords(spec, theta)
    if np.any(np.abs(e33) <= 1e-12):
        raise UndefinedLambdaError("e33 = 0: the normal is horizontal")
    kappa = -np.asarray(dtheta, dtype=float)
    return spec.lam * e33**3 * (1.0 - e33**2) - 2.0 * kappa * (e11**2 + e22**2 * e33**2)


def parabola_deviation(spec: CylSpec, traj: Trajectory) -> float:
    """Max distance of the directrix from its exact parabola.

    In the in-plane axes ``f1 = cos(phi) v1 + sin(phi) v2`` and
    ``f2 = -sin(phi) v1 + cos(phi) v2`` the solution is the graph
    ``Y = Y0 + p (X - X0) + c/2 (X - X0)^2`` with ``c = (lam/2) cos(varphi)``.
    """
    f1 = np.cos(spec.phi) * spec.v1 + np.sin(spec.phi) * spec.v2
    f2 = -np.sin(spec.phi) * spec.v1 + np.cos(spec.phi) * spec.v2
    X = f2 @ traj.alpha
    Y = f1 @ traj.alpha
    psi0 = traj.theta[0] - spec.phi
    p = np.cos(psi0) / np.sin(psi0)
    c = 0.5 * spec.lam * np.cos(spec.varphi)
    dX = X - X[0]
    return float(np.max(np.abs(Y - (Y[0] + p * dX + 0.5 * c * dX * dX))))


def signed_curvature(spec: CylSpec, theta):
    """Curvature ``<alpha'', n>`` of the directrix with ``n = alpha' x w``."""
    return -theta_rate(spec, theta)


# deviations below this are rounding noise, so no order can be read from them
DEVIATION_FLOOR = 1e-11


@dataclass(frozen=True)
class ConvergenceStudy:
    steps: tuple
    deviations: tuple
    order: float

    @property
    def resolved(self) -> bool:
        """False when every level already sits at rounding level."""
        return max(self.deviations) > DEVIATION_FLOOR


def convergence_study(spec: CylSpec, s_span=(0.0, 4.0), step: float = 0.05,
                      levels: int = 3) -> ConvergenceStudy:
    """Parabola deviation under repeated step halving, with the fitted order."""
    steps = tuple(step / 2**k for k in range(levels))
    devs = tuple(parabola_deviation(spec, integrate_theta(spec, s_span, h)) for h in steps)
    e = np.asarray(devs)
    if np.any(e <= 0):
        order = float("nan")
    else:
        order = float(np.polyfit(np.log(steps), np.log(e), 1)[0])
    return ConvergenceStudy(steps, devs, order)
