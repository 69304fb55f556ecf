"""Closed-form stationary surfaces of the Dirichlet energy.

Ruled families return a :class:`RuledSpec`; the rotational family returns
the graph function ``u(x, y)``. All functions accept jets.
"""

from __future__ import annotations

import numpy as np

from . import jet as J
from .errors import InvalidFamilyError
from .ruled import CircleCurve, RuledSpec

HORIZONTAL_EQUATOR = CircleCurve.great((1.0, 0.0, 0.0), (0.0, 1.0, 0.0))
VERTICAL_EQUATOR = CircleCurve.great((1.0, 0.0, 0.0), (0.0, 0.0, 1.0))


def _nonzero(**kw):
    for k, v in kw.items():
        if v == 0:
            raise InvalidFamilyError(f"{k} must be nonzero")


def tilted_great_circle(m: float) -> CircleCurve:
    """Great circle with ``<e3, beta> = m sin s``, ``<e3, beta'> = m cos s``.

    Then ``<e3, beta x beta'> = sqrt(1 - m^2)``.
    """
    k = np.sqrt(1.0 - m * m)
    return CircleCurve.great((0.0, 1.0, 0.0), (-k, 0.0, m))


def family_plane(m: float = 0.5, c1: float = 1.0, b0: float = 0.0) -> RuledSpec:
    """A non-horizontal plane written as a ruled surface over a tilted great circle.

    Lines ``c1 v2 + b0 v3 + t v1`` are tangent to a circle of radius ``|c1|``,
    so ``t = 0`` is the (degenerate) envelope.
    """
    if not 0.0 < m <= 1.0:
        raise InvalidFamilyError("plane tilt m must lie in (0, 1]")
    return RuledSpec(
        curve=tilted_great_circle(m),
        a=lambda s: c1 + 0.0 * s,
        b=lambda s: b0 + 0.0 * s,
        lam=0.0,
        name="plane",
        params=dict(m=m, c1=c1, b0=b0),
    )


def family_sol1(c1: float = 1.0, b1: float = 1.0) -> RuledSpec:
    """Helicoid over the horizontal equator: ``a = c1 cos s``, ``b = b1 s``."""
    _nonzero(c1=c1, b1=b1)
    return RuledSpec(
        curve=HORIZONTAL_EQUATOR,
        a=lambda s: c1 * J.cos(s),
        b=lambda s: b1 * s,
        lam=0.0,
        name="sol1",
        params=dict(c1=c1, b1=b1),
    )


def family_sol1_tan_variant(c1: float = 1.0, b1: float = 1.0) -> RuledSpec:
    """``b = b1 tan s`` over the horizontal equator. Not stationary; kept as a negative control."""
    _nonzero(c1=c1, b1=b1)
    return RuledSpec(
        curve=HORIZONTAL_EQUATOR,
        a=lambda s: c1 * J.cos(s),
        b=lambda s: b1 * J.tan(s),
        lam=0.0,
        name="sol1_tan",
        params=dict(c1=c1, b1=b1),
    )


def family_sol2(c1: float = 1.0, c2: float = 0.0, b1: float = 1.0) -> RuledSpec:
    """Vertical equator with ``a = c1 cos(s + c2)``, ``b = b1 tan s``; Lambda = 0."""
    _nonzero(c1=c1, b1=b1)
    return RuledSpec(
        curve=VERTICAL_EQUATOR,
        a=lambda s: c1 * J.cos(s + c2),
        b=lambda s: b1 * J.tan(s),
        lam=0.0,
        name="sol2",
        params=dict(c1=c1, c2=c2, b1=b1),
    )


def family_sol3(c1: float = 0.0, c2: float = 0.0, b1: float = 1.0, m: float = 0.5) -> RuledSpec:
    """Tilted great circle, Lambda = 0.

    ``b = (b1/k) arctan(k tan s)`` with ``k = sqrt(1 - m^2)`` and
    ``a = c1 cos s + c2 sin s + (m/k) b cos s - b1 sin s / (m k)``, the
    solution of ``a'' + a = -2 b1 m k sin s / (1 - m^2 sin^2 s)^2``.
    The inverse tangent is continued through ``s = pi/2`` by ``arctan2``.
    """
    _nonzero(b1=b1)
    if not 0.0 < m < 1.0:
        raise InvalidFamilyError("m must lie in (0, 1)")
    k = np.sqrt(1.0 - m * m)

    def b(s):
        return (b1 / k) * J.arctan2(k * J.sin(s), J.cos(s))

    def a(s):
        return (c1 * J.cos(s) + c2 * J.sin(s)
                + (m / k) * J.cos(s) * b(s) - (b1 / (m * k)) * J.sin(s))

    return RuledSpec(
        curve=tilted_great_circle(m),
        a=a,
        b=b,
        lam=0.0,
        name="sol3",
        params=dict(c1=c1, c2=c2, b1=b1, m=m),
    )


def family_sol3_arccot_variant(c1: float = 0.0, c2: float = 0.0, b1: float = 1.0,
                                m: float = 0.5) -> RuledSpec:
    """``a = c1 cos s + c2 sin s - b1 m cos s arccot(k cot s)/(1-m^2) + b1 sin s/(m k)``.

    Does not solve the ODE for ``a``; kept as a negative control.
    """
    base = family_sol3(c1, c2, b1, m)
    k = np.sqrt(1.0 - m * m)

    def a(s):
        acot = J.arctan2(J.sin(s), k * J.cos(s))
        return (c1 * J.cos(s) + c2 * J.sin(s)
                - (b1 * m / (1.0 - m * m)) * J.cos(s) * acot
                + (b1 / (m * k)) * J.sin(s))

    return RuledSpec(base.curve, a, base.b, 0.0, "sol3_arccot", base.params)


def family_sol4(c1: float = 1.0, c2: float = 0.0, b1: float = 1.0, lam: float = 2.0) -> RuledSpec:
    """Vertical equator, Lambda != 0: ``a = c1 cos s + c2 sin s - lam b1^2 cos 2s / (4 cos s)``."""
    _nonzero(b1=b1)
    if lam == 0:
        raise InvalidFamilyError("lambda = 0 belongs to sol2")
    return RuledSpec(
        curve=VERTICAL_EQUATOR,
        a=lambda s: (c1 * J.cos(s) + c2 * J.sin(s)
                     - lam * b1 * b1 * J.cos(2.0 * s) / (4.0 * J.cos(s))),
        b=lambda s: b1 * J.tan(s),
        lam=lam,
        name="sol4",
        params=dict(c1=c1, c2=c2, b1=b1, lam=lam),
    )


def family_rotational(c1: float = 1.0, c2: float = 0.0, lam: float = 0.0):
    """``u = c1 log r + lam r^2 / 8 + c2``: axially symmetric stationary graph."""

    def u(x, y):
        r2 = x * x + y * y
        out = (lam / 8.0) * r2 + c2
        if c1 != 0:
            out = out + 0.5 * c1 * J.log(r2)
        return out

    return u


def family_wulff():
    """The Wulff shape of the Dirichlet energy, ``z = x^2 + y^2`` (Lambda = 8)."""
    return family_rotational(0.0, 0.0, 8.0)


def parabolic_cylinder(lam: float = 2.0, slope: float = 0.0, offset: float = 0.0):
    """``u = lam x^2 / 4 + slope x + offset``: the cylindrical solution as a graph."""

    def u(x, y):
        return (lam / 4.0) * x * x + slope * x + offset + 0.0 * y

    return u
