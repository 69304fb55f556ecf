"""Second-order truncated Taylor arithmetic in two variables (s, t).

A :class:`Jet` carries a value together with its first and second partial
derivatives. Every field may be a float or a numpy array, so the same code
evaluates a single point or a whole parameter grid at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Jet:
    """Value and partials ``d/ds, d/dt, d2/ds2, d2/dsdt, d2/dt2``."""

    v: object
    s: object = 0.0
    t: object = 0.0
    ss: object = 0.0
    st: object = 0.0
    tt: object = 0.0

    # let numpy defer to our reflected operators
    __array_ufunc__ = None

    @classmethod
    def variable_s(cls, value) -> "Jet":
        return cls(value, 1.0, 0.0, 0.0, 0.0, 0.0)

    @classmethod
    def variable_t(cls, value) -> "Jet":
        return cls(value, 0.0, 1.0, 0.0, 0.0, 0.0)

    @property
    def d1(self):
        return (self.s, self.t)

    @property
    def d2(self):
        return (self.ss, self.st, self.tt)

    def compose(self, f0, f1, f2) -> "Jet":
        """Chain rule for ``f(self)`` given ``f, f', f''`` evaluated at ``self.v``."""
        return Jet(
            f0,
            f1 * self.s,
            f1 * self.t,
            f2 * self.s * self.s + f1 * self.ss,
            f2 * self.s * self.t + f1 * self.st,
            f2 * self.t * self.t + f1 * self.tt,
        )

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.v + other.v, self.s + other.s, self.t + other.t,
                       self.ss + other.ss, self.st + other.st, self.tt + other.tt)
        return Jet(self.v + other, self.s, self.t, self.ss, self.st, self.tt)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.v, -self.s, -self.t, -self.ss, -self.st, -self.tt)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            a, b = self, other
            return Jet(
                a.v * b.v,
                a.s * b.v + a.v * b.s,
                a.t * b.v + a.v * b.t,
                a.ss * b.v + 2.0 * a.s * b.s + a.v * b.ss,
                a.st * b.v + a.s * b.t + a.t * b.s + a.v * b.st,
                a.tt * b.v + 2.0 * a.t * b.t + a.v * b.tt,
            )
        return Jet(self.v * other, self.s * other, self.t * other,
                   self.ss * other, self.st * other, self.tt * other)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        r = 1.0 / self.v
        return self.compose(r, -r * r, 2.0 * r * r * r)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n):
        if isinstance(n, Jet):
            return exp(n * log(self))
        if n == 0:
            return Jet(np.ones_like(self.v, dtype=float))
        if n == 1:
            return self
        if n == 2:
            return self * self
        v = self.v
        return self.compose(v**n, n * v ** (n - 1), n * (n - 1) * v ** (n - 2))


def value(x):
    """Underlying value of a jet, or ``x`` itself for constants."""
    return x.v if isinstance(x, Jet) else x


def _lift(np_func, d1, d2):
    def f(x):
        if isinstance(x, Jet):
            v = x.v
            return x.compose(np_func(v), d1(v), d2(v))
        return np_func(x)

    f.__name__ = np_func.__name__
    return f


sin = _lift(np.sin, np.cos, lambda v: -np.sin(v))
cos = _lift(np.cos, lambda v: -np.sin(v), lambda v: -np.cos(v))
exp = _lift(np.exp, np.exp, np.exp)
log = _lift(np.log, lambda v: 1.0 / v, lambda v: -1.0 / (v * v))
sqrt = _lift(np.sqrt, lambda v: 0.5 / np.sqrt(v), lambda v: -0.25 / (v * np.sqrt(v)))
arctan = _lift(np.arctan, lambda v: 1.0 / (1.0 + v * v),
               lambda v: -2.0 * v / (1.0 + v * v) ** 2)


def tan(x):
    if isinstance(x, Jet):
        tv = np.tan(x.v)
        sec2 = 1.0 + tv * tv
        return x.compose(tv, sec2, 2.0 * tv * sec2)
    return np.tan(x)


def arctan2(y, x):
    """Polar angle of ``(x, y)``; either argument may be a jet."""
    if not isinstance(y, Jet) and not isinstance(x, Jet):
        return np.arctan2(y, x)
    if not isinstance(y, Jet):
        y = Jet(y)
    if not isinstance(x, Jet):
        x = Jet(x)
    r2 = x.v * x.v + y.v * y.v

    def first(xi, yi):
        return (x.v * yi - y.v * xi) / r2

    def second(xi, yi, xj, yj, xij, yij):
        num = xj * yi + x.v * yij - yj * xi - y.v * xij
        return num / r2 - first(xi, yi) * 2.0 * (x.v * xj + y.v * yj) / r2

    return Jet(
        np.arctan2(y.v, x.v),
        first(x.s, y.s),
        first(x.t, y.t),
        second(x.s, y.s, x.s, y.s, x.ss, y.ss),
        second(x.s, y.s, x.t, y.t, x.st, y.st),
        second(x.t, y.t, x.t, y.t, x.tt, y.tt),
    )
