import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stationary_ruled import jet as J
from stationary_ruled.jet import Jet


def mixed(s, t):
    """A map exercising every jet primitive."""
    return (J.sin(s) * J.exp(0.3 * t) / (2.0 + J.cos(s * t))
            + J.sqrt(1.0 + s * s) * J.arctan(t)
            + J.log(2.0 + s * s * t * t) - J.tan(0.4 * s) ** 3
            + J.arctan2(1.0 + 0.2 * t, 2.0 + s) + (1.5 + s * t) ** 2.5)


def jet_at(f, s, t):
    return f(Jet.variable_s(s), Jet.variable_t(t))


def fd_partials(f, s, t, h):
    def v(ds, dt):
        return f(s + ds, t + dt)

    fs = (v(h, 0) - v(-h, 0)) / (2 * h)
    ft = (v(0, h) - v(0, -h)) / (2 * h)
    fss = (v(h, 0) - 2 * v(0, 0) + v(-h, 0)) / h**2
    ftt = (v(0, h) - 2 * v(0, 0) + v(0, -h)) / h**2
    fst = (v(h, h) - v(h, -h) - v(-h, h) + v(-h, -h)) / (4 * h * h)
    return np.array([fs, ft, fss, fst, ftt])


def jet_partials(j):
    return np.array([j.s, j.t, j.ss, j.st, j.tt], dtype=float)


coord = st.floats(-0.6, 0.6)


@settings(max_examples=40, deadline=None)
@given(coord, coord)
def test_partials_match_central_differences(s, t):
    j = jet_at(mixed, s, t)
    assert j.v == pytest.approx(mixed(s, t), rel=1e-14, abs=1e-14)
    assert np.allclose(jet_partials(j), fd_partials(mixed, s, t, 1e-4), rtol=1e-6, atol=1e-6)


def test_finite_difference_gap_shrinks_at_second_order():
    s, t = 0.31, -0.27
    exact = jet_partials(jet_at(mixed, s, t))
    errs = [np.max(np.abs(fd_partials(mixed, s, t, h) - exact)) for h in (1e-2, 5e-3, 2.5e-3)]
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(orders > 1.9)


def test_vectorized_fields_equal_pointwise_evaluation():
    s = np.linspace(-0.5, 0.5, 7)
    t = np.linspace(0.4, -0.3, 7)
    batch = jet_at(mixed, s, t)
    for k in range(len(s)):
        single = jet_at(mixed, s[k], t[k])
        assert np.allclose(jet_partials(batch)[:, k], jet_partials(single), rtol=1e-14, atol=0)


def test_product_and_quotient_rules():
    s, t = Jet.variable_s(0.7), Jet.variable_t(-1.3)
    p = s * s * t
    assert (p.v, p.s, p.t, p.ss, p.st, p.tt) == pytest.approx((0.49 * -1.3, 2 * 0.7 * -1.3, 0.49,
                                                              2 * -1.3, 2 * 0.7, 0.0))
    q = 1.0 / s
    assert (q.s, q.ss) == pytest.approx((-1 / 0.49, 2 / 0.7**3))
    assert (s / s).s == pytest.approx(0.0, abs=1e-15)


def test_powers_and_constants():
    s = Jet.variable_s(2.0)
    assert (s**0).v == 1.0 and (s**0).s == 0.0
    assert (s**1) is s
    cube = s**3
    assert (cube.v, cube.s, cube.ss) == (8.0, 12.0, 12.0)
    two_s = 2.0**0 * s + s
    assert two_s.s == 2.0
    assert (3.0 - s).s == -1.0


def test_arctan2_is_continuous_across_negative_axis_derivatives():
    # derivatives of the polar angle are smooth even where the value jumps
    y = Jet.variable_s(1e-12)
    left = J.arctan2(y, Jet(-1.0))
    assert left.s == pytest.approx(-1.0)
    assert J.arctan2(0.5, 2.0) == pytest.approx(np.arctan2(0.5, 2.0))


def test_float_inputs_pass_through():
    assert J.sin(0.5) == pytest.approx(np.sin(0.5))
    assert J.value(3.0) == 3.0
    assert J.value(Jet(4.0)) == 4.0
