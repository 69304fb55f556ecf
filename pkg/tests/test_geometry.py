import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stationary_ruled import jet as J
from stationary_ruled.errors import DegenerateParametrizationError, EvaluationDomainError
from stationary_ruled.families import family_sol1
from stationary_ruled.geometry import (
    fundamental_data,
    gauss_curvature,
    graph_map,
    jet_of,
    mean_curvature,
)


def plane(s, t):
    return (s, t, 0.0 * s)


def bilinear(s, t):
    return (s, t, s * t)


def test_plane_jet():
    j = jet_of(plane, 1.0, 2.0)
    assert np.allclose(j.X, [1, 2, 0])
    assert np.allclose(j.Xs, [1, 0, 0]) and np.allclose(j.Xt, [0, 1, 0])
    for d in (j.Xss, j.Xst, j.Xtt):
        assert np.all(d == 0)


def test_bilinear_jet():
    j = jet_of(bilinear, 0.4, -1.1)
    assert np.allclose(j.Xst, [0, 0, 1])
    assert np.all(j.Xss == 0) and np.all(j.Xtt == 0)


def test_helicoid_jet_matches_central_differences():
    X = family_sol1().surface()
    s, t, h = 0.3, 0.7, 1e-4
    j = jet_of(X, s, t)

    def ev(ds, dt):
        return np.array(X(s + ds, t + dt), dtype=float)

    fd = [
        (ev(h, 0) - ev(-h, 0)) / (2 * h),
        (ev(0, h) - ev(0, -h)) / (2 * h),
        (ev(h, 0) - 2 * ev(0, 0) + ev(-h, 0)) / h**2,
        (ev(h, h) - ev(h, -h) - ev(-h, h) + ev(-h, -h)) / (4 * h * h),
        (ev(0, h) - 2 * ev(0, 0) + ev(0, -h)) / h**2,
    ]
    for exact, approx in zip((j.Xs, j.Xt, j.Xss, j.Xst, j.Xtt), fd):
        assert np.max(np.abs(exact - approx)) < 1e-7


def test_non_finite_map_raises():
    with pytest.raises(EvaluationDomainError):
        jet_of(lambda s, t: (s, t, J.log(s)), -1.0, 0.0)
    j = jet_of(lambda s, t: (s, t, J.log(s)), np.array([-1.0, 1.0]), 0.0, strict=False)
    assert np.isnan(j.X[2, 0]) and np.isfinite(j.X[2, 1])


def test_plane_fundamentals():
    fd = fundamental_data(jet_of(plane, 0.2, 0.3))
    assert (fd.h11, fd.h12, fd.h22) == (0.0, 0.0, 0.0)
    assert np.allclose(fd.nu, [0, 0, 1]) and fd.nu3 == 1.0


def test_sphere_patch_has_unit_gauss_curvature():
    u = lambda x, y: J.sqrt(1.0 - x * x - y * y)  # noqa: E731
    fd = fundamental_data(jet_of(graph_map(u), 0.1, -0.2))
    assert gauss_curvature(fd) == pytest.approx(1.0, rel=1e-12)


def test_cylinder_second_form_sign():
    cyl = lambda s, t: (J.cos(s), J.sin(s), 0.0 * s + t)  # noqa: E731
    fd = fundamental_data(jet_of(cyl, 0.8, 0.1))
    # the normal Xs x Xt points outward, so the cylinder bends away from it
    assert fd.h11 == pytest.approx(-1.0)
    assert fd.h12 == 0.0 and fd.h22 == 0.0
    assert mean_curvature(fd) == pytest.approx(-0.5)


def test_degenerate_point_detected():
    cone = lambda s, t: (t * J.cos(s), t * J.sin(s), t)  # noqa: E731
    with pytest.raises(DegenerateParametrizationError):
        fundamental_data(jet_of(cone, 0.3, 0.0))
    fd = fundamental_data(jet_of(cone, 0.3, np.array([0.0, 1.0])), strict=False)
    assert np.isnan(fd.nu3[0]) and np.isfinite(fd.nu3[1])


def test_regularity_is_scale_aware():
    tiny = lambda s, t: (1e-9 * s, 1e-9 * t, 1e-9 * s * s)  # noqa: E731
    fd = fundamental_data(jet_of(tiny, 0.1, 0.2))
    assert np.isfinite(fd.nu3)


def wavy(s, t):
    return (s + 0.3 * J.sin(t), t - 0.2 * s * s, 0.5 * J.cos(s + t) + 0.1 * s * t)


def rotation_z(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])


@settings(max_examples=25, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(0, 2 * np.pi),
       st.tuples(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5)))
def test_fundamentals_invariant_under_translation_and_z_rotation(s, t, theta, shift):
    j = jet_of(wavy, s, t)
    base = fundamental_data(j)
    moved = fundamental_data(j.transformed(rotation_z(theta), np.array(shift)))
    for name in ("g11", "g12", "g22", "detG", "h11", "h12", "h22", "nu3"):
        assert getattr(moved, name) == pytest.approx(getattr(base, name), rel=1e-12, abs=1e-12)


def test_reversing_s_flips_orientation_consistently():
    s, t = 0.4, -0.3
    fd = fundamental_data(jet_of(wavy, s, t))
    rev = fundamental_data(jet_of(lambda u, v: wavy(-u, v), -s, t))
    assert np.allclose(rev.nu, -fd.nu)
    # h_ij = <nu, X_ij>: the normal flips and X_s changes sign
    assert rev.h11 == pytest.approx(-fd.h11)
    assert rev.h12 == pytest.approx(fd.h12)
    assert rev.h22 == pytest.approx(-fd.h22)
    # as a quadratic form on tangent vectors the second form changes sign with the normal
    w = np.array([0.7, -1.2])
    q = np.array([[fd.h11, fd.h12], [fd.h12, fd.h22]])
    q_rev = np.array([[rev.h11, rev.h12], [rev.h12, rev.h22]])
    w_rev = np.array([-w[0], w[1]])
    assert w_rev @ q_rev @ w_rev == pytest.approx(-(w @ q @ w))
    assert mean_curvature(rev) == pytest.approx(-mean_curvature(fd))
