import numpy as np
import pytest

from curvemate import CurveSpec, ParametricCurve, build_curve, reparameterize_arclength
from curvemate.errors import (
    DegenerateSamples,
    InvalidSpec,
    NotRegular,
    OutOfDomain,
)

# Independent oracle (adaptive Gauss-Kronrod via scipy.integrate.quad) for the
# circumference of the ellipse (2 cos t, sin t, 0); cross-checked against
# 8*E(3/4) from scipy.special.ellipe. Frozen here.
ELLIPSE_LENGTH = 9.688448220547674


def test_helix_start_point_and_unit_speed(helix11):
    assert np.allclose(helix11.point(0.0), [1.0, 0.0, 0.0], atol=1e-15)
    speeds = helix11.speed(helix11.grid())
    assert np.abs(speeds - 1.0).max() < 1e-12


def test_helix_b_zero_is_planar_unit_circle():
    degenerate = build_curve(CurveSpec(family="helix", a=1.0, b=0.0, length=2 * np.pi))
    circle = build_curve(CurveSpec.circle(1.0))
    s = np.linspace(0.0, 2 * np.pi, 100)
    assert np.abs(degenerate.point(s) - circle.point(s)).max() < 1e-15
    assert np.abs(degenerate.point(s)[:, 2]).max() == 0.0


def test_sampled_helix_positions_match_analytic(helix21):
    pts = helix21.point(np.linspace(0.0, 10.0, 64))
    sampled = build_curve(CurveSpec.sampled(pts))
    probe = np.linspace(0.0, sampled.s_max - sampled.s_min, 500)
    deviation = np.abs(sampled.point(sampled.s_min + probe) - helix21.point(probe)).max()
    assert deviation < 1e-6


def test_reparameterize_circle_by_angle():
    raw = ParametricCurve.from_expressions(("2*cos(t)", "2*sin(t)", "0"), (0.0, 2 * np.pi))
    curve = reparameterize_arclength(raw)
    assert abs(curve.length() - 4 * np.pi) < 1e-10
    assert np.abs(curve.speed(curve.grid()) - 1.0).max() < 1e-10


def test_reparameterize_idempotent(helix11):
    again = reparameterize_arclength(helix11)
    assert again is helix11
    s = np.linspace(helix11.s_min, helix11.s_max, 257)
    assert np.abs(again.point(s) - helix11.point(s)).max() < 1e-10


def test_ellipse_length_matches_adaptive_quadrature_oracle():
    raw = ParametricCurve.from_expressions(("2*cos(t)", "sin(t)", "0"), (0.0, 2 * np.pi))
    curve = reparameterize_arclength(raw)
    assert abs(curve.length() - ELLIPSE_LENGTH) / ELLIPSE_LENGTH < 1e-8


def test_first_derivative_unit_norm(helix11):
    s = np.linspace(0.0, 10.0, 97)
    norms = np.linalg.norm(helix11.derivative(s, 1), axis=1)
    assert np.abs(norms - 1.0).max() < 1e-9


def test_circle_second_derivative_at_zero(circle1):
    assert np.allclose(circle1.derivative(0.0, 2), [-1.0, 0.0, 0.0], atol=1e-14)


def test_sampled_third_derivative_matches_closed_form(helix11):
    pts = helix11.point(np.linspace(0.0, 10.0, 256))
    sampled = build_curve(CurveSpec.sampled(pts))
    got = sampled.derivative(sampled.s_min + 1.0, 3)
    c = np.sqrt(2.0)
    expected = np.array([np.sin(1.0 / c) / c**3, -np.cos(1.0 / c) / c**3, 0.0])
    assert np.abs(got - expected).max() < 1e-5


@pytest.mark.parametrize("spec", [
    CurveSpec.helix(1.0, 1.0),
    CurveSpec.helix(2.0, 1.0),
    CurveSpec.circle(2.0),
    CurveSpec.line((0.3, -0.4, 0.5)),
])
def test_sampled_copy_reproduces_derivatives(spec):
    analytic = build_curve(spec)
    pts = analytic.point(analytic.grid(256))
    sampled = build_curve(CurveSpec.sampled(pts))
    inset = 0.05 * analytic.length()
    probe = np.linspace(inset, analytic.length() - inset, 300)
    for order in (1, 2, 3):
        da = analytic.derivative(analytic.s_min + probe, order)
        ds = sampled.derivative(sampled.s_min + probe, order)
        assert np.abs(da - ds).max() < 1e-5, (spec.family, order)


def test_out_of_domain(helix11):
    with pytest.raises(OutOfDomain):
        helix11.point(10.5)
    with pytest.raises(OutOfDomain):
        helix11.derivative(-0.5, 1)


def test_invalid_specs():
    with pytest.raises(InvalidSpec):
        build_curve(CurveSpec(family="helix", a=0.0, b=1.0))
    with pytest.raises(InvalidSpec):
        build_curve(CurveSpec(family="circle", r=-1.0))
    with pytest.raises(InvalidSpec):
        build_curve(CurveSpec(family="line", direction=(0.0, 0.0, 0.0)))
    with pytest.raises(InvalidSpec):
        build_curve(CurveSpec(family="warp"))
    with pytest.raises(InvalidSpec):
        build_curve(CurveSpec.helix(1.0, 1.0, sample_count=16))


def test_degenerate_samples():
    with pytest.raises(DegenerateSamples):
        build_curve(CurveSpec.sampled(np.zeros((10, 3))))
    few = np.column_stack([np.linspace(0, 1, 6), np.zeros(6), np.zeros(6)])
    with pytest.raises(DegenerateSamples):
        build_curve(CurveSpec.sampled(few))
    repeated = np.array([[i, 0.0, 0.0] for i in range(8)], dtype=float)
    repeated[4] = repeated[3]
    with pytest.raises(DegenerateSamples):
        build_curve(CurveSpec.sampled(repeated))


def test_sphere_curve_must_sit_on_unit_sphere():
    with pytest.raises(InvalidSpec):
        build_curve(CurveSpec.sphere_curve(("2*cos(t)", "2*sin(t)", "0"), (0.0, 3.0)))
    ok = build_curve(CurveSpec.sphere_curve(("cos(t)", "sin(t)", "0"), (0.0, 3.0)))
    radii = np.linalg.norm(ok.point(ok.grid()), axis=1)
    assert np.abs(radii - 1.0).max() < 1e-9


def test_not_regular_rejected():
    # cusp sits at t = 0, which is on the check grid
    raw = ParametricCurve.from_expressions(("t**2", "t**3", "0"), (0.0, 1.0))
    with pytest.raises(NotRegular):
        reparameterize_arclength(raw)


def test_restrict(helix11):
    part = helix11.restrict(1.0, 3.0)
    assert part.s_min == 1.0 and part.s_max == 3.0
    assert np.allclose(part.point(2.0), helix11.point(2.0))
    with pytest.raises(OutOfDomain):
        part.point(0.5)
    with pytest.raises(OutOfDomain):
        helix11.restrict(-1.0, 3.0)


def test_rigid_transform_moves_points(helix11):
    angle = 0.7
    rot = np.array([
        [np.cos(angle), -np.sin(angle), 0.0],
        [np.sin(angle), np.cos(angle), 0.0],
        [0.0, 0.0, 1.0],
    ])
    moved = helix11.rigid_transformed(rot, (1.0, -2.0, 3.0))
    s = np.linspace(0.0, 10.0, 50)
    assert np.abs(moved.point(s) - (helix11.point(s) @ rot.T + [1, -2, 3])).max() < 1e-12
    assert np.abs(moved.speed(s) - 1.0).max() < 1e-12
