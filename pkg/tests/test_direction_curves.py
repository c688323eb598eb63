import numpy as np
import pytest

from curvemate import (
    CurveSpec,
    FrameField,
    bertrand_transfer_check,
    build_curve,
    frenet_apparatus,
    integral_curve,
    integrate_frenet_ode,
    inverse_transform_curvatures,
    principal_donor,
    transform_curvatures,
)
from curvemate.errors import NonUnitCoefficients, NonUnitField, NotBertrand, VanishingV


def test_tangent_field_gives_translated_curve(helix11):
    moved = integral_curve(helix11, FrameField.tangent())
    s = helix11.grid()
    expected = helix11.point(s) - helix11.point(0.0)
    assert np.abs(moved.point(s) - expected).max() < 1e-9
    assert np.allclose(moved.point(moved.s_min), 0.0)


def test_principal_direction_curve_of_helix(helix11):
    curve = integral_curve(helix11, FrameField.principal())
    data = frenet_apparatus(curve)
    assert np.abs(data.kappa - 1.0 / np.sqrt(2.0)).max() < 1e-4
    assert np.abs(data.tau).max() < 1e-4


def test_binormal_direction_curve_of_helix(helix21):
    curve = integral_curve(helix21, FrameField.binormal())
    data = frenet_apparatus(curve)
    assert np.abs(data.kappa - 0.2).max() < 1e-4  # |tau| of the base
    assert np.abs(data.tau - 0.4).max() < 1e-4    # kappa of the base


def test_principal_direction_torsion_formula(salkowski_fixture, salkowski_data):
    # base has kappa = 1, tau = s: the principal-direction curve must have
    # kappa_1 = sqrt(1 + s^2) and tau_1 = 1/(1 + s^2).
    curve = integral_curve(salkowski_fixture, FrameField.principal(),
                           data=salkowski_data)
    data = frenet_apparatus(curve)
    inner = slice(16, -16)  # spline measurement loses accuracy at the ends
    s = data.s[inner]
    assert np.abs(data.kappa[inner] - np.sqrt(1.0 + s * s)).max() < 1e-4
    assert np.abs(data.tau[inner] - 1.0 / (1.0 + s * s)).max() < 1e-4


def test_integral_curve_same_parameter(helix21):
    field = FrameField.constant(0.6, 0.0, 0.8)
    curve = integral_curve(helix21, field)
    assert curve.s_min == helix21.s_min and curve.s_max == helix21.s_max
    assert np.abs(curve.speed(curve.grid()) - 1.0).max() < 1e-8


def test_integral_curve_tangent_equals_field(helix21, helix21_data):
    field = FrameField.constant(0.6, 0.0, 0.8)
    curve = integral_curve(helix21, field, data=helix21_data)
    s = helix21_data.s
    V = 0.6 * helix21_data.T + 0.8 * helix21_data.B
    assert np.abs(curve.derivative(s, 1) - V).max() < 1e-8


def test_integral_curve_preserves_normal(helix21, helix21_data):
    field = FrameField.constant(0.28, 0.0, 0.96)
    curve = integral_curve(helix21, field, data=helix21_data)
    d2 = curve.derivative(helix21_data.s, 2)
    n_v = d2 / np.linalg.norm(d2, axis=1, keepdims=True)
    dots = np.abs(np.einsum("ij,ij->i", n_v, helix21_data.N))
    assert dots.min() > 1.0 - 1e-8


def test_non_unit_field_rejected(helix11):
    with pytest.raises(NonUnitField):
        integral_curve(helix11, FrameField.constant(1.0, 0.0, 0.5))


def test_donor_of_circle(circle1):
    donor = principal_donor(circle1)
    data = frenet_apparatus(donor)
    assert np.abs(data.kappa - 1.0).max() < 1e-4
    assert np.abs(data.tau).max() < 1e-4


def test_donor_of_helix_matches_phase_formulas():
    base = build_curve(CurveSpec.helix(1.0, 1.0, length=2.0))
    donor = principal_donor(base)
    data = frenet_apparatus(donor)
    s = data.s
    assert np.abs(data.kappa - 0.5 * np.cos(0.5 * s)).max() < 1e-4
    assert np.abs(data.tau - 0.5 * np.sin(0.5 * s)).max() < 1e-4


def test_donor_clips_at_phase_crossing(helix11):
    donor = principal_donor(helix11)  # cos(s/2) vanishes at s = pi
    assert donor.s_max < np.pi
    assert donor.s_max > np.pi - 0.1
    assert len(donor.donor_crossings) >= 1


def test_donor_vanishing_at_start():
    spiky = build_curve(CurveSpec.helix(0.001, 0.01, length=10.0))  # tau ~ 99
    with pytest.raises(VanishingV):
        principal_donor(spiky)


def test_transform_identity(helix11_data):
    tc = transform_curvatures(helix11_data.kappa, helix11_data.tau, 1.0, 0.0)
    assert np.abs(tc.kappa_v - helix11_data.kappa).max() == 0.0
    assert np.abs(tc.tau_v - helix11_data.tau).max() == 0.0


def test_transform_binormal_signed(helix11_data):
    tc = transform_curvatures(helix11_data.kappa, helix11_data.tau, 0.0, 1.0)
    assert np.abs(tc.kappa_v + 0.5).max() < 1e-12  # signed value, pre-normalization
    assert np.abs(tc.tau_v - 0.5).max() < 1e-12


def test_transform_round_trip_random():
    rng = np.random.default_rng(7)
    for _ in range(200):
        angle = rng.uniform(0.0, 2.0 * np.pi)
        u, w = np.cos(angle), np.sin(angle)
        kappa = rng.uniform(0.1, 3.0, size=64)
        tau = rng.uniform(-2.0, 2.0, size=64)
        tc = transform_curvatures(kappa, tau, u, w)
        back_k, back_t = inverse_transform_curvatures(tc, u, w)
        assert np.abs(back_k - kappa).max() < 1e-12
        assert np.abs(back_t - tau).max() < 1e-12
        assert np.abs(tc.kappa_v**2 + tc.tau_v**2 - (kappa**2 + tau**2)).max() < 1e-10


def test_transform_requires_unit_pair(helix11_data):
    with pytest.raises(NonUnitCoefficients):
        transform_curvatures(helix11_data.kappa, helix11_data.tau, 0.9, 0.9)


def test_transfer_identity_field(helix11):
    report = bertrand_transfer_check(helix11, 1.0, 0.0)
    assert report.ok
    assert abs(report.lambda_bar - report.lambda_base) < 1e-12
    assert abs(report.mu_bar - report.mu_base) < 1e-12


def test_transfer_helix11_rotated_field(helix11):
    report = bertrand_transfer_check(helix11, 0.6, 0.8)
    assert abs(report.lambda_bar - (-0.2)) < 1e-12
    assert abs(report.mu_bar - 1.4) < 1e-12
    assert report.residual < 1e-10


def test_transfer_helix21_binormal(helix21):
    report = bertrand_transfer_check(helix21, 0.0, 1.0)
    assert report.residual < 1e-10
    assert report.ok


def test_transfer_requires_bertrand_base():
    wiggly = integrate_frenet_ode(lambda s: 1.0 + 0.5 * np.sin(s),
                                  lambda s: np.cos(2.0 * s), 6.0)
    with pytest.raises(NotBertrand):
        bertrand_transfer_check(wiggly, 0.6, 0.8)
