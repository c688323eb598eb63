import numpy as np
import pytest

from curvemate import (
    CurveSpec,
    FrameField,
    build_curve,
    detect_bertrand,
    f_bertrand_coefficients,
    f_bertrand_mates,
    fit_bertrand,
    frenet_apparatus,
    rigid_deviation,
    translation_deviation,
    v_bertrand_mate,
    verify_mate,
)
from curvemate.errors import (
    ConditionError,
    ConditionViolated,
    DegenerateOffset,
    NoRealBranch,
)


def test_detect_helix11(helix11_data):
    fit = fit_bertrand(helix11_data)
    assert fit.accepted
    assert abs(fit.lam - 1.0) < 1e-12 and abs(fit.mu - 1.0) < 1e-12
    assert fit.residual < 1e-12


def test_detect_circle_planar_both_kinds(circle1_data):
    for kind in ("bertrand", "b_bertrand"):
        fit = fit_bertrand(circle1_data, kind=kind)
        assert fit.accepted and fit.planar_special


def test_detect_salkowski(salkowski_data):
    fit = fit_bertrand(salkowski_data, "bertrand")
    assert fit.accepted
    assert abs(fit.lam - 1.0) < 1e-6 and abs(fit.mu) < 1e-6
    rejected = fit_bertrand(salkowski_data, "b_bertrand")
    assert not rejected.accepted
    assert rejected.residual > 0.1
    assert detect_bertrand(salkowski_data, "b_bertrand") is None


def test_detect_anti_salkowski(anti_salkowski_data):
    fit = fit_bertrand(anti_salkowski_data, "b_bertrand")
    assert fit.accepted
    assert abs(fit.mu + 1.0) < 1e-6 and abs(fit.lam) < 1e-6
    rejected = fit_bertrand(anti_salkowski_data, "bertrand")
    assert not rejected.accepted
    assert rejected.residual > 0.1


def test_fit_faithfulness(helix21_data, salkowski_data):
    for data, kind in ((helix21_data, "bertrand"), (salkowski_data, "bertrand")):
        fit = fit_bertrand(data, kind)
        assert fit.accepted
        rhs = 1.0 if kind == "bertrand" else -1.0
        resid = np.abs(fit.lam * data.kappa + fit.mu * data.tau - rhs).max()
        assert resid < data.default_tol()


def test_proper_bertrand_symmetry(helix21_data):
    plus = fit_bertrand(helix21_data, "bertrand")
    minus = fit_bertrand(helix21_data, "b_bertrand")
    assert plus.accepted and minus.accepted
    assert abs(plus.lam + minus.lam) < 1e-12
    assert abs(plus.mu + minus.mu) < 1e-12
    assert abs(plus.residual - minus.residual) < 1e-12


def test_theta_consistency(helix21_data, salkowski_data):
    for data in (helix21_data, salkowski_data):
        fit = fit_bertrand(data, "bertrand")
        if abs(fit.lam) > 0:
            assert abs(fit.lam / np.tan(fit.theta) - fit.mu) < 1e-8


def test_classical_mate_is_line(helix11):
    mate, report = v_bertrand_mate(helix11, FrameField.tangent(), np.arctan(1.0), lam=1.0)
    assert report.accepted
    assert report.normal_collinearity > 1.0 - 1e-9
    s = np.linspace(mate.s_min, mate.s_max, 400)
    line = np.stack([np.zeros_like(s), np.zeros_like(s), s - s[0]], axis=1)
    pts = mate.point(s)
    assert translation_deviation(pts, pts * [0, 0, 1]) < 1e-9  # already on the z-axis
    assert np.abs(pts[:, :2]).max() < 1e-9
    assert abs(mate.length() - 10.0 / np.sqrt(2.0)) < 1e-6
    del line


def test_principal_field_mate_general_helix(helix21):
    theta = float(np.arctan(-0.5))  # tan(theta) = -tau/kappa
    mate, report = v_bertrand_mate(helix21, FrameField.principal(), theta)
    assert report.accepted
    pairing = mate.pairing
    assert np.abs(pairing.lam - (-(pairing.s - pairing.s[0]))).max() < 1e-12
    assert abs(np.tan(report.theta_mean) - (-0.5)) < 1e-8


def test_binormal_field_mate_on_anti_salkowski(anti_salkowski_fixture, anti_salkowski_data):
    mate, report = v_bertrand_mate(anti_salkowski_fixture, FrameField.binormal(), 0.0,
                                   data=anti_salkowski_data)
    assert report.accepted
    assert np.abs(mate.pairing.lam + 1.0).max() < 1e-5


def test_condition_violated_rejects(helix21):
    with pytest.raises(ConditionViolated):
        v_bertrand_mate(helix21, FrameField.tangent(), 0.3, lam=5.0)
    # condition unsatisfiable at s_min: kappa*tan(theta) + tau = 0 with RHS != 0
    theta = float(np.arctan(-0.5))
    with pytest.raises(ConditionViolated):
        v_bertrand_mate(helix21, FrameField.tangent(), theta)


def test_degenerate_offset_rejected(helix11):
    alpha = 0.3
    theta = alpha  # u tan(theta) - w = 0 while kappa tan(theta) + tau != 0
    with pytest.raises(DegenerateOffset):
        v_bertrand_mate(helix11, FrameField.constant(np.cos(alpha), 0.0, np.sin(alpha)),
                        theta)


def test_branch_coefficients_example_f_equals_one():
    a, b, lam = 1.0, 1.0, 1.0
    c2 = a * a + b * b
    tan_theta = (c2 - lam * b) / (lam * a)
    branches = f_bertrand_coefficients(1.0, np.arctan(tan_theta))
    assert abs(branches.u_minus) < 1e-12
    u_plus_expected = 2 * lam * a * (c2 - lam * b) / (c2 * (a * a + (lam - b) ** 2))
    assert abs(branches.u_plus - u_plus_expected) < 1e-12
    assert abs(abs(branches.w2_plus) - 1.0) < 1e-12


@pytest.mark.parametrize("theta", [0.2, 0.5, 0.9, 1.2, -0.7])
def test_branch_coefficients_example_f_equals_tan_theta(theta):
    branches = f_bertrand_coefficients(np.tan(theta), theta)
    assert abs(branches.u_plus - 1.0) < 1e-12
    assert abs(branches.u_minus - (-np.cos(2 * theta))) < 1e-12
    assert abs(branches.w1_plus) < 1e-12  # sqrt(1 - u_plus^2) = 0
    assert abs(abs(branches.w2_plus) - abs(np.sin(2 * theta))) < 1e-12


def test_branch_coefficients_zero_case():
    branches = f_bertrand_coefficients(0.0, 0.0)
    assert {round(branches.u_plus, 12), round(branches.u_minus, 12)} == {1.0, -1.0}
    for name, u, w, valid in branches.branches():
        if valid:
            assert abs(u * branches.tan_theta - w - 0.0) < 1e-12


def test_branch_algebra_random():
    rng = np.random.default_rng(20240817)
    checked = 0
    for _ in range(1000):
        theta = rng.uniform(-1.3, 1.3)
        limit = np.sqrt(1.0 + np.tan(theta) ** 2)
        f = rng.uniform(-limit, limit)
        branches = f_bertrand_coefficients(f, theta)
        for name, u, w, valid in branches.branches():
            if valid:
                checked += 1
                assert abs(u * u + w * w - 1.0) < 1e-8
                assert abs(u * np.tan(theta) - w - f) < 1e-8
    assert checked >= 1000


def test_no_real_branch():
    with pytest.raises(NoRealBranch):
        f_bertrand_coefficients(3.0, 0.0)


def test_f_bertrand_mates_helix_f_one(helix11):
    mates = f_bertrand_mates(helix11, 1.0, np.arctan(1.0))
    assert len(mates) == 4
    s = helix11.grid()
    c = np.sqrt(2.0)
    lam = 1.0
    line = np.stack([np.zeros_like(s), np.zeros_like(s), s / c], axis=1)
    fat = np.stack([(lam + 1.0) * np.cos(s / c), (lam + 1.0) * np.sin(s / c), s / c], axis=1)
    best_line, best_fat = np.inf, np.inf
    for mate, report in mates:
        assert report.accepted
        pts = mate.point(np.linspace(mate.s_min, mate.s_max, len(s)))
        best_line = min(best_line, translation_deviation(pts, line, allow_reversal=True))
        best_fat = min(best_fat, rigid_deviation(pts, fat, allow_reversal=True))
    assert best_line < 1e-6   # the straight mate appears among the branches
    assert best_fat < 1e-6    # so does the radius lam + b helix


def test_f_bertrand_mates_tangent_branch(helix11):
    # with f = tan(theta) one branch reduces to the tangent field, i.e. the
    # classical offset by lam = f/(kappa tan + tau)
    lam = 0.5
    tan_theta = (2.0 - lam) / lam  # (c^2 - lam*b)/(lam*a)
    mates = f_bertrand_mates(helix11, tan_theta, np.arctan(tan_theta))
    tangent = [m for m, r in mates if abs(m.pairing.u[0] - 1.0) < 1e-12]
    assert tangent
    mate = tangent[0]
    s = helix11.grid()
    expected = np.stack([(1.0 - lam) * np.cos(s / np.sqrt(2)),
                         (1.0 - lam) * np.sin(s / np.sqrt(2)),
                         s / np.sqrt(2)], axis=1)
    pts = mate.point(np.linspace(mate.s_min, mate.s_max, len(s)))
    assert rigid_deviation(pts, expected, allow_reversal=True) < 1e-6


def test_f_bertrand_mates_all_verified(helix21):
    mates = f_bertrand_mates(helix21, 0.5, 0.4)
    assert mates
    for mate, report in mates:
        check = verify_mate(helix21, mate)
        assert check.normal_collinearity > 1.0 - 1e-6


def test_f_bertrand_nonconstant_offset_rejected(salkowski_fixture):
    # kappa constant, tau = s: lambda = f/(kappa tan + tau) cannot be constant
    with pytest.raises(ConditionError):
        f_bertrand_mates(salkowski_fixture, 1.0, 0.5)


def test_verify_mate_line(helix11):
    mate, _ = v_bertrand_mate(helix11, FrameField.tangent(), np.arctan(1.0), lam=1.0)
    report = verify_mate(helix11, mate)
    assert report.accepted
    assert report.epsilon in (-1, 1)
    assert report.used_construction_frame


def test_verify_mate_rejects_translate(helix21):
    shifted = helix21.rigid_transformed(np.eye(3), (0.5, -0.25, 2.0))
    with pytest.raises(DegenerateOffset):
        verify_mate(helix21, shifted)


def test_verify_mate_theta_closed_form(helix11):
    # offset lam = 2 for the f = 1 family: tan(theta) = (c^2 - lam b)/(lam a) = 0
    mates = f_bertrand_mates(helix11, 1.0, 0.0)
    assert np.isclose(mates[0][0].pairing.lam[0], 2.0)
    for mate, _ in mates:
        report = verify_mate(helix11, mate)
        assert abs(np.tan(report.theta_mean) - 0.0) < 1e-8


def test_mate_report_invariants(helix21):
    rng = np.random.default_rng(5)
    for _ in range(10):
        angle = rng.uniform(0.0, 2.0 * np.pi)
        u, w = np.cos(angle), np.sin(angle)
        lam = rng.uniform(0.2, 2.0)
        den = u - lam * 0.4
        num = w + lam * 0.2
        if abs(den) < 0.1 or np.hypot(den, num) < 0.1:
            continue
        theta = float(np.arctan2(num, den))
        if abs(np.cos(theta)) < 1e-6:
            continue
        _, report = v_bertrand_mate(helix21, FrameField.constant(u, 0.0, w), theta,
                                    lam=lam)
        if report.accepted:
            assert report.normal_collinearity > 1.0 - 1e-6
            assert report.theta_deviation < 1e-5
