"""Spherical-curve tests and the constructions linking them to Bertrand curves.

A curve with positive curvature lies on a sphere of radius R exactly when

    1/kappa(s) = R cos( integral of tau from s_min to s  +  theta_0 ),

which is the form fitted here (the classical differentiated identity has a
1/tau factor and is useless near torsion zeros). From a spherical curve M
one obtains a Bertrand or B-Bertrand curve K by integrating

    beta''(s) = S(s) gamma'(s),   S(s) = kappa(s) cos(phase(s) + theta_0),

twice; K has curvatures kappa_bar = kappa cos(phase + theta_0) and
tau_bar = kappa sin(phase + theta_0), its principal normal is collinear
with M's tangent, and K is the principal-donor curve of M. Unit-sphere
curves also carry the frame {gamma, T, Y = gamma x T} with geodesic
curvature kappa_g = det(gamma, T, T'), from which the two-parameter
generator

    a * integral of gamma ds + a*cot(theta) * integral of Y ds

produces Bertrand curves after arc-length reparameterization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import make_interp_spline

from .bertrand import BertrandFit, fit_bertrand
from .curves import Curve, ParametricCurve, curve_from_unit_speed_samples, reparameterize_arclength
from .errors import DegenerateParameters, NotOnUnitSphere, SpeedDrift
from .frenet import FrenetData, frenet_apparatus
from .integrals import cumulative, cumulative_smooth

UNIT_SPHERE_TOL = 1e-6
SPEED_DRIFT_TOL = 1e-4
KAPPA_MEASURE_MIN = 1e-5


@dataclass
class SphereFit:
    """Sphere-membership fit via the curvature-phase identity.

    ``osculating_ratio`` is cos(theta0), the ratio of the osculating circle
    radius at s_min to the sphere radius. For torsion-free curves the
    radius and phase cannot be separated; the fit then reports theta0 = 0,
    R = 1/kappa(s_min) and sets ``radius_degenerate``.
    """

    R: float
    theta0: float
    center: np.ndarray | None
    residual: float
    osculating_ratio: float
    radius_degenerate: bool
    accepted: bool


def fit_sphere(data: FrenetData, tol=None) -> SphereFit:
    """Fit (R, theta0) from 1/kappa and its derivative at s_min, then check.

    The fit anchors cos and sin components at the first grid point
    (falling back to a linear least-squares fit over the whole grid when
    the torsion vanishes there) and is accepted when the identity holds
    pointwise within tol.
    """
    if tol is None:
        tol = 1e-6 if data.analytic else 1e-3
    s = data.s
    recip = 1.0 / data.kappa
    phase = cumulative(data.tau, s)

    degenerate = float(np.abs(phase).max()) < 1e-8
    if degenerate:
        R = float(recip[0])
        theta0 = 0.0
        predicted = np.full_like(recip, R)
    else:
        r_cos = float(recip[0])
        tau0 = float(data.tau[0])
        if abs(tau0) > 1e-8:
            d_recip = float(make_interp_spline(s, recip, k=5).derivative()(s[0]))
            r_sin = -d_recip / tau0
        else:
            basis = np.column_stack([np.cos(phase), np.sin(phase)])
            coeffs, *_ = np.linalg.lstsq(basis, recip, rcond=None)
            r_cos, r_sin = float(coeffs[0]), -float(coeffs[1])
        R = float(np.hypot(r_cos, r_sin))
        theta0 = float(np.arctan2(r_sin, r_cos) % (2.0 * np.pi))
        predicted = R * np.cos(phase + theta0)

    residual = float(np.abs(recip - predicted).max())
    accepted = residual < tol
    center = None
    if data.curve is not None and accepted:
        points = data.curve.point(s)
        sin_term = R * np.sin(phase + theta0) if not degenerate else np.zeros_like(s)
        centers = points + recip[:, None] * data.N - sin_term[:, None] * data.B
        center = centers.mean(axis=0)
    return SphereFit(R=R, theta0=theta0, center=center, residual=residual,
                     osculating_ratio=float(np.cos(theta0)),
                     radius_degenerate=degenerate, accepted=accepted)


def spherical_test(data: FrenetData, tol=None) -> SphereFit | None:
    """fit_sphere, returning None instead of a rejected fit."""
    fit = fit_sphere(data, tol=tol)
    return fit if fit.accepted else None


def _require_unit_sphere(points):
    radii = np.linalg.norm(points, axis=-1)
    worst = float(np.abs(radii - 1.0).max())
    if worst > UNIT_SPHERE_TOL:
        raise NotOnUnitSphere(f"curve is off the unit sphere by {worst:.3e}")


@dataclass
class SabbanFrame:
    """Unit-sphere frame {gamma, T, Y = gamma x T} with geodesic curvature."""

    s: np.ndarray
    gamma: np.ndarray
    T: np.ndarray
    Y: np.ndarray
    kappa_g: np.ndarray


def sabban_frame(curve: Curve, n=None) -> SabbanFrame:
    """Frame of a unit-speed curve on the unit sphere."""
    s = curve.grid(n)
    gamma = curve.point(s)
    _require_unit_sphere(gamma)
    T = curve.derivative(s, 1)
    Y = np.cross(gamma, T)
    kappa_g = np.einsum("ij,ij->i", Y, curve.derivative(s, 2))
    return SabbanFrame(s=s, gamma=gamma, T=T, Y=Y, kappa_g=kappa_g)


def s_m_factor(curve: ParametricCurve, theta0=0.0):
    """Speed-cosine factor that makes integrals of a unit-sphere curve spherical.

    Returns a callable of the curve's parameter evaluating
    ||gamma'|| cos( integral of det(gamma, gamma', gamma'')/||gamma'||^2 + theta0 )
    with the phase integral anchored at the domain start.
    """
    t = curve.grid()
    gamma = curve.point(t)
    _require_unit_sphere(gamma)
    g1 = curve.derivative(t, 1)
    g2 = curve.derivative(t, 2)
    speed_sq = np.einsum("ij,ij->i", g1, g1)
    integrand = np.einsum("ij,ij->i", np.cross(gamma, g1), g2) / speed_sq
    phase_spline = make_interp_spline(t, cumulative(integrand, t), k=5)

    def factor(tv):
        tv = np.asarray(tv, dtype=float)
        speed = np.linalg.norm(curve.derivative(tv, 1), axis=-1)
        return speed * np.cos(phase_spline(tv) + theta0)

    return factor


def bertrand_from_spherical(curve: Curve, theta0, data: FrenetData | None = None,
                            tol=None) -> tuple[Curve, BertrandFit]:
    """Double integration of beta'' = S(s) T(s) into a Bertrand-type curve.

    The first integration constant is -cos(theta0) N(s_min) + sin(theta0)
    B(s_min), which makes the result unit-speed by construction; the speed
    is still checked and SpeedDrift raised beyond 1e-4. The returned fit is
    the accepted detection (trying kind "bertrand" then "b_bertrand"); for
    non-spherical input it is simply the rejected record.
    """
    if data is None:
        data = frenet_apparatus(curve)
    s = data.s
    phase = cumulative_smooth(data.tau, s) + float(theta0)
    factor = data.kappa * np.cos(phase)
    beta1 = (-np.cos(theta0)) * data.N[0] + np.sin(theta0) * data.B[0] \
        + cumulative_smooth(factor[:, None] * data.T, s)
    drift = float(np.abs(np.linalg.norm(beta1, axis=1) - 1.0).max())
    if drift > SPEED_DRIFT_TOL:
        raise SpeedDrift(f"integrated tangent drifts from unit length by {drift:.3e}")
    beta = cumulative_smooth(beta1, s)
    built = curve_from_unit_speed_samples(s, beta, sample_count=curve.sample_count,
                                          family="spherical_mate")
    built.donor_origin = {
        "theta0": float(theta0),
        "s": s,
        "phase": phase,
        "kappa_bar": factor,
        "tau_bar": data.kappa * np.sin(phase),
    }
    built_data = frenet_apparatus(built)
    fit = fit_bertrand(built_data, kind="bertrand", tol=tol)
    if not fit.accepted:
        alt = fit_bertrand(built_data, kind="b_bertrand", tol=tol)
        if alt.accepted:
            fit = alt
    return built, fit


@dataclass
class DonorDualityReport:
    """Residuals tying a spherical curve to its double-integrated companion.

    ``tangent_residual``: sup distance between the companion's measured
    tangent and -cos(phase) N + sin(phase) B in the base frame.
    ``reconstruction_residual``: sup distance between the cumulative
    integral of the companion's (sign-corrected) normal and the base curve.
    """

    tangent_residual: float
    reconstruction_residual: float
    epsilon: int
    coverage: float


def donor_duality_check(curve: Curve, companion: Curve, theta0=None,
                        data: FrenetData | None = None) -> DonorDualityReport:
    """Check the donor/direction duality between a curve and its companion."""
    if data is None:
        data = frenet_apparatus(curve)
    s = data.s
    if theta0 is None:
        origin = getattr(companion, "donor_origin", None)
        if origin is None:
            raise ValueError("companion carries no construction record; pass theta0")
        theta0 = origin["theta0"]
    phase = cumulative(data.tau, s) + float(theta0)
    predicted_T = -np.cos(phase)[:, None] * data.N + np.sin(phase)[:, None] * data.B

    sbar = np.clip(s - s[0] + companion.s_min, companion.s_min, companion.s_max)
    d1 = companion.derivative(sbar, 1)
    d2 = companion.derivative(sbar, 2)
    speed = np.linalg.norm(d1, axis=1)
    T_bar = d1 / speed[:, None]
    tangent_residual = float(np.linalg.norm(T_bar - predicted_T, axis=1).max())

    cross = np.cross(d1, d2)
    ncross = np.linalg.norm(cross, axis=1)
    kappa_geo = ncross / speed**3
    measured = kappa_geo >= KAPPA_MEASURE_MIN
    N_bar = np.empty_like(d1)
    if np.any(measured):
        B_m = cross[measured] / ncross[measured, None]
        N_bar[measured] = np.cross(B_m, T_bar[measured])
    if not measured.all():
        N_bar[~measured] = data.T[~measured]
    first = int(np.flatnonzero(measured)[0]) if np.any(measured) else 0
    epsilon = int(np.sign(np.sum(N_bar[first] * data.T[first]))) or 1

    recon = cumulative(float(epsilon) * N_bar, s)
    target = curve.point(s) - curve.point(s[0])
    reconstruction_residual = float(np.linalg.norm(recon - target, axis=1).max())
    return DonorDualityReport(
        tangent_residual=tangent_residual,
        reconstruction_residual=reconstruction_residual,
        epsilon=epsilon,
        coverage=float(measured.mean()),
    )


def sabban_bertrand(curve: Curve, a, theta, tol=None) -> tuple[Curve, BertrandFit]:
    """Bertrand curve generated from the unit-sphere frame of a spherical curve.

    Integrates a*gamma + a*cot(theta)*Y along the curve (constants zero at
    s_min), reparameterizes by arc length and runs Bertrand detection on
    the result.
    """
    a = float(a)
    if a == 0.0 or abs(np.sin(theta)) < 1e-12:
        raise DegenerateParameters("need a != 0 and sin(theta) != 0")
    frame = sabban_frame(curve)
    integrand = a * frame.gamma + a / np.tan(theta) * frame.Y
    points = cumulative_smooth(integrand, frame.s)
    spline = make_interp_spline(frame.s, points, k=5)
    raw = ParametricCurve(spline, tuple(spline.derivative(m) for m in (1, 2, 3)),
                          (frame.s[0], frame.s[-1]), sample_count=curve.sample_count,
                          analytic=False, family="sabban")
    result = reparameterize_arclength(raw)
    fit = fit_bertrand(frenet_apparatus(result), kind="bertrand", tol=tol)
    return result, fit
