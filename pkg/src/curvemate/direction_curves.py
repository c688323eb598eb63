"""Integral curves of frame vector fields and the induced curvature transforms.

A unit field V = uT + vN + wB along a base curve integrates to a new curve
with the same arc-length parameter. For constant (u, w) with v = 0 the new
curvature pair is the rotation (kappa_V, tau_V) = (u kappa - w tau,
w kappa + u tau), which is what lets Bertrand coefficients transfer between
a curve and its integral curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import make_interp_spline

from .curves import Curve, curve_from_unit_speed_samples
from .errors import (
    NonUnitCoefficients,
    NonUnitField,
    NotBertrand,
    VanishingV,
)
from .frenet import FrenetData, frenet_apparatus
from .integrals import cumulative

UNIT_FIELD_TOL = 1e-8
DONOR_V_MIN = 1e-6


def _coefficient(value, s):
    if callable(value):
        return np.broadcast_to(np.asarray(value(s), dtype=float), np.shape(s)).astype(float)
    return np.full(np.shape(s), float(value))


@dataclass
class FrameField:
    """Coefficients (u, v, w) of a unit vector field V = uT + vN + wB.

    Each coefficient is a constant or a vectorized function of arc length.
    """

    u: float | Callable
    v: float | Callable
    w: float | Callable

    @classmethod
    def constant(cls, u, v, w):
        return cls(float(u), float(v), float(w))

    @classmethod
    def tangent(cls):
        return cls.constant(1.0, 0.0, 0.0)

    @classmethod
    def principal(cls):
        return cls.constant(0.0, 1.0, 0.0)

    @classmethod
    def binormal(cls):
        return cls.constant(0.0, 0.0, 1.0)

    def evaluate(self, s):
        s = np.asarray(s, dtype=float)
        return (_coefficient(self.u, s), _coefficient(self.v, s), _coefficient(self.w, s))

    def check_unit(self, s, tol=UNIT_FIELD_TOL):
        u, v, w = self.evaluate(s)
        defect = float(np.abs(u * u + v * v + w * w - 1.0).max())
        if defect > tol:
            raise NonUnitField(f"field coefficients off the unit sphere by {defect:.3e}")
        return u, v, w


def field_vectors(data: FrenetData, field: FrameField):
    """Sample V = uT + vN + wB on the grid after the unit check."""
    u, v, w = field.check_unit(data.s)
    V = u[:, None] * data.T + v[:, None] * data.N + w[:, None] * data.B
    return u, v, w, V


def integral_curve(curve: Curve, field: FrameField, data: FrenetData | None = None) -> Curve:
    """Integral curve of a unit frame field, starting at the origin.

    Shares the base curve's arc-length parameter and domain; the integration
    constant is zero at s_min.
    """
    if data is None:
        data = frenet_apparatus(curve)
    _, _, _, V = field_vectors(data, field)
    points = cumulative(V, data.s)
    return curve_from_unit_speed_samples(data.s, points, sample_count=curve.sample_count,
                                         family="integral")


def principal_donor(curve: Curve, data: FrenetData | None = None) -> Curve:
    """Curve whose principal-direction curve is the given one.

    Built from the field (0, -cos(phi), sin(phi)) with phi the cumulative
    torsion integral from s_min (phase constant zero). The domain is clipped
    to the maximal initial subinterval where |cos(phi)| stays above 1e-6;
    crossings are reported via VanishingV when nothing remains.
    """
    if data is None:
        data = frenet_apparatus(curve)
    phi = cumulative(data.tau, data.s)
    v_coeff = -np.cos(phi)
    if abs(v_coeff[0]) <= DONOR_V_MIN:
        raise VanishingV(
            "normal coefficient vanishes at the start of the domain",
            crossings=[float(data.s[0])],
        )
    # Zero crossings of v: sign changes between grid points (plus any grid
    # point that lands essentially on a zero).
    hits = (v_coeff[:-1] * v_coeff[1:] < 0.0) | (np.abs(v_coeff[1:]) <= DONOR_V_MIN)
    bad_idx = np.flatnonzero(hits)
    frac = np.where(
        np.abs(v_coeff[:-1] - v_coeff[1:]) > 0,
        v_coeff[:-1] / np.where(np.abs(v_coeff[:-1] - v_coeff[1:]) > 0,
                                v_coeff[:-1] - v_coeff[1:], 1.0),
        0.5,
    )
    crossings = data.s[:-1][bad_idx] + frac[bad_idx] * np.diff(data.s)[bad_idx]
    if len(bad_idx) == 0:
        end = data.s[-1]
    else:
        first_bad = int(bad_idx[0])
        if first_bad < 8:
            raise VanishingV(
                "normal coefficient vanishes too close to s_min for a donor domain",
                crossings=[float(v) for v in crossings[:8]],
            )
        end = data.s[first_bad]
    phi_spline = make_interp_spline(data.s, phi, k=5)
    field = FrameField(0.0, lambda s: -np.cos(phi_spline(s)), lambda s: np.sin(phi_spline(s)))
    base = curve.restrict(curve.s_min, float(end)) if end < data.s[-1] else curve
    donor = integral_curve(base, field)
    donor.donor_crossings = [float(v) for v in crossings]
    return donor


@dataclass
class TransformedCurvatures:
    """Curvature pair of an integral curve for constant (u, w), v = 0."""

    kappa_v: np.ndarray
    tau_v: np.ndarray


def _check_unit_pair(u, w, tol=1e-10):
    if abs(u * u + w * w - 1.0) > tol:
        raise NonUnitCoefficients(f"(u, w) = ({u}, {w}) is not on the unit circle")


def transform_curvatures(kappa, tau, u, w) -> TransformedCurvatures:
    """Rotate the curvature pair: kappa_V = u kappa - w tau, tau_V = w kappa + u tau."""
    _check_unit_pair(u, w)
    kappa = np.asarray(kappa, dtype=float)
    tau = np.asarray(tau, dtype=float)
    return TransformedCurvatures(kappa_v=u * kappa - w * tau, tau_v=w * kappa + u * tau)


def inverse_transform_curvatures(transformed: TransformedCurvatures, u, w):
    """Invert the rotation: kappa = u kappa_V + w tau_V, tau = -w kappa_V + u tau_V."""
    _check_unit_pair(u, w)
    kv, tv = transformed.kappa_v, transformed.tau_v
    return u * kv + w * tv, -w * kv + u * tv


@dataclass
class TransferReport:
    """Bertrand coefficients carried onto an integral curve."""

    lambda_base: float
    mu_base: float
    lambda_bar: float
    mu_bar: float
    residual: float
    ok: bool


def bertrand_transfer_check(curve: Curve, u, w, data: FrenetData | None = None,
                            tol=1e-6) -> TransferReport:
    """Check that an integral curve inherits the Bertrand property.

    With a base fit lambda*kappa + mu*tau = 1 and constants (u, w) on the
    unit circle, the transferred pair is lambda_bar = lambda*u - mu*w,
    mu_bar = lambda*w + mu*u, and lambda_bar*kappa_V + mu_bar*tau_V = 1
    must hold pointwise.
    """
    from .bertrand import detect_bertrand

    _check_unit_pair(u, w)
    if data is None:
        data = frenet_apparatus(curve)
    fit = detect_bertrand(data, kind="bertrand")
    if fit is None or fit.lam is None or not np.isfinite(fit.lam):
        raise NotBertrand("base curve fails Bertrand detection")
    tc = transform_curvatures(data.kappa, data.tau, u, w)
    lam_bar = fit.lam * u - fit.mu * w
    mu_bar = fit.lam * w + fit.mu * u
    residual = float(np.abs(lam_bar * tc.kappa_v + mu_bar * tc.tau_v - 1.0).max())
    return TransferReport(lambda_base=fit.lam, mu_base=fit.mu,
                          lambda_bar=float(lam_bar), mu_bar=float(mu_bar),
                          residual=residual, ok=residual < tol)
