"""Bertrand-type curve detection, mate construction and verification.

A curve with curvature kappa and torsion tau is Bertrand when constants
(lambda, mu), lambda != 0, satisfy lambda*kappa + mu*tau = 1 pointwise;
the companion notion with right-hand side -1 and mu != 0 is detected as
kind "b_bertrand". Mates are offset curves

    beta(s) = integral of V ds + lambda(s) N(s),   V = uT + vN + wB unit,

whose principal normal stays collinear with the base normal. The offset
must satisfy lambda' = -v together with the compatibility condition

    lambda (kappa tan(theta) + tau) = u tan(theta) - w

for a constant angle theta between the two tangents. Coefficient branches
for a prescribed right-hand side f come from the quadratic

    u^{+/-} = (f tan(theta) +/- sqrt(1 + tan^2(theta) - f^2)) / (1 + tan^2(theta)),

with w = +/- sqrt(1 - u^2); each u root pairs with exactly one sign of w
on the solution of u tan(theta) - w = f, and the opposite sign realizes
the mirrored offset with right-hand side 2 u tan(theta) - f, which is
still a valid mate at its own constant angle. All four are constructed.

Integral anchor: the field integral is anchored at the base point, so the
tangent field V = T reproduces the classical offset beta = gamma + lambda N
exactly. Reports are translation-invariant either way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import make_interp_spline

from .curves import Curve, ParametricCurve, reparameterize_arclength
from .direction_curves import FrameField, field_vectors
from .errors import (
    ConditionViolated,
    DegenerateOffset,
    DegenerateParameters,
    FrameUndefined,
    NoRealBranch,
)
from .frenet import FrenetData, frenet_apparatus
from .integrals import cumulative

COLLINEARITY_TOL = 1e-6
THETA_DEV_TOL = 1e-5
OFFSET_MIN = 1e-10

# Curvatures below this are unmeasurable from splines on the default grids
# (quadrature sawtooth in the second derivative); such points fall back to
# the construction frame and the report records that they did.
KAPPA_MEASURE_MIN = 1e-5

BRANCH_NAMES = ("1_plus", "1_minus", "2_plus", "2_minus")


@dataclass
class BertrandFit:
    """Constant-coefficient fit of lambda*kappa + mu*tau = rhs.

    ``theta`` satisfies tan(theta) = lambda/mu. Planar curves set
    ``planar_special`` and are accepted for both kinds regardless of the
    constant fit (their offsets need not be constant); lam/mu are then NaN
    unless the constant fit happens to hold too.
    """

    lam: float
    mu: float
    theta: float
    kind: str
    residual: float
    planar_special: bool
    accepted: bool


def fit_bertrand(data: FrenetData, kind="bertrand", tol=None) -> BertrandFit:
    """Least-squares fit of the Bertrand identity over the whole grid.

    Acceptance is by sup-norm residual of the pointwise identity, not the
    least-squares objective. kind "bertrand" requires the kappa coefficient
    to be nonzero, kind "b_bertrand" the tau coefficient; when the grid
    forces the required coefficient to zero the fit is rejected and the
    reported residual measures how far the data is from any admissible
    affine relation.
    """
    if kind not in ("bertrand", "b_bertrand"):
        raise ValueError(f"unknown kind {kind!r}")
    if tol is None:
        tol = data.default_tol()
    rhs = 1.0 if kind == "bertrand" else -1.0
    kappa, tau = data.kappa, data.tau

    planar = float(np.abs(tau).max()) / max(1.0, float(np.abs(tau).mean())) < tol
    if planar:
        lam, mu, theta = float("nan"), float("nan"), float("nan")
        design = np.column_stack([kappa, tau])
        x, *_ = np.linalg.lstsq(design, np.full_like(kappa, rhs), rcond=None)
        if float(np.abs(design @ x - rhs).max()) < tol:
            lam, mu = float(x[0]), float(x[1])
            theta = float(np.arctan2(lam, mu))
        defect = float(np.abs(tau).max()) / max(1.0, float(np.abs(tau).mean()))
        return BertrandFit(lam=lam, mu=mu, theta=theta, kind=kind, residual=defect,
                           planar_special=True, accepted=True)

    kappa_const = float(kappa.max() - kappa.min()) / max(1.0, float(np.abs(kappa).mean())) < tol
    tau_const = float(tau.max() - tau.min()) / max(1.0, float(np.abs(tau).mean())) < tol
    if kappa_const and tau_const:
        # Helix-like data: every pair on a line solves the identity. Take the
        # minimum-norm solution of the mean system so measurement noise does
        # not pick an arbitrary direction along the feasible line.
        km, tm = float(kappa.mean()), float(tau.mean())
        scale = rhs / (km * km + tm * tm)
        x = np.array([km * scale, tm * scale])
        rank, sv = 1, np.array([np.hypot(km, tm), 0.0])
    else:
        design = np.column_stack([kappa, tau])
        x, _, rank, sv = np.linalg.lstsq(design, np.full_like(kappa, rhs), rcond=None)
    lam, mu = float(x[0]), float(x[1])
    residual = float(np.abs(kappa * lam + tau * mu - rhs).max())
    theta = float(np.arctan2(lam, mu))
    if residual >= tol:
        return BertrandFit(lam=lam, mu=mu, theta=theta, kind=kind, residual=residual,
                           planar_special=False, accepted=False)

    # The definition requires the kappa coefficient (kind bertrand) or the
    # tau coefficient (kind b_bertrand) to be nonzero. Rejection happens
    # only when that coefficient comes out negligible at its natural scale
    # AND the identity already holds without it AND the grid pins the fit
    # uniquely -- then the coefficient is forced to zero and no admissible
    # pair exists. (On rank-deficient data, e.g. a straight companion with
    # kappa identically zero, the coefficient is free instead.) The
    # reported residual then measures how far the data is from admitting
    # any affine relation between the two curvatures.
    target, other = (kappa, tau) if kind == "bertrand" else (tau, kappa)
    required = lam if kind == "bertrand" else mu
    coeff_scale = 1.0 / max(1.0, float(np.abs(target).max()))
    if abs(required) < 1e-3 * coeff_scale:
        x0, *_ = np.linalg.lstsq(other[:, None], np.full_like(kappa, rhs), rcond=None)
        resid_without = float(np.abs(other * x0[0] - rhs).max())
        full_rank = rank == 2 and sv[-1] > 1e-10 * sv[0]
        if full_rank and resid_without < tol:
            basis = np.column_stack([other, np.ones_like(other)])
            coeffs, *_ = np.linalg.lstsq(basis, target, rcond=None)
            margin = float(np.abs(basis @ coeffs - target).max())
            return BertrandFit(lam=lam, mu=mu, theta=theta, kind=kind,
                               residual=max(residual, margin),
                               planar_special=False, accepted=False)

    return BertrandFit(lam=lam, mu=mu, theta=theta, kind=kind, residual=residual,
                       planar_special=False, accepted=True)


def detect_bertrand(data: FrenetData, kind="bertrand", tol=None) -> BertrandFit | None:
    """fit_bertrand, returning None instead of a rejected fit."""
    fit = fit_bertrand(data, kind=kind, tol=tol)
    return fit if fit.accepted else None


@dataclass
class MateReport:
    """Verification record for a candidate mate pairing.

    ``condition_residual`` is the sup-norm of the compatibility identity in
    its bounded (cosine-multiplied) form for constructed mates, and the
    tangent's normal component for independently supplied candidates.
    """

    normal_collinearity: float
    epsilon: int
    theta_mean: float
    theta_deviation: float
    condition_residual: float
    accepted: bool
    used_construction_frame: bool = False
    branch: str | None = None


@dataclass
class MatePairing:
    """Construction record attached to mate curves (correspondence + frames)."""

    s: np.ndarray
    sbar: np.ndarray
    valid_start: int
    valid_stop: int
    T_bar: np.ndarray
    N_bar: np.ndarray
    B_bar: np.ndarray
    kappa_bar: np.ndarray
    tau_bar: np.ndarray
    lam: np.ndarray
    speed: np.ndarray
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    theta: float
    epsilon: int


def _mate_frames(s, beta, base: FrenetData, a, c):
    """Measure the mate's frame from its samples, with analytic fallback.

    The normal-direction coefficient m = a*kappa - c*tau of the mate's
    second derivative decides measurability: where it is negligible the
    mate is locally straight (or at an offset cusp) and its normal is set
    by the collinearity convention N_bar = +-N instead of noise. Tangents
    at speed-degenerate points come from the derivative of (a, c).
    """
    spline = make_interp_spline(s, beta, k=5)
    d1 = spline.derivative(1)(s)
    d2 = spline.derivative(2)(s)
    speed = np.linalg.norm(d1, axis=1)
    cross = np.cross(d1, d2)
    ncross = np.linalg.norm(cross, axis=1)
    speed_ok = speed > 1e-6 * max(1.0, float(speed.max()))
    m = a * base.kappa - c * base.tau
    measured = speed_ok & (np.abs(m) > 1e-6 * max(1.0, float(np.abs(m).max()))) \
        & (ncross > 0)

    T_bar = np.empty_like(d1)
    T_bar[speed_ok] = d1[speed_ok] / speed[speed_ok, None]
    if not speed_ok.all():
        da = make_interp_spline(s, a, k=5).derivative()(s)
        dc = make_interp_spline(s, c, k=5).derivative()(s)
        idx = ~speed_ok
        direction = da[idx, None] * base.T[idx] + dc[idx, None] * base.B[idx]
        norms = np.linalg.norm(direction, axis=1, keepdims=True)
        if np.any(norms < 1e-12):
            raise FrameUndefined("mate tangent direction undefined at a cusp",
                                 s_values=s[idx][norms[:, 0] < 1e-12])
        T_bar[idx] = direction / norms

    N_bar = np.empty_like(d1)
    B_bar = np.empty_like(d1)
    if np.any(measured):
        Bm = cross[measured] / ncross[measured, None]
        N_bar[measured] = np.cross(Bm, T_bar[measured])
        B_bar[measured] = Bm
    fallback = ~measured
    if np.any(fallback):
        if np.any(measured):
            first = int(np.flatnonzero(measured)[0])
            sign = float(np.sign(np.sum(N_bar[first] * base.N[first])))
        else:
            mean_m = float(m.mean())
            sign = float(np.sign(mean_m)) if abs(mean_m) > 1e-12 else 1.0
        N_bar[fallback] = sign * base.N[fallback]
        B_bar[fallback] = np.cross(T_bar[fallback], N_bar[fallback])
    return T_bar, N_bar, B_bar, bool(np.any(fallback))


def _construct_mate(curve: Curve, data: FrenetData, u, v, w, lam,
                    branch=None) -> tuple[Curve, MateReport]:
    """Shared mate builder: integrate the field, offset along N, verify."""
    s = data.s
    if float(np.abs(lam).max()) < OFFSET_MIN:
        raise DegenerateOffset("offset function is identically zero; mate coincides "
                               "with the field integral")
    V = u[:, None] * data.T + v[:, None] * data.N + w[:, None] * data.B
    anchor = curve.point(curve.s_min)
    beta = anchor + cumulative(V, s) + lam[:, None] * data.N

    a = u - lam * data.kappa
    c = w + lam * data.tau
    speed = np.hypot(a, c)
    T_bar, N_bar, B_bar, used_fallback = _mate_frames(s, beta, data, a, c)

    dot_nn = np.einsum("ij,ij->i", N_bar, data.N)
    collinearity = float(np.abs(dot_nn).min())
    epsilon = int(np.sign(dot_nn[0])) or 1
    uniform = bool(np.all(np.sign(dot_nn) == np.sign(dot_nn[0])))

    cos_phi = np.einsum("ij,ij->i", T_bar, data.T)
    sin_phi = np.einsum("ij,ij->i", T_bar, data.B)
    theta_vals = np.unwrap(np.arctan2(sin_phi, cos_phi))
    theta_mean = float(theta_vals.mean())
    theta_dev = float(theta_vals.std())

    cond = np.abs(lam * (data.kappa * np.sin(theta_mean) + data.tau * np.cos(theta_mean))
                  - (u * np.sin(theta_mean) - w * np.cos(theta_mean)))
    report = MateReport(
        normal_collinearity=collinearity,
        epsilon=epsilon,
        theta_mean=theta_mean,
        theta_deviation=theta_dev,
        condition_residual=float(cond.max()),
        accepted=bool(collinearity > 1.0 - COLLINEARITY_TOL
                      and theta_dev < THETA_DEV_TOL and uniform),
        used_construction_frame=used_fallback,
        branch=branch,
    )

    # Clip the returned curve to the maximal regular stretch (offset cusps
    # at lambda*kappa = u, lambda*tau = -w make the mate singular there).
    good = speed > 1e-6 * max(1.0, float(speed.max()))
    runs = np.flatnonzero(np.diff(np.concatenate([[0], good.astype(int), [0]])))
    starts, stops = runs[::2], runs[1::2]
    lengths = stops - starts
    best = int(np.argmax(lengths))
    i0, i1 = int(starts[best]), int(stops[best]) - 1
    if i1 - i0 < 8:
        raise DegenerateOffset("mate is singular on essentially the whole domain")

    spline = make_interp_spline(s, beta, k=5)
    raw = ParametricCurve(spline, tuple(spline.derivative(m) for m in (1, 2, 3)),
                          (s[i0], s[i1]), sample_count=curve.sample_count,
                          analytic=False, family="mate")
    mate_curve = reparameterize_arclength(raw)

    with np.errstate(divide="ignore", invalid="ignore"):
        safe = speed > 1e-9
        kappa_bar = np.where(safe, np.abs(data.kappa * cos_phi - data.tau * sin_phi)
                             / np.where(safe, speed, 1.0), np.nan)
        tau_bar = np.where(safe, (data.tau * cos_phi + data.kappa * sin_phi)
                           / np.where(safe, speed, 1.0), np.nan)
    mate_curve.pairing = MatePairing(
        s=s, sbar=cumulative(speed, s), valid_start=i0, valid_stop=i1,
        T_bar=T_bar, N_bar=N_bar, B_bar=B_bar, kappa_bar=kappa_bar, tau_bar=tau_bar,
        lam=lam, speed=speed, u=u, v=v, w=w, theta=theta_mean, epsilon=epsilon,
    )
    return mate_curve, report


def _tan_of(theta):
    if abs(np.cos(theta)) < 1e-12:
        raise DegenerateParameters("tan(theta) undefined: theta too close to pi/2")
    return float(np.tan(theta))


def v_bertrand_mate(curve: Curve, frame_field: FrameField, theta, lam=None,
                    data: FrenetData | None = None, tol=None) -> tuple[Curve, MateReport]:
    """Mate along a unit frame field at a prescribed constant tangent angle.

    The offset is lambda(s) = lambda_0 - integral of v from s_min. When
    ``lam`` (lambda_0) is omitted it is taken from the compatibility
    condition at s_min (or zero when that condition leaves it free). The
    condition must then hold on the whole grid within tolerance, else
    ConditionViolated carries the sup residual.
    """
    if data is None:
        data = frenet_apparatus(curve)
    if tol is None:
        tol = data.default_tol()
    tan_theta = _tan_of(theta)
    u, v, w = frame_field.check_unit(data.s)

    lam_integral = -cumulative(v, data.s)
    D = data.kappa * tan_theta + data.tau
    R = u * tan_theta - w
    if lam is None:
        if abs(D[0]) > 1e-10:
            lam0 = float(R[0] / D[0])
        elif abs(R[0]) < tol:
            lam0 = 0.0
        else:
            raise ConditionViolated(
                "compatibility condition unsatisfiable at s_min "
                f"(|{R[0]:.3e}| = |u tan(theta) - w| with kappa tan(theta) + tau = 0)",
                residual=float(abs(R[0])),
            )
    else:
        lam0 = float(lam)
    lam_arr = lam0 + lam_integral

    residual = float(np.abs(lam_arr * D - R).max())
    if residual >= max(tol, 1e-12):
        raise ConditionViolated(
            f"compatibility condition violated: sup residual {residual:.3e} "
            f"exceeds tolerance {tol:.1e}",
            residual=residual,
        )
    return _construct_mate(curve, data, u, v, w, lam_arr)


@dataclass
class FBertrandBranches:
    """Coefficient branches solving u tan(theta) - w = f with u^2 + w^2 = 1.

    ``valid`` flags the branches whose (u, w) pair satisfies the equation
    exactly; the mirrored w signs solve it with f replaced by
    2 u tan(theta) - f and are still usable as mate fields.
    """

    f: float
    tan_theta: float
    u_plus: float
    u_minus: float
    w1_plus: float
    w1_minus: float
    w2_plus: float
    w2_minus: float
    valid: dict[str, bool] = field(default_factory=dict)

    def branches(self):
        """Yield (name, u, w, valid) for the four sign branches."""
        table = {
            "1_plus": (self.u_plus, self.w1_plus),
            "1_minus": (self.u_plus, self.w1_minus),
            "2_plus": (self.u_minus, self.w2_plus),
            "2_minus": (self.u_minus, self.w2_minus),
        }
        for name in BRANCH_NAMES:
            u, w = table[name]
            yield name, u, w, self.valid.get(name, False)


def branch_coefficients(f, tan_theta):
    """Raw u+/- and w arrays for scalar or array-valued f."""
    f = np.asarray(f, dtype=float)
    denom = 1.0 + tan_theta**2
    disc = denom - f**2
    if np.any(disc < -1e-15):
        raise NoRealBranch(
            f"1 + tan^2(theta) - f^2 = {float(np.min(disc)):.3e} < 0: no real coefficients"
        )
    root = np.sqrt(np.clip(disc, 0.0, None))
    u_plus = (f * tan_theta + root) / denom
    u_minus = (f * tan_theta - root) / denom
    w1 = np.sqrt(np.clip(1.0 - u_plus**2, 0.0, None))
    w2 = np.sqrt(np.clip(1.0 - u_minus**2, 0.0, None))
    return u_plus, u_minus, w1, w2


def f_bertrand_coefficients(f, theta) -> FBertrandBranches:
    """All four coefficient branches for constant f and theta.

    Raises NoRealBranch when the discriminant is negative. Validity of a
    branch means its signed w satisfies u tan(theta) - w = f (within 1e-8);
    exactly one sign per u root does, unless w = 0 where both coincide.
    """
    tan_theta = _tan_of(theta)
    u_plus, u_minus, w1, w2 = (float(x) for x in branch_coefficients(float(f), tan_theta))
    branches = FBertrandBranches(
        f=float(f), tan_theta=tan_theta,
        u_plus=u_plus, u_minus=u_minus,
        w1_plus=w1, w1_minus=-w1, w2_plus=w2, w2_minus=-w2,
    )
    for name, u, w, _ in branches.branches():
        ok = abs(u) <= 1.0 + 1e-12 and abs(u * tan_theta - w - float(f)) <= 1e-8
        branches.valid[name] = bool(ok)
    return branches


def f_bertrand_mates(curve: Curve, f, theta, data: FrenetData | None = None,
                     tol=None) -> list[tuple[Curve, MateReport]]:
    """Mates for every real coefficient branch at prescribed f and theta.

    The offset lambda = f / (kappa tan(theta) + tau) must be constant on
    the grid (it always is for circular helices; otherwise only at the
    fitted angle), else ConditionViolated. f may be a constant or a
    function of arc length, in which case the branch coefficients vary
    pointwise.
    """
    if data is None:
        data = frenet_apparatus(curve)
    if tol is None:
        tol = data.default_tol()
    tan_theta = _tan_of(theta)
    s = data.s
    f_arr = np.broadcast_to(np.asarray(f(s) if callable(f) else f, dtype=float),
                            s.shape).astype(float)

    D = data.kappa * tan_theta + data.tau
    if np.abs(D).min() < 1e-10:
        raise ConditionViolated("kappa tan(theta) + tau vanishes; offset undefined")
    lam_arr = f_arr / D
    lam_mean = float(lam_arr.mean())
    spread = float(lam_arr.max() - lam_arr.min()) / max(1.0, abs(lam_mean))
    if spread >= tol:
        raise ConditionViolated(
            f"offset lambda = f/(kappa tan(theta) + tau) varies by {spread:.3e}; "
            "curve does not admit constant-offset mates at this angle",
            residual=spread,
        )
    if abs(lam_mean) < OFFSET_MIN:
        raise DegenerateOffset("fitted offset is zero")
    lam_const = np.full_like(s, lam_mean)

    u_plus, u_minus, w1, w2 = branch_coefficients(f_arr, tan_theta)
    table = {
        "1_plus": (u_plus, w1),
        "1_minus": (u_plus, -w1),
        "2_plus": (u_minus, w2),
        "2_minus": (u_minus, -w2),
    }
    mates = []
    zero = np.zeros_like(s)
    for name in BRANCH_NAMES:
        u_arr, w_arr = table[name]
        if np.any(np.abs(u_arr) > 1.0 + 1e-9):
            continue
        mate, report = _construct_mate(curve, data, u_arr, zero, w_arr, lam_const,
                                       branch=name)
        mates.append((mate, report))
    return mates


def verify_mate(base: Curve, candidate: Curve, sbar=None,
                base_data: FrenetData | None = None) -> MateReport:
    """Independent verification of a candidate mate pairing.

    Correspondence: an explicit ``sbar`` array (candidate arc length per
    base grid point), the construction record attached to mates built here,
    or matched arc-length fractions for independently supplied curves.
    A candidate that is just a translate of the base raises DegenerateOffset.
    """
    if base_data is None:
        base_data = frenet_apparatus(base)
    s = base_data.s
    pairing = getattr(candidate, "pairing", None)

    if sbar is not None:
        sbar = np.asarray(sbar, dtype=float)
        if sbar.shape != s.shape:
            raise ValueError("sbar must match the base grid")
        base_idx = np.arange(len(s))
    elif pairing is not None and len(pairing.s) == len(s) and np.allclose(pairing.s, s):
        i0, i1 = pairing.valid_start, pairing.valid_stop
        base_idx = np.arange(i0, i1 + 1)
        sbar = pairing.sbar[base_idx] - pairing.sbar[i0] + candidate.s_min
    else:
        frac = (s - s[0]) / (s[-1] - s[0])
        sbar = candidate.s_min + frac * (candidate.s_max - candidate.s_min)
        base_idx = np.arange(len(s))

    base_pts = base.point(s[base_idx])
    cand_pts = candidate.point(sbar)
    diff = cand_pts - base_pts
    centered = diff - diff.mean(axis=0)
    scale = max(1.0, float(np.abs(base_pts).max()))
    if float(np.linalg.norm(centered, axis=1).max()) < 1e-8 * scale:
        raise DegenerateOffset("candidate is a translate of the base curve; "
                               "the mate relation is vacuous")

    d1 = candidate.derivative(sbar, 1)
    d2 = candidate.derivative(sbar, 2)
    speed = np.linalg.norm(d1, axis=1)
    cross = np.cross(d1, d2)
    ncross = np.linalg.norm(cross, axis=1)
    kappa_geo = ncross / speed**3
    measured = kappa_geo >= KAPPA_MEASURE_MIN
    if pairing is not None and len(pairing.s) == len(s) and np.allclose(pairing.s, s):
        # The construction knows exactly where the mate is straight; the
        # spline noise floor does not.
        a = pairing.u - pairing.lam * base_data.kappa
        c = pairing.w + pairing.lam * base_data.tau
        m = (a * base_data.kappa - c * base_data.tau)[base_idx]
        measured &= np.abs(m) > 1e-6 * max(1.0, float(np.abs(m).max()))

    T_bar = d1 / speed[:, None]
    N_bar = np.empty_like(d1)
    used_fallback = False
    if np.any(measured):
        Bm = cross[measured] / ncross[measured, None]
        N_bar[measured] = np.cross(Bm, T_bar[measured])
    if not measured.all():
        if pairing is None:
            bad = s[base_idx][~measured]
            raise FrameUndefined(
                "candidate frame undefined on part of the grid and no "
                "construction record is attached",
                s_values=bad[:16],
            )
        N_bar[~measured] = pairing.N_bar[base_idx][~measured]
        used_fallback = True

    T = base_data.T[base_idx]
    N = base_data.N[base_idx]
    B = base_data.B[base_idx]
    dot_nn = np.einsum("ij,ij->i", N_bar, N)
    collinearity = float(np.abs(dot_nn).min())
    epsilon = int(np.sign(dot_nn[0])) or 1
    uniform = bool(np.all(np.sign(dot_nn) == np.sign(dot_nn[0])))

    cos_phi = np.einsum("ij,ij->i", T_bar, T)
    sin_phi = np.einsum("ij,ij->i", T_bar, B)
    theta_vals = np.unwrap(np.arctan2(sin_phi, cos_phi))
    theta_mean = float(theta_vals.mean())
    theta_dev = float(theta_vals.std())
    normal_component = float(np.abs(np.einsum("ij,ij->i", T_bar, N)).max())

    return MateReport(
        normal_collinearity=collinearity,
        epsilon=epsilon,
        theta_mean=theta_mean,
        theta_deviation=theta_dev,
        condition_residual=normal_component,
        accepted=bool(collinearity > 1.0 - COLLINEARITY_TOL
                      and theta_dev < THETA_DEV_TOL and uniform),
        used_construction_frame=used_fallback,
    )
