"""Bertrand surfaces: the two-parameter family sweeping all constant offsets.

For a base curve with an accepted fit lambda*kappa + mu*tau = 1 the offset
parameter t scales the right-hand side, and each row

    phi(t, s) = u(t) * int T ds + w(t) * int B ds + mu * N(s)

is itself a mate of the base curve (the offset coefficient is the fit's tau
coefficient, the angle satisfies tan(theta) = lambda/mu). The coefficient
functions u(t), w(t) are the branch roots on the real domain
t^2 <= 1 + tan^2(theta).

Integral constants: the tangent integral uses its canonical antiderivative,
the base curve itself; the binormal integral has no canonical antiderivative
and is zeroed at s_min. With a t-independent choice all rows would share the
point phi(t, s_min) and the surface would degenerate to a cone apex there;
anchoring int T at gamma makes row starts distinct. Rows are therefore
defined up to per-row translation, which no mate property depends on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import make_interp_spline

from .bertrand import BertrandFit, BRANCH_NAMES, detect_bertrand, fit_bertrand, verify_mate, MateReport
from .curves import Curve
from .errors import (
    DegenerateParameters,
    FrameUndefined,
    IncompleteGrid,
    NotBertrand,
    NotMates,
    OutOfBranchDomain,
)
from .frenet import FrenetData, frenet_apparatus
from .integrals import cumulative

BRANCHES = tuple(f"phi{name}" for name in BRANCH_NAMES)

DEFAULT_MARGIN = 1e-3


@dataclass
class SurfaceGrid:
    """Point grid phi(t, s) of one branch of a Bertrand surface."""

    t_values: np.ndarray
    s_values: np.ndarray
    points: np.ndarray  # shape (nt, ns, 3)
    branch: str
    theta: float
    lam: float

    def row_points(self, i):
        return self.points[i]


@dataclass
class TriangleMesh:
    """Indexed triangle mesh; vertices row-major in (t, s)."""

    vertices: np.ndarray
    faces: np.ndarray


def _normalize_branch(branch):
    name = branch if branch.startswith("phi") else f"phi{branch}"
    if name not in BRANCHES:
        raise DegenerateParameters(f"unknown branch {branch!r}; expected one of {BRANCHES}")
    return name


def _branch_uw(t_values, tan_theta, branch):
    denom = 1.0 + tan_theta**2
    disc = denom - t_values**2
    root = np.sqrt(np.clip(disc, 0.0, None))
    if branch in ("phi1_plus", "phi1_minus"):
        u = (t_values * tan_theta + root) / denom
    else:
        u = (t_values * tan_theta - root) / denom
    w = np.sqrt(np.clip(1.0 - u * u, 0.0, None))
    if branch.endswith("_minus"):
        w = -w
    return u, w


def _surface_from_arrays(s_dense, T, B, N_at, fit_lam, tan_theta, branch, t_range,
                         resolution, margin=DEFAULT_MARGIN, tangent_anchor=None):
    nt, ns = int(resolution[0]), int(resolution[1])
    if nt < 2 or ns < 2:
        raise DegenerateParameters("resolution must be at least 2x2")
    t_max = float(np.sqrt(1.0 + tan_theta**2))
    if t_range is None:
        t_range = (-t_max + margin, t_max - margin)
    lo, hi = float(t_range[0]), float(t_range[1])
    if not (lo < hi):
        raise DegenerateParameters("empty t range")
    if lo < -t_max + 1e-6 - 1e-12 or hi > t_max - 1e-6 + 1e-12:
        raise OutOfBranchDomain(
            f"t range [{lo}, {hi}] exceeds the real-branch domain "
            f"(+-{t_max:.6g} minus margin)"
        )

    IT = cumulative(T, s_dense)
    if tangent_anchor is not None:
        IT = IT + np.asarray(tangent_anchor, dtype=float)
    IB = cumulative(B, s_dense)
    s_values = np.linspace(s_dense[0], s_dense[-1], ns)
    IT_s = make_interp_spline(s_dense, IT, k=5)(s_values)
    IB_s = make_interp_spline(s_dense, IB, k=5)(s_values)
    N_s = N_at(s_values)

    t_values = np.linspace(lo, hi, nt)
    u, w = _branch_uw(t_values, tan_theta, branch)
    points = (u[:, None, None] * IT_s[None, :, :]
              + w[:, None, None] * IB_s[None, :, :]
              + fit_lam * N_s[None, :, :])
    return SurfaceGrid(t_values=t_values, s_values=s_values, points=points,
                       branch=branch, theta=float(np.arctan(tan_theta)),
                       lam=float(fit_lam))


def bertrand_surface(base: Curve, fit: BertrandFit | None = None, branch="phi1_plus",
                     t_range=None, resolution=(16, 128),
                     data: FrenetData | None = None,
                     margin=DEFAULT_MARGIN) -> SurfaceGrid:
    """One branch of the Bertrand surface of an accepted Bertrand curve.

    ``t_range`` defaults to the full real-branch interval inset by
    ``margin``; requests outside the domain raise OutOfBranchDomain.
    """
    branch = _normalize_branch(branch)
    if data is None:
        data = frenet_apparatus(base)
    if fit is None:
        fit = detect_bertrand(data, kind="bertrand")
    if fit is None or not fit.accepted:
        raise NotBertrand("base curve fails Bertrand detection; no surface")
    if not np.isfinite(fit.mu) or abs(fit.mu) < 1e-10:
        raise DegenerateParameters(
            "fit has vanishing tau coefficient: offset/angle undefined for surfaces"
        )
    tan_theta = fit.lam / fit.mu
    return _surface_from_arrays(data.s, data.T, data.B,
                                lambda sv: _normal_interp(data, sv),
                                fit.mu, tan_theta, branch, t_range, resolution,
                                margin=margin, tangent_anchor=base.point(base.s_min))


def _normal_interp(data: FrenetData, s_values):
    if data.curve is not None and data.curve.analytic:
        d2 = data.curve.derivative(s_values, 2)
        norms = np.linalg.norm(d2, axis=-1, keepdims=True)
        if np.all(norms > 1e-12):
            return d2 / norms
    vals = make_interp_spline(data.s, data.N, k=5)(s_values)
    return vals / np.linalg.norm(vals, axis=-1, keepdims=True)


def to_mesh(grid: SurfaceGrid) -> TriangleMesh:
    """Triangulate a complete surface grid with consistent winding.

    Produces 2*(nt-1)*(ns-1) triangles over row-major vertices; incomplete
    grids (non-finite points or repeated neighbors) raise IncompleteGrid.
    """
    pts = grid.points
    nt, ns = pts.shape[0], pts.shape[1]
    if not np.isfinite(pts).all():
        raise IncompleteGrid("surface grid contains non-finite points")
    # Degenerate rows (repeated points along s) cannot be triangulated;
    # coincident points across rows are allowed -- the triangulation is
    # combinatorial and stays watertight.
    along_s = np.linalg.norm(np.diff(pts, axis=1), axis=2)
    if along_s.size and float(along_s.min()) < 1e-12:
        raise IncompleteGrid("repeated neighboring points along a row")

    vertices = pts.reshape(nt * ns, 3)
    i = np.repeat(np.arange(nt - 1), ns - 1)
    j = np.tile(np.arange(ns - 1), nt - 1)
    a = i * ns + j
    b = a + 1
    c = a + ns + 1
    d = a + ns
    faces = np.empty((2 * len(a), 3), dtype=np.int64)
    faces[0::2] = np.column_stack([a, b, c])
    faces[1::2] = np.column_stack([a, c, d])
    return TriangleMesh(vertices=vertices, faces=faces)


@dataclass
class SurfaceMateReport:
    """Record of a surface pair generated from a verified mate pair."""

    mate: MateReport
    theta: float
    fit_a: BertrandFit
    fit_b: BertrandFit


def _fit_from_pairing(candidate: Curve, base_data: FrenetData, tol=1e-6) -> BertrandFit:
    """Bertrand fit of a constructed mate from its construction record.

    Used when the mate's own frame cannot be measured (straight mates);
    the record carries the transported curvature profiles, which are exact
    where the measured ones are noise.
    """
    pairing = candidate.pairing
    i0, i1 = pairing.valid_start, pairing.valid_stop
    kappa = pairing.kappa_bar[i0:i1 + 1]
    tau = pairing.tau_bar[i0:i1 + 1]
    keep = np.isfinite(kappa) & np.isfinite(tau)
    synthetic = FrenetData(
        s=pairing.sbar[i0:i1 + 1][keep], T=pairing.T_bar[i0:i1 + 1][keep],
        N=pairing.N_bar[i0:i1 + 1][keep], B=pairing.B_bar[i0:i1 + 1][keep],
        kappa=np.abs(kappa[keep]), tau=tau[keep], analytic=False, curve=None,
    )
    return fit_bertrand(synthetic, kind="bertrand", tol=tol)


def surface_mate_pair(base_a: Curve, base_b: Curve, branch="phi1_plus",
                      t_range=None, resolution=(16, 128),
                      sbar=None) -> tuple[SurfaceGrid, SurfaceGrid, SurfaceMateReport]:
    """Bertrand surfaces of both members of a verified mate pair.

    The pair must pass mate verification (NotMates otherwise). When the
    second curve's frame is degenerate (a straight classical mate) its
    surface is generated from the construction record attached by the mate
    builders instead of a measured frame.
    """
    data_a = frenet_apparatus(base_a)
    try:
        report = verify_mate(base_a, base_b, sbar=sbar, base_data=data_a)
    except (NotMates, FrameUndefined):
        raise
    except Exception as exc:  # DegenerateOffset and friends
        raise NotMates(f"pair fails mate verification: {exc}") from exc
    if not report.accepted:
        raise NotMates(
            f"pair fails mate verification (collinearity {report.normal_collinearity:.6g}, "
            f"theta deviation {report.theta_deviation:.3g})"
        )

    fit_a = detect_bertrand(data_a, kind="bertrand")
    if fit_a is None:
        raise NotMates("first curve fails Bertrand detection")
    surface_a = bertrand_surface(base_a, fit=fit_a, branch=branch, t_range=t_range,
                                 resolution=resolution, data=data_a)

    pairing = getattr(base_b, "pairing", None)
    fit_b = None
    surface_b = None
    try:
        data_b = frenet_apparatus(base_b)
        measured_fit = fit_bertrand(data_b, kind="bertrand")
        if measured_fit.accepted:
            fit_b = measured_fit
            surface_b = bertrand_surface(base_b, fit=fit_b, branch=branch,
                                         t_range=t_range, resolution=resolution,
                                         data=data_b)
    except FrameUndefined:
        pass
    if surface_b is None:
        # Straight or near-straight mates have no measurable frame; their
        # construction record carries the transported one.
        if pairing is None:
            raise NotMates("second curve fails Bertrand detection and carries "
                           "no construction record")
        fit_b = _fit_from_pairing(base_b, data_a)
        if not fit_b.accepted:
            raise NotMates("second curve fails Bertrand detection via its "
                           "construction record")
        surface_b = _surface_from_pairing(base_b, base_a, data_a, fit_b, branch,
                                          t_range, resolution)

    return surface_a, surface_b, SurfaceMateReport(
        mate=report, theta=report.theta_mean, fit_a=fit_a, fit_b=fit_b)


def _surface_from_pairing(candidate: Curve, base: Curve, base_data: FrenetData,
                          fit: BertrandFit, branch, t_range, resolution) -> SurfaceGrid:
    pairing = candidate.pairing
    i0, i1 = pairing.valid_start, pairing.valid_stop
    sl = slice(i0, i1 + 1)
    sbar = pairing.sbar[sl] - pairing.sbar[i0]
    if not np.isfinite(fit.mu) or abs(fit.mu) < 1e-10:
        raise DegenerateParameters("construction fit has vanishing tau coefficient")
    tan_theta = fit.lam / fit.mu if np.isfinite(fit.lam) else 0.0
    # Frame integrals are taken in the mate's own arc length: the record
    # stores frames against the base parameter, so ds_bar = speed * ds.
    T_bar = pairing.T_bar[sl]
    B_bar = pairing.B_bar[sl]
    N_bar = pairing.N_bar[sl]
    N_spline = make_interp_spline(sbar, N_bar, k=min(5, len(sbar) - 1))

    def normal_at(sv):
        vals = N_spline(sv)
        return vals / np.linalg.norm(vals, axis=-1, keepdims=True)

    return _surface_from_arrays(sbar, T_bar, B_bar, normal_at, fit.mu, tan_theta,
                                _normalize_branch(branch), t_range, resolution,
                                tangent_anchor=candidate.point(candidate.s_min))
