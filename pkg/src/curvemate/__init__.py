"""Frenet analysis, Bertrand-type mates and Bertrand surfaces for space curves."""

from .align import rigid_deviation, translation_deviation
from .bertrand import (
    BertrandFit,
    FBertrandBranches,
    MateReport,
    detect_bertrand,
    f_bertrand_coefficients,
    f_bertrand_mates,
    fit_bertrand,
    v_bertrand_mate,
    verify_mate,
)
from .curves import (
    Curve,
    CurveSpec,
    ParametricCurve,
    build_curve,
    derivative,
    reparameterize_arclength,
)
from .direction_curves import (
    FrameField,
    TransformedCurvatures,
    bertrand_transfer_check,
    integral_curve,
    inverse_transform_curvatures,
    principal_donor,
    transform_curvatures,
)
from .frenet import (
    CurveClass,
    FrenetData,
    classify,
    frenet_apparatus,
    integrate_frenet_ode,
)
from .spherical import (
    SabbanFrame,
    SphereFit,
    bertrand_from_spherical,
    donor_duality_check,
    fit_sphere,
    s_m_factor,
    sabban_bertrand,
    sabban_frame,
    spherical_test,
)
from .surface import (
    SurfaceGrid,
    TriangleMesh,
    bertrand_surface,
    surface_mate_pair,
    to_mesh,
)

__all__ = [
    "BertrandFit", "CurveClass", "Curve", "CurveSpec", "FBertrandBranches",
    "FrameField", "FrenetData", "MateReport", "ParametricCurve", "SabbanFrame",
    "SphereFit", "SurfaceGrid", "TransformedCurvatures", "TriangleMesh",
    "bertrand_from_spherical", "bertrand_surface", "bertrand_transfer_check",
    "build_curve", "classify", "derivative", "detect_bertrand",
    "donor_duality_check", "f_bertrand_coefficients", "f_bertrand_mates",
    "fit_bertrand", "fit_sphere", "frenet_apparatus", "integral_curve",
    "integrate_frenet_ode", "inverse_transform_curvatures", "principal_donor",
    "reparameterize_arclength", "rigid_deviation", "s_m_factor",
    "sabban_bertrand", "sabban_frame", "spherical_test", "surface_mate_pair",
    "to_mesh", "transform_curvatures", "translation_deviation",
    "v_bertrand_mate", "verify_mate",
]

__version__ = "0.1.0"
