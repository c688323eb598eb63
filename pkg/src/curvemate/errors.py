"""Exception hierarchy.

Three families, which the CLI maps onto distinct exit codes: configuration
problems (malformed specs or parameters), geometric failures (a frame or
domain that does not exist), and condition failures (a construction's
defining identity does not hold for the supplied inputs).
"""


class CurvemateError(Exception):
    """Base class for all library errors."""


class ConfigError(CurvemateError):
    """Invalid job configuration or command-line input."""


class InvalidSpec(ConfigError):
    """Curve specification parameter out of range or malformed."""


class DegenerateSamples(InvalidSpec):
    """Sample points are coincident or too few to interpolate."""


class GeometryError(CurvemateError):
    """A geometric quantity is undefined or out of range."""


class NotRegular(GeometryError):
    """Curve speed vanishes somewhere on the domain."""


class OutOfDomain(GeometryError):
    """Parameter value outside the curve's domain."""


class FrameUndefined(GeometryError):
    """Curvature too small for the moving frame to exist.

    Carries the offending parameter values in ``s_values``.
    """

    def __init__(self, message, s_values=None):
        super().__init__(message)
        self.s_values = [] if s_values is None else list(s_values)


class NonPositiveKappa(GeometryError):
    """Prescribed curvature must stay positive."""


class NonUnitField(GeometryError):
    """Frame-field coefficients do not satisfy u^2 + v^2 + w^2 = 1."""


class NonUnitCoefficients(GeometryError):
    """Constant pair (u, w) does not satisfy u^2 + w^2 = 1."""


class NotOnUnitSphere(GeometryError):
    """Curve does not lie on the unit sphere."""


class DegenerateParameters(GeometryError):
    """Construction parameters degenerate (e.g. zero scale, tan undefined)."""


class SpeedDrift(GeometryError):
    """Integrated curve departs from unit speed beyond tolerance."""


class VanishingV(GeometryError):
    """Normal coefficient of a donor field crosses zero inside the domain.

    Carries the crossing locations in ``crossings``.
    """

    def __init__(self, message, crossings=None):
        super().__init__(message)
        self.crossings = [] if crossings is None else list(crossings)


class IncompleteGrid(GeometryError):
    """Surface grid has invalid or repeated cells; cannot be meshed."""


class ConditionError(CurvemateError):
    """A theorem's defining condition fails for the supplied inputs."""


class ConditionViolated(ConditionError):
    """Pointwise compatibility condition exceeds tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotBertrand(ConditionError):
    """Curve fails Bertrand detection."""


class NoRealBranch(ConditionError):
    """Branch discriminant negative; no real coefficients exist."""


class NotMates(ConditionError):
    """Curve pair fails mate verification."""


class DegenerateOffset(ConditionError):
    """Offset function is identically zero; the mate relation is vacuous."""


class OutOfBranchDomain(GeometryError):
    """Requested offset-family parameter outside the real-branch interval."""
