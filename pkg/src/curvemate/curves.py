"""Space-curve representations with arc-length parameterization.

A ParametricCurve is any regular curve with derivatives up to order 3 in its
native parameter; a Curve is the unit-speed flavor that every analysis module
consumes. Analytic families (helix, circle, line, symbolic sphere curves)
carry closed-form derivatives; sampled data is interpolated with quintic
splines so third derivatives survive with usable accuracy.

Conventions fixed here and relied on everywhere else:

* arc length for reparameterized curves starts at 0,
* cumulative integrals taken later in the pipeline are zero at s_min,
* the default evaluation grid has 1024 samples (minimum 64).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import make_interp_spline

from .errors import DegenerateSamples, InvalidSpec, NotRegular, OutOfDomain
from .integrals import ArcLengthMap

DEFAULT_SAMPLES = 1024
MIN_SAMPLES = 64
UNIT_SPEED_TOL = 1e-6
MIN_SPEED = 1e-10


def _vec3(x, y, z):
    parts = np.broadcast_arrays(
        np.asarray(x, dtype=float), np.asarray(y, dtype=float), np.asarray(z, dtype=float)
    )
    return np.stack(parts, axis=-1)


class ParametricCurve:
    """Regular space curve queryable at any parameter value.

    ``position`` maps a float or 1-D array to points of shape (..., 3);
    the three entries of ``derivatives`` do the same for orders 1..3.
    The parameter need not be arc length; see Curve.
    """

    def __init__(self, position, derivatives, domain, sample_count=DEFAULT_SAMPLES,
                 analytic=False, family=None):
        t_min, t_max = float(domain[0]), float(domain[1])
        if not t_max > t_min:
            raise InvalidSpec(f"degenerate domain [{t_min}, {t_max}]")
        if len(derivatives) != 3:
            raise InvalidSpec("derivatives must provide orders 1..3")
        sample_count = int(sample_count)
        if sample_count < MIN_SAMPLES:
            raise InvalidSpec(f"sample_count {sample_count} below minimum {MIN_SAMPLES}")
        self._position = position
        self._derivs = tuple(derivatives)
        self.t_min = t_min
        self.t_max = t_max
        self.sample_count = sample_count
        self.analytic = bool(analytic)
        self.family = family
        self.pairing = None

    def grid(self, n=None):
        return np.linspace(self.t_min, self.t_max, n or self.sample_count)

    def _checked(self, t):
        t = np.asarray(t, dtype=float)
        eps = 1e-9 * max(1.0, self.t_max - self.t_min)
        if np.any(t < self.t_min - eps) or np.any(t > self.t_max + eps):
            raise OutOfDomain(
                f"parameter outside [{self.t_min}, {self.t_max}]"
            )
        return np.clip(t, self.t_min, self.t_max)

    def point(self, t):
        return self._position(self._checked(t))

    def derivative(self, t, order=1):
        if order not in (1, 2, 3):
            raise ValueError("derivative order must be 1, 2 or 3")
        return self._derivs[order - 1](self._checked(t))

    def speed(self, t):
        return np.linalg.norm(self.derivative(t, 1), axis=-1)

    def rigid_transformed(self, rotation, translation=(0.0, 0.0, 0.0)):
        """Same curve moved by x -> R x + t (derivatives rotate)."""
        rot = np.asarray(rotation, dtype=float)
        shift = np.asarray(translation, dtype=float)
        pos = self._position
        derivs = self._derivs

        def moved_pos(t):
            return pos(t) @ rot.T + shift

        moved_derivs = tuple((lambda d: (lambda t: d(t) @ rot.T))(d) for d in derivs)
        return type(self)(moved_pos, moved_derivs, (self.t_min, self.t_max),
                          sample_count=self.sample_count, analytic=self.analytic,
                          family=self.family)

    @classmethod
    def from_expressions(cls, expressions, t_range, sample_count=DEFAULT_SAMPLES,
                         parameter="t"):
        """Build from three symbolic coordinate expressions of one parameter."""
        import sympy

        if len(expressions) != 3:
            raise InvalidSpec("need exactly three coordinate expressions")
        sym = sympy.Symbol(parameter)
        try:
            parsed = [sympy.sympify(expr) for expr in expressions]
        except (sympy.SympifyError, SyntaxError, TypeError) as exc:
            raise InvalidSpec(f"cannot parse curve expression: {exc}") from None
        extra = set().union(*(e.free_symbols for e in parsed)) - {sym}
        if extra:
            raise InvalidSpec(f"unknown symbols in curve expression: {sorted(map(str, extra))}")

        def lambdify_order(order):
            funcs = [sympy.lambdify(sym, sympy.diff(e, sym, order), "numpy") for e in parsed]

            def evaluate(t):
                return _vec3(funcs[0](t), funcs[1](t), funcs[2](t))

            return evaluate

        return cls(lambdify_order(0), (lambdify_order(1), lambdify_order(2), lambdify_order(3)),
                   t_range, sample_count=sample_count, analytic=True, family="expression")

    @classmethod
    def from_points(cls, points, order=5, sample_count=DEFAULT_SAMPLES):
        """Interpolate ordered sample points with a spline in chord length."""
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise InvalidSpec("points must have shape (n, 3)")
        if len(np.unique(pts, axis=0)) < 8:
            raise DegenerateSamples("need at least 8 distinct sample points")
        seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        scale = max(1.0, float(np.abs(pts).max()))
        if np.any(seg < 1e-12 * scale):
            raise DegenerateSamples("coincident consecutive sample points")
        order = int(order)
        if not 3 <= order <= 5:
            raise InvalidSpec("interpolation order must be in 3..5")
        if len(pts) <= order:
            raise DegenerateSamples(f"need more than {order} points for order {order}")
        t = np.concatenate([[0.0], np.cumsum(seg)])
        spline = make_interp_spline(t, pts, k=order)
        derivs = tuple(spline.derivative(m) for m in (1, 2, 3))
        return cls(spline, derivs, (t[0], t[-1]), sample_count=sample_count,
                   analytic=False, family="sampled")


class Curve(ParametricCurve):
    """Unit-speed space curve over an arc-length interval [s_min, s_max]."""

    def __init__(self, position, derivatives, domain, sample_count=DEFAULT_SAMPLES,
                 analytic=False, family=None, check=True):
        super().__init__(position, derivatives, domain, sample_count=sample_count,
                         analytic=analytic, family=family)
        if check:
            speeds = self.speed(self.grid(min(self.sample_count, DEFAULT_SAMPLES)))
            worst = float(np.abs(speeds - 1.0).max())
            if worst > UNIT_SPEED_TOL:
                raise NotRegular(
                    f"curve is not unit-speed: max |speed - 1| = {worst:.3e}"
                )

    @property
    def s_min(self):
        return self.t_min

    @property
    def s_max(self):
        return self.t_max

    def length(self):
        return self.t_max - self.t_min

    def restrict(self, s0, s1):
        """View of the same curve on a sub-interval of arc length."""
        if not (self.t_min - 1e-12 <= s0 < s1 <= self.t_max + 1e-12):
            raise OutOfDomain(f"[{s0}, {s1}] not inside [{self.t_min}, {self.t_max}]")
        return Curve(self._position, self._derivs, (s0, s1),
                     sample_count=self.sample_count, analytic=self.analytic,
                     family=self.family, check=False)


def curve_from_unit_speed_samples(s_values, points, sample_count=DEFAULT_SAMPLES,
                                  family="sampled", check=True):
    """Quintic-spline curve through points already parameterized by arc length."""
    s_values = np.asarray(s_values, dtype=float)
    pts = np.asarray(points, dtype=float)
    spline = make_interp_spline(s_values, pts, k=5)
    derivs = tuple(spline.derivative(m) for m in (1, 2, 3))
    return Curve(spline, derivs, (s_values[0], s_values[-1]), sample_count=sample_count,
                 analytic=False, family=family, check=check)


@dataclass
class CurveSpec:
    """Declarative description of a curve: named family plus parameters.

    Families: helix(a, b), circle(r), line(direction), sampled(points),
    sphere_curve(expressions, t_range). ``length`` sets the arc-length
    domain for the closed-form families (defaults: 10 for helix/line, one
    full turn for circle).
    """

    family: str
    a: float | None = None
    b: float | None = None
    r: float | None = None
    direction: Sequence[float] | None = None
    points: np.ndarray | None = None
    interp_order: int = 5
    expressions: Sequence[str] | None = None
    t_range: tuple[float, float] | None = None
    length: float | None = None
    sample_count: int = DEFAULT_SAMPLES

    @classmethod
    def helix(cls, a, b, length=10.0, sample_count=DEFAULT_SAMPLES):
        return cls(family="helix", a=a, b=b, length=length, sample_count=sample_count)

    @classmethod
    def circle(cls, r, length=None, sample_count=DEFAULT_SAMPLES):
        return cls(family="circle", r=r, length=length, sample_count=sample_count)

    @classmethod
    def line(cls, direction, length=10.0, sample_count=DEFAULT_SAMPLES):
        return cls(family="line", direction=direction, length=length,
                   sample_count=sample_count)

    @classmethod
    def sampled(cls, points, interp_order=5, sample_count=DEFAULT_SAMPLES):
        return cls(family="sampled", points=np.asarray(points, dtype=float),
                   interp_order=interp_order, sample_count=sample_count)

    @classmethod
    def sphere_curve(cls, expressions, t_range, sample_count=DEFAULT_SAMPLES):
        return cls(family="sphere_curve", expressions=tuple(expressions),
                   t_range=(float(t_range[0]), float(t_range[1])),
                   sample_count=sample_count)


def _build_helix(a, b, length, sample_count):
    if not a > 0:
        raise InvalidSpec("helix requires a > 0")
    c = float(np.hypot(a, b))

    def pos(s):
        return _vec3(a * np.cos(s / c), a * np.sin(s / c), b * s / c)

    def d1(s):
        return _vec3(-(a / c) * np.sin(s / c), (a / c) * np.cos(s / c),
                     (b / c) * np.ones_like(np.asarray(s, dtype=float)))

    def d2(s):
        zero = np.zeros_like(np.asarray(s, dtype=float))
        return _vec3(-(a / c**2) * np.cos(s / c), -(a / c**2) * np.sin(s / c), zero)

    def d3(s):
        zero = np.zeros_like(np.asarray(s, dtype=float))
        return _vec3((a / c**3) * np.sin(s / c), -(a / c**3) * np.cos(s / c), zero)

    return Curve(pos, (d1, d2, d3), (0.0, float(length)), sample_count=sample_count,
                 analytic=True, family="helix")


def _build_line(direction, length, sample_count):
    d = np.asarray(direction, dtype=float)
    norm = np.linalg.norm(d)
    if not norm > 0:
        raise InvalidSpec("line requires a nonzero direction")
    d = d / norm

    def pos(s):
        return np.multiply.outer(np.asarray(s, dtype=float), d)

    def d1(s):
        return np.broadcast_to(d, np.shape(np.asarray(s, dtype=float)) + (3,)).copy()

    def zero(s):
        return np.zeros(np.shape(np.asarray(s, dtype=float)) + (3,))

    return Curve(pos, (d1, zero, zero), (0.0, float(length)), sample_count=sample_count,
                 analytic=True, family="line")


def build_curve(spec: CurveSpec) -> Curve:
    """Realize a CurveSpec as a unit-speed Curve.

    Analytic families come out with exact derivatives; sampled data goes
    through quintic interpolation and arc-length reparameterization.
    """
    n = spec.sample_count
    if spec.family == "helix":
        return _build_helix(spec.a, spec.b, 10.0 if spec.length is None else spec.length, n)
    if spec.family == "circle":
        if spec.r is None or not spec.r > 0:
            raise InvalidSpec("circle requires r > 0")
        length = 2.0 * np.pi * spec.r if spec.length is None else spec.length
        return _build_helix(spec.r, 0.0, length, n)
    if spec.family == "line":
        if spec.direction is None:
            raise InvalidSpec("line requires a direction")
        return _build_line(spec.direction, 10.0 if spec.length is None else spec.length, n)
    if spec.family == "sampled":
        if spec.points is None:
            raise InvalidSpec("sampled family requires points")
        raw = ParametricCurve.from_points(spec.points, order=spec.interp_order, sample_count=n)
        return reparameterize_arclength(raw)
    if spec.family == "sphere_curve":
        if spec.expressions is None or spec.t_range is None:
            raise InvalidSpec("sphere_curve requires expressions and t_range")
        raw = ParametricCurve.from_expressions(spec.expressions, spec.t_range, sample_count=n)
        radii = np.linalg.norm(raw.point(raw.grid()), axis=-1)
        worst = float(np.abs(radii - 1.0).max())
        if worst > 1e-6:
            raise InvalidSpec(f"sphere_curve is off the unit sphere by {worst:.3e}")
        return reparameterize_arclength(raw)
    raise InvalidSpec(f"unknown curve family {spec.family!r}")


def _chain_rule_curve(base: ParametricCurve, amap: ArcLengthMap, sample_count) -> Curve:
    def t_of(s):
        return amap.t_of_s(s)

    def pos(s):
        return base.point(t_of(s))

    def d1(s):
        g1 = base.derivative(t_of(s), 1)
        v = np.linalg.norm(g1, axis=-1, keepdims=True)
        return g1 / v

    def d2(s):
        t = t_of(s)
        g1 = base.derivative(t, 1)
        g2 = base.derivative(t, 2)
        v2 = np.sum(g1 * g1, axis=-1, keepdims=True)
        v = np.sqrt(v2)
        vp = np.sum(g1 * g2, axis=-1, keepdims=True) / v
        return g2 / v2 - g1 * vp / v**3

    def d3(s):
        t = t_of(s)
        g1 = base.derivative(t, 1)
        g2 = base.derivative(t, 2)
        g3 = base.derivative(t, 3)
        v2 = np.sum(g1 * g1, axis=-1, keepdims=True)
        v = np.sqrt(v2)
        vp = np.sum(g1 * g2, axis=-1, keepdims=True) / v
        vpp = (np.sum(g2 * g2, axis=-1, keepdims=True)
               + np.sum(g1 * g3, axis=-1, keepdims=True)) / v - vp**2 / v
        return (g3 / v**3 - 3.0 * g2 * vp / v**4
                + g1 * (3.0 * vp**2 / v**5 - vpp / v**4))

    return Curve(pos, (d1, d2, d3), (0.0, amap.total), sample_count=sample_count,
                 analytic=base.analytic, family=base.family)


def _constant_speed_curve(base: ParametricCurve, v: float, sample_count) -> Curve:
    t0 = base.t_min
    total = v * (base.t_max - base.t_min)

    def pos(s):
        return base.point(t0 + np.asarray(s, dtype=float) / v)

    def make_deriv(order):
        def deriv(s):
            return base.derivative(t0 + np.asarray(s, dtype=float) / v, order) / v**order

        return deriv

    return Curve(pos, (make_deriv(1), make_deriv(2), make_deriv(3)), (0.0, total),
                 sample_count=sample_count, analytic=base.analytic, family=base.family)


def reparameterize_arclength(curve: ParametricCurve) -> Curve:
    """Reparameterize a regular curve by arc length.

    Unit-speed curves pass through unchanged (idempotent). The returned
    domain is [0, total length]; inversion of the cumulative length is
    accurate to better than 1e-10 in s.
    """
    if isinstance(curve, Curve):
        return curve
    t_fine = curve.grid(max(curve.sample_count, DEFAULT_SAMPLES))
    speeds = curve.speed(t_fine)
    if np.min(speeds) < MIN_SPEED:
        bad = t_fine[speeds < MIN_SPEED]
        raise NotRegular(
            f"speed below {MIN_SPEED} at {len(bad)} parameter values "
            f"(first at t = {bad[0]:.6g})"
        )
    mean_speed = float(speeds.mean())
    if np.abs(speeds - mean_speed).max() < 1e-12 * mean_speed:
        return _constant_speed_curve(curve, mean_speed, curve.sample_count)
    amap = ArcLengthMap(curve.speed, curve.t_min, curve.t_max)
    return _chain_rule_curve(curve, amap, curve.sample_count)


def derivative(curve: ParametricCurve, s, order):
    """Derivative of order 1..3 at parameter value(s) s."""
    return curve.derivative(s, order)
