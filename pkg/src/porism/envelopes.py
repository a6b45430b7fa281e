"""Envelopes over circular-caustic families: the circumcircle envelope
(two circles), the incircle/circumcircle radical-axis envelope (a conic),
degenerate cases, and numeric probes of the two conic-iff-circular
conjectures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .centers import center, incircle_of, special_circles
from .core.conics import ConicCoeffs, ConicType, classify_conic, conic_axes, parabola_axis_angle
from .core.envelope import (
    envelope_of_circles,
    envelope_of_lines,
    split_nested_components,
)
from .core.fitting import CONIC6, fit_curve
from .core.geometry import (
    Circle,
    GeometryError,
    Line,
    Point,
    angle_difference_mod_pi,
    circumcircle_of,
    radical_axis,
)
from .family import (
    PonceletConfig,
    centroid_locus_membership,
    equilateral_centroid_locus,
    theta_grid,
    triangle_at,
)
from .loci import predict_x3_locus_circular


def _circular_data(cfg: PonceletConfig):
    if cfg.caustic is None:
        raise GeometryError("requires a circular-caustic configuration")
    a, b = cfg.a, cfg.b
    xc, yc = cfg.caustic.center.x, cfg.caustic.center.y
    c2 = cfg.c2
    delta = math.sqrt((b**4 + c2 * yc**2) * (a**4 - c2 * xc**2))
    return a, b, c2, xc, yc, delta


def circumcircle_coeffs(cfg: PonceletConfig, u: float):
    """(D, E, F) of the circumcircle x^2 + y^2 + D x + E y + F = 0 of the
    family triangle at parameter u, in closed form."""
    a, b, c2, xc, yc, delta = _circular_data(cfg)
    cu, su = math.cos(u), math.sin(u)
    d = -(
        (a**3 * b - delta) * cu / (b * a**2)
        + c2 * yc * xc * su / (b * a**2)
        + c2 * xc / a**2
    )
    e = (
        -c2 * xc * yc * cu / (a * b**2)
        + c2 * yc / b**2
        + (a * b**3 - delta) * su / (a * b**2)
    )
    f = c2 * xc * cu / a + c2 * yc * su / b - delta / (b * a)
    return d, e, f


def _circumcircle_coeffs_du(cfg: PonceletConfig, u: float):
    a, b, c2, xc, yc, delta = _circular_data(cfg)
    cu, su = math.cos(u), math.sin(u)
    dd = -(
        -(a**3 * b - delta) * su / (b * a**2) + c2 * yc * xc * cu / (b * a**2)
    )
    de = c2 * xc * yc * su / (a * b**2) + (a * b**3 - delta) * cu / (a * b**2)
    df = -c2 * xc * su / a + c2 * yc * cu / b
    return dd, de, df


def circumcircle_at(cfg: PonceletConfig, u: float) -> Circle:
    """Closed-form circumcircle of the family triangle at parameter u;
    agrees with circumcircle_of(triangle_at(cfg, u))."""
    d, e, f = circumcircle_coeffs(cfg, u)
    r2 = d * d / 4 + e * e / 4 - f
    if r2 <= 0:
        raise GeometryError("closed-form circumcircle degenerates")
    return Circle(Point(-d / 2, -e / 2), math.sqrt(r2))


def circumcircle_implicit(cfg: PonceletConfig, x: float, y: float, u: float) -> float:
    d, e, f = circumcircle_coeffs(cfg, u)
    return x * x + y * y + d * x + e * y + f


def circumcircle_implicit_du(cfg: PonceletConfig, x: float, y: float, u: float) -> float:
    dd, de, df = _circumcircle_coeffs_du(cfg, u)
    return dd * x + de * y + df


@dataclass(frozen=True)
class CircumEnvelope:
    k1: Circle
    k2: Circle
    touch1: tuple[Point, Point]
    touch2: tuple[Point, Point]


def circum_envelope_circles(cfg: PonceletConfig) -> CircumEnvelope:
    """The circumcircle envelope of a circular-caustic family: two nested
    circles centered at the circumcenter-locus foci, each touching the
    outer ellipse twice."""
    a, b, c2, xc, yc, delta = _circular_data(cfg)
    o1 = Point(0.0, -yc * c2 / b**2)
    r1 = (a / b**2) * math.sqrt(b**4 + c2 * yc**2)
    o2 = Point(xc * c2 / a**2, 0.0)
    r2 = (b / a**2) * math.sqrt(a**4 - c2 * xc**2)
    tx = (a / b) * math.sqrt(max(b * b - yc * yc, 0.0))
    ty = (b / a) * math.sqrt(max(a * a - xc * xc, 0.0))
    return CircumEnvelope(
        k1=Circle(o1, r1),
        k2=Circle(o2, r2),
        touch1=(Point(tx, yc), Point(-tx, yc)),
        touch2=(Point(xc, ty), Point(xc, -ty)),
    )


def circum_envelope_points(cfg: PonceletConfig, n: int = 512):
    """Numeric envelope samples of the closed-form circumcircle family,
    with analytic parameter derivatives."""

    def ctr(u):
        d, e, _ = circumcircle_coeffs(cfg, u)
        return np.array([-d / 2, -e / 2])

    def rad(u):
        d, e, f = circumcircle_coeffs(cfg, u)
        return math.sqrt(d * d / 4 + e * e / 4 - f)

    def dctr(u):
        dd, de, _ = _circumcircle_coeffs_du(cfg, u)
        return np.array([-dd / 2, -de / 2])

    def drad(u):
        d, e, f = circumcircle_coeffs(cfg, u)
        dd, de, df = _circumcircle_coeffs_du(cfg, u)
        r = math.sqrt(d * d / 4 + e * e / 4 - f)
        return (d * dd / 2 + e * de / 2 - df) / (2 * r)

    plus, minus = envelope_of_circles(ctr, rad, n=n, dcenter=dctr, dradius=drad)
    return plus, minus


# --------------------------------------------------------------------------
# radical axis of incircle and circumcircle
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RadicalAxisFamily:
    """Closed-form coefficient functions u -> (l, m, n) of the radical
    axis of incircle and circumcircle over a circular-caustic family."""

    cfg: PonceletConfig

    def coeffs(self, u: float):
        a, b, c2, xc, yc, delta = _circular_data(self.cfg)
        c4 = c2 * c2
        c6 = c4 * c2
        cu, su = math.cos(u), math.sin(u)
        l = c4 * (
            -b * xc * yc * c2 * su
            + b * (delta - a**3 * b) * cu
            + b**2 * (a * a + b * b) * xc
        )
        m = c4 * (
            a * (a * b**3 - delta) * su
            - a * xc * yc * c2 * cu
            + a**2 * (a * a + b * b) * yc
        )
        n = (
            a**2 * b * yc * c6 * su
            + a * b**2 * xc * c6 * cu
            + a**2 * b**2 * c2 * (-(a**2) * xc**2 + b**2 * yc**2)
            + a**4 * b**4 * (a * a + b * b)
            - a * b * (a**4 + b**4) * delta
        )
        return l, m, n

    def dcoeffs(self, u: float):
        a, b, c2, xc, yc, delta = _circular_data(self.cfg)
        c4 = c2 * c2
        c6 = c4 * c2
        cu, su = math.cos(u), math.sin(u)
        dl = c4 * (-b * xc * yc * c2 * cu - b * (delta - a**3 * b) * su)
        dm = c4 * (a * (a * b**3 - delta) * cu + a * xc * yc * c2 * su)
        dn = a**2 * b * yc * c6 * cu - a * b**2 * xc * c6 * su
        return np.array([dl, dm, dn])

    def line(self, u: float) -> Line:
        return Line(*self.coeffs(u))


def radical_axis_at(cfg: PonceletConfig, u: float) -> Line:
    """Closed-form radical axis of incircle and circumcircle at family
    parameter u; agrees with radical_axis(incircle, circumcircle_at)."""
    return RadicalAxisFamily(cfg).line(u)


@dataclass
class RadicalAxisEnvelope:
    conic: ConicCoeffs
    conic_type: ConicType
    residual: float
    axis_angle: float | None
    f3f3p_angle: float | None
    axis_misalignment: float | None
    n_skipped: int
    membership: float  # caustic center vs equilateral-centroid locus


def radical_axis_envelope(
    cfg: PonceletConfig, n: int = 1024, eps_type: float = 1e-6
) -> RadicalAxisEnvelope:
    """Envelope of the incircle/circumcircle radical axis: a conic whose
    major axis runs along the circumcenter-locus foci direction; an
    ellipse, parabola, or hyperbola according to the caustic center lying
    inside, on, or outside the equilateral-centroid locus."""
    fam = RadicalAxisFamily(cfg)
    env = envelope_of_lines(fam.coeffs, n=n, derivative=fam.dcoeffs)
    pts = np.array([p.z for p in env.points])
    pts = pts[np.abs(pts) <= 200 * cfg.a]
    if len(pts) < 24:
        raise GeometryError("radical-axis envelope: too few finite points")
    fit = fit_curve([complex(z) for z in pts], CONIC6)
    conic = ConicCoeffs.from_vector(fit.coefficients)
    ctype = classify_conic(conic, eps_type)

    spec3 = predict_x3_locus_circular(cfg)
    dx = spec3.f3.x - spec3.f3p.x
    dy = spec3.f3.y - spec3.f3p.y
    if math.hypot(dx, dy) < 1e-12 * cfg.a:
        f3f3p_angle = None
    else:
        f3f3p_angle = math.atan2(dy, dx) % math.pi

    axis_angle: float | None
    if ctype in (ConicType.REAL_ELLIPSE, ConicType.HYPERBOLA):
        axis_angle = conic_axes(conic)[0]
    elif ctype in (ConicType.PARABOLA,):
        axis_angle = parabola_axis_angle(conic)
    elif ctype == ConicType.CIRCLE:
        axis_angle = None
    else:
        axis_angle = None
    mis = (
        angle_difference_mod_pi(axis_angle, f3f3p_angle)
        if axis_angle is not None and f3f3p_angle is not None
        else None
    )
    return RadicalAxisEnvelope(
        conic=conic,
        conic_type=ctype,
        residual=fit.residual,
        axis_angle=axis_angle,
        f3f3p_angle=f3f3p_angle,
        axis_misalignment=mis,
        n_skipped=len(env.skipped),
        membership=centroid_locus_membership(cfg),
    )


# --------------------------------------------------------------------------
# degenerate lines and tangency checks
# --------------------------------------------------------------------------


def on_centroid_locus_residual(cfg: PonceletConfig) -> float:
    spec = equilateral_centroid_locus(cfg.a, cfg.b)
    ctr = cfg.caustic.center if cfg.caustic is not None else cfg.caustic_center()
    return abs((ctr.x / spec.semi_major) ** 2 + (ctr.y / spec.semi_minor) ** 2 - 1.0)


def x36_degenerate_line(cfg: PonceletConfig) -> Line:
    """Line swept by the circumcircle inverse of the incenter when the
    family contains an equilateral (caustic center on the
    equilateral-centroid locus); otherwise that locus is a circle and an
    error is raised."""
    a, b, c2, xc, yc, _ = _circular_data(cfg)
    if on_centroid_locus_residual(cfg) > 1e-9:
        raise GeometryError("X36 locus is a circle, not a line")
    rhs = (
        b**2 * (a**4 + 2 * a**2 * b**2 + 5 * b**4) * xc**2
        + a**2 * (5 * a**4 + 2 * a**2 * b**2 + b**4) * yc**2
    ) / (c2 * c2)
    return Line(b**2 * xc, a**2 * yc, -rhs)


@dataclass
class TangentLineReport:
    max_distance_residual: float
    max_touchpoint_residual: float
    n_samples: int


def l101_envelope_check(cfg: PonceletConfig, n: int = 128) -> TangentLineReport:
    """The radical axis of incircle and nine-point circle stays tangent to
    the incircle, touching it at the incircle/nine-point contact point;
    its envelope is the incircle itself. Undefined when the family
    contains an equilateral (the contact point is then stationary)."""
    if cfg.caustic is None:
        raise GeometryError("requires a circular-caustic configuration")
    if on_centroid_locus_residual(cfg) < 1e-6:
        raise GeometryError("undefined envelope: caustic center on the centroid locus")
    inc = cfg.caustic
    worst_d = worst_t = 0.0
    for u in theta_grid(n):
        tri = triangle_at(cfg, float(u))
        circles = special_circles(tri)
        line = radical_axis(circles["incircle"], circles["ninepoint"])
        worst_d = max(worst_d, abs(line.distance(inc.center) - inc.radius))
        foot = line.foot(inc.center)
        x11 = center(tri, 11)
        worst_t = max(worst_t, foot.distance(x11))
    return TangentLineReport(worst_d, worst_t, n)


@dataclass
class AxisEnvelopeProbe:
    which: str
    conic: ConicCoeffs
    conic_type: ConicType
    residual: float
    axis_angle: float | None
    membership: float


def orthic_axes_envelope_probe(
    cfg: PonceletConfig, n: int = 512, eps_type: float = 1e-6
) -> tuple[AxisEnvelopeProbe, AxisEnvelopeProbe]:
    """Numeric envelopes of the orthic axis (radical axis of circumcircle
    and nine-point circle) and the anti-orthic axis (circumcircle and
    Bevan circle). Both are conics whose type follows the position of the
    caustic center relative to the equilateral-centroid locus; their axis
    directions are reported, not asserted."""
    if cfg.caustic is None:
        raise GeometryError("requires a circular-caustic configuration")
    membership = centroid_locus_membership(cfg)

    def probe(which: str, pair: tuple[str, str]) -> AxisEnvelopeProbe:
        def family(u):
            circles = special_circles(triangle_at(cfg, float(u)))
            return radical_axis(circles[pair[0]], circles[pair[1]])

        env = envelope_of_lines(family, n=n)
        pts = np.array([p.z for p in env.points])
        pts = pts[np.abs(pts) <= 200 * cfg.a]
        if len(pts) < 24:
            raise GeometryError(f"{which}: too few finite envelope points")
        fit = fit_curve([complex(z) for z in pts], CONIC6)
        conic = ConicCoeffs.from_vector(fit.coefficients)
        ctype = classify_conic(conic, eps_type)
        if ctype in (ConicType.REAL_ELLIPSE, ConicType.HYPERBOLA):
            axis = conic_axes(conic)[0]
        elif ctype == ConicType.PARABOLA:
            axis = parabola_axis_angle(conic)
        else:
            axis = None
        return AxisEnvelopeProbe(which, conic, ctype, fit.residual, axis, membership)

    return (
        probe("orthic_axis", ("circumcircle", "ninepoint")),
        probe("antiorthic_axis", ("circumcircle", "bevan")),
    )


# --------------------------------------------------------------------------
# conjecture probes
# --------------------------------------------------------------------------


@dataclass
class ConjectureReport:
    which: str
    config: str
    residuals: list[float]
    verdicts: list[str]
    threshold: float

    @property
    def any_conic_component(self) -> bool:
        return any(v == "conic_component" for v in self.verdicts)


def conjecture_probe(
    cfg: PonceletConfig, which: str, n: int = 1024, threshold: float = 1e-6
) -> ConjectureReport:
    """Numeric probe of the conic-iff-circular-caustic conjectures.

    For ``circum_envelope`` the two envelope components of the
    circumcircle family are each fitted with a conic; for
    ``radical_axis`` the single envelope of the incircle/circumcircle
    radical axis is fitted. Components with RMS fit residual below the
    threshold are reported as conic_component.
    """
    if which == "circum_envelope":
        if cfg.a == cfg.b:
            raise GeometryError(
                "circumcircle envelope undefined when the outer conic is a circle"
            )
        residuals = _circum_component_residuals(cfg, n)
    elif which == "radical_axis":
        residuals = [_radical_axis_residual(cfg, n)]
    else:
        raise ValueError(f"unknown probe {which!r}")
    verdicts = [
        "conic_component" if r < threshold else "no_conic_component" for r in residuals
    ]
    return ConjectureReport(
        which=which,
        config=cfg.to_json(),
        residuals=residuals,
        verdicts=verdicts,
        threshold=threshold,
    )


def _circum_component_residuals(cfg: PonceletConfig, n: int) -> list[float]:
    if cfg.caustic is not None:
        plus, minus = circum_envelope_points(cfg, n=n)
    else:

        def ctr(u):
            c = circumcircle_of(triangle_at(cfg, float(u)))
            return np.array([c.center.x, c.center.y])

        def rad(u):
            return circumcircle_of(triangle_at(cfg, float(u))).radius

        plus, minus = envelope_of_circles(ctr, rad, n=n)
    points = plus.points + minus.points
    outer_idx, inner_idx = split_nested_components(points, cfg.caustic_center())
    residuals = []
    for idx in (outer_idx, inner_idx):
        pts = [points[i].z for i in idx]
        fit = fit_curve([complex(z) for z in pts], CONIC6)
        residuals.append(fit.residual)
    return residuals


def _radical_axis_residual(cfg: PonceletConfig, n: int) -> float:
    if cfg.caustic is not None:
        fam = RadicalAxisFamily(cfg)
        env = envelope_of_lines(fam.coeffs, n=n, derivative=fam.dcoeffs)
    else:

        def family(u):
            tri = triangle_at(cfg, float(u))
            return radical_axis(incircle_of(tri), circumcircle_of(tri))

        env = envelope_of_lines(family, n=n)
    pts = np.array([p.z for p in env.points])
    pts = pts[np.abs(pts) <= 200 * cfg.a]
    fit = fit_curve([complex(z) for z in pts], CONIC6)
    return fit.residual
