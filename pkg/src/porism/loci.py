"""Loci over a Poncelet family: sampling, closed-form predictions,
conic classification of the isogonal locus, the circumcircle-swept
region, and its degree-4 boundary.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .centers import (
    ConjugateAtInfinity,
    UndefinedCenter,
    center,
    isogonal_pedal,
)
from .core.conics import ConicCoeffs, ConicType, classify_conic, conic_center
from .core.envelope import envelope_of_lines
from .core.fitting import (
    CONIC6,
    QUARTIC9,
    LocusFit,
    RankDeficientFit,
    fit_curve,
    fit_line,
)
from .core.geometry import (
    EllipseSpec,
    GeometryError,
    Line,
    Point,
    Triangle,
    as_complex,
    circumcircle_of,
)
from .core.solvers import solve_quartic_real
from .family import (
    PonceletConfig,
    circumcircles_on_grid,
    lambda_for_vertex,
    theta_grid,
    triangle_at,
    triangles_on_grid,
)

# --------------------------------------------------------------------------
# locus sampling
# --------------------------------------------------------------------------


@dataclass
class LocusSample:
    thetas: np.ndarray
    points: np.ndarray  # complex, NaN where undefined
    defined: np.ndarray  # bool mask

    @property
    def n_undefined(self) -> int:
        return int(np.sum(~self.defined))

    @property
    def substantially_at_infinity(self) -> bool:
        return self.n_undefined > 0.2 * len(self.thetas)

    def finite_points(self, cap: float | None = None) -> np.ndarray:
        pts = self.points[self.defined]
        if cap is not None:
            pts = pts[np.abs(pts) <= cap]
        return pts


def sample_locus(cfg: PonceletConfig, target, n: int = 256) -> LocusSample:
    """Sample the locus of a triangle center (integer Kimberling index) or
    of the isogonal conjugate of a fixed point (anything point-like) over
    a uniform family-parameter grid.

    Samples where the target is undefined (conjugate at infinity, center
    weights summing to zero) are masked out, not interpolated.
    """
    if n < 16:
        raise ValueError("need at least 16 samples")
    thetas = theta_grid(n)
    pts = np.full(n, np.nan + 1j * np.nan, dtype=complex)
    defined = np.zeros(n, dtype=bool)
    is_center = isinstance(target, int)
    p_fixed = None if is_center else as_complex(target)

    def one(th: float):
        tri = triangle_at(cfg, th)
        try:
            if is_center:
                return center(tri, target).z
            return isogonal_pedal(p_fixed, tri).z
        except (ConjugateAtInfinity, UndefinedCenter, GeometryError):
            return None

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, [float(t) for t in thetas]))
    else:
        results = [one(float(t)) for t in thetas]
    for i, q in enumerate(results):
        if q is not None:
            pts[i] = q
            defined[i] = True
    return LocusSample(thetas, pts, defined)


def _worker_count() -> int:
    """Parallelism cap from PONCELET_THREADS (default 1: sequential)."""
    try:
        return max(1, int(os.environ.get("PONCELET_THREADS", "1")))
    except ValueError:
        return 1


# --------------------------------------------------------------------------
# closed-form locus predictions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class OrthoLocusSpec:
    """Orthocenter locus: ellipse homothetic to the outer ellipse rotated
    by 90 degrees, centered at (a^2+b^2) * (x_c/a^2, y_c/b^2)."""

    center: Point
    a4: float
    b4: float
    sigma: float

    def ellipse(self) -> EllipseSpec:
        # major semiaxis runs along the outer ellipse's minor axis
        return EllipseSpec(self.center, self.a4, self.b4, math.pi / 2)


def predict_x4_locus(cfg: PonceletConfig) -> OrthoLocusSpec:
    a, b = cfg.a, cfg.b
    ctr = cfg.caustic_center()
    c4 = Point((a * a + b * b) * ctr.x / (a * a), (a * a + b * b) * ctr.y / (b * b))
    sigma = abs(cfg.f * cfg.g * (a * a + b * b) - cfg.c2)
    return OrthoLocusSpec(center=c4, a4=sigma / (2 * b), b4=sigma / (2 * a), sigma=sigma)


@dataclass(frozen=True)
class IsogCircleSpec:
    """Isogonal-conjugate locus over a family inscribed in the unit
    circle: a circle with explicit center and radius."""

    center: complex
    radius: float


def predict_isog_circle(f: complex, g: complex, p) -> IsogCircleSpec:
    zp = as_complex(p)
    den = 1.0 - abs(zp) ** 2
    if abs(den) < 1e-12:
        raise GeometryError("degenerate (line locus): |P| = 1")
    ctr = (f + g - f * g * zp.conjugate() - zp) / den
    rad = abs((g.conjugate() - zp.conjugate()) * (f.conjugate() - zp.conjugate()) / den)
    return IsogCircleSpec(center=ctr, radius=rad)


@dataclass(frozen=True)
class CircumLocusSpec:
    """Circumcenter locus over a circular-caustic family: an ellipse with
    one focus on each outer-ellipse axis."""

    f3: Point
    f3p: Point
    a3: float
    b3: float
    delta3: float
    delta3p: float

    def ellipse(self) -> EllipseSpec:
        mid = Point((self.f3.x + self.f3p.x) / 2, (self.f3.y + self.f3p.y) / 2)
        dx, dy = self.f3.x - self.f3p.x, self.f3.y - self.f3p.y
        rot = math.atan2(dy, dx) if (dx, dy) != (0.0, 0.0) else 0.0
        return EllipseSpec(mid, self.a3, self.b3, rot)


def predict_x3_locus_circular(cfg: PonceletConfig) -> CircumLocusSpec:
    if cfg.caustic is None:
        raise GeometryError("requires a circular-caustic configuration")
    a, b = cfg.a, cfg.b
    c2 = cfg.c2
    xc, yc = cfg.caustic.center.x, cfg.caustic.center.y
    f3 = Point(xc * (1 - (b / a) ** 2), 0.0)
    f3p = Point(0.0, yc * (1 - (a / b) ** 2))
    delta3 = math.sqrt(b**4 + c2 * yc**2) / (2 * b)
    delta3p = math.sqrt(a**4 - c2 * xc**2) / (2 * a)
    return CircumLocusSpec(
        f3=f3,
        f3p=f3p,
        a3=delta3 * (a / b) - delta3p * (b / a),
        b3=delta3p - delta3,
        delta3=delta3,
        delta3p=delta3p,
    )


# --------------------------------------------------------------------------
# region swept by the circumcircle
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RegionVerdict:
    membership: str  # interior_R | exterior_R_inner | exterior_R_outer | boundary_R
    witness_u: float | None
    h_min: float
    h_max: float


def _h_at(cfg: PonceletConfig, p: complex, u: float) -> float:
    circ = circumcircle_of(triangle_at(cfg, u))
    return abs(p - circ.center.z) - circ.radius


def _golden_refine(fn, lo: float, hi: float, iters: int = 60):
    invphi = (math.sqrt(5) - 1) / 2
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(iters):
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = fn(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = fn(x2)
    return (lo + hi) / 2, min(f1, f2)


def region_membership(
    cfg: PonceletConfig, p, n: int = 512, tol_boundary: float | None = None
) -> RegionVerdict:
    """Decide where a point sits relative to the region swept by the
    circumcircle, from the signed distance h(u) = |P - O(u)| - R(u).

    A sign change of h means some circumcircle passes through the point
    (interior of the swept region); h of constant sign with a near-zero
    extremum means tangency (boundary); otherwise the point is in the
    inner (h < 0 throughout) or outer (h > 0) exterior component.
    """
    zp = as_complex(p)
    if tol_boundary is None:
        tol_boundary = 1e-6 * cfg.a
    thetas = theta_grid(n)
    centers, radii = circumcircles_on_grid(cfg, thetas)
    h = np.abs(zp - centers) - radii

    step = 2 * math.pi / n
    if h.min() < 0.0 < h.max():
        i = int(np.argmax(h < 0.0)) if h[0] >= 0 else int(np.argmax(h >= 0.0))
        return RegionVerdict(
            "interior_R", float(thetas[i]), float(h.min()), float(h.max())
        )

    if h.min() >= 0.0:
        i = int(np.argmin(h))
        u0, hmin = _golden_refine(
            lambda u: _h_at(cfg, zp, u), thetas[i] - step, thetas[i] + step
        )
        if hmin < 0.0:
            return RegionVerdict("interior_R", u0, float(hmin), float(h.max()))
        if hmin < tol_boundary:
            return RegionVerdict("boundary_R", u0, float(hmin), float(h.max()))
        return RegionVerdict("exterior_R_outer", u0, float(hmin), float(h.max()))

    i = int(np.argmax(h))
    u0, neg_hmax = _golden_refine(
        lambda u: -_h_at(cfg, zp, u), thetas[i] - step, thetas[i] + step
    )
    hmax = -neg_hmax
    if hmax > 0.0:
        return RegionVerdict("interior_R", u0, float(h.min()), float(hmax))
    if hmax > -tol_boundary:
        return RegionVerdict("boundary_R", u0, float(h.min()), float(hmax))
    return RegionVerdict("exterior_R_inner", u0, float(h.min()), float(hmax))


def find_boundary_point(
    cfg: PonceletConfig, angle: float, n: int = 256, iters: int = 60
) -> Point:
    """Point on the outer component of the swept-region boundary along a
    ray from the caustic center, located by bisecting the refined minimum
    of h(u) = |P - O(u)| - R(u) between the swept region and the outer
    exterior."""
    ctr = cfg.caustic_center().z
    d = complex(math.cos(angle), math.sin(angle))
    thetas = theta_grid(n)
    centers, radii = circumcircles_on_grid(cfg, thetas)
    step = 2 * math.pi / n

    def hmin(s: float) -> float:
        zp = ctr + s * d
        h = np.abs(zp - centers) - radii
        i = int(np.argmin(h))
        _, val = _golden_refine(
            lambda u: _h_at(cfg, zp, u), thetas[i] - step, thetas[i] + step, iters=40
        )
        return min(val, float(h[i]))

    lo, hi = 0.0, 4.0 * cfg.a
    if hmin(lo) > 0 or hmin(hi) < 0:
        raise GeometryError("ray does not cross the outer boundary")
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if hmin(mid) < 0:
            lo = mid
        else:
            hi = mid
    s = 0.5 * (lo + hi)
    return Point(ctr.real + s * d.real, ctr.imag + s * d.imag)


# --------------------------------------------------------------------------
# degree-4 boundary of the swept region
# --------------------------------------------------------------------------


def boundary_quartic_eval(cfg: PonceletConfig, x: float, y: float) -> float:
    """Literal degree-4 polynomial whose zero set is the boundary of the
    circumcircle-swept region, in the frame of the axis-aligned outer
    ellipse."""
    a, b = cfg.a, cfg.b
    fx, fy = cfg.f.real, cfg.f.imag
    gx, gy = cfg.g.real, cfg.g.imag

    t_b6 = (
        -(b**6)
        * ((-1 + fy**2) * gx**2 + (-1 + fy * gy) ** 2 + fx**2 * (-1 + gx**2 + gy**2))
        * x**2
    )
    t_a5 = (
        2
        * a**5
        * b
        * x
        * (
            b * (gx * (2 + fy * (fy + gy)) + fx * (2 + gy * (fy + gy)))
            - (gx * (3 * fy + gy) + fx * (fy + 3 * gy)) * y
        )
    )
    t_a6 = a**6 * (
        b**2
        * (
            1
            - fy**2
            - gx**2
            + fx**2 * (-1 + gx**2)
            + (-1 + fy**2) * gy**2
            - 2 * fx * gx * (2 + fy * gy)
        )
        + 2 * b * (fx + gx) * (fy * gx + fx * gy) * y
        - ((-1 + fx * gx) ** 2 + (-1 + fx**2) * gy**2 + fy**2 * (-1 + gx**2 + gy**2))
        * y**2
    )
    t_a3 = (
        -4
        * a**3
        * b**2
        * x
        * (
            b**2 * (fx + gx + fy * gx * (fy + gy) + fx * gy * (fy + gy))
            - b * (gx * (3 * fy + gy) + fx * (fy + 3 * gy)) * y
            + (fx + gx) * (x**2 + y**2)
        )
    )
    t_ab4 = (
        2
        * a
        * b**4
        * x
        * (
            b**2 * (fy + gy) * (fy * gx + fx * gy)
            - b * (gx * (3 * fy + gy) + fx * (fy + 3 * gy)) * y
            + 2 * (fx + gx) * (x**2 + y**2)
        )
    )
    t_a4b = a**4 * b * (
        2
        * b**3
        * (
            1
            + gx**2
            - fx**2 * (-1 + gx**2)
            + 2 * fy * gy
            + gy**2
            + 2 * fx * (gx + fy * gx * gy)
            - fy**2 * (-1 + gy**2)
        )
        - b
        * (
            5
            - 4 * fx * gx
            + (-1 + fy**2) * gx**2
            + fy * gy * (2 + fy * gy)
            + fx**2 * (-1 + gx**2 + gy**2)
        )
        * x**2
        - 4 * b**2 * (fy + fy * gx * (fx + gx) + gy + fx * (fx + gx) * gy) * y
        + 2
        * b
        * (
            -1
            - 2 * fy * gy
            - gy**2
            + fy**2 * (-1 + gx**2 + gy**2)
            + fx**2 * (gx**2 + gy**2)
        )
        * y**2
        + 4 * (fy + gy) * y * (x**2 + y**2)
    )
    t_a2b2 = a**2 * b**2 * (
        b**4
        * (
            1
            - gx**2
            + fx**2 * (-1 + gx**2)
            - 2 * fx * fy * gx * gy
            + (-1 + fy**2) * gy**2
            - fy * (fy + 4 * gy)
        )
        + 2 * b**3 * (fy * (2 + gx * (fx + gx)) + (2 + fx * (fx + gx)) * gy) * y
        - 4 * b * (fy + gy) * y * (x**2 + y**2)
        + 4 * (x**2 + y**2) ** 2
        + b**2
        * (
            2
            * (
                -1
                - 2 * fx * gx
                + (-1 + fy**2) * gx**2
                + fy**2 * gy**2
                + fx**2 * (-1 + gx**2 + gy**2)
            )
            * x**2
            - (
                5
                + fx * gx * (2 + fx * gx)
                - 4 * fy * gy
                + (-1 + fx**2) * gy**2
                + fy**2 * (-1 + gx**2 + gy**2)
            )
            * y**2
        )
    )
    return t_b6 + t_a5 + t_a6 + t_a3 + t_ab4 + t_a4b + t_a2b2


def boundary_quartic_scale(cfg: PonceletConfig, n: int = 64) -> float:
    """Magnitude reference for near-zero tests of the boundary polynomial:
    the max absolute value over a circle of radius 2a."""
    ts = np.linspace(0, 2 * math.pi, n, endpoint=False)
    vals = [
        abs(boundary_quartic_eval(cfg, 2 * cfg.a * math.cos(t), 2 * cfg.a * math.sin(t)))
        for t in ts
    ]
    return max(max(vals), 1e-300)


@dataclass
class TangencyReport:
    ts: list[float]
    points: list[Point]
    count_with_infinity: int
    all_real: bool


def tangency_points(cfg: PonceletConfig) -> TangencyReport:
    """Points where the swept-region boundary touches the outer ellipse:
    real roots t of an explicit quartic, mapped through the rational
    parametrization (a(1-t^2), 2bt)/(1+t^2).

    A vanishing leading coefficient drops the degree; the lost root sits
    at t = infinity, which maps to (-a, 0).
    """
    fx, fy = cfg.f.real, cfg.f.imag
    gx, gy = cfg.g.real, cfg.g.imag
    coeffs = [
        fx * gy + fy * gx + fy + gy,
        -2 * fx - 2 * gx - 4,
        2 * fx * gy + 2 * fy * gx,
        -2 * fx - 2 * gx + 4,
        gy * fx + fy * gx - fy - gy,
    ]
    scale = max(abs(c) for c in coeffs)
    degree_drop = abs(coeffs[0]) <= 1e-12 * scale
    ts = solve_quartic_real(coeffs)
    points = [cfg.outer_point(t) for t in ts]
    count = len(ts)
    if degree_drop:
        points.append(cfg.outer_point(math.inf))
        ts = ts + [math.inf]
        count += 1
    return TangencyReport(ts=ts, points=points, count_with_infinity=count,
                          all_real=(count >= 4))


# --------------------------------------------------------------------------
# isogonal locus classification
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class QuarticFit:
    k40: float
    k22: float
    k04: float
    k20: float
    k11: float
    k02: float
    k10: float
    k01: float
    k00: float
    residual: float

    @property
    def vector(self) -> np.ndarray:
        return np.array(
            [self.k40, self.k22, self.k04, self.k20, self.k11, self.k02,
             self.k10, self.k01, self.k00]
        )

    def quartic_weight(self) -> float:
        v = self.vector
        return float((abs(v[0]) + abs(v[1]) + abs(v[2])) / np.linalg.norm(v))


@dataclass
class IsogLocusResult:
    quartic: QuarticFit
    conic: ConicCoeffs
    conic_residual: float
    conic_type: ConicType
    z_points: list[Point]
    z_ts: list[float]
    z_base_residuals: list[float]
    n_excluded: int


def _quartic_fit_from(points) -> QuarticFit:
    try:
        fit = fit_curve(points, QUARTIC9)
        vec = fit.coefficients
        res = fit.residual
    except RankDeficientFit:
        # the sample admits both a conic and its square: the minimal
        # representative is the conic itself, quartic part exactly zero
        fit = fit_curve(points, CONIC6)
        vec = np.concatenate([[0.0, 0.0, 0.0], fit.coefficients])
        res = fit.residual
    return QuarticFit(*[float(v) for v in vec], residual=float(res))


def conic_ellipse_intersections(conic: ConicCoeffs, cfg: PonceletConfig):
    """Intersections of a conic with the outer ellipse via the rational
    parametrization: a quartic in t (resultant elimination)."""
    from numpy.polynomial import polynomial as npoly

    a, b = cfg.a, cfg.b
    p1 = np.array([a, 0.0, -a])  # a(1 - t^2)
    p2 = np.array([0.0, 2 * b])  # 2 b t
    q = np.array([1.0, 0.0, 1.0])  # 1 + t^2
    acc = npoly.polymul(p1, p1) * conic.a
    acc = npoly.polyadd(acc, npoly.polymul(p1, p2) * conic.b)
    acc = npoly.polyadd(acc, npoly.polymul(p2, p2) * conic.c)
    acc = npoly.polyadd(acc, npoly.polymul(p1, q) * conic.d)
    acc = npoly.polyadd(acc, npoly.polymul(p2, q) * conic.e)
    acc = npoly.polyadd(acc, npoly.polymul(q, q) * conic.f)
    coeffs = np.zeros(5)
    coeffs[: len(acc)] = acc
    coeffs = coeffs[::-1]  # highest degree first
    scale = np.max(np.abs(coeffs))
    ts = solve_quartic_real(coeffs) if scale > 0 else []
    out = list(ts)
    if abs(coeffs[0]) <= 1e-9 * scale and abs(conic(Point(-a, 0.0))) < 1e-9:
        out.append(math.inf)
    return out


def classify_isog_locus(
    cfg: PonceletConfig,
    p,
    n: int = 256,
    eps_parabola: float = 1e-6,
    cap_factor: float = 50.0,
) -> IsogLocusResult:
    """Fit and classify the isogonal-conjugate locus of a fixed point.

    The restricted quartic fit checks that the three degree-4
    coefficients vanish (the locus is a conic); the conic fit then
    classifies it and locates its crossings Z with the outer ellipse.
    Each crossing is checked to be the apex of a family triangle whose
    base line passes through P.
    """
    zp = as_complex(p)
    if abs(cfg.outer.implicit(zp)) < 1e-9:
        raise GeometryError("point on the outer ellipse: use degenerate_line_locus")
    sample = sample_locus(cfg, zp, n)
    pts = sample.finite_points(cap=cap_factor * cfg.a)
    n_excluded = len(sample.thetas) - len(pts)
    if len(pts) < 24:
        raise GeometryError("too few finite locus samples")
    quartic = _quartic_fit_from(pts)
    conic_fit = fit_curve(pts, CONIC6)
    conic = ConicCoeffs.from_vector(conic_fit.coefficients)
    ctype = classify_conic(conic, eps_parabola)

    z_ts = conic_ellipse_intersections(conic, cfg)
    z_points, z_res = [], []
    for t in z_ts:
        z = cfg.outer_point(t)
        res = apex_base_residual(cfg, z, zp)
        z_points.append(z)
        z_res.append(res)
    return IsogLocusResult(
        quartic=quartic,
        conic=conic,
        conic_residual=conic_fit.residual,
        conic_type=ctype,
        z_points=z_points,
        z_ts=z_ts,
        z_base_residuals=z_res,
        n_excluded=n_excluded,
    )


def apex_base_residual(cfg: PonceletConfig, apex: Point, p: complex) -> float:
    """Distance (normalized by a) from p to the base line of the family
    triangle whose apex is the given outer-ellipse point."""
    zpre = cfg.affine.invert(apex.z)
    zpre = zpre / abs(zpre)
    lam = lambda_for_vertex(cfg, zpre)
    tri = triangle_at(cfg, math.atan2(lam.imag, lam.real))
    verts = [v.z for v in tri.vertices]
    i = int(np.argmin([abs(v - apex.z) for v in verts]))
    others = [verts[j] for j in range(3) if j != i]
    base = Line.through(others[0], others[1])
    return base.distance(p) / cfg.a


# --------------------------------------------------------------------------
# degenerate (line) locus for P on the outer ellipse, and its envelope
# --------------------------------------------------------------------------


def _line_locus_chunks(cfg: PonceletConfig, t: float):
    """Coefficients (l, m, n) of the line locus at parameter t, straight
    from the closed form: l from the x block, m from the y block, n from
    the three constant blocks."""
    a, b = cfg.a, cfg.b
    fx, fy = cfg.f.real, cfg.f.imag
    gx, gy = cfg.g.real, cfg.g.imag
    t2 = t * t

    const1 = a**5 * b * (
        (t2 + 1) * fx**2 * (gx**2 + gy**2 - 1)
        + (t2 + 1) * fy**2 * (gx**2 + gy**2 - 1)
        - 2 * fx * (3 * (t2 + 1) * gx + t2 - 1)
        + 2 * fy * (t2 * gy + gy + 2 * t)
        + t2 * (-(gx * (gx + 2) + gy**2 - 3))
        + 4 * t * gy
        - gx**2
        + 2 * gx
        - gy**2
        + 3
    )
    const2 = -2 * a**3 * b**3 * (
        (t2 + 1) * fx**2 * (gx**2 + gy**2 - 1)
        + (t2 + 1) * fy**2 * (gx**2 + gy**2 - 1)
        - 2 * fx * (t2 * (gx + 1) + gx - 1)
        - 2 * fy * (t2 * gy + gy - 2 * t)
        + t2 * (-(gx * (gx + 2) + gy**2 + 5))
        + 4 * t * gy
        - (gx - 2) * gx
        - gy**2
        - 5
    )
    ycoef = 2 * a * (a - b) * (a + b) * (
        2 * t * (
            a**2 * (-fx * gx + fy * gy + 1) + b**2 * (fx * gx - fy * gy + 3)
        )
        + t2 * (a - b) * (a + b) * (fy * gx + fx * gy + fy + gy)
        - (a - b) * (a + b) * (fy * (gx - 1) + (fx - 1) * gy)
    )
    xcoef = -2 * b * (a - b) * (a + b) * (
        a**2
        * (
            t2 * (-(fy * gy + gx + 3))
            + fx * (t2 * (gx - 1) + 2 * t * gy - gx - 1)
            + 2 * t * fy * gx
            + fy * gy
            - gx
            + 3
        )
        + b**2
        * (
            t2 * (fx * (-gx) + fy * gy + fx + gx - 1)
            - 2 * t * (fy * gx + fx * gy)
            + fx * gx
            - fy * gy
            + fx
            + gx
            + 1
        )
    )
    const5 = a * b**5 * (
        (t2 + 1) * fx**2 * (gx**2 + gy**2 - 1)
        + (t2 + 1) * fy**2 * (gx**2 + gy**2 - 1)
        + 2 * fx * (t2 * (gx - 1) + gx + 1)
        + fy * (4 * t - 6 * (t2 + 1) * gy)
        + t2 * (-(gx * (gx + 2) + gy**2 - 3))
        + 4 * t * gy
        - gx**2
        + 2 * gx
        - gy**2
        + 3
    )
    return xcoef, ycoef, const1 + const2 + const5


def _excluded_point_parts(cfg: PonceletConfig, t: float):
    a, b = cfg.a, cfg.b
    fx, fy = cfg.f.real, cfg.f.imag
    gx, gy = cfg.g.real, cfg.g.imag
    t2, t3, t4 = t * t, t**3, t**4

    delta = (a - b) * (a + b) * (
        -2 * t3 * (fx + gx + 2)
        + (t2 + 1) * fy * (t2 * (gx + 1) + gx - 1)
        + (t2 + 1) * gy * (t2 * (fx + 1) + fx - 1)
        - 2 * t * (fx + gx - 2)
    )
    qx = a**3 * (
        t * (t2 + 1) * fy**2 * (gx**2 + gy**2 - 1)
        - (t2 - 1) * fy * (t2 * (gx + 1) + gx - 1)
        + t * (t2 + 1) * (fx**2 - 1) * gy**2
        - (t2 - 1) * gy * (t2 * (fx + 1) + fx - 1)
        + t
        * (
            -2 * fx * (2 * (t2 + 1) * gx + t2 - 1)
            + (t2 + 1) * fx**2 * (gx**2 - 1)
            - gx * (t2 * (gx + 2) + gx - 2)
            + t2
            + 1
        )
    ) - a * b**2 * (
        t * (t2 + 1) * fy**2 * (gx**2 + gy**2 - 1)
        + t
        * (
            t * gy * (t2 * (fx + 1) + 6)
            + (t2 + 1) * (fx**2 - 1) * gy**2
            + (t2 + 1) * (fx**2 - 1) * gx**2
            + t2 * (-(fx * (fx + 2) + 3))
            - 2 * (t2 - 1) * gx
        )
        + fy * ((t4 - 1) * gx - 4 * (t3 + t) * gy + t4 + 6 * t2 + 1)
        - fx * gy
        - t * ((fx - 2) * fx + 3)
        + gy
    )
    qy = b**3 * (
        (t4 - 1) * fx**2 * (gx**2 + gy**2 - 1)
        + (t4 - 1) * fy**2 * (gx**2 + gy**2 - 1)
        - 4 * t * fx * (t2 * gy + gy - 2 * t)
        - 4 * fy * ((t4 - 1) * gy + t3 * (gx - 1) + t * gx + t)
        + t4 * (-(gx**2 + gy**2 - 1))
        + 4 * t3 * gy
        + 8 * t2 * gx
        - 4 * t * gy
        + gx**2
        + gy**2
        - 1
    ) - a**2 * b * (
        (t4 - 1) * fx**2 * (gx**2 + gy**2 - 1)
        + (t4 - 1) * fy**2 * (gx**2 + gy**2 - 1)
        + 4 * t * fy * (t2 * (gx + 1) + gx - 1)
        - 4 * fx * ((t4 - 1) * gx - (t3 + t) * gy + t4 + 1)
        + t4 * (-(gx * (gx + 4) + gy**2 + 3))
        + 4 * t3 * gy
        - 4 * t * gy
        + (gx - 4) * gx
        + gy**2
        + 3
    )
    return qx, qy, delta


@dataclass
class LineLocusResult:
    line: Line
    excluded: Point | None  # as printed: (Qx, Qy/2) / Delta
    excluded_unhalved: Point | None
    q_incidence: float | None  # distance of printed Q to line & base crossing
    q_incidence_unhalved: float | None
    delta: float


def degenerate_line_locus(cfg: PonceletConfig, t: float) -> LineLocusResult:
    """Line to which the isogonal locus degenerates when the fixed point
    sits on the outer ellipse at parameter t, plus the excluded point Q
    where the line meets the base of the triangle with apex at P.

    The printed closed form for Q has an asymmetric halving of its second
    coordinate; both variants are evaluated and checked against the
    geometric intersection so the valid one is recorded.
    """
    l, m, n = _line_locus_chunks(cfg, t)
    scale = max(abs(l), abs(m))
    if scale == 0:
        raise GeometryError("degenerate line locus coefficients vanished")
    line = Line(l, m, n)
    qx, qy, delta = _excluded_point_parts(cfg, t)
    if abs(delta) <= 1e-12 * max(abs(qx), abs(qy), 1e-300):
        return LineLocusResult(line, None, None, None, None, float(delta))
    q_printed = Point(qx / delta, qy / (2 * delta))
    q_unhalved = Point(qx / delta, qy / delta)

    # geometric oracle: intersection of the line locus with the base of
    # the triangle whose apex is P(t)
    p = cfg.outer_point(t)
    try:
        q_true_res_printed = _q_residual(cfg, p, line, q_printed)
        q_true_res_unhalved = _q_residual(cfg, p, line, q_unhalved)
    except GeometryError:
        q_true_res_printed = q_true_res_unhalved = None
    return LineLocusResult(
        line,
        q_printed,
        q_unhalved,
        q_true_res_printed,
        q_true_res_unhalved,
        float(delta),
    )


def _q_residual(cfg: PonceletConfig, p: Point, line: Line, q: Point) -> float:
    zpre = cfg.affine.invert(p.z)
    zpre = zpre / abs(zpre)
    lam = lambda_for_vertex(cfg, zpre)
    tri = triangle_at(cfg, math.atan2(lam.imag, lam.real))
    verts = [v.z for v in tri.vertices]
    i = int(np.argmin([abs(v - p.z) for v in verts]))
    others = [verts[j] for j in range(3) if j != i]
    base = Line.through(others[0], others[1])
    from .core.geometry import intersect_lines

    q_true = intersect_lines(line, base)
    return q.distance(q_true) / cfg.a


def _line_family_trig(cfg: PonceletConfig):
    """Line-locus family reparametrized by u with t = tan(u/2): each raw
    coefficient is a quadratic in t, so after scaling by 1/(1+t^2) it is a
    degree-1 trigonometric polynomial in u, smooth through t = inf."""
    quads = []
    for tval in (0.0, 1.0, -1.0):
        quads.append(np.array(_line_locus_chunks(cfg, tval)))
    p0, pp, pm = quads
    c0 = p0
    c1 = (pp - pm) / 2
    c2 = (pp + pm) / 2 - p0

    def coeffs(u):
        # t^2/(1+t^2), t/(1+t^2), 1/(1+t^2) in terms of u
        w2 = (1 - math.cos(u)) / 2
        w1 = math.sin(u) / 2
        w0 = (1 + math.cos(u)) / 2
        return c2 * w2 + c1 * w1 + c0 * w0

    def dcoeffs(u):
        return c2 * math.sin(u) / 2 + c1 * math.cos(u) / 2 - c0 * math.sin(u) / 2

    return coeffs, dcoeffs


@dataclass
class LineEnvelopeResult:
    fitted: ConicCoeffs
    fitted_residual: float
    literal: ConicCoeffs
    coefficient_distance: float
    as_printed_distance: float  # mismatch of the uncorrected closed form
    center: Point
    xy_term: float  # |B| of the normalized literal conic


def line_locus_envelope(cfg: PonceletConfig, n: int = 512) -> LineEnvelopeResult:
    """Envelope of the line loci over all positions of P on the outer
    ellipse, computed two ways: numerically (envelope of the line family,
    then a conic fit) and from the literal closed-form conic. Both must
    agree; the conic is concentric with the caustic.

    ``as_printed_distance`` reports how far the uncorrected closed form
    (without the repaired constant chunk, see ``line_envelope_literal_conic``)
    sits from the fitted conic.
    """
    coeffs, dcoeffs = _line_family_trig(cfg)

    def family(u):
        l, m, n_ = coeffs(u)
        return Line(l, m, n_)

    env = envelope_of_lines(family, n=n, derivative=dcoeffs)
    if len(env.points) < 32:
        raise GeometryError("line-locus envelope: too few envelope points")
    pts = np.array([p.z for p in env.points])
    pts = pts[np.abs(pts) <= 50 * cfg.a]
    fit = fit_curve([complex(z) for z in pts], CONIC6)
    fitted = ConicCoeffs.from_vector(fit.coefficients)
    literal = line_envelope_literal_conic(cfg)
    printed = line_envelope_literal_conic(cfg, corrected=False)

    def dist(u: ConicCoeffs, v: ConicCoeffs) -> float:
        return min(
            float(np.linalg.norm(u.vector - v.vector)),
            float(np.linalg.norm(u.vector + v.vector)),
        )

    ctr = conic_center(literal)
    return LineEnvelopeResult(
        fitted=fitted,
        fitted_residual=fit.residual,
        literal=literal,
        coefficient_distance=dist(fitted, literal),
        as_printed_distance=dist(fitted, printed),
        center=ctr,
        xy_term=abs(literal.b),
    )


def line_envelope_literal_conic(cfg: PonceletConfig, corrected: bool = True) -> ConicCoeffs:
    """Conic coefficients of the closed-form line-locus envelope,
    extracted by evaluating the quadratic polynomial at probe points.

    With ``corrected=True`` (default) the constant chunk carrying the
    bare ``+ 59`` gains the ``+ 3 (gx^2 + gy^2)^2`` term it is missing:
    exact-arithmetic envelopes isolate the printed form's defect to that
    single chunk, with deficit exactly 3 (gx^2+gy^2)^2 independent of f,
    a, b (zero at g = 0). ``corrected=False`` evaluates the source as
    printed, for mismatch reporting.
    """
    def ev(x, y):
        return _line_envelope_eval(cfg, x, y, corrected)

    f00 = ev(0.0, 0.0)
    fp0, fm0 = ev(1.0, 0.0), ev(-1.0, 0.0)
    f0p, f0m = ev(0.0, 1.0), ev(0.0, -1.0)
    fpp = ev(1.0, 1.0)
    a2 = (fp0 + fm0) / 2 - f00
    d1 = (fp0 - fm0) / 2
    c2 = (f0p + f0m) / 2 - f00
    e1 = (f0p - f0m) / 2
    b2 = fpp - (a2 + c2 + d1 + e1 + f00)
    return ConicCoeffs(a2, b2, c2, d1, e1, f00)


def _line_envelope_eval(
    cfg: PonceletConfig, x: float, y: float, corrected: bool = True
) -> float:
    a, b = cfg.a, cfg.b
    fx, fy = cfg.f.real, cfg.f.imag
    gx, gy = cfg.g.real, cfg.g.imag
    amb2 = (a - b) ** 2
    apb2 = (a + b) ** 2
    r2f = fx**2 + fy**2
    r2g = gx**2 + gy**2

    t_xy = 8 * a * b * x * y * (fx - gx) * (fy - gy) * (a**2 - b**2) ** 4

    y_a4 = (
        (r2f - 1) * gy**3
        + fy * (r2f - 1) * gy**2
        + ((gx**2 + 1) * fx**2 - 2 * gx * fx + (fy**2 - 1) * (gx**2 - 1)) * gy
        + fy * (r2f + 1) * gx**2
        - fy * (r2f - 1)
        - 2 * fx * fy * gx
    )
    y_a2 = (
        -(r2f - 1) * gy**3
        - fy * (r2f - 5) * gy**2
        - (fx**2 + 2 * gx * fx - 5 * fy**2 + (r2f - 1) * gx**2 - 3) * gy
        + fy * (fx**2 - 2 * gx * fx + fy**2 - (r2f + 1) * gx**2 + 3)
    )
    y_b4 = (
        (r2f - 1) * gy**3
        + fy * (r2f - 9) * gy**2
        + (fx**2 + 6 * gx * fx - 9 * fy**2 + (r2f - 1) * gx**2 + 9) * gy
        + fy * (r2f + 1) * gx**2
        - fy * (r2f - 9)
        + 6 * fx * fy * gx
    )
    t_y = (
        4 * a**2 * amb2 * b * apb2 * y
        * (y_a4 * a**4 + 2 * b**2 * y_a2 * a**2 + b**4 * y_b4)
    )

    x2_a4 = (r2g - 1) * fx**2 - 8 * gx * fx + (fy**2 - 1) * gx**2 + (fy * gy + 3) ** 2
    x2_a2 = (
        (r2g - 1) * fx**2
        - 4 * gx * fx
        + (fy**2 - 1) * gx**2
        + fy * gy * (fy * gy + 2)
        - 3
    )
    x2_b4 = (r2g - 1) * fx**2 + (fy**2 - 1) * gx**2 + (fy * gy - 1) ** 2
    t_x2 = (
        -4 * amb2 * b**2 * apb2 * x**2
        * (x2_a4 * a**4 - 2 * b**2 * x2_a2 * a**2 + b**4 * x2_b4)
    )

    y2_a4 = (r2g - 1) * fy**2 + (fx * gx - 1) ** 2 + (fx**2 - 1) * gy**2
    y2_a2 = (
        (r2g - 1) * fy**2
        - 4 * gy * fy
        + (fx**2 - 1) * gy**2
        + (fx * gx - 1) * (fx * gx + 3)
    )
    y2_b4 = (r2g - 1) * fy**2 - 8 * gy * fy + (fx * gx + 3) ** 2 + (fx**2 - 1) * gy**2
    t_y2 = (
        -4 * a**2 * amb2 * apb2 * y**2
        * (y2_a4 * a**4 - 2 * b**2 * y2_a2 * a**2 + b**4 * y2_b4)
    )

    x_a4 = (
        (r2g - 1) * fx**3
        + gx * (r2g - 9) * fx**2
        + ((fy**2 + 1) * gy**2 + 6 * fy * gy + (fy**2 - 9) * (gx**2 - 1)) * fx
        + gx * ((r2g + 1) * fy**2 + 6 * gy * fy - gx**2 - gy**2 + 9)
    )
    x_a2 = (
        (r2g - 1) * fx**3
        + gx * (r2g - 5) * fx**2
        + ((r2g - 1) * fy**2 + 2 * gy * fy - 5 * gx**2 + gy**2 - 3) * fx
        + gx * ((r2g + 1) * fy**2 + 2 * gy * fy - gx**2 - gy**2 - 3)
    )
    x_b4 = (
        (r2g - 1) * fx**3
        + gx * (r2g - 1) * fx**2
        + ((fy**2 + 1) * gy**2 - 2 * fy * gy + (fy**2 - 1) * (gx**2 - 1)) * fx
        + gx * ((r2g + 1) * fy**2 - 2 * gy * fy - gx**2 - gy**2 + 1)
    )
    t_x = (
        4 * a * amb2 * b**2 * apb2 * x
        * (x_a4 * a**4 - 2 * b**2 * x_a2 * a**2 + b**4 * x_b4)
    )

    e_a8 = (
        (r2g - 1) ** 2 * fx**4
        - 12 * gx * (r2g - 1) * fx**3
        + 2
        * (
            22 * gx**2
            + fy**2 * (r2g - 1) ** 2
            + 2 * fy * gy * (r2g - 1)
            - (gx**2 + (gy - 2) * gy) * (gx**2 + gy * (gy + 2))
            - 5
        )
        * fx**2
        - 4 * gx * (3 * (r2g - 1) * fy**2 + 6 * gy * fy - 3 * gx**2 - 3 * gy**2 + 11) * fx
        + fy**4 * (r2g - 1) ** 2
        + 4 * fy**3 * gy * (r2g - 1)
        - 4 * fy * gy * (r2g - 1)
        + (r2g - 9) * (r2g - 1)
        - 2 * fy**2 * (gx**4 - 4 * gx**2 + gy**4 + 2 * (gx**2 - 3) * gy**2 + 5)
    )
    e_a6 = (
        (r2g - 1) ** 2 * fx**4
        - 8 * gx * (r2g - 1) * fx**3
        + 2 * (6 * gx**2 + fy**2 * (r2g - 1) ** 2 - r2g**2 - 1) * fx**2
        + 8 * gx * (-(r2g - 1) * fy**2 + gy * fy + gx**2 + gy**2 + 2) * fx
        + fy**4 * (r2g - 1) ** 2
        - 24 * fy * gy
        + (r2g - 5) * (r2g + 3)
        - 2 * fy**2 * (2 * gy**2 + r2g**2 + 1)
    )
    e_a4 = (
        3 * (r2g - 1) ** 2 * fx**4
        - 12 * gx * (r2g - 1) * fx**3
        + 2
        * (
            -6 * gx**2
            - 4 * gy**2
            + 3 * fy**2 * (r2g - 1) ** 2
            - 3 * r2g**2
            - 6 * fy * gy * (r2g - 1)
            + 1
        )
        * fx**2
        + 4 * gx * (-3 * (r2g - 1) * fy**2 + 14 * gy * fy + 3 * gx**2 + 3 * gy**2 + 1) * fx
        + 2 * gx**2
        + 2 * gy**2
        + 3 * fy**4 * (r2g - 1) ** 2
        - 12 * fy**3 * gy * (r2g - 1)
        + 4 * fy * (3 * gy**3 + 3 * gx**2 * gy + gy)
        - 2 * fy**2 * (3 * gx**4 + 4 * gx**2 + 3 * gy**4 + 6 * (gx**2 + 1) * gy**2 - 1)
        + 59
        + (3 * r2g**2 if corrected else 0.0)
    )
    e_a2 = (
        (r2g - 1) ** 2 * fx**4
        + 2
        * (-2 * gx**2 + fy**2 * (r2g - 1) ** 2 - r2g**2 - 4 * fy * gy * (r2g - 1) - 1)
        * fx**2
        + 8 * gx * (fy * gy - 3) * fx
        + fy**4 * (r2g - 1) ** 2
        - 8 * fy**3 * gy * (r2g - 1)
        + 8 * fy * gy * (r2g + 2)
        + (r2g - 5) * (r2g + 3)
        - 2 * fy**2 * (-6 * gy**2 + r2g**2 + 1)
    )
    e_b8 = (
        (r2g - 1) ** 2 * fx**4
        + 4 * gx * (r2g - 1) * fx**3
        + 2
        * (
            6 * gx**2
            + fy**2 * (r2g - 1) ** 2
            - 6 * fy * gy * (r2g - 1)
            - (gx**2 + (gy - 2) * gy) * (gx**2 + gy * (gy + 2))
            - 5
        )
        * fx**2
        + 4 * gx * ((fy**2 - 1) * gy**2 - 6 * fy * gy + (fy**2 - 1) * (gx**2 - 1)) * fx
        + fy**4 * (r2g - 1) ** 2
        - 12 * fy**3 * gy * (r2g - 1)
        + (r2g - 9) * (r2g - 1)
        + 4 * fy * gy * (3 * gx**2 + 3 * gy**2 - 11)
        - 2 * fy**2 * (gx**4 - 4 * gx**2 + gy**4 + 2 * (gx**2 - 11) * gy**2 + 5)
    )
    t_const = a**2 * b**2 * (
        e_a8 * a**8
        - 4 * b**2 * e_a6 * a**6
        + 2 * b**4 * e_a4 * a**4
        - 4 * b**6 * e_a2 * a**2
        + b**8 * e_b8
    )

    return 4 * (t_xy + t_y + t_x2 + t_y2 + t_x + t_const)
