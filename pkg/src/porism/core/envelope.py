"""Envelopes of one-parameter families of lines, circles, and implicit curves.

An envelope point of a family F(x, y, u) = 0 solves the system
F = 0, dF/du = 0. For line families there is a closed form; for circle
families the two tangency branches are explicit; the implicit case runs
Newton on the 2x2 system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import GeometryError, Line, Point


@dataclass
class EnvelopeResult:
    params: list[float]
    points: list[Point]
    skipped: list[float] = field(default_factory=list)

    def as_array(self) -> np.ndarray:
        return np.array([[p.x, p.y] for p in self.points])


def _derivative(fn, u: float, h: float = 1e-6):
    """Central difference with one Richardson refinement."""

    def central(step):
        a = np.asarray(fn(u + step), dtype=float)
        b = np.asarray(fn(u - step), dtype=float)
        return (a - b) / (2 * step)

    d1 = central(h)
    d2 = central(h / 2)
    return (4 * d2 - d1) / 3


def envelope_of_lines(
    family,
    n: int = 1024,
    derivative=None,
    u_range: tuple[float, float] = (0.0, 2 * math.pi),
) -> EnvelopeResult:
    """Envelope of u -> Line over a uniform parameter grid.

    ``family(u)`` must return a Line or a raw (l, m, n) triple whose
    coefficients vary smoothly with u (no per-call renormalization).
    ``derivative(u)``, when given, must return the analytic (l', m', n');
    otherwise central finite differences with Richardson refinement are
    used. Parameters where the family is stationary (l m' - m l' ~ 0) or
    degenerates entirely ((l, m) ~ 0, the line at infinity) are skipped
    and reported.
    """

    def coeffs(u):
        got = family(u)
        if isinstance(got, Line):
            return np.array([got.l, got.m, got.n])
        return np.asarray(got, dtype=float)

    deriv = derivative if derivative is not None else (lambda u: _derivative(coeffs, u))

    us = np.linspace(u_range[0], u_range[1], n, endpoint=False)
    params, points, skipped = [], [], []
    for u in us:
        try:
            l, m, nn = coeffs(u)
            dl, dm, dn = np.asarray(deriv(u), dtype=float)
        except GeometryError:
            skipped.append(float(u))
            continue
        det = dm * l - dl * m
        scale = math.hypot(l, m) * math.hypot(dl, dm) + 1e-300
        if abs(det) < 1e-12 * scale:
            skipped.append(float(u))
            continue
        x = (dn * m - dm * nn) / det
        y = -(dn * l - dl * nn) / det
        params.append(float(u))
        points.append(Point(float(x), float(y)))
    return EnvelopeResult(params, points, skipped)


def envelope_of_circles(
    center,
    radius,
    n: int = 1024,
    dcenter=None,
    dradius=None,
    u_range: tuple[float, float] = (0.0, 2 * math.pi),
) -> tuple[EnvelopeResult, EnvelopeResult]:
    """Both envelope branches of a family of circles u -> (center(u), radius(u)).

    A point O + R*nhat is on the envelope iff O'(u) . nhat = -R'(u); when
    |O'| >= |R'| the two solutions are nhat at angle
    atan2(O'y, O'x) +/- arccos(-R'/|O'|).
    """

    def ctr(u):
        c = center(u)
        if isinstance(c, Point):
            return np.array([c.x, c.y])
        return np.asarray(c, dtype=float)

    dc = dcenter if dcenter is not None else (lambda u: _derivative(ctr, u))
    dr = dradius if dradius is not None else (lambda u: float(_derivative(lambda v: [radius(v)], u)[0]))

    us = np.linspace(u_range[0], u_range[1], n, endpoint=False)
    plus = EnvelopeResult([], [])
    minus = EnvelopeResult([], [])
    for u in us:
        o = ctr(u)
        r = float(radius(u))
        do = np.asarray(dc(u), dtype=float)
        drv = float(dr(u))
        speed = math.hypot(do[0], do[1])
        if speed < 1e-300 or abs(drv) > speed:
            plus.skipped.append(float(u))
            minus.skipped.append(float(u))
            continue
        base = math.atan2(do[1], do[0])
        off = math.acos(max(-1.0, min(1.0, -drv / speed)))
        for sign, res in ((+1.0, plus), (-1.0, minus)):
            phi = base + sign * off
            res.params.append(float(u))
            res.points.append(
                Point(o[0] + r * math.cos(phi), o[1] + r * math.sin(phi))
            )
    return plus, minus


@dataclass
class ImplicitEnvelope:
    params: list[float]
    points: list[Point]
    failed: list[float] = field(default_factory=list)

    def as_array(self) -> np.ndarray:
        return np.array([[p.x, p.y] for p in self.points])


def _du(f, x, y, u, h=1e-6):
    d1 = (f(x, y, u + h) - f(x, y, u - h)) / (2 * h)
    d2 = (f(x, y, u + h / 2) - f(x, y, u - h / 2)) / h
    return (4 * d2 - d1) / 3


def envelope_of_implicit(
    family,
    n: int = 2048,
    dfamily_du=None,
    seeds=None,
    seed_center=(0.0, 0.0),
    seed_rays: int = 8,
    seed_radius: float = 10.0,
    u_range: tuple[float, float] = (0.0, 2 * math.pi),
    tol: float = 1e-11,
) -> ImplicitEnvelope:
    """Envelope samples of F(x, y, u) = 0 by Newton on {F = 0, dF/du = 0}.

    ``seeds(u)`` supplies starting points near the curve F(., ., u) = 0;
    without it, points on the curve are found by bisection along rays from
    ``seed_center``. Non-convergent parameters are reported in ``failed``.
    """
    fu = dfamily_du if dfamily_du is not None else (lambda x, y, u: _du(family, x, y, u))

    # constant-family detection
    probe_us = np.linspace(u_range[0], u_range[1], 7)
    probe_mag = max(
        abs(fu(seed_center[0] + 0.37 * k, seed_center[1] - 0.21 * k, u))
        for k, u in enumerate(probe_us)
    )
    f_mag = max(
        abs(family(seed_center[0] + 0.37 * k, seed_center[1] - 0.21 * k, u))
        for k, u in enumerate(probe_us)
    ) + 1e-300
    if probe_mag <= 1e-13 * f_mag:
        raise GeometryError("family does not depend on u (dF/du == 0)")

    def default_seeds(u):
        found = []
        cx, cy = seed_center
        for k in range(seed_rays):
            ang = 2 * math.pi * (k + 0.5) / seed_rays
            dx, dy = math.cos(ang), math.sin(ang)
            ss = np.linspace(1e-3, seed_radius, 64)
            vals = [family(cx + s * dx, cy + s * dy, u) for s in ss]
            for i in range(len(ss) - 1):
                if vals[i] == 0.0 or vals[i] * vals[i + 1] < 0:
                    lo, hi = ss[i], ss[i + 1]
                    flo = vals[i]
                    for _ in range(60):
                        mid = 0.5 * (lo + hi)
                        fm = family(cx + mid * dx, cy + mid * dy, u)
                        if flo * fm <= 0:
                            hi = mid
                        else:
                            lo, flo = mid, fm
                    s = 0.5 * (lo + hi)
                    found.append((cx + s * dx, cy + s * dy))
                    break
        return found

    get_seeds = seeds if seeds is not None else default_seeds

    us = np.linspace(u_range[0], u_range[1], n, endpoint=False)
    out = ImplicitEnvelope([], [])
    for u in us:
        converged = []
        for x0, y0 in get_seeds(u):
            pt = _newton2(family, fu, x0, y0, u, tol)
            if pt is not None:
                converged.append(pt)
        if not converged:
            out.failed.append(float(u))
            continue
        # dedupe per-parameter solutions
        kept = []
        for p in converged:
            if all(math.hypot(p[0] - q[0], p[1] - q[1]) > 1e-8 for q in kept):
                kept.append(p)
        for p in kept:
            out.params.append(float(u))
            out.points.append(Point(p[0], p[1]))
    return out


def _newton2(f, fu, x, y, u, tol, max_iter=30):
    scale = max(1.0, abs(x), abs(y))
    h = 1e-6 * scale
    for _ in range(max_iter):
        g1 = f(x, y, u)
        g2 = fu(x, y, u)
        if abs(g1) < tol and abs(g2) < tol:
            return x, y
        j11 = (f(x + h, y, u) - f(x - h, y, u)) / (2 * h)
        j12 = (f(x, y + h, u) - f(x, y - h, u)) / (2 * h)
        j21 = (fu(x + h, y, u) - fu(x - h, y, u)) / (2 * h)
        j22 = (fu(x, y + h, u) - fu(x, y - h, u)) / (2 * h)
        det = j11 * j22 - j12 * j21
        if abs(det) < 1e-300:
            return None
        dx = (g1 * j22 - g2 * j12) / det
        dy = (j11 * g2 - j21 * g1) / det
        x, y = x - dx, y - dy
        if not (math.isfinite(x) and math.isfinite(y)):
            return None
    g1, g2 = f(x, y, u), fu(x, y, u)
    if abs(g1) < tol and abs(g2) < tol:
        return x, y
    return None


def split_nested_components(points, center) -> tuple[list[int], list[int]]:
    """Split envelope samples into two nested components by radial gap
    around ``center``; returns index lists (outer, inner)."""
    cz = complex(center[0], center[1]) if not isinstance(center, Point) else center.z
    radii = np.array([abs(p.z - cz) for p in points])
    order = np.argsort(radii)
    gaps = np.diff(radii[order])
    if len(gaps) == 0:
        raise GeometryError("not enough points to split components")
    i = int(np.argmax(gaps))
    span = radii.max() - radii.min()
    if span <= 0 or gaps[i] < 0.05 * span:
        raise GeometryError("inseparable components: no radial gap")
    inner = [int(k) for k in order[: i + 1]]
    outer = [int(k) for k in order[i + 1 :]]
    return outer, inner
