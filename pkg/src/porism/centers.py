"""Triangle centers from first barycentrics, and isogonal conjugation by
four mutually cross-checking methods.

The pedal-circle construction is the reference implementation: reflect P
about the circumcenter of its pedal triangle. The barycentric formula
[l1^2/u : l2^2/v : l3^2/w] is the fast path; the unit-circle symmetric
formula and the rational-in-lambda form (for Poncelet families) serve as
independent cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core.geometry import (
    Circle,
    GeometryError,
    Line,
    Point,
    Triangle,
    as_complex,
    circumcircle_of,
    foot_of_perpendicular,
    intersect_lines,
)
from .family import ConfigError, PonceletConfig, SymmetricTriple

SUPPORTED_CENTERS = (1, 2, 3, 4, 5, 11, 36, 40)


class UndefinedCenter(GeometryError):
    pass


def _first_barycentric(k: int, l1: float, l2: float, l3: float) -> float:
    if k == 1:
        return l1
    if k == 2:
        return 1.0
    if k == 3:
        return l1 * l1 * (l2 * l2 + l3 * l3 - l1 * l1)
    if k == 4:
        return 1.0 / (l2 * l2 + l3 * l3 - l1 * l1)
    if k == 5:
        return l1 * l1 * (l2 * l2 + l3 * l3) - (l2 * l2 - l3 * l3) ** 2
    if k == 11:
        return (l2 + l3 - l1) * (l2 - l3) ** 2
    if k == 36:
        return l1 * l1 * (l2 * l2 + l3 * l3 - l1 * l1 - l2 * l3)
    if k == 40:
        # leading l1 factor restored: without it the value fails both the
        # excentral-circumcenter and the 2*X3 - X1 constructions
        return l1 * (
            l2 / (l3 + l1 - l2) + l3 / (l1 + l2 - l3) - l1 / (l2 + l3 - l1)
        )
    raise UndefinedCenter(f"center X{k} is not in the supported table")


def barycentric_weights(tri: Triangle, k: int) -> tuple[float, float, float]:
    """Homogeneous weights (u : v : w) of center X_k; cyclic replacement of
    the first barycentric."""
    l1, l2, l3 = tri.sides
    return (
        _first_barycentric(k, l1, l2, l3),
        _first_barycentric(k, l2, l3, l1),
        _first_barycentric(k, l3, l1, l2),
    )


def from_barycentric(tri: Triangle, u: float, v: float, w: float) -> Point:
    s = u + v + w
    if abs(s) <= 1e-12 * (abs(u) + abs(v) + abs(w)):
        raise UndefinedCenter("undefined center: barycentric weights sum to zero")
    za = (u * tri.A.z + v * tri.B.z + w * tri.C.z) / s
    return Point.from_complex(za)


def barycentrics_of_point(p, tri: Triangle) -> tuple[float, float, float]:
    """Signed-area barycentrics of an arbitrary point, normalized to sum 1;
    supports exterior points."""
    zp = as_complex(p)
    pa, pb, pc = tri.A.z, tri.B.z, tri.C.z

    def sarea(q1, q2, q3):
        return 0.5 * ((q2 - q1).real * (q3 - q1).imag - (q3 - q1).real * (q2 - q1).imag)

    total = sarea(pa, pb, pc)
    return (
        sarea(zp, pb, pc) / total,
        sarea(pa, zp, pc) / total,
        sarea(pa, pb, zp) / total,
    )


def _orthocenter_from_altitudes(tri: Triangle) -> Point:
    def altitude(apex: Point, p: Point, q: Point) -> Line:
        dx, dy = q.x - p.x, q.y - p.y
        return Line(dx, dy, -(dx * apex.x + dy * apex.y))

    h1 = altitude(tri.B, tri.C, tri.A)
    h2 = altitude(tri.C, tri.A, tri.B)
    return intersect_lines(h1, h2)


def center(tri: Triangle, k: int) -> Point:
    """Cartesian position of triangle center X_k (supported k only)."""
    if tri.is_degenerate():
        raise GeometryError("degenerate triangle")
    if k == 4:
        l1, l2, l3 = tri.sides
        dens = (
            l2 * l2 + l3 * l3 - l1 * l1,
            l3 * l3 + l1 * l1 - l2 * l2,
            l1 * l1 + l2 * l2 - l3 * l3,
        )
        scale = max(l1, l2, l3) ** 2
        if min(abs(d) for d in dens) < 1e-9 * scale:
            # near-right triangle: the table formula divides by ~0
            return _orthocenter_from_altitudes(tri)
    u, v, w = barycentric_weights(tri, k)
    return from_barycentric(tri, u, v, w)


def incircle_of(tri: Triangle) -> Circle:
    l1, l2, l3 = tri.sides
    s = l1 + l2 + l3
    z = (l1 * tri.A.z + l2 * tri.B.z + l3 * tri.C.z) / s
    r = 2.0 * abs(tri.area) / s
    return Circle(Point.from_complex(z), r)


def special_circles(tri: Triangle) -> dict[str, Circle]:
    """Incircle, circumcircle, nine-point circle (center X5, radius R/2)
    and Bevan circle (center X40, radius 2R)."""
    circ = circumcircle_of(tri)
    return {
        "incircle": incircle_of(tri),
        "circumcircle": circ,
        "ninepoint": Circle(center(tri, 5), circ.radius / 2.0),
        "bevan": Circle(center(tri, 40), 2.0 * circ.radius),
    }


class ConjugateAtInfinity(GeometryError):
    """P lies on the circumcircle: its isogonal conjugate is at infinity."""


def isogonal_pedal(p, tri: Triangle, eps: float = 1e-10) -> Point:
    """Isogonal conjugate via the pedal circle: drop perpendicular feet of
    P on the three sides, take the circle through them, and reflect P
    about its center."""
    zp = as_complex(p)
    circ = circumcircle_of(tri)
    if abs(circ.power(zp)) < eps * circ.radius**2:
        raise ConjugateAtInfinity("point on circumcircle")
    fa = foot_of_perpendicular(zp, tri.B, tri.C)
    fb = foot_of_perpendicular(zp, tri.C, tri.A)
    fc = foot_of_perpendicular(zp, tri.A, tri.B)
    pedal = Triangle(fa, fb, fc)
    if pedal.is_degenerate(1e-10):
        raise ConjugateAtInfinity("pedal triangle degenerate")
    o = circumcircle_of(pedal).center.z
    return Point.from_complex(2.0 * o - zp)


def isogonal_barycentric(p, tri: Triangle) -> Point:
    """Isogonal conjugate via [l1^2/u : l2^2/v : l3^2/w]. A point on a
    side-line maps to the opposite vertex, returned exactly."""
    u, v, w = barycentrics_of_point(p, tri)
    l1, l2, l3 = tri.sides
    zeros = [abs(t) <= 1e-12 for t in (u, v, w)]
    if sum(zeros) >= 2:
        raise GeometryError("point is a vertex: conjugate undefined")
    if zeros[0]:
        return tri.A
    if zeros[1]:
        return tri.B
    if zeros[2]:
        return tri.C
    cu, cv, cw = l1 * l1 / u, l2 * l2 / v, l3 * l3 / w
    s = cu + cv + cw
    if abs(s) <= 1e-12 * (abs(cu) + abs(cv) + abs(cw)):
        raise ConjugateAtInfinity("point on circumcircle")
    return from_barycentric(tri, cu, cv, cw)


def isogonal_symmetric(p, st: SymmetricTriple) -> Point:
    """Isogonal conjugate for a triangle inscribed in the unit circle,
    written in the elementary symmetric polynomials of its vertices:

        conj(P)^2 s3 - conj(P) s2 + s1 - P, all over 1 - |P|^2.
    """
    zp = as_complex(p)
    den = 1.0 - abs(zp) ** 2
    if abs(den) < 1e-12:
        raise ConjugateAtInfinity("denominator vanishes: point on the unit circle")
    pb = zp.conjugate()
    num = pb * pb * st.s3 - pb * st.s2 + st.s1 - zp
    return Point.from_complex(num / den)


@dataclass(frozen=True)
class RationalIsogCoeffs:
    """Constants of the degree-(2,2) rational map lam -> conjugate point
    for a fixed P over a Poncelet family:
    (s2 lam^2 + s1 lam + s0) / (t2 lam^2 + t1 lam + t0)."""

    s0: complex
    s1: complex
    s2: complex
    t0: complex
    t1: complex
    t2: complex


def rational_isog_coeffs(a: float, b: float, f: complex, g: complex, p) -> RationalIsogCoeffs:
    """Closed-form constants of the rational conjugate map, in terms of the
    outer semiaxes, the caustic-preimage foci, and the fixed point."""
    P = as_complex(p)
    fb, gb = f.conjugate(), g.conjugate()
    Pb = P.conjugate()

    s2 = (
        -(a * a - b * b) * (fb * gb * (a - b) - a - b) * Pb * P
        - (2 * a + 2 * b) * a * b * (fb + gb) * (fb * gb * (a - b) - a - b) * Pb
        - (2 * a + 2 * b) * a * b * (fb + gb) * (a - b) * P
        + (a + b) ** 2 * (fb * gb * (a - b) - a - b) * Pb**2
        + (a + b)
        * a
        * b
        * (
            (gb**2 + 1) * (fb**2 + 1) * a * a
            - 2 * (fb + gb) ** 2 * a * b
            - (1 - gb**2) * (1 - fb**2) * b * b
        )
    )

    s1 = (
        -2 * a * b * (a * a - b * b) * f * g * P
        - 2 * a * b * (a + b) * (fb * gb * (a - b) - a - b) * f * g * Pb
        + 2 * a * b * (a + b) * (a - b) ** 2 * (fb + gb) * f * g
        - (a + b) * (a - b) ** 2 * f * P * Pb
        + (a - b) * (a + b) ** 2 * f * Pb**2
        - (2 * a + 2 * b) * a * b * (fb + gb) * (a - b) * Pb * f
        + 2 * a * b * (a + b) * (fb * gb * (a - b) * (a + b) - a * a - b * b) * f
        - (a + b) * (a - b) ** 2 * g * P * Pb
        + (a - b) * (a + b) ** 2 * g * Pb**2
        - (2 * a + 2 * b) * a * b * (fb + gb) * (a - b) * Pb * g
        + 2 * a * b * (a + b) * (fb * gb * (a - b) * (a + b) - a * a - b * b) * g
        + (a - b) * (a + b) ** 2 * (fb + gb) * Pb * P
        - 2 * a * b * (fb * gb * (a - b) * (a + b) - 2 * a * a - 2 * b * b) * P
        - (a + b) * (a - b) ** 2 * (fb + gb) * Pb**2
        + 2 * a * b * (a - b) * (fb * gb * (a - b) - a - b) * Pb
        - 2 * a * b * (a - b) * (a * a + b * b) * (fb + gb)
    )

    s0 = (
        a * b * (a + b) * (a - b) ** 2 * f * f * g * g
        - 2 * a * b * (a - b) * (a + b) * f * f * g * Pb
        + (a - b) ** 3 * Pb**2
        + a * b * (a + b) * (a - b) ** 2
        + a * b * (a - b) * (a + b) ** 2 * f * f
        - 2 * a * b * (a - b) * (a + b) * f * g * g * Pb
        + (a - b) * (a + b) ** 2 * f * g * P * Pb
        - (a + b) * (a - b) ** 2 * f * g * Pb**2
        + 4 * a * a * b * b * (a - b) * f * g
        - 2 * a * b * (a * a - b * b) * f * P
        + 2 * b * a * (a - b) ** 2 * f * Pb
        + a * b * (a - b) * (a + b) ** 2 * g * g
        - 2 * a * b * (a * a - b * b) * g * P
        + 2 * a * b * (a - b) ** 2 * Pb * g
        - (a + b) * (a - b) ** 2 * Pb * P
    )

    t2 = (a * a - b * b) * (
        2 * (fb + gb) * a * b
        - (P - Pb) * (fb * gb - 1) * a
        - (P + Pb) * (fb * gb + 1) * b
    )

    t1 = (
        (2 * f * g + 2 * fb * gb - 4) * a**3 * b
        - (P - Pb) * (f + g - fb - gb) * a**3
        - (P + Pb) * (f + g + fb + gb) * a * a * b
        + (-2 * f * g - 2 * fb * gb - 4) * a * b**3
        + (P - Pb) * (f + g - fb - gb) * b * b * a
        + 8 * a * b * P * Pb
        + (P + Pb) * (f + g + fb + gb) * b**3
    )

    t0 = (
        (2 * f + 2 * g) * a**3 * b
        + (P - Pb) * (f * g - 1) * a**3
        - (P + Pb) * (f * g + 1) * a * a * b
        + (-2 * f - 2 * g) * a * b**3
        - (P - Pb) * (f * g - 1) * b * b * a
        + (P + Pb) * (f * g + 1) * b**3
    )

    return RationalIsogCoeffs(s0=s0, s1=s1, s2=s2, t0=t0, t1=t1, t2=t2)


def isogonal_rational(coeffs: RationalIsogCoeffs, lam: complex) -> Point:
    """Evaluate the rational conjugate map at a unit-modulus parameter."""
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > 1e-12:
        raise ConfigError("family parameter must have unit modulus")
    den = coeffs.t2 * lam * lam + coeffs.t1 * lam + coeffs.t0
    scale = max(abs(coeffs.t2), abs(coeffs.t1), abs(coeffs.t0), 1e-300)
    if abs(den) < 1e-12 * scale:
        raise ConjugateAtInfinity(f"pole of the rational conjugate map at {lam}")
    num = coeffs.s2 * lam * lam + coeffs.s1 * lam + coeffs.s0
    return Point.from_complex(num / den)


def isogonal_rational_for(cfg: PonceletConfig, p) -> RationalIsogCoeffs:
    return rational_isog_coeffs(cfg.a, cfg.b, cfg.f, cfg.g, p)
