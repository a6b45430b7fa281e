"""Plane-geometry primitives: points, circles, lines, ellipses, axis scalings.

Points are freely interchangeable with complex numbers (z = x + iy); most
internal computation happens on complex values and converts at the API
boundary.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property


class GeometryError(ValueError):
    """Raised when an operation receives geometrically degenerate input."""


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError("point components must be finite")

    @staticmethod
    def from_complex(z: complex) -> "Point":
        return Point(float(z.real), float(z.imag))

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    def distance(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def __iter__(self):
        yield self.x
        yield self.y


def as_complex(p) -> complex:
    """Accept a Point, complex, or (x, y) pair and return the complex value."""
    if isinstance(p, Point):
        return p.z
    if isinstance(p, complex):
        return p
    if isinstance(p, (int, float)):
        return complex(p, 0.0)
    x, y = p
    return complex(x, y)


def as_point(p) -> Point:
    if isinstance(p, Point):
        return p
    z = as_complex(p)
    return Point.from_complex(z)


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise GeometryError("circle radius must be >= 0")

    def power(self, p) -> float:
        """Power of a point: |p - center|^2 - r^2."""
        z = as_complex(p)
        return abs(z - self.center.z) ** 2 - self.radius**2

    def point_at(self, angle: float) -> Point:
        return Point(
            self.center.x + self.radius * math.cos(angle),
            self.center.y + self.radius * math.sin(angle),
        )


@dataclass(frozen=True)
class Line:
    """Line l*x + m*y + n = 0. Coefficients are kept unnormalized so that
    families of lines built from smooth data stay smooth in the parameter."""

    l: float
    m: float
    n: float

    def __post_init__(self):
        if self.l == 0.0 and self.m == 0.0:
            raise GeometryError("line requires (l, m) != (0, 0)")

    def __call__(self, p) -> float:
        z = as_complex(p)
        return self.l * z.real + self.m * z.imag + self.n

    def distance(self, p) -> float:
        return abs(self(p)) / math.hypot(self.l, self.m)

    def normalized(self) -> "Line":
        """Scale so that (l, m) is a unit vector, sign fixed by the first
        nonzero of (l, m) being positive."""
        s = math.hypot(self.l, self.m)
        sign = 1.0
        lead = self.l if abs(self.l) > 1e-14 * s else self.m
        if lead < 0:
            sign = -1.0
        return Line(sign * self.l / s, sign * self.m / s, sign * self.n / s)

    def unit_normal(self) -> tuple[float, float]:
        s = math.hypot(self.l, self.m)
        return self.l / s, self.m / s

    def foot(self, p) -> Point:
        """Orthogonal projection of p onto the line."""
        z = as_complex(p)
        s2 = self.l**2 + self.m**2
        t = (self.l * z.real + self.m * z.imag + self.n) / s2
        return Point(z.real - t * self.l, z.imag - t * self.m)

    @staticmethod
    def through(p, q) -> "Line":
        zp, zq = as_complex(p), as_complex(q)
        if abs(zp - zq) == 0.0:
            raise GeometryError("two coincident points do not define a line")
        return Line(
            zp.imag - zq.imag,
            zq.real - zp.real,
            zp.real * zq.imag - zq.real * zp.imag,
        )


def intersect_lines(l1: Line, l2: Line) -> Point:
    det = l1.l * l2.m - l2.l * l1.m
    scale = math.hypot(l1.l, l1.m) * math.hypot(l2.l, l2.m)
    if abs(det) < 1e-14 * scale:
        raise GeometryError("lines are parallel")
    x = (-l1.n * l2.m + l2.n * l1.m) / det
    y = (-l1.l * l2.n + l2.l * l1.n) / det
    return Point(x, y)


@dataclass(frozen=True)
class EllipseSpec:
    """Ellipse by center, semiaxes and major-axis direction (radians).

    Degenerate specs with zero semiaxes are permitted as point-locus
    markers; conic conversion requires strictly positive axes.
    """

    center: Point
    semi_major: float
    semi_minor: float
    rotation: float = 0.0

    def __post_init__(self):
        if self.semi_major < self.semi_minor or self.semi_minor < 0:
            raise GeometryError("ellipse requires semi_major >= semi_minor >= 0")

    @property
    def is_degenerate(self) -> bool:
        return self.semi_minor <= 0.0

    def focal_distance(self) -> float:
        return math.sqrt(max(self.semi_major**2 - self.semi_minor**2, 0.0))

    def foci(self) -> tuple[Point, Point]:
        c = self.focal_distance()
        d = complex(math.cos(self.rotation), math.sin(self.rotation))
        z0 = self.center.z
        return Point.from_complex(z0 + c * d), Point.from_complex(z0 - c * d)

    def point_at(self, t: float) -> Point:
        """Point at parametric angle t (major axis at t = 0)."""
        ct, st = math.cos(t), math.sin(t)
        cr, sr = math.cos(self.rotation), math.sin(self.rotation)
        u, v = self.semi_major * ct, self.semi_minor * st
        return Point(
            self.center.x + cr * u - sr * v,
            self.center.y + sr * u + cr * v,
        )

    def implicit(self, p) -> float:
        """Value of ((u/A)^2 + (v/B)^2 - 1) in the ellipse's own frame."""
        z = as_complex(p) - self.center.z
        cr, sr = math.cos(self.rotation), math.sin(self.rotation)
        u = cr * z.real + sr * z.imag
        v = -sr * z.real + cr * z.imag
        return (u / self.semi_major) ** 2 + (v / self.semi_minor) ** 2 - 1.0

    def support(self, nx: float, ny: float) -> float:
        """Support function: distance from center to the tangent line with
        outward unit normal (nx, ny)."""
        cr, sr = math.cos(self.rotation), math.sin(self.rotation)
        n1 = cr * nx + sr * ny
        n2 = -sr * nx + cr * ny
        return math.hypot(self.semi_major * n1, self.semi_minor * n2)

    def tangency_residual(self, line: Line) -> float:
        """|distance(center, line) - support(normal)|; zero iff tangent."""
        nx, ny = line.unit_normal()
        d = abs(line(self.center)) / math.hypot(line.l, line.m)
        return abs(d - self.support(nx, ny))

    def contains(self, p, margin: float = 0.0) -> bool:
        return self.implicit(p) < -margin


@dataclass(frozen=True)
class AffineMap:
    """Axis scaling (x, y) -> (a x, b y) with a, b > 0.

    On complex numbers: z -> (a+b)/2 * z + (a-b)/2 * conj(z).
    """

    a: float
    b: float

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise GeometryError("affine scaling requires a, b > 0")

    def apply(self, z: complex) -> complex:
        return complex(self.a * z.real, self.b * z.imag)

    def invert(self, z: complex) -> complex:
        return complex(z.real / self.a, z.imag / self.b)

    def inverse(self) -> "AffineMap":
        return AffineMap(1.0 / self.a, 1.0 / self.b)


@dataclass(frozen=True)
class Triangle:
    """Triangle with vertices normalized to counterclockwise order.

    Sidelengths l1, l2, l3 are opposite vertices A, B, C respectively.
    """

    A: Point
    B: Point
    C: Point

    def __post_init__(self):
        if _signed_area(self.A, self.B, self.C) < 0:
            b, c = self.B, self.C
            object.__setattr__(self, "B", c)
            object.__setattr__(self, "C", b)

    @staticmethod
    def from_complex(z1: complex, z2: complex, z3: complex) -> "Triangle":
        return Triangle(
            Point.from_complex(z1), Point.from_complex(z2), Point.from_complex(z3)
        )

    @property
    def vertices(self) -> tuple[Point, Point, Point]:
        return self.A, self.B, self.C

    @cached_property
    def l1(self) -> float:
        return self.B.distance(self.C)

    @cached_property
    def l2(self) -> float:
        return self.C.distance(self.A)

    @cached_property
    def l3(self) -> float:
        return self.A.distance(self.B)

    @property
    def sides(self) -> tuple[float, float, float]:
        return self.l1, self.l2, self.l3

    @cached_property
    def area(self) -> float:
        return _signed_area(self.A, self.B, self.C)

    def side_lines(self) -> tuple[Line, Line, Line]:
        """Lines of the sides opposite A, B, C (i.e. BC, CA, AB)."""
        return (
            Line.through(self.B, self.C),
            Line.through(self.C, self.A),
            Line.through(self.A, self.B),
        )

    def diameter(self) -> float:
        return max(self.l1, self.l2, self.l3)

    def is_degenerate(self, eps: float = 1e-12) -> bool:
        return abs(self.area) <= eps * self.diameter() ** 2


def _signed_area(a: Point, b: Point, c: Point) -> float:
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y))


def foot_of_perpendicular(p, z, z2) -> Point:
    """Foot of the perpendicular from p onto the line through z and z2.

    The result lies on the line and (p - foot) is orthogonal to (z2 - z).
    """
    zp, za, zb = as_complex(p), as_complex(z), as_complex(z2)
    w = zb - za
    if abs(w) == 0.0:
        raise GeometryError("degenerate segment: z == z2")
    t = ((zp - za) * w.conjugate()).real / abs(w) ** 2
    return Point.from_complex(za + t * w)


def circumcircle_of(tri: Triangle) -> Circle:
    """Circumcircle via the complex ratio-of-determinants circumcenter."""
    if tri.is_degenerate():
        raise GeometryError("degenerate triangle: collinear vertices")
    x, y, z = tri.A.z, tri.B.z, tri.C.z
    num = _det3(
        x, abs(x) ** 2, 1.0,
        y, abs(y) ** 2, 1.0,
        z, abs(z) ** 2, 1.0,
    )
    den = _det3(
        x, x.conjugate(), 1.0,
        y, y.conjugate(), 1.0,
        z, z.conjugate(), 1.0,
    )
    center = num / den
    radius = abs(x - center)
    return Circle(Point.from_complex(center), radius)


def _det3(a11, a12, a13, a21, a22, a23, a31, a32, a33) -> complex:
    return (
        a11 * (a22 * a33 - a23 * a32)
        - a12 * (a21 * a33 - a23 * a31)
        + a13 * (a21 * a32 - a22 * a31)
    )


def radical_axis(c1: Circle, c2: Circle) -> Line:
    """Locus of equal power with respect to two circles.

    Coefficients come straight from subtracting the two circle equations,
    so a smooth family of circle pairs yields a smooth family of lines.
    """
    z1, z2 = c1.center.z, c2.center.z
    scale = max(abs(z1), abs(z2), c1.radius, c2.radius, 1.0)
    if abs(z1 - z2) <= 1e-12 * scale:
        raise GeometryError("concentric circles: radical axis at infinity")
    l = 2.0 * (z2.real - z1.real)
    m = 2.0 * (z2.imag - z1.imag)
    n = (abs(z1) ** 2 - c1.radius**2) - (abs(z2) ** 2 - c2.radius**2)
    return Line(l, m, n)


def angle_difference_mod_pi(t1: float, t2: float) -> float:
    """Unsigned difference between two undirected axis angles."""
    d = (t1 - t2) % math.pi
    return min(d, math.pi - d)


def rotate_point(p, angle: float, about=0j) -> Point:
    z0 = as_complex(about)
    z = as_complex(p)
    return Point.from_complex(z0 + (z - z0) * cmath.exp(1j * angle))
