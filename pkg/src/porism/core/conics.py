"""Conics as 6 real coefficients, with total classification and ellipse
conversions.

A conic is A x^2 + B xy + C y^2 + D x + E y + F = 0, stored normalized to
unit Euclidean norm with the first nonzero coefficient positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .geometry import EllipseSpec, GeometryError, Point, as_complex


class ConicType(str, Enum):
    REAL_ELLIPSE = "real_ellipse"
    CIRCLE = "circle"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"
    INTERSECTING_LINES = "intersecting_lines"
    PARALLEL_LINES = "parallel_lines"
    SINGLE_LINE = "single_line"
    POINT = "point"
    EMPTY = "empty"


def _normalize(vec: np.ndarray) -> np.ndarray:
    nrm = float(np.linalg.norm(vec))
    if nrm == 0.0:
        raise GeometryError("all-zero conic coefficients")
    v = vec / nrm
    for x in v:
        if abs(x) > 1e-14:
            if x < 0:
                v = -v
            break
    return v


@dataclass(frozen=True)
class ConicCoeffs:
    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    def __post_init__(self):
        v = _normalize(np.array([self.a, self.b, self.c, self.d, self.e, self.f]))
        for name, val in zip("abcdef", v):
            object.__setattr__(self, name, float(val))

    @staticmethod
    def from_vector(vec) -> "ConicCoeffs":
        return ConicCoeffs(*[float(x) for x in vec])

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d, self.e, self.f])

    def __call__(self, p) -> float:
        z = as_complex(p)
        x, y = z.real, z.imag
        return (
            self.a * x * x
            + self.b * x * y
            + self.c * y * y
            + self.d * x
            + self.e * y
            + self.f
        )

    def matrix(self) -> np.ndarray:
        """Symmetric 3x3 matrix of the quadratic form on (x, y, 1)."""
        return np.array(
            [
                [self.a, self.b / 2, self.d / 2],
                [self.b / 2, self.c, self.e / 2],
                [self.d / 2, self.e / 2, self.f],
            ]
        )

    def quadratic_part(self) -> np.ndarray:
        return np.array([[self.a, self.b / 2], [self.b / 2, self.c]])

    def discriminant(self) -> float:
        return self.b**2 - 4.0 * self.a * self.c

    def scaled(self, sx: float, sy: float) -> "ConicCoeffs":
        """Coefficients of the image curve under (x, y) -> (sx*x, sy*y)."""
        return ConicCoeffs(
            self.a / sx**2,
            self.b / (sx * sy),
            self.c / sy**2,
            self.d / sx,
            self.e / sy,
            self.f,
        )

    def translated(self, dx: float, dy: float) -> "ConicCoeffs":
        """Coefficients of the image curve under (x, y) -> (x+dx, y+dy)."""
        a, b, c, d, e, f = self.a, self.b, self.c, self.d, self.e, self.f
        return ConicCoeffs(
            a,
            b,
            c,
            d - 2 * a * dx - b * dy,
            e - 2 * c * dy - b * dx,
            f + a * dx**2 + b * dx * dy + c * dy**2 - d * dx - e * dy,
        )


def classify_conic(conic: ConicCoeffs, eps: float = 1e-8) -> ConicType:
    """Total classification from the discriminant B^2 - 4AC and the 3x3
    determinant, with relative tolerance eps for the zero tests."""
    a, b, c, d, e, f = conic.vector
    disc = conic.discriminant()
    det3 = float(np.linalg.det(conic.matrix()))

    quad = max(abs(a), abs(b), abs(c))
    if quad <= eps:
        # degree <= 1
        if math.hypot(d, e) > eps:
            return ConicType.SINGLE_LINE
        return ConicType.EMPTY

    if disc < -eps:
        if abs(det3) <= eps:
            return ConicType.POINT
        if det3 * (a + c) < 0:
            if abs(a - c) <= eps and abs(b) <= eps:
                return ConicType.CIRCLE
            return ConicType.REAL_ELLIPSE
        return ConicType.EMPTY

    if disc > eps:
        if abs(det3) <= eps:
            return ConicType.INTERSECTING_LINES
        return ConicType.HYPERBOLA

    # parabolic family
    if abs(det3) > eps:
        return ConicType.PARABOLA
    # rank-one quadratic part: mu*(v.x)^2 + linear
    m2 = conic.quadratic_part()
    evals, evecs = np.linalg.eigh(m2)
    i = int(np.argmax(np.abs(evals)))
    mu = float(evals[i])
    v = evecs[:, i]
    lin = np.array([d, e])
    kappa = float(lin @ v)
    tau = float(lin @ np.array([-v[1], v[0]]))
    if abs(tau) > eps:
        return ConicType.PARABOLA
    disc_u = kappa**2 - 4.0 * mu * f
    if disc_u > eps:
        return ConicType.PARALLEL_LINES
    if disc_u < -eps:
        return ConicType.EMPTY
    return ConicType.SINGLE_LINE


def conic_center(conic: ConicCoeffs) -> Point:
    """Center of a central conic (ellipse/hyperbola/point/crossing lines)."""
    m = np.array([[2 * conic.a, conic.b], [conic.b, 2 * conic.c]])
    rhs = np.array([-conic.d, -conic.e])
    if abs(np.linalg.det(m)) < 1e-14 * max(np.abs(m).max() ** 2, 1e-300):
        raise GeometryError("conic has no finite center")
    x, y = np.linalg.solve(m, rhs)
    return Point(float(x), float(y))


def conic_axes(conic: ConicCoeffs) -> tuple[float, float]:
    """(major_axis_angle, minor_axis_angle) of a central conic; for a
    hyperbola the first entry is the transverse-axis direction."""
    ctr = conic_center(conic)
    # constant term in centered frame
    f0 = conic(ctr)
    m2 = conic.quadratic_part()
    evals, evecs = np.linalg.eigh(m2)
    # centered conic: sum_i evals[i] * u_i^2 + f0 = 0
    # axis with larger semi-length <-> smaller evals[i]/(-f0) positive value
    semis = []
    for lam in evals:
        q = -f0 / lam if lam != 0 else math.inf
        semis.append(q)  # squared semi-length when positive
    order = sorted(range(2), key=lambda i: -(semis[i] if semis[i] > 0 else -math.inf))
    i_major = order[0]
    ang_major = math.atan2(evecs[1, i_major], evecs[0, i_major]) % math.pi
    ang_minor = (ang_major + math.pi / 2) % math.pi
    return ang_major, ang_minor


def parabola_axis_angle(conic: ConicCoeffs) -> float:
    """Direction (mod pi) of a parabola's axis of symmetry: the nullspace
    direction of the quadratic part."""
    m2 = conic.quadratic_part()
    evals, evecs = np.linalg.eigh(m2)
    i = int(np.argmin(np.abs(evals)))
    v = evecs[:, i]
    return math.atan2(v[1], v[0]) % math.pi


def ellipse_from_conic(conic: ConicCoeffs, eps: float = 1e-8) -> EllipseSpec:
    """Convert a real-ellipse (or circle) conic to center/axes form."""
    kind = classify_conic(conic, eps)
    if kind not in (ConicType.REAL_ELLIPSE, ConicType.CIRCLE):
        raise GeometryError(f"not an ellipse: classified as {kind.value}")
    aq = conic.matrix()
    a33 = conic.quadratic_part()
    center = conic_center(conic)
    evals, evecs = np.linalg.eigh(a33)
    det_aq = float(np.linalg.det(aq))
    det_a33 = float(np.linalg.det(a33))
    semis = np.sqrt(-det_aq / (det_a33 * evals))
    i_major = int(np.argmax(semis))
    i_minor = 1 - i_major
    rot = math.atan2(evecs[1, i_major], evecs[0, i_major])
    if rot <= -math.pi / 2:
        rot += math.pi
    elif rot > math.pi / 2:
        rot -= math.pi
    return EllipseSpec(
        center=center,
        semi_major=float(semis[i_major]),
        semi_minor=float(semis[i_minor]),
        rotation=rot,
    )


def conic_from_ellipse(spec: EllipseSpec) -> ConicCoeffs:
    if spec.semi_minor <= 0:
        raise GeometryError("degenerate ellipse spec has no conic form")
    ca, sa = math.cos(spec.rotation), math.sin(spec.rotation)
    ia2, ib2 = 1.0 / spec.semi_major**2, 1.0 / spec.semi_minor**2
    # ((u)^2 ia2 + (v)^2 ib2 - 1 with u = ca*dx + sa*dy, v = -sa*dx + ca*dy
    a = ca**2 * ia2 + sa**2 * ib2
    b = 2 * ca * sa * (ia2 - ib2)
    c = sa**2 * ia2 + ca**2 * ib2
    centered = ConicCoeffs(a, b, c, 0.0, 0.0, -1.0)
    return centered.translated(spec.center.x, spec.center.y)


def conic_under_scaling(conic: ConicCoeffs, sx: float, sy: float) -> ConicCoeffs:
    """Image of the conic under (x, y) -> (sx x, sy y)."""
    return conic.scaled(sx, sy)
