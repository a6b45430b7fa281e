"""Poncelet triangle families between nested ellipses.

A family is parametrized by the outer-ellipse semiaxes (a, b) and the foci
f, g (inside the unit disk) of the caustic's preimage under the scaling
that maps the outer ellipse to the unit circle. The vertices' preimages
are the roots of a cubic whose symmetric functions are linear in a unit
modulus parameter; sweeping that parameter sweeps the family.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from .core.conics import conic_under_scaling, ellipse_from_conic
from .core.fitting import fit_inscribed_conic
from .core.geometry import (
    AffineMap,
    Circle,
    EllipseSpec,
    GeometryError,
    Point,
    Triangle,
    as_complex,
)
from .core.solvers import solve_cubic_complex


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SymmetricTriple:
    """Elementary symmetric polynomials (s1, s2, s3) of the three
    unit-circle vertices; s3 always has unit modulus."""

    s1: complex
    s2: complex
    s3: complex


def symmetric_triple(f: complex, g: complex, lam: complex) -> SymmetricTriple:
    """Symmetric functions of the vertex preimages at family parameter lam.

    s1 = f + g + lam * conj(f) conj(g)
    s2 = f g + lam * (conj(f) + conj(g))
    s3 = lam
    """
    f, g, lam = complex(f), complex(g), complex(lam)
    if abs(abs(lam) - 1.0) > 1e-12:
        raise ConfigError("family parameter must have unit modulus")
    if abs(f) >= 1.0 or abs(g) >= 1.0:
        raise ConfigError("preimage foci must lie inside the unit disk")
    return SymmetricTriple(
        f + g + lam * f.conjugate() * g.conjugate(),
        f * g + lam * (f.conjugate() + g.conjugate()),
        lam,
    )


@dataclass(frozen=True)
class PonceletConfig:
    """Family data: outer semiaxes a >= b > 0 and caustic-preimage foci.

    For caustics that are circles in the plane of the outer ellipse,
    ``caustic`` carries the circle itself (center and radius).
    """

    a: float
    b: float
    f: complex
    g: complex
    caustic: Circle | None = None

    def __post_init__(self):
        if not (self.a >= self.b > 0):
            raise ConfigError("outer ellipse requires a >= b > 0")
        if abs(self.f) >= 1.0 or abs(self.g) >= 1.0:
            raise ConfigError("preimage foci must lie inside the unit disk")

    @property
    def c2(self) -> float:
        return self.a**2 - self.b**2

    @property
    def caustic_kind(self) -> str:
        return "circular" if self.caustic is not None else "generic"

    @property
    def affine(self) -> AffineMap:
        return AffineMap(self.a, self.b)

    @property
    def outer(self) -> EllipseSpec:
        if self.a == self.b:
            return EllipseSpec(Point(0.0, 0.0), self.a, self.a, 0.0)
        return EllipseSpec(Point(0.0, 0.0), self.a, self.b, 0.0)

    def caustic_center(self) -> Point:
        """Center of the caustic: the scaled midpoint of the preimage foci."""
        mid = (self.f + self.g) / 2.0
        return Point(self.a * mid.real, self.b * mid.imag)

    def outer_point(self, t: float) -> Point:
        """Rational parametrization of the outer ellipse,
        (a (1-t^2)/(1+t^2), b 2t/(1+t^2)); t = inf maps to (-a, 0)."""
        if math.isinf(t):
            return Point(-self.a, 0.0)
        den = 1.0 + t * t
        return Point(self.a * (1 - t * t) / den, self.b * 2 * t / den)

    def to_json(self) -> str:
        if self.caustic is not None:
            payload = {
                "a": self.a,
                "b": self.b,
                "xc": self.caustic.center.x,
                "yc": self.caustic.center.y,
            }
        else:
            payload = {
                "a": self.a,
                "b": self.b,
                "f": [self.f.real, self.f.imag],
                "g": [self.g.real, self.g.imag],
            }
        return json.dumps(payload, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "PonceletConfig":
        data = json.loads(text)
        if "xc" in data or "yc" in data:
            return config_circular_caustic(
                float(data["a"]),
                float(data["b"]),
                float(data.get("xc", 0.0)),
                float(data.get("yc", 0.0)),
            )
        f = complex(*data["f"])
        g = complex(*data["g"])
        return PonceletConfig(float(data["a"]), float(data["b"]), f, g)


def preimage_roots(cfg: PonceletConfig, lam: complex) -> list[complex]:
    """Unit-circle vertex preimages at family parameter lam, sorted by
    argument (counterclockwise)."""
    st = symmetric_triple(cfg.f, cfg.g, lam)
    return solve_cubic_complex(st.s1, st.s2, st.s3)


def triangle_at(cfg: PonceletConfig, theta: float) -> Triangle:
    """Family triangle at parameter theta (lam = e^{i theta})."""
    lam = cmath.exp(1j * theta)
    roots = preimage_roots(cfg, lam)
    am = cfg.affine
    return Triangle.from_complex(*(am.apply(z) for z in roots))


def theta_grid(n: int) -> np.ndarray:
    return np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)


def vertices_on_grid(cfg: PonceletConfig, thetas) -> np.ndarray:
    """Vertex preimages for a batch of parameters, shape (n, 3) complex,
    each row argument-sorted. Uses stacked companion matrices."""
    lams = np.exp(1j * np.asarray(thetas, dtype=float))
    fb, gb = np.conj(cfg.f), np.conj(cfg.g)
    s1 = cfg.f + cfg.g + lams * fb * gb
    s2 = cfg.f * cfg.g + lams * (fb + gb)
    s3 = lams
    n = len(lams)
    comp = np.zeros((n, 3, 3), dtype=complex)
    comp[:, 0, 0] = s1
    comp[:, 0, 1] = -s2
    comp[:, 0, 2] = s3
    comp[:, 1, 0] = 1.0
    comp[:, 2, 1] = 1.0
    roots = np.linalg.eigvals(comp)
    for _ in range(2):  # Newton polish
        p = roots**3 - s1[:, None] * roots**2 + s2[:, None] * roots - s3[:, None]
        dp = 3 * roots**2 - 2 * s1[:, None] * roots + s2[:, None]
        ok = np.abs(dp) > 1e-300
        roots = np.where(ok, roots - p / np.where(ok, dp, 1.0), roots)
    order = np.argsort(np.angle(roots), axis=1)
    return np.take_along_axis(roots, order, axis=1)


def triangles_on_grid(cfg: PonceletConfig, n: int) -> list[Triangle]:
    thetas = theta_grid(n)
    pre = vertices_on_grid(cfg, thetas)
    verts = cfg.a * pre.real + 1j * cfg.b * pre.imag
    return [Triangle.from_complex(*row) for row in verts]


def circumcircles_on_grid(cfg: PonceletConfig, thetas) -> tuple[np.ndarray, np.ndarray]:
    """Circumcenters (complex) and circumradii of the family triangles on
    a parameter grid, via the vectorized determinant formula."""
    pre = vertices_on_grid(cfg, thetas)
    v = cfg.a * pre.real + 1j * cfg.b * pre.imag
    z1, z2, z3 = v[:, 0], v[:, 1], v[:, 2]
    m1, m2, m3 = np.abs(z1) ** 2, np.abs(z2) ** 2, np.abs(z3) ** 2
    num = z1 * (m2 - m3) - m1 * (z2 - z3) + (z2 * m3 - z3 * m2)
    den = (
        z1 * (np.conj(z2) - np.conj(z3))
        - np.conj(z1) * (z2 - z3)
        + (z2 * np.conj(z3) - z3 * np.conj(z2))
    )
    centers = num / den
    radii = np.abs(z1 - centers)
    return centers, radii


def lambda_for_vertex(cfg: PonceletConfig, z: complex) -> complex:
    """Family parameter of the triangle having the given unit-circle
    preimage point as one of its vertices."""
    f, g = cfg.f, cfg.g
    den = (1 - np.conj(f) * z) * (1 - np.conj(g) * z)
    if abs(den) < 1e-300:
        raise GeometryError("vertex coincides with a preimage focus inverse")
    lam = z * (z - f) * (z - g) / den
    return complex(lam / abs(lam))  # project onto the unit circle


def config_circular_caustic(
    a: float, b: float, x_c: float, y_c: float
) -> PonceletConfig:
    """Family whose caustic is the circle centered at (x_c, y_c) that
    closes the porism inside the outer ellipse (a, b).

    The closing radius is
        r = (b sqrt(a^4 - c^2 x_c^2) - a sqrt(b^4 + c^2 y_c^2)) / c^2,
    and the caustic preimage is an axis-aligned ellipse centered at
    x_c/a + i y_c/b with semi-focal length r c/(a b), foci displaced
    along the imaginary axis.
    """
    if not a > b > 0:
        raise ConfigError("circular caustic requires a > b > 0")
    c2 = a * a - b * b
    rad_x = a**4 - c2 * x_c**2
    rad_y = b**4 + c2 * y_c**2
    if rad_x <= 0:
        raise ConfigError("no Poncelet triangle family: center too far out")
    r = (b * math.sqrt(rad_x) - a * math.sqrt(rad_y)) / c2
    if r <= 0:
        raise ConfigError("no Poncelet triangle family: closing radius <= 0")
    if not _circle_inside_ellipse(x_c, y_c, r, a, b):
        raise ConfigError("no Poncelet triangle family: caustic not nested")

    # foci of the preimage ellipse from its sum and product as complex numbers
    delta = math.sqrt(rad_x * rad_y)
    fsum = complex(2 * x_c / a, 2 * y_c / b)
    fprod = complex(
        (a * a + b * b) / c2 - 2 * delta / (a * b * c2),
        2 * x_c * y_c / (a * b),
    )
    disc = cmath.sqrt(fsum * fsum - 4 * fprod)
    w1 = (fsum + disc) / 2
    w2 = (fsum - disc) / 2
    f, g = sorted((w1, w2), key=lambda w: (w.imag, w.real))

    # cross-check against the direct preimage foci
    z0 = complex(x_c / a, y_c / b)
    semi_focal = r * math.sqrt(c2) / (a * b)
    direct = sorted(
        (z0 + 1j * semi_focal, z0 - 1j * semi_focal),
        key=lambda w: (w.imag, w.real),
    )
    if abs(f - direct[0]) > 1e-10 or abs(g - direct[1]) > 1e-10:
        raise ConfigError("caustic focus cross-check failed")
    if abs(f) >= 1.0 or abs(g) >= 1.0:
        raise ConfigError("no Poncelet triangle family: preimage foci escape the disk")

    return PonceletConfig(a, b, f, g, caustic=Circle(Point(x_c, y_c), r))


def _circle_inside_ellipse(xc, yc, r, a, b, n=720) -> bool:
    if (xc / a) ** 2 + (yc / b) ** 2 >= 1.0:
        return False
    ts = np.linspace(0, 2 * math.pi, n, endpoint=False)
    ex, ey = a * np.cos(ts), b * np.sin(ts)
    dmin = float(np.min(np.hypot(ex - xc, ey - yc)))
    return dmin > r * (1 - 1e-12)


def caustic_recover(cfg: PonceletConfig, n_triangles: int = 8) -> EllipseSpec:
    """Inscribed ellipse of the family, fitted from sampled side lines.

    The side lines of every family triangle are tangent to one conic; the
    fit recovers it without a closed form. The preimage of the result has
    foci {f, g}.
    """
    lines = []
    for tri in triangles_on_grid(cfg, n_triangles):
        lines.extend(tri.side_lines())
    conic = fit_inscribed_conic(lines)
    try:
        return ellipse_from_conic(conic)
    except GeometryError as exc:
        raise GeometryError(f"degenerate caustic: {exc}") from exc


def caustic_preimage_foci(cfg: PonceletConfig, n_triangles: int = 8) -> tuple[complex, complex]:
    """Foci of the recovered caustic pulled back to the unit-circle frame,
    sorted by (imag, real); a recovery oracle for (f, g)."""
    spec = caustic_recover(cfg, n_triangles)
    from .core.conics import conic_from_ellipse

    conic = conic_from_ellipse(spec)
    pre = conic_under_scaling(conic, 1.0 / cfg.a, 1.0 / cfg.b)
    pre_spec = ellipse_from_conic(pre)
    p, q = pre_spec.foci()
    w1, w2 = p.z, q.z
    w1, w2 = sorted((w1, w2), key=lambda w: (w.imag, w.real))
    return w1, w2


def equilateral_centroid_locus(a: float, b: float) -> EllipseSpec:
    """Centroid locus of equilateral triangles inscribed in the ellipse
    (a, b): a concentric, axis-aligned ellipse with semiaxes
    a c^2/(a^2 + 3 b^2) and b c^2/(3 a^2 + b^2). Degenerates to the
    center point for a circle."""
    if not a >= b > 0:
        raise ConfigError("requires a >= b > 0")
    if a == b:
        return EllipseSpec(Point(0.0, 0.0), 0.0, 0.0, 0.0)
    c2 = a * a - b * b
    return EllipseSpec(
        Point(0.0, 0.0), a * c2 / (a * a + 3 * b * b), b * c2 / (3 * a * a + b * b), 0.0
    )


def centroid_locus_membership(cfg: PonceletConfig) -> float:
    """Signed membership of the caustic center relative to the equilateral
    centroid locus: negative inside, ~0 on it, positive outside."""
    spec = equilateral_centroid_locus(cfg.a, cfg.b)
    ctr = cfg.caustic_center()
    if spec.is_degenerate:
        return math.hypot(ctr.x, ctr.y)
    return (ctr.x / spec.semi_major) ** 2 + (ctr.y / spec.semi_minor) ** 2 - 1.0


def side_tangency_residuals(cfg: PonceletConfig, thetas, caustic: EllipseSpec) -> np.ndarray:
    """Max tangency residual of each triangle's three sides against the
    given caustic, normalized by the outer semi-major axis."""
    out = []
    for th in np.asarray(thetas, dtype=float):
        tri = triangle_at(cfg, float(th))
        res = max(caustic.tangency_residual(line) for line in tri.side_lines())
        out.append(res / cfg.a)
    return np.array(out)


def point_on_unit_circle_residual(cfg: PonceletConfig, thetas) -> float:
    """Max | |preimage| - 1 | over the sampled family."""
    pre = vertices_on_grid(cfg, thetas)
    return float(np.max(np.abs(np.abs(pre) - 1.0)))
