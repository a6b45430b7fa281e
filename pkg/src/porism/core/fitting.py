"""Total-least-squares curve fitting through SVD nullspaces.

Two bases are supported:

* ``conic6``   -- [x^2, xy, y^2, x, y, 1]
* ``quartic9`` -- [x^4, x^2 y^2, y^4, x^2, xy, y^2, x, y, 1]

Samples are exact to machine precision, so the right singular vector of
the smallest singular value of the (normalized) design matrix is the
curve; no iterative re-weighting is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .conics import ConicCoeffs, ConicType, classify_conic
from .geometry import GeometryError, Line, Point, as_complex

CONIC6 = "conic6"
QUARTIC9 = "quartic9"

_BASIS_SIZE = {CONIC6: 6, QUARTIC9: 9}


class RankDeficientFit(GeometryError):
    """Nullspace dimension >= 2: the sample set does not pin down a curve."""


def _fix_sign(vec: np.ndarray) -> np.ndarray:
    for x in vec:
        if abs(x) > 1e-14:
            return -vec if x < 0 else vec
    return vec


@dataclass(frozen=True)
class LocusFit:
    """Fitted curve with coefficients in the original (input) frame."""

    basis: str
    coefficients: np.ndarray
    residual: float
    singular_values: np.ndarray = field(repr=False, default=None)

    def conic(self) -> ConicCoeffs:
        if self.basis == CONIC6:
            return ConicCoeffs.from_vector(self.coefficients)
        # conic part of a quartic9 fit
        return ConicCoeffs.from_vector(self.coefficients[3:])

    def quartic_weight(self) -> float:
        """|k40| + |k22| + |k04| relative to the coefficient norm (zero for
        conic6 fits)."""
        if self.basis == CONIC6:
            return 0.0
        v = self.coefficients
        return float(np.sum(np.abs(v[:3])) / np.linalg.norm(v))

    def classify(self, eps: float = 1e-8) -> ConicType:
        return classify_conic(self.conic(), eps)


def _design_row(x: np.ndarray, y: np.ndarray, basis: str) -> np.ndarray:
    if basis == CONIC6:
        return np.column_stack([x * x, x * y, y * y, x, y, np.ones_like(x)])
    return np.column_stack(
        [x**4, x**2 * y**2, y**4, x * x, x * y, y * y, x, y, np.ones_like(x)]
    )


def _points_xy(points) -> tuple[np.ndarray, np.ndarray]:
    zs = np.array([as_complex(p) for p in points])
    return zs.real.astype(float), zs.imag.astype(float)


def _collinear_conic(x: np.ndarray, y: np.ndarray) -> np.ndarray | None:
    """If the points are collinear (to machine precision), the canonical
    conic through them is the doubled line; return its conic6 vector."""
    cx, cy = x.mean(), y.mean()
    m = np.column_stack([x - cx, y - cy])
    _, s, vt = np.linalg.svd(m, full_matrices=False)
    if s[0] == 0.0 or s[1] > 1e-12 * s[0]:
        return None
    nx, ny = vt[1]  # unit normal of the fitted line
    n0 = -(nx * cx + ny * cy)
    # (nx x + ny y + n0)^2
    return np.array(
        [nx * nx, 2 * nx * ny, ny * ny, 2 * nx * n0, 2 * ny * n0, n0 * n0]
    )


def fit_curve(points, basis: str = CONIC6) -> LocusFit:
    """Fit a curve of the given basis through the points.

    conic6 samples are centered and scaled to unit RMS before the SVD;
    quartic9 uses scale-only normalization because its monomial set is
    not closed under translation. Coefficients are mapped back to the
    input frame and sign-fixed (first nonzero positive).
    """
    if basis not in _BASIS_SIZE:
        raise ValueError(f"unknown basis {basis!r}")
    size = _BASIS_SIZE[basis]
    x, y = _points_xy(points)
    if len(x) < size + 2:
        raise ValueError(f"need at least {size + 2} points for {basis}")

    if basis == CONIC6:
        double_line = _collinear_conic(x, y)
        if double_line is not None:
            vec = _fix_sign(double_line / np.linalg.norm(double_line))
            return LocusFit(basis, vec, 0.0, np.zeros(size))

    cx = cy = 0.0
    if basis == CONIC6:
        cx, cy = float(x.mean()), float(y.mean())
    xs, ys = x - cx, y - cy
    scale = math.sqrt(float(np.mean(xs * xs + ys * ys)))
    if scale == 0.0:
        raise RankDeficientFit("all points coincide")
    xs, ys = xs / scale, ys / scale

    design = _design_row(xs, ys, basis)
    _, svals, vt = np.linalg.svd(design, full_matrices=False)
    if svals[-2] <= 1e-10 * svals[0]:
        raise RankDeficientFit(
            "rank deficient beyond one: ambiguous fit (degenerate sample set)"
        )
    residual = float(svals[-1] / math.sqrt(len(x)))
    coeffs_norm = vt[-1]

    coeffs = _denormalize(coeffs_norm, basis, cx, cy, scale)
    coeffs = _fix_sign(coeffs / np.linalg.norm(coeffs))
    return LocusFit(basis, coeffs, residual, svals)


def _denormalize(v: np.ndarray, basis: str, cx: float, cy: float, s: float) -> np.ndarray:
    """Map coefficients found for ((x-cx)/s, (y-cy)/s) back to (x, y)."""
    if basis == QUARTIC9:
        k40, k22, k04, k20, k11, k02, k10, k01, k00 = v
        return np.array(
            [
                k40 / s**4,
                k22 / s**4,
                k04 / s**4,
                k20 / s**2,
                k11 / s**2,
                k02 / s**2,
                k10 / s,
                k01 / s,
                k00,
            ]
        )
    a, b, c, d, e, f = v
    raw = np.array([a / s**2, b / s**2, c / s**2, d / s, e / s, f])
    return ConicCoeffs.from_vector(raw).translated(cx, cy).vector


def fit_line(points) -> tuple[Line, float]:
    """Total-least-squares line through points; returns (line, max distance)."""
    x, y = _points_xy(points)
    cx, cy = float(x.mean()), float(y.mean())
    m = np.column_stack([x - cx, y - cy])
    _, _, vt = np.linalg.svd(m, full_matrices=False)
    nx, ny = vt[-1]
    line = Line(float(nx), float(ny), float(-(nx * cx + ny * cy)))
    dmax = float(np.max(np.abs(nx * x + ny * y + line.n)))
    return line, dmax


def fit_inscribed_conic(lines) -> ConicCoeffs:
    """Conic tangent to every line in the family, via its dual conic.

    Each line (l, m, n) tangent to a conic with symmetric matrix M
    satisfies  u^T adj(M) u = 0  for u = (l, m, n). The adjugate is fitted
    from the lines by SVD; the primal conic is its adjugate back.
    """
    rows = []
    for line in lines:
        u = np.array([line.l, line.m, line.n], dtype=float)
        nrm = np.linalg.norm(u)
        if nrm == 0:
            continue
        u = u / nrm
        l, m, n = u
        rows.append([l * l, 2 * l * m, m * m, 2 * l * n, 2 * m * n, n * n])
    a = np.asarray(rows)
    if len(a) < 8:
        raise ValueError("need at least 8 tangent lines")
    _, svals, vt = np.linalg.svd(a, full_matrices=False)
    if svals[-2] <= 1e-8 * svals[0]:
        raise RankDeficientFit("degenerate caustic: ambiguous tangent-line fit")
    d1, d2, d3, d4, d5, d6 = vt[-1]
    dual = np.array([[d1, d2, d4], [d2, d3, d5], [d4, d5, d6]])
    primal = _adjugate(dual)
    return ConicCoeffs(
        primal[0, 0],
        2 * primal[0, 1],
        primal[1, 1],
        2 * primal[0, 2],
        2 * primal[1, 2],
        primal[2, 2],
    )


def _adjugate(m: np.ndarray) -> np.ndarray:
    cof = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            minor = np.delete(np.delete(m, i, axis=0), j, axis=1)
            cof[i, j] = (-1) ** (i + j) * np.linalg.det(minor)
    return cof.T


def sample_points(fitted: ConicCoeffs, n: int) -> list[Point]:
    """Sample points on a central conic for round-trip tests."""
    from .conics import ellipse_from_conic

    spec = ellipse_from_conic(fitted)
    return [spec.point_at(2 * math.pi * k / n) for k in range(n)]
