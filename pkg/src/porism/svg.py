"""Minimal deterministic SVG writer and scene renderers.

Hand-rolled rather than delegated to a plotting package so that repeated
runs emit byte-identical files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core.conics import ConicCoeffs, ellipse_from_conic
from .core.envelope import envelope_of_circles
from .core.geometry import Circle, EllipseSpec, Line, Point, circumcircle_of
from .family import PonceletConfig, caustic_recover, equilateral_centroid_locus, theta_grid, triangle_at
from .loci import predict_x4_locus, sample_locus


def _f(x: float) -> str:
    return f"{x:.4f}"


@dataclass
class SvgCanvas:
    xmin: float
    xmax: float
    ymin: float
    ymax: float
    width: int = 720
    elements: list[str] = field(default_factory=list)

    @property
    def height(self) -> int:
        return int(round(self.width * (self.ymax - self.ymin) / (self.xmax - self.xmin)))

    def _map(self, x: float, y: float) -> tuple[float, float]:
        sx = self.width / (self.xmax - self.xmin)
        sy = self.height / (self.ymax - self.ymin)
        return (x - self.xmin) * sx, (self.ymax - y) * sy

    def polyline(self, points, stroke="#333333", width=1.2, dash=None, closed=False):
        if len(points) < 2:
            return
        coords = []
        for p in points:
            x, y = (p.x, p.y) if isinstance(p, Point) else (p[0], p[1])
            if not (math.isfinite(x) and math.isfinite(y)):
                continue
            px, py = self._map(x, y)
            coords.append(f"{_f(px)},{_f(py)}")
        if len(coords) < 2:
            return
        tag = "polygon" if closed else "polyline"
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.elements.append(
            f'<{tag} points="{" ".join(coords)}" fill="none" '
            f'stroke="{stroke}" stroke-width="{width}"{dash_attr}/>'
        )

    def circle(self, c: Circle, stroke="#333333", width=1.2, dash=None):
        px, py = self._map(c.center.x, c.center.y)
        sx = self.width / (self.xmax - self.xmin)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.elements.append(
            f'<circle cx="{_f(px)}" cy="{_f(py)}" r="{_f(c.radius * sx)}" '
            f'fill="none" stroke="{stroke}" stroke-width="{width}"{dash_attr}/>'
        )

    def ellipse(self, spec: EllipseSpec, stroke="#333333", width=1.2, dash=None):
        pts = [spec.point_at(t) for t in np.linspace(0, 2 * math.pi, 181)]
        self.polyline(pts, stroke=stroke, width=width, dash=dash, closed=False)

    def dot(self, p: Point, r=3.0, fill="#c02020"):
        px, py = self._map(p.x, p.y)
        self.elements.append(f'<circle cx="{_f(px)}" cy="{_f(py)}" r="{_f(r)}" fill="{fill}"/>')

    def segment(self, p: Point, q: Point, stroke="#888888", width=0.8, dash=None):
        x1, y1 = self._map(p.x, p.y)
        x2, y2 = self._map(q.x, q.y)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.elements.append(
            f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
            f'stroke="{stroke}" stroke-width="{width}"{dash_attr}/>'
        )

    def line_clipped(self, line: Line, stroke="#888888", width=0.8, dash=None):
        """Draw the portion of an infinite line inside the canvas box."""
        pts = []
        l, m, n = line.l, line.m, line.n
        for x in (self.xmin, self.xmax):
            if abs(m) > 1e-14:
                y = -(l * x + n) / m
                if self.ymin - 1e-9 <= y <= self.ymax + 1e-9:
                    pts.append(Point(x, y))
        for y in (self.ymin, self.ymax):
            if abs(l) > 1e-14:
                x = -(m * y + n) / l
                if self.xmin - 1e-9 <= x <= self.xmax + 1e-9:
                    pts.append(Point(x, y))
        uniq = []
        for p in pts:
            if all(p.distance(q) > 1e-9 for q in uniq):
                uniq.append(p)
        if len(uniq) >= 2:
            self.segment(uniq[0], uniq[1], stroke=stroke, width=width, dash=dash)

    def render(self) -> str:
        body = "\n".join(self.elements)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
            f'<rect width="100%" height="100%" fill="white"/>\n{body}\n</svg>\n'
        )


def _base_canvas(cfg: PonceletConfig, pad: float = 0.35, extra: float = 1.0) -> SvgCanvas:
    r = extra * cfg.a * (1 + pad)
    return SvgCanvas(-r, r, -r * cfg.b / cfg.a - pad * cfg.a, r * cfg.b / cfg.a + pad * cfg.a)


def _draw_base(canvas: SvgCanvas, cfg: PonceletConfig, n_triangles: int = 3):
    canvas.ellipse(cfg.outer, stroke="#1f4e9c", width=1.6)
    if cfg.caustic is not None:
        canvas.circle(cfg.caustic, stroke="#8a5a2c", width=1.4)
    else:
        canvas.ellipse(caustic_recover(cfg), stroke="#8a5a2c", width=1.4)
    for k in range(n_triangles):
        tri = triangle_at(cfg, 2 * math.pi * k / max(n_triangles, 1) / 3)
        canvas.polyline(list(tri.vertices), stroke="#4878b8", width=1.0, closed=True)


def scene_family(cfg: PonceletConfig, n_triangles: int = 8) -> str:
    canvas = _base_canvas(cfg)
    canvas.ellipse(cfg.outer, stroke="#1f4e9c", width=1.6)
    if cfg.caustic is not None:
        canvas.circle(cfg.caustic, stroke="#8a5a2c", width=1.4)
    else:
        canvas.ellipse(caustic_recover(cfg), stroke="#8a5a2c", width=1.4)
    for k in range(n_triangles):
        tri = triangle_at(cfg, 2 * math.pi * k / n_triangles)
        canvas.polyline(list(tri.vertices), stroke="#4878b8", width=0.9, closed=True)
    return canvas.render()


def scene_x4_locus(cfg: PonceletConfig) -> str:
    canvas = _base_canvas(cfg, extra=1.3)
    _draw_base(canvas, cfg)
    sample = sample_locus(cfg, 4, 256)
    pts = [Point(z.real, z.imag) for z in sample.finite_points()]
    canvas.polyline(pts, stroke="#e07820", width=1.6, closed=True)
    spec = predict_x4_locus(cfg)
    if spec.b4 > 0:
        canvas.ellipse(spec.ellipse(), stroke="#c02020", width=0.8, dash="5,4")
    canvas.dot(spec.center, r=2.5)
    return canvas.render()


def scene_region(cfg: PonceletConfig, p: complex) -> str:
    from .loci import classify_isog_locus

    canvas = _base_canvas(cfg, extra=1.6)
    _draw_base(canvas, cfg)

    def ctr(u):
        c = circumcircle_of(triangle_at(cfg, float(u)))
        return np.array([c.center.x, c.center.y])

    def rad(u):
        return circumcircle_of(triangle_at(cfg, float(u))).radius

    plus, minus = envelope_of_circles(ctr, rad, n=512)
    for branch, color in ((plus, "#207040"), (minus, "#2ca05a")):
        canvas.polyline(branch.points, stroke=color, width=1.2)
    sample = sample_locus(cfg, p, 512)
    pts = [Point(z.real, z.imag) for z in sample.finite_points(cap=3 * cfg.a)]
    canvas.polyline(pts, stroke="#7030a0", width=1.4)
    canvas.dot(Point(p.real, p.imag), r=3.5, fill="#202020")
    try:
        res = classify_isog_locus(cfg, p)
        for z in res.z_points:
            canvas.dot(z, r=3.0, fill="#c02020")
    except Exception:
        pass
    return canvas.render()


def scene_circum_envelope(cfg: PonceletConfig) -> str:
    from .envelopes import circum_envelope_circles
    from .loci import predict_x3_locus_circular

    canvas = _base_canvas(cfg, extra=1.6)
    _draw_base(canvas, cfg)
    env = circum_envelope_circles(cfg)
    canvas.circle(env.k1, stroke="#207040", width=1.5)
    canvas.circle(env.k2, stroke="#2ca05a", width=1.5)
    spec3 = predict_x3_locus_circular(cfg)
    if spec3.b3 > 1e-12:
        canvas.ellipse(spec3.ellipse(), stroke="#c02020", width=1.2)
    for p in env.touch1 + env.touch2:
        canvas.dot(p, r=2.5, fill="#207040")
    canvas.dot(spec3.f3, r=2.5)
    canvas.dot(spec3.f3p, r=2.5)
    return canvas.render()


def scene_radical_axis(cfg: PonceletConfig, n_lines: int = 24) -> str:
    from .envelopes import RadicalAxisFamily, radical_axis_envelope

    canvas = _base_canvas(cfg, extra=1.8)
    _draw_base(canvas, cfg)
    canvas.ellipse(equilateral_centroid_locus(cfg.a, cfg.b), stroke="#2ca05a", width=1.0)
    fam = RadicalAxisFamily(cfg)
    for u in theta_grid(n_lines):
        try:
            canvas.line_clipped(fam.line(float(u)), stroke="#c060c0", width=0.5, dash="3,3")
        except Exception:
            continue
    env = radical_axis_envelope(cfg)
    try:
        spec = ellipse_from_conic(env.conic)
        canvas.ellipse(spec, stroke="#e07820", width=1.6)
    except Exception:
        # open conic: draw sampled envelope points instead
        from .core.envelope import envelope_of_lines

        pts = envelope_of_lines(fam.coeffs, n=512, derivative=fam.dcoeffs).points
        pts = [p for p in pts if abs(p.z) <= 3 * cfg.a]
        canvas.polyline(pts, stroke="#e07820", width=1.6)
    return canvas.render()


def scene_line_locus(cfg: PonceletConfig, n_lines: int = 24) -> str:
    from .core.envelope import envelope_of_lines
    from .loci import _line_family_trig

    canvas = _base_canvas(cfg, extra=1.6)
    _draw_base(canvas, cfg)
    coeffs, dcoeffs = _line_family_trig(cfg)
    for u in theta_grid(n_lines):
        l, m, n_ = coeffs(float(u))
        if math.hypot(l, m) < 1e-12:
            continue
        canvas.line_clipped(Line(l, m, n_), stroke="#c060c0", width=0.5, dash="3,3")
    env = envelope_of_lines(coeffs, n=512, derivative=dcoeffs)
    pts = [p for p in env.points if abs(p.z) <= 4 * cfg.a]
    canvas.polyline(pts, stroke="#e07820", width=1.6)
    return canvas.render()


SCENES = {
    "family": scene_family,
    "x4-locus": scene_x4_locus,
    "circum-envelope": scene_circum_envelope,
    "radical-axis": scene_radical_axis,
    "line-locus": scene_line_locus,
}
