"""Named verification checks: each closed-form claim of the library is
re-derived by an independent numeric oracle at a fixed tolerance.

The CLI ``verify`` command and the acceptance test suite both run these;
all randomness is seeded so reports are byte-identical across runs.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .centers import (
    barycentrics_of_point,
    isogonal_barycentric,
    isogonal_pedal,
    isogonal_rational,
    isogonal_symmetric,
    rational_isog_coeffs,
)
from .core.conics import ConicCoeffs, ConicType, ellipse_from_conic
from .core.envelope import envelope_of_circles
from .core.fitting import CONIC6, fit_curve, fit_line
from .core.geometry import angle_difference_mod_pi, circumcircle_of
from .envelopes import (
    circum_envelope_circles,
    circum_envelope_points,
    conjecture_probe,
    l101_envelope_check,
    radical_axis_envelope,
)
from .family import (
    ConfigError,
    PonceletConfig,
    caustic_recover,
    config_circular_caustic,
    equilateral_centroid_locus,
    point_on_unit_circle_residual,
    side_tangency_residuals,
    symmetric_triple,
    theta_grid,
    triangle_at,
)
from .loci import (
    boundary_quartic_eval,
    boundary_quartic_scale,
    classify_isog_locus,
    degenerate_line_locus,
    find_boundary_point,
    line_locus_envelope,
    predict_isog_circle,
    predict_x3_locus_circular,
    predict_x4_locus,
    region_membership,
    sample_locus,
    tangency_points,
)

DEFAULT_SEED = 20250809


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def as_dict(self) -> dict:
        # wall-clock timing stays out: reports must be byte-identical
        return {
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
        }


def _fmt(x: float) -> float:
    """Round tiny floats for stable, readable reports."""
    return float(f"{x:.6e}")


# --------------------------------------------------------------------------
# seeded samplers
# --------------------------------------------------------------------------


def random_config(rng: np.random.Generator, sigma_floor: float = 0.2) -> PonceletConfig:
    while True:
        a = float(rng.uniform(1.3, 2.6))
        b = float(a * rng.uniform(0.55, 0.9))
        f = complex(*rng.uniform(-0.45, 0.45, 2))
        g = complex(*rng.uniform(-0.45, 0.45, 2))
        if abs(f) > 0.6 or abs(g) > 0.6:
            continue
        sigma = abs(f * g * (a * a + b * b) - (a * a - b * b))
        if sigma < sigma_floor:
            continue
        return PonceletConfig(a, b, f, g)


def random_circular_config(
    rng: np.random.Generator, place: str | None = None
) -> PonceletConfig:
    """Circular-caustic config; ``place`` positions the center relative to
    the equilateral-centroid locus: inside, on, or outside."""
    while True:
        a = float(rng.uniform(1.6, 2.4))
        b = float(a * rng.uniform(0.45, 0.65))
        spec = equilateral_centroid_locus(a, b)
        phi = float(rng.uniform(0, 2 * math.pi))
        if place is None:
            xc = float(rng.uniform(-0.3, 0.3) * (a - b))
            yc = float(rng.uniform(-0.3, 0.3) * (a - b))
        else:
            s = {"inside": float(rng.uniform(0.35, 0.75)),
                 "on": 1.0,
                 "outside": float(rng.uniform(1.1, 1.35))}[place]
            xc = s * spec.semi_major * math.cos(phi)
            yc = s * spec.semi_minor * math.sin(phi)
        try:
            cfg = config_circular_caustic(a, b, xc, yc)
        except ConfigError:
            continue
        if cfg.caustic.radius < 0.05 * b:
            continue
        return cfg


def random_probe_point(
    cfg: PonceletConfig, rng: np.random.Generator, theta: float
) -> complex:
    """Point usable by all conjugation methods at the given family
    parameter: off the side lines, off the circumcircle, off the outer
    ellipse."""
    tri = triangle_at(cfg, theta)
    circ = circumcircle_of(tri)
    while True:
        p = complex(
            float(rng.uniform(-1.3 * cfg.a, 1.3 * cfg.a)),
            float(rng.uniform(-1.3 * cfg.b, 1.3 * cfg.b)),
        )
        if abs(circ.power(p)) < 0.05 * circ.radius**2:
            continue
        if abs(cfg.outer.implicit(p)) < 0.05:
            continue
        u, v, w = barycentrics_of_point(p, tri)
        if min(abs(u), abs(v), abs(w)) < 1e-2:
            continue
        return p


# --------------------------------------------------------------------------
# criteria
# --------------------------------------------------------------------------


def check_closure(seed: int = DEFAULT_SEED, trials: int = 20, n_theta: int = 64) -> CheckResult:
    """Poncelet closure: every side of every sampled triangle is tangent
    to the recovered caustic; vertex preimages sit on the unit circle."""
    t0 = time.time()
    rng = np.random.default_rng(seed + 1)
    thetas = theta_grid(n_theta)
    worst_tangency = 0.0
    worst_circle = 0.0
    for _ in range(trials):
        cfg = random_config(rng)
        caustic = caustic_recover(cfg)
        worst_tangency = max(
            worst_tangency, float(side_tangency_residuals(cfg, thetas, caustic).max())
        )
        worst_circle = max(worst_circle, point_on_unit_circle_residual(cfg, thetas))
    passed = worst_tangency < 1e-8 and worst_circle < 1e-9
    return CheckResult(
        "closure",
        passed,
        {
            "trials": trials,
            "max_tangency_residual_rel_a": _fmt(worst_tangency),
            "max_preimage_off_circle": _fmt(worst_circle),
            "tolerances": {"tangency": 1e-8, "preimage": 1e-9},
        },
        time.time() - t0,
    )


def check_x4_locus(seed: int = DEFAULT_SEED, trials: int = 20) -> CheckResult:
    """Orthocenter locus: fitted ellipse matches the closed-form center,
    the 90-degree-rotated homothety of the outer ellipse, and the
    explicit semiaxes."""
    t0 = time.time()
    rng = np.random.default_rng(seed + 2)
    worst = {"center": 0.0, "ratio": 0.0, "axis": 0.0, "semiaxes": 0.0}
    for _ in range(trials):
        cfg = random_config(rng)
        spec = predict_x4_locus(cfg)
        sample = sample_locus(cfg, 4, 96)
        fit = fit_curve([complex(z) for z in sample.finite_points()], CONIC6)
        ell = ellipse_from_conic(ConicCoeffs.from_vector(fit.coefficients))
        worst["center"] = max(
            worst["center"], abs(ell.center.z - spec.center.z) / cfg.a
        )
        ratio = ell.semi_major / ell.semi_minor
        worst["ratio"] = max(worst["ratio"], abs(ratio - cfg.a / cfg.b) / (cfg.a / cfg.b))
        worst["axis"] = max(
            worst["axis"], angle_difference_mod_pi(ell.rotation, math.pi / 2)
        )
        worst["semiaxes"] = max(
            worst["semiaxes"],
            abs(ell.semi_major - spec.a4) / spec.a4,
            abs(ell.semi_minor - spec.b4) / spec.b4,
        )
    passed = (
        worst["center"] < 1e-8
        and worst["ratio"] < 1e-8
        and worst["axis"] < 1e-6
        and worst["semiaxes"] < 1e-7
    )
    return CheckResult(
        "x4-locus",
        passed,
        {
            "trials": trials,
            "max_center_err_rel_a": _fmt(worst["center"]),
            "max_axis_ratio_err_rel": _fmt(worst["ratio"]),
            "max_axis_angle_err_rad": _fmt(worst["axis"]),
            "max_semiaxis_err_rel": _fmt(worst["semiaxes"]),
            "tolerances": {"center": 1e-8, "ratio": 1e-8, "semiaxes": 1e-7},
        },
        time.time() - t0,
    )


def check_isog_circle(seed: int = DEFAULT_SEED, trials: int = 20) -> CheckResult:
    """Unit-circle frame: the conjugate locus of a fixed point is the
    predicted circle; a point at a caustic focus maps to the other focus."""
    t0 = time.time()
    rng = np.random.default_rng(seed + 3)
    worst_rms = 0.0
    worst_focus = 0.0
    for _ in range(trials):
        f = complex(*rng.uniform(-0.5, 0.5, 2))
        g = complex(*rng.uniform(-0.5, 0.5, 2))
        if abs(f) > 0.62 or abs(g) > 0.62:
            continue
        p = complex(*rng.uniform(-0.75, 0.75, 2))
        if abs(abs(p) - 1.0) < 0.1:
            continue
        cfg = PonceletConfig(1.0, 1.0, f, g)
        spec = predict_isog_circle(f, g, p)
        sample = sample_locus(cfg, p, 64)
        pts = sample.finite_points()
        rms = float(np.sqrt(np.mean((np.abs(pts - spec.center) - spec.radius) ** 2)))
        worst_rms = max(worst_rms, rms)
        focus_sample = sample_locus(cfg, f, 32)
        worst_focus = max(
            worst_focus, float(np.max(np.abs(focus_sample.finite_points() - g)))
        )
    passed = worst_rms < 1e-9 and worst_focus < 1e-10
    return CheckResult(
        "isog-circle",
        passed,
        {
            "trials": trials,
            "max_circle_rms": _fmt(worst_rms),
            "max_focus_deviation": _fmt(worst_focus),
            "tolerances": {"rms": 1e-9, "focus": 1e-10},
        },
        time.time() - t0,
    )


def check_isog_conic(seed: int = DEFAULT_SEED, trials: int = 20) -> CheckResult:
    """Isogonal locus is a conic (restricted quartic fit has vanishing
    degree-4 part) whose type matches the swept-region trichotomy,
    including constructed boundary points (parabola case)."""
    t0 = time.time()
    rng = np.random.default_rng(seed + 4)
    worst_quartic = 0.0
    mismatches = []
    n_cases = 0
    worst_parabola_disc = 0.0
    for trial in range(trials):
        cfg = random_config(rng)
        theta = float(rng.uniform(0, 2 * math.pi))
        p = random_probe_point(cfg, rng, theta)
        verdict = region_membership(cfg, p)
        if verdict.membership == "boundary_R":
            continue
        res = classify_isog_locus(cfg, p)
        n_cases += 1
        worst_quartic = max(worst_quartic, res.quartic.quartic_weight())
        ok = (
            verdict.membership == "interior_R"
            and res.conic_type == ConicType.HYPERBOLA
        ) or (
            verdict.membership.startswith("exterior")
            and res.conic_type in (ConicType.REAL_ELLIPSE, ConicType.CIRCLE)
        )
        if not ok:
            mismatches.append(
                {"trial": trial, "region": verdict.membership, "type": res.conic_type.value}
            )
    # constructed boundary points: the parabola case
    rng_b = np.random.default_rng(seed + 40)
    for _ in range(3):
        cfg = random_config(rng_b)
        p = find_boundary_point(cfg, float(rng_b.uniform(0, 2 * math.pi)))
        verdict = region_membership(cfg, p)
        res = classify_isog_locus(cfg, p.z)
        n_cases += 1
        disc = abs(res.conic.discriminant())
        worst_parabola_disc = max(worst_parabola_disc, disc)
        worst_quartic = max(worst_quartic, res.quartic.quartic_weight())
        if verdict.membership != "boundary_R" or disc > 1e-6:
            mismatches.append(
                {"trial": "boundary", "region": verdict.membership, "disc": _fmt(disc)}
            )
    passed = worst_quartic < 1e-7 and not mismatches
    return CheckResult(
        "isog-conic",
        passed,
        {
            "cases": n_cases,
            "max_quartic_weight": _fmt(worst_quartic),
            "max_boundary_disc": _fmt(worst_parabola_disc),
            "trichotomy_mismatches": mismatches,
            "tolerances": {"quartic_weight": 1e-7, "parabola_disc": 1e-6},
        },
        time.time() - t0,
    )


def check_isog_methods(seed: int = DEFAULT_SEED, trials: int = 100) -> CheckResult:
    """Pedal, barycentric, and rational conjugation agree pairwise; the
    symmetric-function form agrees on the unit-circle subset."""
    t0 = time.time()
    rng = np.random.default_rng(seed + 5)
    worst_bary = worst_rat = 0.0
    for _ in range(trials):
        cfg = random_config(rng)
        theta = float(rng.uniform(0, 2 * math.pi))
        p = random_probe_point(cfg, rng, theta)
        tri = triangle_at(cfg, theta)
        q_ped = isogonal_pedal(p, tri).z
        q_bar = isogonal_barycentric(p, tri).z
        coeffs = rational_isog_coeffs(cfg.a, cfg.b, cfg.f, cfg.g, p)
        q_rat = isogonal_rational(coeffs, cmath.exp(1j * theta)).z
        worst_bary = max(worst_bary, abs(q_ped - q_bar))
        worst_rat = max(worst_rat, abs(q_ped - q_rat))
    worst_sym = 0.0
    for _ in range(trials):
        f = complex(*rng.uniform(-0.5, 0.5, 2))
        g = complex(*rng.uniform(-0.5, 0.5, 2))
        if abs(f) > 0.62 or abs(g) > 0.62:
            continue
        cfg = PonceletConfig(1.0, 1.0, f, g)
        theta = float(rng.uniform(0, 2 * math.pi))
        p = random_probe_point(cfg, rng, theta)
        if abs(abs(p) - 1.0) < 0.05:
            continue
        tri = triangle_at(cfg, theta)
        q_ped = isogonal_pedal(p, tri).z
        q_sym = isogonal_symmetric(p, symmetric_triple(f, g, cmath.exp(1j * theta))).z
        worst_sym = max(worst_sym, abs(q_ped - q_sym))
    passed = worst_bary < 1e-8 and worst_rat < 1e-8 and worst_sym < 1e-9
    return CheckResult(
        "isog-methods",
        passed,
        {
            "trials": trials,
            "max_pedal_vs_barycentric": _fmt(worst_bary),
            "max_pedal_vs_rational": _fmt(worst_rat),
            "max_pedal_vs_symmetric_unit_frame": _fmt(worst_sym),
            "rational_transcription_ok": worst_rat < 1e-8,
            "tolerances": {"pairwise": 1e-8, "unit_frame": 1e-9},
        },
        time.time() - t0,
    )


def check_boundary_quartic(seed: int = DEFAULT_SEED, trials: int = 10) -> CheckResult:
    """The literal degree-4 polynomial vanishes on the numerically swept
    boundary, and the tangency-quartic roots land on both the outer
    ellipse and the boundary."""
    t0 = time.time()
    rng = np.random.default_rng(seed + 6)
    worst_env = worst_on_e = worst_on_boundary = 0.0
    realness = True
    for _ in range(trials):
        cfg = random_config(rng)

        def ctr(u, cfg=cfg):
            c = circumcircle_of(triangle_at(cfg, float(u)))
            return np.array([c.center.x, c.center.y])

        def rad(u, cfg=cfg):
            return circumcircle_of(triangle_at(cfg, float(u))).radius

        plus, minus = envelope_of_circles(ctr, rad, n=256)
        scale = boundary_quartic_scale(cfg)
        for p in plus.points + minus.points:
            worst_env = max(
                worst_env, abs(boundary_quartic_eval(cfg, p.x, p.y)) / scale
            )
        rep = tangency_points(cfg)
        realness = realness and rep.all_real
        for p in rep.points:
            worst_on_e = max(worst_on_e, abs(cfg.outer.implicit(p)))
            verdict = region_membership(cfg, p.z, tol_boundary=1e-7 * cfg.a)
            hmin = min(abs(verdict.h_min), abs(verdict.h_max))
            worst_on_boundary = max(worst_on_boundary, hmin / cfg.a)
    passed = worst_env < 1e-6 and worst_on_e < 1e-7 and worst_on_boundary < 1e-7 and realness
    return CheckResult(
        "boundary-quartic",
        passed,
        {
            "trials": trials,
            "max_rel_value_at_envelope": _fmt(worst_env),
            "max_tangency_off_ellipse": _fmt(worst_on_e),
            "max_tangency_off_boundary_rel_a": _fmt(worst_on_boundary),
            "tangency_roots_all_real": realness,
            "tolerances": {"envelope": 1e-6, "incidence": 1e-7},
        },
        time.time() - t0,
    )


def check_line_locus(
    seed: int = DEFAULT_SEED, configs: int = 10, n_t: int = 16
) -> CheckResult:
    """For a fixed point on the outer ellipse the conjugate locus is a
    line (sampled loci are collinear on the literal line); over all such
    points the lines envelope the closed-form conic concentric with the
    caustic."""
    t0 = time.time()
    rng = np.random.default_rng(seed + 7)
    worst_col = worst_lit = worst_env = worst_ctr = 0.0
    printed_mismatch = 0.0
    q_ok = True
    ts = np.tan(np.linspace(-math.pi + 0.25, math.pi - 0.25, n_t) / 2)
    for _ in range(configs):
        cfg = random_config(rng)
        for t in ts:
            res = degenerate_line_locus(cfg, float(t))
            p = cfg.outer_point(float(t))
            sample = sample_locus(cfg, p.z, 48)
            pts = [complex(z) for z in sample.finite_points(cap=100 * cfg.a)]
            _, dmax = fit_line(pts)
            worst_col = max(worst_col, dmax / cfg.a)
            worst_lit = max(
                worst_lit, max(res.line.distance(z) for z in pts) / cfg.a
            )
            if res.q_incidence is not None:
                q_ok = q_ok and res.q_incidence < 1e-8
        env = line_locus_envelope(cfg)
        worst_env = max(worst_env, env.coefficient_distance)
        printed_mismatch = max(printed_mismatch, env.as_printed_distance)
        worst_ctr = max(
            worst_ctr, abs(env.center.z - cfg.caustic_center().z) / cfg.a
        )
    passed = (
        worst_col < 1e-8 and worst_lit < 1e-8 and worst_env < 1e-6
        and worst_ctr < 1e-7 and q_ok
    )
    return CheckResult(
        "line-locus",
        passed,
        {
            "configs": configs,
            "t_values": n_t,
            "max_collinearity_rel_a": _fmt(worst_col),
            "max_literal_line_dist_rel_a": _fmt(worst_lit),
            "max_envelope_coeff_distance": _fmt(worst_env),
            "max_envelope_center_err_rel_a": _fmt(worst_ctr),
            "excluded_point_printed_variant_ok": q_ok,
            "as_printed_envelope_mismatch": _fmt(printed_mismatch),
            "tolerances": {"collinearity": 1e-8, "envelope_coeffs": 1e-6, "center": 1e-7},
        },
        time.time() - t0,
    )


def check_circum_envelope(seed: int = DEFAULT_SEED, trials: int = 10) -> CheckResult:
    """Circular-caustic circumcircle envelope: two circles centered at the
    circumcenter-locus foci, radius gap twice the locus semi-major axis,
    four touch points on the outer ellipse."""
    t0 = time.time()
    rng = np.random.default_rng(seed + 8)
    worst_env = worst_focus = worst_gap = worst_touch = 0.0
    for _ in range(trials):
        cfg = random_circular_config(rng)
        env = circum_envelope_circles(cfg)
        spec3 = predict_x3_locus_circular(cfg)
        worst_focus = max(
            worst_focus,
            env.k1.center.distance(spec3.f3p),
            env.k2.center.distance(spec3.f3),
        )
        worst_gap = max(
            worst_gap, abs(abs(env.k1.radius - env.k2.radius) - 2 * spec3.a3)
        )
        for p in env.touch1:
            worst_touch = max(worst_touch, abs(cfg.outer.implicit(p)),
                              abs(p.distance(env.k1.center) - env.k1.radius))
        for p in env.touch2:
            worst_touch = max(worst_touch, abs(cfg.outer.implicit(p)),
                              abs(p.distance(env.k2.center) - env.k2.radius))
        plus, minus = circum_envelope_points(cfg, n=256)
        for p in plus.points + minus.points:
            d1 = abs(p.distance(env.k1.center) - env.k1.radius)
            d2 = abs(p.distance(env.k2.center) - env.k2.radius)
            worst_env = max(worst_env, min(d1, d2))
    # pinned concentric instance
    cfg0 = config_circular_caustic(2.0, 1.0, 0.0, 0.0)
    env0 = circum_envelope_circles(cfg0)
    spec0 = predict_x3_locus_circular(cfg0)
    concentric_ok = (
        abs(cfg0.caustic.radius - 2.0 / 3.0) < 1e-12
        and abs(env0.k1.radius - 2.0) < 1e-12
        and abs(env0.k2.radius - 1.0) < 1e-12
        and abs(env0.k1.center.z) < 1e-12
        and abs(env0.k2.center.z) < 1e-12
        and abs(spec0.a3 - 0.5) < 1e-12
        and abs(spec0.b3 - 0.5) < 1e-12
    )
    passed = (
        worst_env < 1e-8 and worst_focus < 1e-10 and worst_gap < 1e-10
        and worst_touch < 1e-10 and concentric_ok
    )
    return CheckResult(
        "circum-envelope",
        passed,
        {
            "trials": trials,
            "max_envelope_off_circles": _fmt(worst_env),
            "max_center_vs_focus": _fmt(worst_focus),
            "max_radius_gap_vs_2a3": _fmt(worst_gap),
            "max_touch_point_residual": _fmt(worst_touch),
            "concentric_instance_ok": concentric_ok,
            "tolerances": {"envelope": 1e-8, "exact": 1e-10},
        },
        time.time() - t0,
    )


def check_radical_axis(seed: int = DEFAULT_SEED) -> CheckResult:
    """Radical-axis envelope: conic with residual < 1e-8; ellipse,
    hyperbola, or parabola according to the caustic center against the
    equilateral-centroid locus; major axis along the circumcenter-locus
    foci."""
    t0 = time.time()
    rng = np.random.default_rng(seed + 9)
    rows = []
    worst_res = worst_axis = worst_disc = 0.0
    ok = True
    cases = [("inside", ConicType.REAL_ELLIPSE), ("inside", ConicType.REAL_ELLIPSE),
             ("outside", ConicType.HYPERBOLA), ("outside", ConicType.HYPERBOLA),
             ("on", ConicType.PARABOLA), ("on", ConicType.PARABOLA)]
    for place, expected in cases:
        cfg = random_circular_config(rng, place=place)
        env = radical_axis_envelope(cfg)
        worst_res = max(worst_res, env.residual)
        type_ok = env.conic_type == expected or (
            expected == ConicType.REAL_ELLIPSE and env.conic_type == ConicType.CIRCLE
        )
        if expected == ConicType.PARABOLA:
            worst_disc = max(worst_disc, abs(env.conic.discriminant()))
        if env.axis_misalignment is not None:
            worst_axis = max(worst_axis, env.axis_misalignment)
        ok = ok and type_ok
        rows.append(
            {"place": place, "type": env.conic_type.value, "residual": _fmt(env.residual)}
        )
    passed = ok and worst_res < 1e-8 and worst_axis < 1e-6 and worst_disc < 1e-6
    return CheckResult(
        "radical-axis",
        passed,
        {
            "cases": rows,
            "max_fit_residual": _fmt(worst_res),
            "max_axis_misalignment_rad": _fmt(worst_axis),
            "max_parabola_disc": _fmt(worst_disc),
            "tolerances": {"residual": 1e-8, "axis": 1e-6, "disc": 1e-6},
        },
        time.time() - t0,
    )


def check_l101(seed: int = DEFAULT_SEED, configs: int = 5) -> CheckResult:
    """The incircle/nine-point radical axis stays tangent to the incircle
    at the contact point of the two circles, for every family position."""
    t0 = time.time()
    rng = np.random.default_rng(seed + 10)
    worst_d = worst_t = 0.0
    done = 0
    while done < configs:
        place = "inside" if done % 2 == 0 else "outside"
        cfg = random_circular_config(rng, place=place)
        rep = l101_envelope_check(cfg, n=96)
        worst_d = max(worst_d, rep.max_distance_residual)
        worst_t = max(worst_t, rep.max_touchpoint_residual)
        done += 1
    passed = worst_d < 1e-8 and worst_t < 1e-8
    return CheckResult(
        "l101",
        passed,
        {
            "configs": configs,
            "max_tangency_distance_residual": _fmt(worst_d),
            "max_touchpoint_vs_x11": _fmt(worst_t),
            "tolerances": {"distance": 1e-8, "touchpoint": 1e-8},
        },
        time.time() - t0,
    )


def check_conjectures(seed: int = DEFAULT_SEED) -> CheckResult:
    """Conic-iff-circular probes: circular caustics give conic envelope
    components at fit-noise level; eccentric caustics miss by orders of
    magnitude."""
    t0 = time.time()
    rng = np.random.default_rng(seed + 11)
    cfg_circ = random_circular_config(rng)
    circ_circum = conjecture_probe(cfg_circ, "circum_envelope", n=512)
    circ_radical = conjecture_probe(cfg_circ, "radical_axis", n=512)
    floor_circum = max(max(circ_circum.residuals), 1e-12)
    floor_radical = max(max(circ_radical.residuals), 1e-12)

    ecc_rows = []
    ratios = []
    for _ in range(2):
        while True:
            cfg = random_config(rng)
            if abs(cfg.f - cfg.g) >= 0.3:
                break
        pc = conjecture_probe(cfg, "circum_envelope", n=512)
        pr = conjecture_probe(cfg, "radical_axis", n=512)
        ratios.append(min(pc.residuals) / floor_circum)
        ratios.append(min(pr.residuals) / floor_radical)
        ecc_rows.append(
            {
                "config": cfg.to_json(),
                "circum_residuals": [_fmt(r) for r in pc.residuals],
                "radical_residual": _fmt(pr.residuals[0]),
                "circum_verdicts": pc.verdicts,
                "radical_verdicts": pr.verdicts,
            }
        )
    circular_ok = (
        max(circ_circum.residuals) < 1e-8
        and max(circ_radical.residuals) < 1e-8
        and circ_circum.verdicts == ["conic_component", "conic_component"]
    )
    separation_ok = min(ratios) >= 100.0
    passed = circular_ok and separation_ok
    return CheckResult(
        "conjectures",
        passed,
        {
            "circular_circum_residuals": [_fmt(r) for r in circ_circum.residuals],
            "circular_radical_residual": _fmt(circ_radical.residuals[0]),
            "min_eccentric_over_floor_ratio": _fmt(min(ratios)),
            "eccentric_cases": ecc_rows,
            "tolerances": {"circular": 1e-8, "ratio": 100.0},
        },
        time.time() - t0,
    )


ALL_CHECKS = {
    "closure": check_closure,
    "x4-locus": check_x4_locus,
    "isog-circle": check_isog_circle,
    "isog-conic": check_isog_conic,
    "isog-methods": check_isog_methods,
    "boundary-quartic": check_boundary_quartic,
    "line-locus": check_line_locus,
    "circum-envelope": check_circum_envelope,
    "radical-axis": check_radical_axis,
    "l101": check_l101,
    "conjectures": check_conjectures,
}


def run_checks(names=None, seed: int = DEFAULT_SEED) -> dict:
    """Run named checks (all by default) and assemble a deterministic
    report dictionary."""
    if names is None:
        names = list(ALL_CHECKS)
    results = []
    for name in names:
        if name not in ALL_CHECKS:
            raise KeyError(f"unknown check {name!r}")
        results.append(ALL_CHECKS[name](seed=seed))
    return {
        "seed": seed,
        "checks": [r.as_dict() for r in results],
        "all_passed": all(r.passed for r in results),
    }
