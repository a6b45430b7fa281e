"""Command-line front end: generate families, dump loci and envelopes as
CSV with fit reports, evaluate closed-form predictions, run the named
verification checks, probe the conjectures, and render SVG scenes.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .centers import SUPPORTED_CENTERS
from .core.conics import ConicCoeffs, classify_conic, conic_center
from .core.fitting import CONIC6, fit_curve
from .core.geometry import GeometryError
from .family import ConfigError, PonceletConfig, config_circular_caustic, theta_grid
from .loci import (
    classify_isog_locus,
    line_locus_envelope,
    predict_isog_circle,
    predict_x3_locus_circular,
    predict_x4_locus,
    region_membership,
    sample_locus,
)
from .envelopes import (
    circum_envelope_circles,
    circum_envelope_points,
    conjecture_probe,
    l101_envelope_check,
    orthic_axes_envelope_probe,
    radical_axis_envelope,
    x36_degenerate_line,
)
from .checks import ALL_CHECKS, DEFAULT_SEED, run_checks
from .family import equilateral_centroid_locus, triangle_at
from .svg import SCENES

CSV_FLOAT = "{:.17g}"


def _write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv(rows, header) -> str:
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for x in row:
            if isinstance(x, float):
                cells.append(CSV_FLOAT.format(x))
            else:
                cells.append(str(x))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def add_config_args(p: argparse.ArgumentParser):
    p.add_argument("--config", metavar="FILE", help="JSON config file")
    p.add_argument("--a", type=float, help="outer semi-major axis")
    p.add_argument("--b", type=float, help="outer semi-minor axis")
    p.add_argument("--f", nargs=2, type=float, metavar=("RE", "IM"),
                   help="first caustic-preimage focus")
    p.add_argument("--g", nargs=2, type=float, metavar=("RE", "IM"),
                   help="second caustic-preimage focus")
    p.add_argument("--xc", type=float, help="circular caustic center x")
    p.add_argument("--yc", type=float, help="circular caustic center y")
    p.add_argument("--outer-circle", action="store_true",
                   help="shortcut for --a 1 --b 1 (unit outer circle)")


def parse_config(args) -> PonceletConfig:
    if args.config:
        with open(args.config) as fh:
            return PonceletConfig.from_json(fh.read())
    if args.outer_circle:
        a = b = 1.0
    else:
        if args.a is None or args.b is None:
            raise ConfigError("need --config, or --a/--b (or --outer-circle)")
        a, b = args.a, args.b
    if args.xc is not None or args.yc is not None:
        return config_circular_caustic(a, b, args.xc or 0.0, args.yc or 0.0)
    if args.f is None or args.g is None:
        raise ConfigError("need --f RE IM and --g RE IM (or --xc/--yc)")
    return PonceletConfig(a, b, complex(*args.f), complex(*args.g))


def _conic_report(fit) -> dict:
    conic = ConicCoeffs.from_vector(fit.coefficients) if hasattr(fit, "coefficients") else fit
    kind = classify_conic(conic)
    rep = {
        "coefficients": {
            "A": conic.a, "B": conic.b, "C": conic.c,
            "D": conic.d, "E": conic.e, "F": conic.f,
        },
        "classification": kind.value,
    }
    try:
        ctr = conic_center(conic)
        rep["center"] = [ctr.x, ctr.y]
        if kind.value == "circle":
            r2 = (conic.d**2 + conic.e**2) / (4 * conic.a**2) - conic.f / conic.a
            if r2 > 0:
                rep["radius"] = math.sqrt(r2)
    except GeometryError:
        pass
    if hasattr(fit, "residual"):
        rep["residual"] = fit.residual
    return rep


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_family(args) -> int:
    cfg = parse_config(args)
    rows = []
    for th in theta_grid(args.theta_samples):
        tri = triangle_at(cfg, float(th))
        rows.append([float(th), tri.A.x, tri.A.y, tri.B.x, tri.B.y, tri.C.x, tri.C.y])
    _write_text(args.out, _csv(rows, ["theta", "ax", "ay", "bx", "by", "cx", "cy"]))
    if args.svg:
        _write_text(args.svg, SCENES["family"](cfg))
    return 0


def cmd_locus(args) -> int:
    cfg = parse_config(args)
    if args.target == "isogonal":
        if args.P is None:
            raise ConfigError("--target isogonal requires --P RE IM")
        target = complex(*args.P)
    else:
        target = int(args.target)
        if target not in SUPPORTED_CENTERS:
            raise ConfigError(f"unsupported center index {target}")
    sample = sample_locus(cfg, target, args.theta_samples)
    rows = []
    for th, z, ok in zip(sample.thetas, sample.points, sample.defined):
        rows.append([float(th), z.real if ok else math.nan, z.imag if ok else math.nan,
                     1 if ok else 0])
    _write_text(args.out, _csv(rows, ["theta", "x", "y", "defined"]))
    pts = [complex(z) for z in sample.finite_points(cap=50 * cfg.a)]
    report = {"n_undefined": sample.n_undefined,
              "substantially_at_infinity": sample.substantially_at_infinity}
    if len(pts) >= 8:
        fit = fit_curve(pts, CONIC6)
        report["fit"] = _conic_report(fit)
    _write_text(args.fit_out, _json_dump(report))
    return 0


def cmd_predict(args) -> int:
    cfg = parse_config(args)
    what = args.what
    if what == "x4-locus":
        spec = predict_x4_locus(cfg)
        out = {"center": [spec.center.x, spec.center.y], "a4": spec.a4,
               "b4": spec.b4, "sigma": spec.sigma}
    elif what == "isog-circle":
        if args.P is None:
            raise ConfigError("predict isog-circle requires --P RE IM")
        if cfg.a != cfg.b:
            raise ConfigError("isog-circle prediction requires a = b (unit-circle frame)")
        spec = predict_isog_circle(cfg.f, cfg.g, complex(*args.P))
        out = {"center": [spec.center.real, spec.center.imag], "radius": spec.radius}
    elif what == "x3-locus":
        spec = predict_x3_locus_circular(cfg)
        out = {"F3": [spec.f3.x, spec.f3.y], "F3p": [spec.f3p.x, spec.f3p.y],
               "a3": spec.a3, "b3": spec.b3, "delta3": spec.delta3,
               "delta3p": spec.delta3p}
    elif what == "circum-envelope":
        env = circum_envelope_circles(cfg)
        out = {
            "K1": {"center": [env.k1.center.x, env.k1.center.y], "radius": env.k1.radius},
            "K2": {"center": [env.k2.center.x, env.k2.center.y], "radius": env.k2.radius},
            "touch1": [[p.x, p.y] for p in env.touch1],
            "touch2": [[p.x, p.y] for p in env.touch2],
        }
    elif what == "equilateral-locus":
        spec = equilateral_centroid_locus(cfg.a, cfg.b)
        out = {"a_tri": spec.semi_major, "b_tri": spec.semi_minor}
    elif what == "x36-line":
        line = x36_degenerate_line(cfg)
        out = {"l": line.l, "m": line.m, "n": line.n}
    else:
        raise ConfigError(f"unknown prediction {what!r}")
    _write_text(args.out, _json_dump(out))
    return 0


def cmd_region(args) -> int:
    cfg = parse_config(args)
    if args.P is None:
        raise ConfigError("region requires --P RE IM")
    verdict = region_membership(cfg, complex(*args.P), n=args.theta_samples)
    out = {"membership": verdict.membership, "witness_u": verdict.witness_u,
           "h_min": verdict.h_min, "h_max": verdict.h_max}
    if args.classify:
        res = classify_isog_locus(cfg, complex(*args.P))
        out["locus_type"] = res.conic_type.value
        out["quartic_weight"] = res.quartic.quartic_weight()
        out["z_points"] = [[p.x, p.y] for p in res.z_points]
    _write_text(args.out, _json_dump(out))
    return 0


def cmd_envelope(args) -> int:
    cfg = parse_config(args)
    which = args.which
    rows, report = [], {}
    if which == "circumcircle":
        plus, minus = circum_envelope_points(cfg, n=args.theta_samples)
        for branch_id, branch in ((0, plus), (1, minus)):
            for u, p in zip(branch.params, branch.points):
                rows.append([u, p.x, p.y, branch_id])
        env = circum_envelope_circles(cfg)
        report = {
            "K1": {"center": [env.k1.center.x, env.k1.center.y], "radius": env.k1.radius},
            "K2": {"center": [env.k2.center.x, env.k2.center.y], "radius": env.k2.radius},
        }
    elif which == "radical-axis":
        env = radical_axis_envelope(cfg, n=args.theta_samples)
        report = _conic_report(env.conic)
        report["residual"] = env.residual
        report["axis_misalignment_rad"] = env.axis_misalignment
        from .core.envelope import envelope_of_lines
        from .envelopes import RadicalAxisFamily

        fam = RadicalAxisFamily(cfg)
        pts = envelope_of_lines(fam.coeffs, n=args.theta_samples, derivative=fam.dcoeffs)
        for u, p in zip(pts.params, pts.points):
            rows.append([u, p.x, p.y, 0])
    elif which == "line-locus":
        env = line_locus_envelope(cfg, n=args.theta_samples)
        report = _conic_report(env.literal)
        report["coefficient_distance"] = env.coefficient_distance
        report["as_printed_distance"] = env.as_printed_distance
        from .core.envelope import envelope_of_lines
        from .loci import _line_family_trig

        coeffs, dcoeffs = _line_family_trig(cfg)
        pts = envelope_of_lines(coeffs, n=args.theta_samples, derivative=dcoeffs)
        for u, p in zip(pts.params, pts.points):
            rows.append([u, p.x, p.y, 0])
    elif which == "orthic-axes":
        p3, p1 = orthic_axes_envelope_probe(cfg, n=args.theta_samples)
        report = {
            "orthic_axis": _conic_report(p3.conic) | {"residual": p3.residual},
            "antiorthic_axis": _conic_report(p1.conic) | {"residual": p1.residual},
        }
    elif which == "l101":
        rep = l101_envelope_check(cfg)
        report = {
            "max_tangency_distance_residual": rep.max_distance_residual,
            "max_touchpoint_vs_x11": rep.max_touchpoint_residual,
            "envelope": "incircle",
        }
    else:
        raise ConfigError(f"unknown envelope {which!r}")
    if rows:
        _write_text(args.out, _csv(rows, ["u", "x", "y", "component"]))
    _write_text(args.fit_out, _json_dump(report))
    return 0


def cmd_verify(args) -> int:
    names = None
    if args.check:
        names = args.check
    report = run_checks(names, seed=args.seed)
    _write_text(args.out, _json_dump(report))
    for c in report["checks"]:
        sys.stderr.write(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}\n")
    return 0 if report["all_passed"] else 1


def cmd_probe(args) -> int:
    cfg = parse_config(args)
    which = {"circum-envelope": "circum_envelope", "radical-axis": "radical_axis"}[
        args.which
    ]
    rep = conjecture_probe(cfg, which, n=args.theta_samples)
    _write_text(
        args.out,
        _json_dump(
            {
                "which": rep.which,
                "config": json.loads(rep.config),
                "residuals": rep.residuals,
                "verdicts": rep.verdicts,
                "threshold": rep.threshold,
            }
        ),
    )
    return 0


def cmd_render(args) -> int:
    cfg = parse_config(args)
    if args.scene == "region":
        if args.P is None:
            raise ConfigError("scene 'region' requires --P RE IM")
        from .svg import scene_region

        _write_text(args.svg, scene_region(cfg, complex(*args.P)))
        return 0
    scene = SCENES.get(args.scene)
    if scene is None:
        raise ConfigError(
            f"unknown scene {args.scene!r}; choices: {sorted(SCENES) + ['region']}"
        )
    _write_text(args.svg, scene(cfg))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="porism",
        description="Poncelet triangle families: loci, conjugates, envelopes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", help="dump family triangles as CSV")
    add_config_args(p)
    p.add_argument("--theta-samples", type=int, default=256)
    p.add_argument("--out", default="-")
    p.add_argument("--svg")
    p.set_defaults(fn=cmd_family)

    p = sub.add_parser("locus", help="sample a locus, dump CSV + fit JSON")
    add_config_args(p)
    p.add_argument("--target", required=True,
                   help="center index (1,2,3,4,5,11,36,40) or 'isogonal'")
    p.add_argument("--P", nargs=2, type=float, metavar=("RE", "IM"))
    p.add_argument("--theta-samples", type=int, default=256)
    p.add_argument("--out", default="-")
    p.add_argument("--fit-out", default="-")
    p.set_defaults(fn=cmd_locus)

    p = sub.add_parser("predict", help="closed-form prediction as JSON")
    add_config_args(p)
    p.add_argument("--what", required=True,
                   choices=["x4-locus", "isog-circle", "x3-locus", "circum-envelope",
                            "equilateral-locus", "x36-line"])
    p.add_argument("--P", nargs=2, type=float, metavar=("RE", "IM"))
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_predict)

    p = sub.add_parser("region", help="swept-region membership of a point")
    add_config_args(p)
    p.add_argument("--P", nargs=2, type=float, metavar=("RE", "IM"), required=True)
    p.add_argument("--theta-samples", type=int, default=512)
    p.add_argument("--classify", action="store_true",
                   help="also classify the isogonal locus of P")
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_region)

    p = sub.add_parser("envelope", help="envelope samples as CSV + fit JSON")
    add_config_args(p)
    p.add_argument("--which", required=True,
                   choices=["circumcircle", "radical-axis", "line-locus",
                            "orthic-axes", "l101"])
    p.add_argument("--theta-samples", type=int, default=2048)
    p.add_argument("--out", default="-")
    p.add_argument("--fit-out", default="-")
    p.set_defaults(fn=cmd_envelope)

    p = sub.add_parser("verify", help="run named verification checks")
    p.add_argument("--check", action="append", choices=sorted(ALL_CHECKS),
                   help="run one named check (repeatable); default: all")
    p.add_argument("--all", action="store_true", help="run every check (default)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=None,
                   help="accepted for compatibility; trials are per-check defaults")
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("probe", help="conjecture probe report as JSON")
    add_config_args(p)
    p.add_argument("--which", required=True, choices=["circum-envelope", "radical-axis"])
    p.add_argument("--theta-samples", type=int, default=1024)
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_probe)

    p = sub.add_parser("render", help="render an SVG scene")
    add_config_args(p)
    p.add_argument("--scene", required=True)
    p.add_argument("--P", nargs=2, type=float, metavar=("RE", "IM"))
    p.add_argument("--svg", required=True)
    p.set_defaults(fn=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, GeometryError, FileNotFoundError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
