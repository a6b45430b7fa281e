"""Poncelet triangle families, triangle-center loci, and envelopes."""

from .centers import (
    SUPPORTED_CENTERS,
    ConjugateAtInfinity,
    RationalIsogCoeffs,
    barycentric_weights,
    center,
    incircle_of,
    isogonal_barycentric,
    isogonal_pedal,
    isogonal_rational,
    isogonal_symmetric,
    rational_isog_coeffs,
    special_circles,
)
from .core.conics import (
    ConicCoeffs,
    ConicType,
    classify_conic,
    conic_from_ellipse,
    ellipse_from_conic,
)
from .core.envelope import envelope_of_circles, envelope_of_implicit, envelope_of_lines
from .core.fitting import (
    CONIC6,
    QUARTIC9,
    LocusFit,
    RankDeficientFit,
    fit_curve,
    fit_inscribed_conic,
    fit_line,
)
from .core.geometry import (
    AffineMap,
    Circle,
    EllipseSpec,
    GeometryError,
    Line,
    Point,
    Triangle,
    circumcircle_of,
    foot_of_perpendicular,
    radical_axis,
)
from .core.solvers import solve_cubic_complex, solve_quartic_real
from .envelopes import (
    CircumEnvelope,
    ConjectureReport,
    RadicalAxisFamily,
    circum_envelope_circles,
    circumcircle_at,
    conjecture_probe,
    l101_envelope_check,
    orthic_axes_envelope_probe,
    radical_axis_at,
    radical_axis_envelope,
    x36_degenerate_line,
)
from .family import (
    ConfigError,
    PonceletConfig,
    SymmetricTriple,
    caustic_recover,
    config_circular_caustic,
    equilateral_centroid_locus,
    symmetric_triple,
    triangle_at,
)
from .loci import (
    IsogCircleSpec,
    OrthoLocusSpec,
    QuarticFit,
    RegionVerdict,
    boundary_quartic_eval,
    classify_isog_locus,
    degenerate_line_locus,
    line_locus_envelope,
    predict_isog_circle,
    predict_x3_locus_circular,
    predict_x4_locus,
    region_membership,
    sample_locus,
    tangency_points,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
