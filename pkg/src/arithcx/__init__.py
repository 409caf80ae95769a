"""Exact arithmetic for periodic continued fractions, BEJ varieties and class groups."""

from .bej import (
    ComponentDescription,
    NoKnownFamily,
    SignatureMismatch,
    VarietyPoint,
    build_system,
    classify_V12,
    component_of,
    fiber_projection,
    is_member,
)
from .cfrac import Mat2, PeriodicCF, equivalence_matrix, evaluate, expand, format_cf, induced_quadratic, parse_cf
from .classgroup import BQForm, FormClassGroup, narrow_class_group, reduce_form, reduced_forms, sha_group
from .curves import IntegralCubicCurve, classify_torsion, curve_from_b, group_add, point_search
from .euler_dim import (
    NoStableSignature,
    complexity,
    complexity_report,
    estimate_dimension,
    predicted_rank,
    sample_family,
)
from .pell import PellConic, fundamental_pell, on_conic, solutions_up_to
from .qi import IntPoly2, QuadSurd, format_surd, minimal_polynomial, normalize_surd, parse_surd
from .sympoly import MPoly, parse_poly, render, symbolic_equivalence_matrix

__version__ = "0.1.0"

__all__ = [
    "BQForm",
    "build_system",
    "classify_torsion",
    "classify_V12",
    "complexity",
    "complexity_report",
    "component_of",
    "ComponentDescription",
    "curve_from_b",
    "equivalence_matrix",
    "estimate_dimension",
    "evaluate",
    "expand",
    "fiber_projection",
    "format_cf",
    "format_surd",
    "FormClassGroup",
    "fundamental_pell",
    "group_add",
    "induced_quadratic",
    "IntegralCubicCurve",
    "IntPoly2",
    "is_member",
    "Mat2",
    "minimal_polynomial",
    "MPoly",
    "narrow_class_group",
    "NoKnownFamily",
    "normalize_surd",
    "NoStableSignature",
    "on_conic",
    "parse_cf",
    "parse_poly",
    "parse_surd",
    "PellConic",
    "PeriodicCF",
    "point_search",
    "predicted_rank",
    "QuadSurd",
    "reduce_form",
    "reduced_forms",
    "render",
    "sample_family",
    "sha_group",
    "SignatureMismatch",
    "solutions_up_to",
    "symbolic_equivalence_matrix",
    "VarietyPoint",
]
