"""Exact slope arithmetic for isocrystals and their filtered variants.

The package is organized bottom-up: exactnum holds the rational and
polygon primitives, slopecalc the tensor calculus on slope data,
admissibility the weak-admissibility checks and candidate enumeration for
minuscule filtered isocrystals, classifier the equal-locus decision
procedure, and cli the command-line front end.
"""

from slopelab.admissibility import (
    ExplicitProfile,
    FilteredType,
    GENERIC,
    GenericProfile,
    MinusculeHodge,
    SubCheck,
    SubSelection,
    is_unit_root,
    wa_exists,
)
from slopelab.classifier import (
    BadWitness,
    GoodPattern,
    Verdict,
    classify,
    dual_slopes,
    duality_violations,
    find_witness,
    iter_unit_interval_types,
    match_pattern,
    validate_input,
    xor_violations,
)
from slopelab.cli import SlopeSyntaxError, format_slopes, parse_slopes
from slopelab.exactnum import (
    ConvexPolygon,
    DomainError,
    ExtCount,
    Fraction,
    INFINITY,
    lies_on_or_above,
    polygon_from_slopes,
    share_endpoints,
)
from slopelab.slopecalc import (
    DivisionAlgebra,
    EMPTY,
    SimpleSummand,
    SlopeType,
    UNIT,
    iter_slope_types,
    normalize,
    simple_summands_between,
)

__all__ = [
    "BadWitness",
    "ConvexPolygon",
    "DivisionAlgebra",
    "DomainError",
    "EMPTY",
    "ExplicitProfile",
    "ExtCount",
    "FilteredType",
    "Fraction",
    "GENERIC",
    "GenericProfile",
    "GoodPattern",
    "INFINITY",
    "MinusculeHodge",
    "SimpleSummand",
    "SlopeSyntaxError",
    "SlopeType",
    "SubCheck",
    "SubSelection",
    "UNIT",
    "Verdict",
    "classify",
    "dual_slopes",
    "duality_violations",
    "find_witness",
    "format_slopes",
    "is_unit_root",
    "iter_slope_types",
    "iter_unit_interval_types",
    "lies_on_or_above",
    "match_pattern",
    "normalize",
    "parse_slopes",
    "polygon_from_slopes",
    "share_endpoints",
    "simple_summands_between",
    "validate_input",
    "wa_exists",
    "xor_violations",
]
