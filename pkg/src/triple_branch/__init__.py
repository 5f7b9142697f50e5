"""Supersingular reductions of abelian covers of the projective line branched
at three points: enumeration, Newton polygons, congruence sets and densities."""

from .analysis import analyze_genus, sg_set
from .congruence import CongruenceSet, density, lift, supersingular_residues, union
from .covers import (
    InertiaType,
    RamificationType,
    canonicalize_inertia,
    enumerate_inertia_types,
    enumerate_ramification_types,
    genus_of_quotient,
    genus_of_ramification,
    group_shape,
)
from .decomposition import (
    JacobianLedger,
    kani_rosen_ledger,
    ledger_for,
    newton_from_ledger,
    quotient_inertia,
    reduce2_ledger,
)
from .groups import AbelianGroupShape, GroupElement
from .newton import NewtonPolygon, is_ordinary, is_supersingular, newton_polygon, signature
from .oracle import count_points, l_polynomial, np_from_lpoly, oracle_report

__version__ = "0.1.0"

__all__ = [
    "AbelianGroupShape",
    "CongruenceSet",
    "GroupElement",
    "InertiaType",
    "JacobianLedger",
    "NewtonPolygon",
    "RamificationType",
    "analyze_genus",
    "canonicalize_inertia",
    "count_points",
    "density",
    "enumerate_inertia_types",
    "enumerate_ramification_types",
    "genus_of_quotient",
    "genus_of_ramification",
    "group_shape",
    "is_ordinary",
    "is_supersingular",
    "kani_rosen_ledger",
    "l_polynomial",
    "ledger_for",
    "lift",
    "newton_from_ledger",
    "newton_polygon",
    "np_from_lpoly",
    "oracle_report",
    "quotient_inertia",
    "reduce2_ledger",
    "sg_set",
    "signature",
    "supersingular_residues",
    "union",
]
