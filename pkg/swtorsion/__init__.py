"""
Exact-arithmetic invariants of surface mapping tori and the circle bundles over them.
"""

from .errors import SwTorsionError
from .exactalg import AbelianGroupSpec, IntMatrix, snf
from .fourman import CircleBundleX, KodairaClass, intersection_form, lefschetz_test, sw4_from_sw3
from .laurent import LaurentPoly, VarSet
from .report import ReportDocument, build_report, report_for_genus
from .surface import MappingClass, Word, paper_phi
from .torus3 import GroupPresentation, MappingTorusY, alexander_polynomial, milnor_torsion, sw3

__all__ = [
    "AbelianGroupSpec",
    "CircleBundleX",
    "GroupPresentation",
    "IntMatrix",
    "KodairaClass",
    "LaurentPoly",
    "MappingClass",
    "MappingTorusY",
    "ReportDocument",
    "SwTorsionError",
    "VarSet",
    "Word",
    "alexander_polynomial",
    "build_report",
    "intersection_form",
    "lefschetz_test",
    "milnor_torsion",
    "paper_phi",
    "report_for_genus",
    "snf",
    "sw3",
    "sw4_from_sw3",
]
