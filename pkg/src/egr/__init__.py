"""Quadratic fields carrying elliptic curves with everywhere good reduction and rational j."""

from .constructor import Witness, construct_witness, solve_norm_equation
from .curve import CurveModel
from .density import aggregate_IX, aggregate_RX, count_family, family_for, growth_check
from .quadfield import FieldElement, QuadraticField
from .reduction import LocalReduction, tate, verify_egr
from .setzer import EgrVerdict, check_conditions, decide, scan_good_d

__all__ = [
    "CurveModel", "EgrVerdict", "FieldElement", "LocalReduction", "QuadraticField", "Witness",
    "aggregate_IX", "aggregate_RX", "check_conditions", "construct_witness", "count_family",
    "decide", "family_for", "growth_check", "scan_good_d", "solve_norm_equation", "tate", "verify_egr",
]
