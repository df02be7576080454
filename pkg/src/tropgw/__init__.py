"""Exact tropical intersection theory on moduli spaces of rational curves.

Subpackages: ``tropfan`` (cycles, functions, products), ``modcurves``
(the moduli fan and psi-classes), ``parmod`` (parametrized curves in R^r)
and ``gwengine`` (descendant invariants by recursion).
"""
from .exactlin import hermite_normal_form, lattice_index, smith_normal_form
from .gwengine import GWEngine, InvariantKey, PreconditionViolation, build_surface_model, compute_invariant, parse_key
from .modcurves import abstract_invariant, psi_product
from .report import Check, Report
from .tropfan import WeightedComplex, diagonal_intersection, divisor, push_forward

__version__ = "0.1.0"

__all__ = [
    "Check", "GWEngine", "InvariantKey", "PreconditionViolation", "Report", "WeightedComplex",
    "abstract_invariant", "build_surface_model", "compute_invariant", "diagonal_intersection", "divisor",
    "hermite_normal_form", "lattice_index", "parse_key", "psi_product", "push_forward", "smith_normal_form",
]
