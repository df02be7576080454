"""Descendant invariants of toric surfaces and of the line by recursion."""
from .engine import GWEngine, compute_invariant, degree_zero_invariant, engine_for, to_unlabelled
from .equations import (
    Equation,
    Term,
    dilaton_rewrite,
    divisor_rewrite,
    splitting_lemma,
    string_rewrite,
    topological_recursion,
    wdvv_reduce,
)
from .facets import boundary_psi_crosscheck, boundary_psi_suite
from .keys import InvariantKey, KeyError_, format_conditions, parse_conditions, parse_degree, parse_key
from .models import MODEL_NAMES, SurfaceModel, build_surface_model, strongly_unimodular_witness
from .preconditions import (
    PreconditionViolation,
    Violation,
    check_degree,
    check_strongly_unimodular,
    check_tr_preconditions,
    check_wdvv_preconditions,
    separated,
    theta_of_family,
)

__all__ = [
    "Equation", "Term", "boundary_psi_crosscheck", "boundary_psi_suite", "dilaton_rewrite", "divisor_rewrite",
    "splitting_lemma", "string_rewrite", "topological_recursion", "wdvv_reduce",
    "GWEngine", "InvariantKey", "KeyError_", "MODEL_NAMES", "PreconditionViolation", "SurfaceModel", "Violation",
    "build_surface_model", "check_degree", "check_strongly_unimodular", "check_tr_preconditions",
    "check_wdvv_preconditions", "compute_invariant", "degree_zero_invariant", "engine_for", "format_conditions",
    "parse_conditions", "parse_degree", "parse_key", "separated", "strongly_unimodular_witness",
    "theta_of_family", "to_unlabelled",
]
