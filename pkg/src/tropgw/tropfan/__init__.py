"""Tropical cycles: polyhedra, weighted complexes, rational functions and their products."""
from .complex import WeightedComplex, merge_cells, primitive_normal
from .functions import (
    CellwiseFunction,
    LinearCombination,
    MaxFunction,
    NotAffineError,
    PLFunction,
    Pullback,
    RayValueFunction,
)
from .io import (
    FormatError,
    complex_from_dict,
    complex_to_dict,
    dumps_complex,
    function_from_dict,
    function_to_dict,
    loads_complex,
)
from .minkowski import MinkowskiWeight, SimplicialFan, fan_displacement_product, generic_displacement
from .operations import (
    CycleMorphism,
    NonTransversalError,
    UnbalancedError,
    check_balanced,
    degree0,
    diagonal_intersection,
    divisor,
    germ,
    is_convex_on,
    product,
    pull_back,
    push_forward,
    random_translation,
    recession_fan,
    refine,
    star,
    transversal_intersection,
)
from .polyhedron import Polyhedron

__all__ = [
    "CellwiseFunction",
    "CycleMorphism",
    "FormatError",
    "LinearCombination",
    "MaxFunction",
    "MinkowskiWeight",
    "NonTransversalError",
    "NotAffineError",
    "PLFunction",
    "Polyhedron",
    "Pullback",
    "RayValueFunction",
    "SimplicialFan",
    "UnbalancedError",
    "WeightedComplex",
    "check_balanced",
    "complex_from_dict",
    "complex_to_dict",
    "degree0",
    "diagonal_intersection",
    "divisor",
    "dumps_complex",
    "fan_displacement_product",
    "function_from_dict",
    "function_to_dict",
    "generic_displacement",
    "germ",
    "is_convex_on",
    "loads_complex",
    "merge_cells",
    "primitive_normal",
    "product",
    "pull_back",
    "push_forward",
    "random_translation",
    "recession_fan",
    "refine",
    "star",
    "transversal_intersection",
]
