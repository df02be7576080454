"""Moduli of parametrized rational tropical curves in R^r."""
from .degree import (
    Degree,
    NotReducible,
    degree_factorial,
    delta_of_degree,
    h_dot_degree,
    projective_degree,
    split_degree,
)
from .equations import map_equations_suite, random_curve, standard_h
from .space import EvalMap, ParamCurve, ParamPsiProduct, ParamSpace, psi_product_param

__all__ = [
    "Degree", "EvalMap", "NotReducible", "ParamCurve", "ParamPsiProduct", "ParamSpace",
    "degree_factorial", "delta_of_degree", "h_dot_degree", "map_equations_suite",
    "projective_degree", "psi_product_param", "random_curve", "split_degree", "standard_h",
]
