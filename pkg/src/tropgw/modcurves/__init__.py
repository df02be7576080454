"""Moduli spaces of rational tropical curves with marked leaves."""
from .identities import FanSpace, forgetful_identities, forgetful_pushpull_suite, moduli_fan_suite, string_dilaton_abstract
from .moduli_fan import ModuliFan, embed_moduli_fan, moduli_fan, psi_value, v_vector
from .psi import (
    PsiProductFan,
    abstract_invariant,
    boundary_divisor_weight,
    boundary_psi_facets,
    multinomial,
    psi_divisor_weight,
    psi_product,
)
from .trees import MarkedTree, Partition, TreeVertex, enumerate_types, nontrivial_partitions, parse_tree

__all__ = [
    "FanSpace", "ModuliFan", "MarkedTree", "Partition", "PsiProductFan", "TreeVertex",
    "abstract_invariant", "boundary_divisor_weight", "boundary_psi_facets", "embed_moduli_fan",
    "enumerate_types", "forgetful_identities", "forgetful_pushpull_suite", "moduli_fan",
    "moduli_fan_suite", "multinomial", "nontrivial_partitions", "parse_tree", "psi_divisor_weight",
    "psi_product", "psi_value", "string_dilaton_abstract", "v_vector",
]
