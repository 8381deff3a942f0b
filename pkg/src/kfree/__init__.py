"""Generator indices, Beckmann predictions and exact discriminants for k-free searches."""
from .beckmann import BranchDatum, Cover, build_cover, find_unramified_value, predict_specialization
from .discverify import dedekind_test, field_discriminant, field_fingerprint, pmax_disc_valuation, ramification_shape
from .factor import Factorization, factor_integer, integer_profile
from .groups import GroupName, PermGroup, generator_index, named_group
from .intpoly import IPoly, discriminant, parse_poly, resultant, specialize, squarefree_factorization
from .perm import CycleType, Perm, power_cycle_type, product_cycle_type

__all__ = [
    "BranchDatum", "Cover", "CycleType", "Factorization", "GroupName", "IPoly", "Perm", "PermGroup",
    "build_cover", "dedekind_test", "discriminant", "factor_integer", "field_discriminant",
    "field_fingerprint", "find_unramified_value", "generator_index", "integer_profile", "named_group",
    "parse_poly", "pmax_disc_valuation", "power_cycle_type", "predict_specialization",
    "product_cycle_type", "ramification_shape", "resultant", "specialize", "squarefree_factorization",
]
