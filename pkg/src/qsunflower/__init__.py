"""Sunflower-free families of subspaces over finite fields.

Constructions from nested lifted MRD (Gabidulin) codes, together with exact
verification: exhaustive sunflower search, family-condition checks and
big-integer bounds.
"""

__version__ = "0.1.0"

from .bounds import bound_sandwich, floor_sum, upper_bound
from .constructions import (
    FamilySpec,
    FamilyTree,
    build_family,
    construct_A,
    construct_B,
    construct_example1,
    construct_G,
    construct_partite,
    params_A,
    params_B,
    predicted_sizes,
)
from .errors import BudgetExceeded, ParameterError
from .field import ExtFieldSpec, FieldSpec, find_irreducible
from .gaussian import gauss_bracket, gaussian
from .geometry import Subspace, complement, enumerate_subspaces, in_general_position, quotient
from .rank_metric import GabidulinCode, cover_free_code, lifted_mrd
from .verify import Certificate, find_sunflower, is_maximal, sunflower_kernel, set_like_kernel, verify_nesting

__all__ = [
    "BudgetExceeded",
    "Certificate",
    "ExtFieldSpec",
    "FamilySpec",
    "FamilyTree",
    "FieldSpec",
    "GabidulinCode",
    "ParameterError",
    "Subspace",
    "bound_sandwich",
    "build_family",
    "complement",
    "construct_A",
    "construct_B",
    "construct_G",
    "construct_example1",
    "construct_partite",
    "cover_free_code",
    "enumerate_subspaces",
    "find_irreducible",
    "find_sunflower",
    "floor_sum",
    "gauss_bracket",
    "gaussian",
    "in_general_position",
    "is_maximal",
    "lifted_mrd",
    "params_A",
    "params_B",
    "predicted_sizes",
    "quotient",
    "set_like_kernel",
    "sunflower_kernel",
    "upper_bound",
    "verify_nesting",
]
