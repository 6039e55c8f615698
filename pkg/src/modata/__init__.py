"""Exact modular-data toolkit: cyclotomic arithmetic, S/T matrices,
Galois and congruence checks, fractional modular matrices, and cyclic
permutation-orbifold sector data."""

from .cyclo import (
    CycloNum,
    coerce,
    conjugate,
    cyclo_from_obj,
    embed_complex,
    euler_phi,
    field_arithmetic,
    galois_apply,
    make,
    minimal_order,
    root_of_unity_exp,
    sqrt_nonneg_rational,
)

__version__ = "0.1.0"

from .modular_data import ModularData, builtin_model  # noqa: E402

__all__ = [
    "CycloNum",
    "ModularData",
    "builtin_model",
    "coerce",
    "conjugate",
    "cyclo_from_obj",
    "embed_complex",
    "euler_phi",
    "field_arithmetic",
    "galois_apply",
    "make",
    "minimal_order",
    "root_of_unity_exp",
    "sqrt_nonneg_rational",
    "__version__",
]
