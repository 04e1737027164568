from .linalg import (
    SvdInfo,
    adjoint,
    approx_equal,
    as_float,
    frobenius_norm,
    inverse_float,
    is_invertible_float,
    mp_float,
    null_space_basis,
    numerical_rank,
    orthonormal_basis,
    project_to_nearest_projection,
    svd,
)
from .tolerance import ENV_TOL, ToleranceConfig

__all__ = [
    "ENV_TOL",
    "SvdInfo",
    "ToleranceConfig",
    "adjoint",
    "approx_equal",
    "as_float",
    "frobenius_norm",
    "inverse_float",
    "is_invertible_float",
    "mp_float",
    "null_space_basis",
    "numerical_rank",
    "orthonormal_basis",
    "project_to_nearest_projection",
    "svd",
]
