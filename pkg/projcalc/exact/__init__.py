from .gaussian import (
    QQ_I,
    GaussianRational,
    abs2,
    conjugate,
    format_gaussian,
    gaussian,
    imag_part,
    parse_gaussian,
    real_part,
    to_complex,
)
from .matrices import (
    ExactMatrix,
    adjoint,
    as_exact,
    exact_identity,
    exact_zeros,
    frobenius_norm2,
    from_domain_matrix,
    inverse_exact,
    is_zero,
    matmul,
    mp_exact,
    nullspace_exact,
    projector_from_basis,
    rank_factorize,
    rref,
    to_domain_matrix,
)

__all__ = [
    "QQ_I",
    "ExactMatrix",
    "GaussianRational",
    "abs2",
    "adjoint",
    "as_exact",
    "conjugate",
    "exact_identity",
    "exact_zeros",
    "format_gaussian",
    "from_domain_matrix",
    "frobenius_norm2",
    "gaussian",
    "imag_part",
    "inverse_exact",
    "is_zero",
    "matmul",
    "mp_exact",
    "nullspace_exact",
    "parse_gaussian",
    "projector_from_basis",
    "rank_factorize",
    "real_part",
    "rref",
    "to_complex",
    "to_domain_matrix",
]
