"""Dense matrices over the Gaussian rationals.

Matrices are numpy arrays of ``dtype=object`` whose entries are ``QQ_I``
elements. numpy takes care of slicing, stacking and ``@``; elimination
(rref, inverse, kernel) runs on sympy's :class:`DomainMatrix` over
``QQ_I``.
"""

from fractions import Fraction

import numpy as np
from numpy.typing import ArrayLike
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from projcalc.exceptions import SingularMatrixError

from .gaussian import QQ_I, GaussianRational, abs2, conjugate, gaussian, parse_gaussian

__all__ = [
    "ExactMatrix",
    "adjoint",
    "as_exact",
    "exact_identity",
    "exact_zeros",
    "frobenius_norm2",
    "from_domain_matrix",
    "inverse_exact",
    "is_zero",
    "matmul",
    "mp_exact",
    "nullspace_exact",
    "projector_from_basis",
    "rank_factorize",
    "rref",
    "to_domain_matrix",
]

ExactMatrix = np.ndarray

_to_gaussian = np.frompyfunc(
    lambda x: x if isinstance(x, GaussianRational) else _coerce_scalar(x), 1, 1
)
_conj = np.frompyfunc(conjugate, 1, 1)


def _coerce_scalar(x) -> GaussianRational:
    if isinstance(x, str):
        return parse_gaussian(x)
    if isinstance(x, complex):
        if x.real != int(x.real) or x.imag != int(x.imag):
            raise TypeError(
                f"Complex value {x} has non-integral parts; pass Fractions "
                "or strings to keep the exact backend exact."
            )
        return gaussian(int(x.real), int(x.imag))
    if isinstance(x, float):
        if not x.is_integer():
            raise TypeError(
                f"Float value {x} would lose exactness; pass a Fraction or a string."
            )
        return gaussian(int(x))
    return gaussian(x)


def as_exact(data: ArrayLike) -> ExactMatrix:
    """Converts nested sequences or arrays into an exact matrix.

    Parameters
    ----------
    data : array_like
        Two-dimensional data with entries of type int, Fraction,
        ``QQ_I`` elements, a text form like ``"1/2+-3/4i"``, or
        integral floats/complex numbers.

    Returns
    -------
    ExactMatrix
        Object array of Gaussian rationals.
    """
    arr = np.array(data, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"Expected a two-dimensional matrix, got ndim={arr.ndim}.")
    if arr.size == 0:
        return np.empty(arr.shape, dtype=object)
    return _to_gaussian(arr).astype(object)


def to_domain_matrix(m: ExactMatrix) -> DomainMatrix:
    return DomainMatrix([list(row) for row in m], m.shape, QQ_I)


def from_domain_matrix(dm: DomainMatrix) -> ExactMatrix:
    out = np.empty(dm.shape, dtype=object)
    for i, row in enumerate(dm.to_list()):
        out[i, :] = row
    return out


def exact_zeros(rows: int, cols: int) -> ExactMatrix:
    out = np.empty((rows, cols), dtype=object)
    out.fill(QQ_I.zero)
    return out


def exact_identity(n: int) -> ExactMatrix:
    out = exact_zeros(n, n)
    for i in range(n):
        out[i, i] = QQ_I.one
    return out


def adjoint(m: ExactMatrix) -> ExactMatrix:
    """Conjugate transpose, the involution of the exact ring."""
    if m.size == 0:
        return np.empty(m.shape[::-1], dtype=object)
    return _conj(m).T.astype(object)


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Exact product; handles empty inner dimensions explicitly."""
    if a.shape[1] == 0:
        return exact_zeros(a.shape[0], b.shape[1])
    return (a @ b).astype(object)


def is_zero(m: ExactMatrix) -> bool:
    return not any(bool(x) for x in m.flat)


def frobenius_norm2(m: ExactMatrix) -> Fraction:
    """Squared Frobenius norm, exact."""
    return sum((abs2(x) for x in m.flat), Fraction(0))


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int], int]:
    """Reduced row echelon form over Q(i).

    Parameters
    ----------
    m : ExactMatrix
        Matrix to reduce. It is not modified.

    Returns
    -------
    r : ExactMatrix
        The reduced row echelon form.
    pivots : list[int]
        Pivot column indices.
    rank : int
        ``len(pivots)``.
    """
    if m.size == 0:
        return np.array(m, dtype=object, copy=True), [], 0

    r, pivots = to_domain_matrix(m).rref()
    return from_domain_matrix(r), list(pivots), len(pivots)


def rank_factorize(m: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """Full-rank factorization ``m = F @ G``.

    ``F`` holds the pivot columns of ``m`` (full column rank) and ``G``
    the nonzero rows of ``rref(m)`` (full row rank). For ``m = 0`` both
    factors are empty.

    Returns
    -------
    F : ExactMatrix
        ``rows x r`` matrix.
    G : ExactMatrix
        ``r x cols`` matrix.
    """
    r, pivots, rank = rref(m)
    return np.array(m[:, pivots], dtype=object), np.array(r[:rank, :], dtype=object)


def inverse_exact(m: ExactMatrix) -> ExactMatrix:
    """Inverse over Q(i).

    Raises
    ------
    SingularMatrixError
        If ``m`` is singular.
    """
    rows, cols = m.shape
    if rows != cols:
        raise ValueError(f"Matrix is not square (shape = {m.shape}).")
    if rows == 0:
        return np.empty((0, 0), dtype=object)

    try:
        inv = to_domain_matrix(m).inv()
    except DMNonInvertibleMatrixError as e:
        raise SingularMatrixError(f"The {rows}x{rows} exact matrix is singular.") from e
    return from_domain_matrix(inv)


def mp_exact(m: ExactMatrix) -> ExactMatrix:
    """Exact Moore-Penrose inverse.

    Uses the rank factorization ``m = F G`` and
    ``m^+ = G^* (G G^*)^{-1} (F^* F)^{-1} F^*``. Both Gram matrices are
    invertible because the factors have full rank.

    Parameters
    ----------
    m : ExactMatrix
        Any matrix over Q(i).

    Returns
    -------
    ExactMatrix
        The MP inverse, shape ``m.shape[::-1]``.
    """
    f, g = rank_factorize(m)
    if f.shape[1] == 0:
        return exact_zeros(m.shape[1], m.shape[0])

    fs, gs = adjoint(f), adjoint(g)
    try:
        gram_g = inverse_exact(matmul(g, gs))
        gram_f = inverse_exact(matmul(fs, f))
    except SingularMatrixError as e:
        raise AssertionError("Gram matrix of a full-rank factor is singular.") from e

    return matmul(matmul(matmul(gs, gram_g), gram_f), fs)


def nullspace_exact(m: ExactMatrix) -> ExactMatrix:
    """Basis of the kernel of ``m``, one vector per free column.

    Each basis vector is scaled so that its free coordinate is one.

    Returns
    -------
    ExactMatrix
        ``cols x k`` matrix whose columns span ``ker(m)``.
    """
    rows, cols = m.shape
    if rows == 0:
        return exact_identity(cols)
    if cols == 0:
        return exact_zeros(0, 0)

    kernel = to_domain_matrix(m).nullspace(divide_last=True)
    if kernel.shape[0] == 0:
        return exact_zeros(cols, 0)
    return from_domain_matrix(kernel.transpose())


def projector_from_basis(b: ExactMatrix) -> ExactMatrix:
    """Orthogonal projector ``B (B^* B)^{-1} B^*`` onto the columns of ``b``.

    ``b`` must have full column rank; an empty basis yields the zero matrix.
    """
    n, k = b.shape
    if k == 0:
        return exact_zeros(n, n)

    bs = adjoint(b)
    return matmul(matmul(b, inverse_exact(matmul(bs, b))), bs)
