"""SVD based kernels of the float backend.

All functions take and return ``complex128`` numpy arrays and never
modify their inputs.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from projcalc.exceptions import (
    AmbiguousSpectrumError,
    DecompositionError,
    DimensionMismatchError,
    NearCutoffWarning,
    NotAProjectionError,
    SingularMatrixError,
)

from .tolerance import ToleranceConfig

__all__ = [
    "SvdInfo",
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

_DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class SvdInfo:
    """Metadata of a thresholded singular value decomposition.

    Attributes
    ----------
    rank : int
        Number of singular values above ``cutoff``.
    cutoff : float
        Threshold that was applied.
    singular_values : np.ndarray
        All singular values in descending order.
    near_cutoff : bool
        ``True`` if some singular value lies within ``near_cutoff_ratio``
        of the cutoff, i.e. the rank depends on the tolerance settings.
    """

    rank: int
    cutoff: float
    singular_values: np.ndarray
    near_cutoff: bool

    @property
    def condition(self) -> float:
        """Ratio of the largest to the smallest nonzero singular value."""
        if self.rank == 0:
            return 1.0
        s = self.singular_values
        return float(s[0] / s[self.rank - 1])


def as_float(data: ArrayLike) -> np.ndarray:
    """Converts input to a finite two-dimensional ``complex128`` array."""
    arr = np.asarray(data, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError(f"Expected a two-dimensional matrix, got ndim={arr.ndim}.")
    if not np.all(np.isfinite(arr)):
        raise ValueError("Matrix contains NaN or Inf entries.")
    return arr


def adjoint(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def frobenius_norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, ord="fro")) if m.size else 0.0


def svd(m: np.ndarray, full_matrices: bool = False):
    """Thin wrapper around :func:`scipy.linalg.svd`.

    Falls back from the divide-and-conquer driver to ``gesvd`` before
    giving up.

    Raises
    ------
    DecompositionError
        If neither LAPACK driver converges.
    """
    try:
        return scipy.linalg.svd(m, full_matrices=full_matrices, check_finite=False)
    except np.linalg.LinAlgError:
        pass

    try:
        return scipy.linalg.svd(
            m, full_matrices=full_matrices, check_finite=False, lapack_driver="gesvd"
        )
    except np.linalg.LinAlgError as e:
        raise DecompositionError(
            f"SVD of a {m.shape[0]}x{m.shape[1]} matrix did not converge."
        ) from e


def _classify(
    s: np.ndarray,
    shape: tuple[int, int],
    tol: ToleranceConfig,
    reference_norm: float | None = None,
) -> SvdInfo:
    sigma_max = float(s[0]) if s.size else 0.0
    cutoff = tol.cutoff(shape, sigma_max, reference_norm)
    rank = int(np.sum(s > cutoff))

    lower, upper = cutoff / tol.near_cutoff_ratio, cutoff * tol.near_cutoff_ratio
    near = bool(np.any((s > lower) & (s <= upper)))

    return SvdInfo(rank=rank, cutoff=cutoff, singular_values=s, near_cutoff=near)


def numerical_rank(
    m: np.ndarray,
    tol: ToleranceConfig | None = None,
    reference_norm: float | None = None,
):
    """Rank under the cutoff rule shared by :func:`mp_float` and the oracle.

    ``reference_norm`` adds the noise floor of
    :meth:`ToleranceConfig.cutoff`.

    Returns
    -------
    rank : int
    marginal : bool
        Whether the decision is tolerance sensitive.
    """
    tol = tol or _DEFAULT_TOL
    if m.size == 0:
        return 0, False
    s = scipy.linalg.svdvals(m, check_finite=False)
    info = _classify(s, m.shape, tol, reference_norm)
    return info.rank, info.near_cutoff


def mp_float(
    m: ArrayLike,
    tol: ToleranceConfig | None = None,
    return_info: bool = False,
    reference_norm: float | None = None,
):
    """Moore-Penrose inverse via a thresholded SVD.

    Parameters
    ----------
    m : array_like
        Finite complex matrix.
    tol : ToleranceConfig, optional
        Rank cutoff policy. Default: ``ToleranceConfig()``
    return_info : bool, optional
        If ``True``, also return the :class:`SvdInfo`. Otherwise a
        :class:`~projcalc.exceptions.NearCutoffWarning` is emitted when
        the rank decision is marginal. Default: ``False``
    reference_norm : float, optional
        Scale of the surrounding computation. Singular values below
        ``rank_noise_floor * reference_norm`` are dropped as noise.
        Default: ``None``, the purely relative cutoff

    Returns
    -------
    pinv : np.ndarray
        The MP inverse, shape ``m.shape[::-1]``.
    info : SvdInfo
        Only if ``return_info`` is ``True``.

    Raises
    ------
    DecompositionError
        If the SVD does not converge.
    """
    tol = tol or _DEFAULT_TOL
    m = as_float(m)

    if m.size == 0:
        pinv = np.zeros(m.shape[::-1], dtype=np.complex128)
        info = SvdInfo(0, 0.0, np.zeros(0), False)
        return (pinv, info) if return_info else pinv

    u, s, vh = svd(m)
    info = _classify(s, m.shape, tol, reference_norm)

    r = info.rank
    pinv = (vh[:r].conj().T / s[:r]) @ u[:, :r].conj().T

    if return_info:
        return pinv, info

    if info.near_cutoff:
        warnings.warn(
            f"Rank {r} of a {m.shape[0]}x{m.shape[1]} matrix depends on the "
            f"cutoff {info.cutoff:.3e}.",
            NearCutoffWarning,
            stacklevel=2,
        )
    return pinv


def approx_equal(
    a: np.ndarray,
    b: np.ndarray,
    tol: ToleranceConfig | None = None,
    reference_norm: float | None = None,
) -> bool:
    """Frobenius equality test ``|A-B| <= abs + rel * max(|A|, |B|)``.

    A ``reference_norm`` joins the maximum, so that two results which
    are both rounding noise on the scale of the inputs compare equal.
    """
    tol = tol or _DEFAULT_TOL
    if a.shape != b.shape:
        raise DimensionMismatchError(
            f"Cannot compare matrices of shapes {a.shape} and {b.shape}."
        )
    scale = max(frobenius_norm(a), frobenius_norm(b))
    return frobenius_norm(a - b) <= tol.equality_bound(scale, reference_norm)


def orthonormal_basis(
    m: np.ndarray,
    tol: ToleranceConfig | None = None,
    reference_norm: float | None = None,
):
    """Orthonormal basis of the column space from the left singular vectors.

    Returns
    -------
    q : np.ndarray
        ``rows x rank`` matrix with orthonormal columns.
    marginal : bool
    """
    tol = tol or _DEFAULT_TOL
    if m.size == 0:
        return np.zeros((m.shape[0], 0), dtype=np.complex128), False

    u, s, _ = svd(m)
    info = _classify(s, m.shape, tol, reference_norm)
    return u[:, : info.rank].copy(), info.near_cutoff


def null_space_basis(
    m: np.ndarray,
    tol: ToleranceConfig | None = None,
    reference_norm: float | None = None,
):
    """Orthonormal basis of ``ker(m)`` from the right singular vectors.

    Returns
    -------
    k : np.ndarray
        ``cols x (cols - rank)`` matrix.
    marginal : bool
    """
    tol = tol or _DEFAULT_TOL
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return np.eye(cols, dtype=np.complex128), False

    _, s, vh = svd(m, full_matrices=True)
    info = _classify(s, m.shape, tol, reference_norm)
    return vh[info.rank :].conj().T.copy(), info.near_cutoff


def is_invertible_float(
    m: np.ndarray,
    tol: ToleranceConfig | None = None,
    reference_norm: float | None = None,
):
    """Invertibility as ``s_min > cutoff``.

    Returns
    -------
    invertible : bool
    marginal : bool
    """
    rank, marginal = numerical_rank(m, tol, reference_norm)
    return rank == m.shape[0] == m.shape[1], marginal


def inverse_float(
    m: np.ndarray,
    tol: ToleranceConfig | None = None,
    reference_norm: float | None = None,
) -> np.ndarray:
    """True inverse; refuses numerically singular input.

    Raises
    ------
    SingularMatrixError
        If the smallest singular value is at or below the cutoff.
    """
    invertible, _ = is_invertible_float(m, tol, reference_norm)
    if not invertible:
        raise SingularMatrixError(
            f"The {m.shape[0]}x{m.shape[1]} matrix is numerically singular."
        )
    return scipy.linalg.inv(m, check_finite=False)


def project_to_nearest_projection(
    m: ArrayLike, tol: ToleranceConfig | None = None
) -> np.ndarray:
    """Rounds an almost-projection to the nearest orthogonal projector.

    The Hermitian part ``(M + M^*)/2`` is diagonalized and its
    eigenvalues are snapped to 0 or 1.

    Parameters
    ----------
    m : array_like
        Square matrix that should be close to a projection.
    tol : ToleranceConfig, optional

    Returns
    -------
    np.ndarray
        An orthogonal projector.

    Raises
    ------
    NotAProjectionError
        If ``m`` is not square or far from self-adjoint.
    AmbiguousSpectrumError
        If an eigenvalue is within 0.1 of 1/2.
    """
    tol = tol or _DEFAULT_TOL
    m = as_float(m)
    if m.shape[0] != m.shape[1]:
        raise NotAProjectionError(f"A projection must be square, got shape {m.shape}.")

    herm = (m + adjoint(m)) / 2
    scale = max(frobenius_norm(m), 1.0)
    if frobenius_norm(m - herm) > 1e-6 * scale:
        raise NotAProjectionError(
            "Matrix is not approximately self-adjoint; refusing to snap it."
        )

    try:
        w, v = scipy.linalg.eigh(herm, check_finite=False)
    except np.linalg.LinAlgError as e:
        raise DecompositionError(
            "Hermitian eigendecomposition did not converge."
        ) from e

    if np.any(np.abs(w - 0.5) < 0.1):
        raise AmbiguousSpectrumError(
            f"Eigenvalues {w[np.abs(w - 0.5) < 0.1]} are too close to 1/2 to decide."
        )

    keep = v[:, w > 0.5]
    p = keep @ adjoint(keep)
    return (p + adjoint(p)) / 2
