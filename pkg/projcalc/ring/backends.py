"""Concrete scalar disciplines behind a :class:`StarRingContext`."""

from abc import ABC, abstractmethod
from enum import Enum
from fractions import Fraction

import numpy as np

from projcalc import exact, numeric
from projcalc.numeric import ToleranceConfig

__all__ = ["Backend", "BackendKind", "ExactBackend", "FloatBackend", "get_backend"]


class BackendKind(str, Enum):
    EXACT = "exact"
    FLOAT = "float"


class Backend(ABC):
    """Primitive operations on ``n x n`` arrays of one scalar type."""

    kind: BackendKind

    @abstractmethod
    def coerce(self, data) -> np.ndarray: ...

    @abstractmethod
    def identity(self, n: int) -> np.ndarray: ...

    @abstractmethod
    def zeros(self, n: int) -> np.ndarray: ...

    @abstractmethod
    def adjoint(self, x: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def matmul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def scale(self, x: np.ndarray, scalar) -> np.ndarray: ...

    @abstractmethod
    def residual(self, x: np.ndarray, y: np.ndarray) -> float:
        """Frobenius norm of ``x - y``."""

    @abstractmethod
    def equal(self, x: np.ndarray, y: np.ndarray, tol: ToleranceConfig, ref=None):
        """Equality test; ``ref`` is the reference norm of the ring."""

    @abstractmethod
    def mp_inverse(self, x: np.ndarray, tol: ToleranceConfig, ref=None):
        """MP inverse and its :class:`~projcalc.numeric.SvdInfo` (``None`` if exact)."""

    @abstractmethod
    def rank(self, x: np.ndarray, tol: ToleranceConfig, ref=None) -> tuple[int, bool]:
        """Rank and whether the decision is marginal."""

    @abstractmethod
    def inverse(self, x: np.ndarray, tol: ToleranceConfig, ref=None) -> np.ndarray: ...

    def add(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return x + y

    def sub(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return x - y


class ExactBackend(Backend):
    """Literal arithmetic in Q(i); tolerances are ignored."""

    kind = BackendKind.EXACT

    def coerce(self, data) -> np.ndarray:
        return exact.as_exact(data)

    def identity(self, n: int) -> np.ndarray:
        return exact.exact_identity(n)

    def zeros(self, n: int) -> np.ndarray:
        return exact.exact_zeros(n, n)

    def adjoint(self, x):
        return exact.adjoint(x)

    def matmul(self, x, y):
        return exact.matmul(x, y)

    def scale(self, x, scalar):
        if isinstance(scalar, (float, complex)):
            raise TypeError(
                f"Scalar {scalar!r} is not exact; "
                "use int, Fraction or GaussianRational."
            )
        scalar = exact.gaussian(scalar)
        return (x * scalar).astype(object)

    def add(self, x, y):
        return (x + y).astype(object)

    def sub(self, x, y):
        return (x - y).astype(object)

    def residual(self, x, y) -> float:
        return float(exact.frobenius_norm2(self.sub(x, y))) ** 0.5

    def equal(self, x, y, tol, ref=None) -> bool:
        return exact.is_zero(self.sub(x, y))

    def mp_inverse(self, x, tol, ref=None):
        return exact.mp_exact(x), None

    def rank(self, x, tol, ref=None):
        return exact.rref(x)[2], False

    def inverse(self, x, tol, ref=None):
        return exact.inverse_exact(x)


class FloatBackend(Backend):
    """Complex double precision with the :class:`ToleranceConfig` policy."""

    kind = BackendKind.FLOAT

    def coerce(self, data) -> np.ndarray:
        if isinstance(data, np.ndarray) and data.dtype == object:
            data = np.vectorize(exact.to_complex, otypes=[np.complex128])(data)
        return numeric.as_float(data).copy()

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.complex128)

    def zeros(self, n: int) -> np.ndarray:
        return np.zeros((n, n), dtype=np.complex128)

    def adjoint(self, x):
        return numeric.adjoint(x)

    def matmul(self, x, y):
        return x @ y

    def scale(self, x, scalar):
        if isinstance(scalar, (Fraction, exact.GaussianRational)):
            scalar = exact.to_complex(scalar)
        return x * scalar

    def residual(self, x, y) -> float:
        return numeric.frobenius_norm(x - y)

    def equal(self, x, y, tol, ref=None) -> bool:
        return numeric.approx_equal(x, y, tol, reference_norm=ref)

    def mp_inverse(self, x, tol, ref=None):
        return numeric.mp_float(x, tol, return_info=True, reference_norm=ref)

    def rank(self, x, tol, ref=None):
        return numeric.numerical_rank(x, tol, reference_norm=ref)

    def inverse(self, x, tol, ref=None):
        return numeric.inverse_float(x, tol, reference_norm=ref)


_BACKENDS = {
    BackendKind.EXACT: ExactBackend(),
    BackendKind.FLOAT: FloatBackend(),
}


def get_backend(kind: BackendKind | str) -> Backend:
    return _BACKENDS[BackendKind(kind)]
