"""The *-ring contract and the Moore-Penrose axioms.

A :class:`StarRingContext` fixes the ring ``M_n(K)`` (``K`` either the
Gaussian rationals or complex doubles) and owns its equality test.
:class:`RingElement` values are immutable; every operation below is a
pure function.
"""

import warnings
from dataclasses import dataclass, field, replace
from functools import cached_property
from numbers import Number

import numpy as np
from numpy.typing import ArrayLike

from projcalc.exact import GaussianRational
from projcalc.exceptions import (
    BackendMismatchError,
    DimensionMismatchError,
    NearCutoffWarning,
    SingularMatrixError,
)
from projcalc.numeric import ToleranceConfig

from .backends import Backend, BackendKind, get_backend

__all__ = [
    "MpWitness",
    "PenroseFailure",
    "RingElement",
    "StarRingContext",
    "check_involution",
    "check_star_reducing",
    "is_idempotent",
    "is_projection",
    "is_self_adjoint",
    "mp_inverse",
    "penrose_check",
]

_SCALARS = (Number, GaussianRational)


@dataclass(frozen=True)
class StarRingContext:
    """The ring of ``dimension x dimension`` matrices over one backend.

    Parameters
    ----------
    backend_kind : BackendKind or str
        ``'exact'`` (Gaussian rationals) or ``'float'`` (complex doubles).
    dimension : int
        Matrix size ``n``, at least 1.
    tolerance : ToleranceConfig, optional
        Equality and rank policy, ignored by the exact backend.
    reference_norm : float, optional
        Frobenius scale of the inputs the ring elements are built from.
        If set, float equality tests accept errors relative to it and
        rank decisions drop singular values below
        ``rank_noise_floor * reference_norm``. Default: ``None``
    """

    backend_kind: BackendKind
    dimension: int
    tolerance: ToleranceConfig = field(default_factory=ToleranceConfig)
    reference_norm: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "backend_kind", BackendKind(self.backend_kind))
        if not isinstance(self.dimension, (int, np.integer)) or self.dimension < 1:
            raise ValueError(
                f"Ring dimension must be a positive integer, got {self.dimension!r}."
            )
        object.__setattr__(self, "dimension", int(self.dimension))
        if self.reference_norm is not None:
            if not self.reference_norm > 0:
                raise ValueError(
                    "Reference norm must be strictly positive, "
                    f"got {self.reference_norm!r}."
                )
            object.__setattr__(self, "reference_norm", float(self.reference_norm))

    @property
    def backend(self) -> Backend:
        return get_backend(self.backend_kind)

    @property
    def is_exact(self) -> bool:
        return self.backend_kind is BackendKind.EXACT

    def with_tolerance(self, tolerance: ToleranceConfig) -> "StarRingContext":
        return replace(self, tolerance=tolerance)

    def with_reference_norm(self, reference_norm: float | None) -> "StarRingContext":
        return replace(self, reference_norm=reference_norm)

    def element(self, data: ArrayLike) -> "RingElement":
        """Wraps ``n x n`` data as an element of this ring."""
        return RingElement(self, self.backend.coerce(data))

    @cached_property
    def one(self) -> "RingElement":
        return RingElement(self, self.backend.identity(self.dimension))

    @cached_property
    def zero(self) -> "RingElement":
        return RingElement(self, self.backend.zeros(self.dimension))

    def compatible(self, other: "StarRingContext") -> bool:
        return (
            self.backend_kind is other.backend_kind
            and self.dimension == other.dimension
        )

    def check_compatible(self, other: "StarRingContext") -> None:
        if self.backend_kind is not other.backend_kind:
            raise BackendMismatchError(
                f"Cannot mix a {self.backend_kind.value} element with a "
                f"{other.backend_kind.value} element."
            )
        if self.dimension != other.dimension:
            raise DimensionMismatchError(
                f"Cannot combine elements of dimension {self.dimension} "
                f"and {other.dimension}."
            )

    def equal(self, x: "RingElement", y: "RingElement") -> bool:
        """Literal equality (exact) or Frobenius closeness (float)."""
        self.check_compatible(x.context)
        self.check_compatible(y.context)
        return self.backend.equal(x.data, y.data, self.tolerance, self.reference_norm)

    def residual(self, x: "RingElement", y: "RingElement") -> float:
        """``|x - y|_F``, exactly zero iff ``x == y`` in the exact backend."""
        self.check_compatible(x.context)
        self.check_compatible(y.context)
        return self.backend.residual(x.data, y.data)

    def rank(self, x: "RingElement") -> tuple[int, bool]:
        """Rank of ``x`` and whether the decision is marginal."""
        return self.backend.rank(x.data, self.tolerance, self.reference_norm)

    def is_invertible(self, x: "RingElement") -> tuple[bool, bool]:
        """``x in R^{-1}`` (exact: full rank; float: s_min above the cutoff)."""
        rank, marginal = self.rank(x)
        return rank == self.dimension, marginal

    def inverse(self, x: "RingElement") -> "RingElement":
        """True inverse; raises :class:`SingularMatrixError` otherwise."""
        try:
            inv = self.backend.inverse(x.data, self.tolerance, self.reference_norm)
            return RingElement(self, inv)
        except ZeroDivisionError as e:
            raise SingularMatrixError(str(e)) from e


@dataclass(frozen=True, eq=False)
class RingElement:
    """An element of a :class:`StarRingContext`.

    ``@`` is the ring product, ``+``/``-`` accept other elements or
    integers (read as multiples of the unit, so ``1 - p`` works), and
    ``*`` is scalar multiplication.
    """

    context: StarRingContext
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = self.context.dimension
        if self.data.shape != (n, n):
            raise DimensionMismatchError(
                f"Element of shape {self.data.shape} does not fit a ring of "
                f"dimension {n}."
            )
        self.data.flags.writeable = False

    def _operand(self, other) -> np.ndarray | None:
        if isinstance(other, RingElement):
            self.context.check_compatible(other.context)
            return other.data
        if isinstance(other, _SCALARS) and not isinstance(other, bool):
            return self.context.backend.scale(self.context.one.data, other)
        return None

    def _wrap(self, data: np.ndarray) -> "RingElement":
        return RingElement(self.context, data)

    def __add__(self, other):
        o = self._operand(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.context.backend.add(self.data, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._operand(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.context.backend.sub(self.data, o))

    def __rsub__(self, other):
        o = self._operand(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.context.backend.sub(o, self.data))

    def __neg__(self):
        return self._wrap(self.context.backend.scale(self.data, -1))

    def __matmul__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        self.context.check_compatible(other.context)
        return self._wrap(self.context.backend.matmul(self.data, other.data))

    def __mul__(self, scalar):
        if isinstance(scalar, RingElement):
            raise TypeError("Use '@' for the ring product of two elements.")
        if not isinstance(scalar, _SCALARS):
            return NotImplemented
        return self._wrap(self.context.backend.scale(self.data, scalar))

    __rmul__ = __mul__

    def star(self) -> "RingElement":
        """The involution (conjugate transpose)."""
        return self._wrap(self.context.backend.adjoint(self.data))

    def to_array(self) -> np.ndarray:
        """A writable copy of the underlying matrix."""
        return np.array(self.data, copy=True)

    def __repr__(self) -> str:
        return (
            f"RingElement({self.context.backend_kind.value}, "
            f"n={self.context.dimension})"
        )


def _pair_context(a: RingElement, b: RingElement) -> StarRingContext:
    a.context.check_compatible(b.context)
    return a.context


@dataclass(frozen=True)
class MpWitness:
    """``mp`` satisfies the four Penrose equations for ``element``.

    Attributes
    ----------
    residuals : tuple of float
        ``|aba - a|``, ``|bab - b|``, ``|(ab)^* - ab|``, ``|(ba)^* - ba|``.
    """

    element: RingElement
    mp: RingElement
    residuals: tuple[float, float, float, float]

    ok = True

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class PenroseFailure:
    """Result of a failed :func:`penrose_check`.

    Attributes
    ----------
    failed : tuple of int
        One-based numbers of the Penrose equations that do not hold.
    """

    element: RingElement
    mp: RingElement
    residuals: tuple[float, float, float, float]
    failed: tuple[int, ...]

    ok = False

    def __bool__(self) -> bool:
        return False


def penrose_check(a: RingElement, b: RingElement) -> MpWitness | PenroseFailure:
    """Tests whether ``b`` is the MP inverse of ``a``.

    Parameters
    ----------
    a, b : RingElement
        Elements of the same ring.

    Returns
    -------
    MpWitness or PenroseFailure
        Truthy on success. Both carry the four Frobenius residuals.

    Raises
    ------
    DimensionMismatchError, BackendMismatchError
        If ``a`` and ``b`` live in different rings.
    """
    ctx = _pair_context(a, b)
    ab, ba = a @ b, b @ a

    pairs = (
        (ab @ a, a),
        (ba @ b, b),
        (ab.star(), ab),
        (ba.star(), ba),
    )
    residuals = tuple(ctx.residual(x, y) for x, y in pairs)
    failed = tuple(i + 1 for i, (x, y) in enumerate(pairs) if not ctx.equal(x, y))

    if failed:
        return PenroseFailure(a, b, residuals, failed)
    return MpWitness(a, b, residuals)


def mp_inverse(x: RingElement, return_info: bool = False):
    """The Moore-Penrose inverse ``x^+``.

    Every square matrix over a field has one, so the matrix backends
    always succeed.

    Parameters
    ----------
    x : RingElement
    return_info : bool, optional
        If ``True``, also return the :class:`~projcalc.numeric.SvdInfo`
        of the float backend (``None`` for exact rings). Otherwise a
        :class:`~projcalc.exceptions.NearCutoffWarning` is emitted when
        the rank decision is marginal. Default: ``False``

    Returns
    -------
    x_dag : RingElement
    info : SvdInfo or None
        Only if ``return_info`` is ``True``.

    Raises
    ------
    DecompositionError
        If the SVD of the float backend does not converge.
    """
    ctx = x.context
    pinv, info = ctx.backend.mp_inverse(x.data, ctx.tolerance, ctx.reference_norm)
    x_dag = RingElement(ctx, pinv)

    if return_info:
        return x_dag, info

    if info is not None and info.near_cutoff:
        warnings.warn(
            f"Rank {info.rank} of a dimension {ctx.dimension} element depends on "
            f"the cutoff {info.cutoff:.3e}.",
            NearCutoffWarning,
            stacklevel=2,
        )
    return x_dag


def is_idempotent(x: RingElement) -> bool:
    return x.context.equal(x @ x, x)


def is_self_adjoint(x: RingElement) -> bool:
    return x.context.equal(x.star(), x)


def is_projection(x: RingElement) -> bool:
    """``x^2 = x = x^*`` under the context equality test."""
    return is_idempotent(x) and is_self_adjoint(x)


def check_involution(x: RingElement, y: RingElement) -> bool:
    """``(x^*)^* = x``, ``(x+y)^* = x^*+y^*`` and ``(xy)^* = y^* x^*``."""
    ctx = _pair_context(x, y)
    return (
        ctx.equal(x.star().star(), x)
        and ctx.equal((x + y).star(), x.star() + y.star())
        and ctx.equal((x @ y).star(), y.star() @ x.star())
    )


def check_star_reducing(
    x: RingElement, s: RingElement | None = None, t: RingElement | None = None
) -> bool:
    """Probes the *-reducing implications on a sample.

    Checks ``x^* x = 0 => x = 0`` and, when ``s`` and ``t`` are given,
    the cancellation law ``x^* x s = x^* x t => x s = x t``. The float
    backend reads ``x^* x = 0`` as ``|x^* x|_F <= equality_abs_tol`` and
    then requires ``|x|_F <= sqrt(n * equality_abs_tol)``, which holds in
    exact arithmetic because ``|x|_F^2 <= n |x^* x|_F``.

    Returns
    -------
    bool
        ``True`` if every implication holds on the sample.
    """
    ctx = x.context
    xsx = x.star() @ x

    if ctx.is_exact:
        holds = bool(not ctx.equal(xsx, ctx.zero) or ctx.equal(x, ctx.zero))
    else:
        tol = ctx.tolerance
        small = ctx.residual(xsx, ctx.zero) <= tol.equality_abs_tol
        bound = (ctx.dimension * tol.equality_abs_tol) ** 0.5
        holds = bool(not small or ctx.residual(x, ctx.zero) <= bound)

    if s is not None and t is not None:
        ctx.check_compatible(s.context)
        ctx.check_compatible(t.context)
        if ctx.equal(xsx @ s, xsx @ t):
            holds = holds and ctx.equal(x @ s, x @ t)

    return holds
