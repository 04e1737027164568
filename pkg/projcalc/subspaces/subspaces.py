"""Basis arithmetic on column spaces.

This module is the ground truth for every range claim. It works on
bases only and never calls :func:`projcalc.ring.mp_inverse` or anything
from :mod:`projcalc.pairs`.

Exact subspaces are spanned by pivot columns found with
:func:`projcalc.exact.rref`. Float subspaces carry an orthonormal basis
from an SVD with the same cutoff rule as :func:`projcalc.numeric.mp_float`,
including the reference norm of the ring.
"""

from dataclasses import dataclass, field

import numpy as np

from projcalc import exact, numeric
from projcalc.exceptions import DimensionMismatchError
from projcalc.ring import RingElement, StarRingContext

__all__ = [
    "Subspace",
    "column_space",
    "contains",
    "is_direct_sum_whole",
    "is_orthogonal",
    "orth_projector_onto",
    "space_intersection",
    "space_sum",
    "spaces_equal",
    "whole_space",
    "zero_space",
]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ``K^n`` given by a basis.

    Attributes
    ----------
    context : StarRingContext
        Fixes the ambient dimension, backend and tolerance.
    basis : np.ndarray
        ``n x rank`` matrix with linearly independent columns
        (orthonormal in the float backend).
    marginal : bool
        Some rank decision on the way to this basis was close to the
        cutoff.
    """

    context: StarRingContext
    basis: np.ndarray = field(repr=False)
    marginal: bool = False

    def __post_init__(self):
        if self.basis.ndim != 2 or self.basis.shape[0] != self.context.dimension:
            raise DimensionMismatchError(
                f"Basis of shape {self.basis.shape} does not live in dimension "
                f"{self.context.dimension}."
            )
        self.basis.flags.writeable = False

    @property
    def ambient_dim(self) -> int:
        return self.context.dimension

    @property
    def rank(self) -> int:
        return self.basis.shape[1]

    @property
    def is_zero(self) -> bool:
        return self.rank == 0

    @property
    def is_whole(self) -> bool:
        return self.rank == self.ambient_dim

    def __repr__(self) -> str:
        return (
            f"Subspace(rank={self.rank}, n={self.ambient_dim}, "
            f"{self.context.backend_kind.value}"
            f"{', marginal' if self.marginal else ''})"
        )


def _span(ctx: StarRingContext, vectors: np.ndarray, marginal: bool = False):
    """Basis of the span of the columns of ``vectors``."""
    if ctx.is_exact:
        _, pivots, _ = exact.rref(vectors)
        basis = np.array(vectors[:, pivots], dtype=object)
        return Subspace(ctx, basis, marginal)

    basis, near = numeric.orthonormal_basis(vectors, ctx.tolerance, ctx.reference_norm)
    return Subspace(ctx, basis, marginal or near)


def _check_ambient(u: Subspace, v: Subspace) -> StarRingContext:
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatchError(
            f"Subspaces live in dimensions {u.ambient_dim} and {v.ambient_dim}."
        )
    u.context.check_compatible(v.context)
    return u.context


def zero_space(ctx: StarRingContext, marginal: bool = False) -> Subspace:
    if ctx.is_exact:
        return Subspace(ctx, exact.exact_zeros(ctx.dimension, 0), marginal)
    return Subspace(ctx, np.zeros((ctx.dimension, 0), dtype=np.complex128), marginal)


def whole_space(ctx: StarRingContext) -> Subspace:
    return Subspace(ctx, ctx.one.to_array())


def column_space(m: RingElement) -> Subspace:
    """The right ideal ``mR``, i.e. the column space of ``m``.

    Examples
    --------
    >>> ctx = StarRingContext("exact", 2)
    >>> column_space(ctx.element([[1, 2], [2, 4]])).rank
    1
    """
    return _span(m.context, m.to_array())


def space_sum(u: Subspace, v: Subspace) -> Subspace:
    """``U + V`` as the span of both bases."""
    ctx = _check_ambient(u, v)
    marginal = u.marginal or v.marginal
    if u.is_zero:
        return Subspace(ctx, np.array(v.basis, copy=True), marginal)
    if v.is_zero:
        return Subspace(ctx, np.array(u.basis, copy=True), marginal)
    return _span(ctx, np.hstack((u.basis, v.basis)), marginal)


def space_intersection(u: Subspace, v: Subspace) -> Subspace:
    """``U ∩ V`` from the kernel of ``[B_U | -B_V]``.

    A kernel vector ``(x, y)`` gives ``B_U x = B_V y``, so the
    intersection is spanned by ``B_U`` applied to the top blocks.
    """
    ctx = _check_ambient(u, v)
    marginal = u.marginal or v.marginal
    if u.is_zero or v.is_zero:
        return zero_space(ctx, marginal)

    stacked = np.hstack((u.basis, -v.basis))
    if ctx.is_exact:
        kernel = exact.nullspace_exact(stacked.astype(object))
        vectors = exact.matmul(u.basis, np.array(kernel[: u.rank], dtype=object))
    else:
        kernel, near = numeric.null_space_basis(
            stacked, ctx.tolerance, ctx.reference_norm
        )
        marginal = marginal or near
        vectors = u.basis @ kernel[: u.rank]

    if vectors.shape[1] == 0:
        return zero_space(ctx, marginal)
    return _span(ctx, vectors, marginal)


def contains(u: Subspace, v: Subspace) -> bool:
    """``V ⊆ U``."""
    _check_ambient(u, v)
    if v.is_zero:
        return True
    return space_sum(u, v).rank == u.rank


def spaces_equal(u: Subspace, v: Subspace) -> bool:
    """Mutual containment, decided by ranks."""
    _check_ambient(u, v)
    return u.rank == v.rank and contains(u, v)


def is_orthogonal(u: Subspace, v: Subspace) -> bool:
    """``U ⊥ V``: the cross-Gram matrix ``B_V^* B_U`` vanishes.

    Float bases are orthonormal, so the test is
    ``|B_V^* B_U|_F <= abs_tol + rel_tol * sqrt(rank U * rank V)``.
    """
    ctx = _check_ambient(u, v)
    if u.is_zero or v.is_zero:
        return True

    if ctx.is_exact:
        return exact.is_zero(exact.matmul(exact.adjoint(v.basis), u.basis))

    tol = ctx.tolerance
    cross = numeric.frobenius_norm(numeric.adjoint(v.basis) @ u.basis)
    return cross <= tol.equality_abs_tol + tol.equality_rel_tol * np.sqrt(
        u.rank * v.rank
    )


def is_direct_sum_whole(u: Subspace, v: Subspace) -> bool:
    """``U ⊕ V = K^n``, orthogonality not required."""
    ctx = _check_ambient(u, v)
    return u.rank + v.rank == ctx.dimension and space_intersection(u, v).is_zero


def orth_projector_onto(u: Subspace) -> RingElement:
    """The unique projection ``p`` with ``pR = U``.

    Exact: ``B (B^* B)^{-1} B^*``. Float: ``Q Q^*`` for the orthonormal
    basis ``Q``, symmetrized.
    """
    ctx = u.context
    if ctx.is_exact:
        return ctx.element(exact.projector_from_basis(u.basis))

    q = u.basis
    p = q @ numeric.adjoint(q)
    return ctx.element((p + numeric.adjoint(p)) / 2)
