"""Exceptions raised by projcalc.

Every error derives from :class:`ProjcalcError` and from the builtin
exception a caller would naturally catch, so ``except ValueError`` keeps
working for input validation problems.
"""

__all__ = [
    "AmbiguousSpectrumError",
    "BackendMismatchError",
    "ConfigError",
    "DecompositionError",
    "DimensionMismatchError",
    "MatrixFormatError",
    "MpInverseNotFoundError",
    "NearCutoffWarning",
    "NotAProjectionError",
    "NotIdempotentError",
    "ProjcalcError",
    "ProjectionDriftError",
    "SingularMatrixError",
    "UnknownStatementError",
]


class ProjcalcError(Exception):
    """Base class of all projcalc errors."""


class DimensionMismatchError(ProjcalcError, ValueError):
    """Operands live in rings (or ambient spaces) of different dimension."""


class BackendMismatchError(ProjcalcError, TypeError):
    """Operands belong to different backends (exact vs. float)."""


class NotAProjectionError(ProjcalcError, ValueError):
    """An element expected to be a projection is not self-adjoint idempotent."""


class ProjectionDriftError(NotAProjectionError):
    """A constructed projection drifted beyond the equality tolerance."""


class NotIdempotentError(ProjcalcError, ValueError):
    """An element expected to be idempotent is not."""


class AmbiguousSpectrumError(ProjcalcError, ValueError):
    """A spectrum cannot be snapped to {0, 1} without guessing."""


class MpInverseNotFoundError(ProjcalcError, ArithmeticError):
    """The element has no Moore-Penrose inverse in the ring.

    Matrix backends never raise this, every square matrix over a field
    has an MP inverse. It is part of the ring contract nonetheless.
    """


class DecompositionError(ProjcalcError, ArithmeticError):
    """A numerical decomposition (SVD, eigendecomposition) did not converge."""


class SingularMatrixError(ProjcalcError, ZeroDivisionError):
    """A true inverse was requested for a singular element."""


class UnknownStatementError(ProjcalcError, KeyError):
    """A statement identifier is not in the verification registry."""


class ConfigError(ProjcalcError, ValueError):
    """A campaign configuration failed validation."""


class MatrixFormatError(ProjcalcError, ValueError):
    """A matrix or pair file does not follow the projcalc/1 format."""


class NearCutoffWarning(UserWarning):
    """A numerical rank decision depends on the tolerance settings."""
