from .backends import Backend, BackendKind, ExactBackend, FloatBackend, get_backend
from .ring import (
    MpWitness,
    PenroseFailure,
    RingElement,
    StarRingContext,
    check_involution,
    check_star_reducing,
    is_idempotent,
    is_projection,
    is_self_adjoint,
    mp_inverse,
    penrose_check,
)

__all__ = [
    "Backend",
    "BackendKind",
    "ExactBackend",
    "FloatBackend",
    "MpWitness",
    "PenroseFailure",
    "RingElement",
    "StarRingContext",
    "check_involution",
    "check_star_reducing",
    "get_backend",
    "is_idempotent",
    "is_projection",
    "is_self_adjoint",
    "mp_inverse",
    "penrose_check",
]
