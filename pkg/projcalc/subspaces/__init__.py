from .subspaces import (
    Subspace,
    column_space,
    contains,
    is_direct_sum_whole,
    is_orthogonal,
    orth_projector_onto,
    space_intersection,
    space_sum,
    spaces_equal,
    whole_space,
    zero_space,
)

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
