import numpy as np
import pytest

from projcalc.exceptions import DimensionMismatchError
from projcalc.ring import StarRingContext, is_projection
from projcalc.subspaces import (
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


def span(ctx, *vectors):
    """Column space of the matrix whose first columns are ``vectors``."""
    m = np.zeros((ctx.dimension, ctx.dimension), dtype=object)
    m.fill(0)
    for i, v in enumerate(vectors):
        m[:, i] = v
    if not ctx.is_exact:
        m = m.astype(np.complex128)
    return column_space(ctx.element(m))


@pytest.fixture(params=["exact", "float"])
def ctx3(request):
    return StarRingContext(request.param, 3)


class TestColumnSpace:
    def test_rank(self):
        ctx = StarRingContext("exact", 2)

        assert column_space(ctx.element([[1, 2], [2, 4]])).rank == 1
        assert column_space(ctx.zero).is_zero
        assert column_space(ctx.one).is_whole

    def test_float_rank(self):
        ctx = StarRingContext("float", 2)
        u = column_space(ctx.element([[1, 2], [2, 4]]))

        assert u.rank == 1
        assert not u.marginal

    def test_read_only(self):
        u = column_space(StarRingContext("float", 2).one)

        with pytest.raises(ValueError):
            u.basis[0, 0] = 2

    def test_basis_shape(self):
        ctx = StarRingContext("float", 3)

        with pytest.raises(DimensionMismatchError):
            Subspace(ctx, np.zeros((2, 1)))


class TestSumAndIntersection:
    def test_intersection(self, ctx3):
        u = span(ctx3, [1, 0, 0], [0, 1, 0])
        v = span(ctx3, [0, 1, 0], [0, 0, 1])
        meet = space_intersection(u, v)

        assert meet.rank == 1
        assert spaces_equal(meet, span(ctx3, [0, 1, 0]))

    def test_sum(self, ctx3):
        u = span(ctx3, [1, 0, 0], [0, 1, 0])
        v = span(ctx3, [0, 1, 0], [0, 0, 1])

        assert space_sum(u, v).is_whole
        assert spaces_equal(space_sum(u, u), u)

    def test_zero(self, ctx3):
        u = span(ctx3, [1, 1, 0])
        zero = zero_space(ctx3)

        assert space_intersection(u, zero).is_zero
        assert spaces_equal(space_sum(zero, u), u)
        assert spaces_equal(space_intersection(u, whole_space(ctx3)), u)

    def test_dimension_formula(self, ctx3):
        """dim(U + V) + dim(U ∩ V) = dim U + dim V"""
        u = span(ctx3, [1, 1, 0], [0, 1, 1])
        v = span(ctx3, [1, 2, 1], [1, 0, 0])

        total = space_sum(u, v).rank + space_intersection(u, v).rank
        assert total == u.rank + v.rank
        assert space_intersection(u, v).rank == 1

    def test_ambient_mismatch(self):
        u = whole_space(StarRingContext("exact", 2))
        v = whole_space(StarRingContext("exact", 3))

        with pytest.raises(DimensionMismatchError):
            space_sum(u, v)
        with pytest.raises(DimensionMismatchError):
            space_intersection(u, v)


class TestRelations:
    def test_contains(self, ctx3):
        u = span(ctx3, [1, 0, 0], [0, 1, 0])
        v = span(ctx3, [1, 1, 0])

        assert contains(u, v)
        assert not contains(v, u)
        assert contains(v, zero_space(ctx3))

    def test_direct_sum_not_orthogonal(self):
        ctx = StarRingContext("exact", 2)
        u = span(ctx, [1, 0])
        v = span(ctx, [1, 1])

        assert is_direct_sum_whole(u, v)
        assert not is_orthogonal(u, v)

    def test_orthogonal(self, ctx3):
        u = span(ctx3, [1, 1, 0])
        v = span(ctx3, [1, -1, 0], [0, 0, 1])

        assert is_orthogonal(u, v)
        assert is_direct_sum_whole(u, v)
        assert not is_direct_sum_whole(u, u)


class TestOrthProjector:
    def test_diagonal_span(self):
        ctx = StarRingContext("exact", 2)
        p = orth_projector_onto(span(ctx, [1, 1]))

        assert ctx.equal(p, ctx.element([["1/2", "1/2"], ["1/2", "1/2"]]))

    def test_projection(self, ctx3):
        u = span(ctx3, [1, 1, 0], [0, 1, 1])
        p = orth_projector_onto(u)

        assert is_projection(p)
        assert spaces_equal(column_space(p), u)

    def test_independent_of_basis(self, ctx3):
        u = span(ctx3, [1, 1, 0], [0, 1, 1])
        v = span(ctx3, [1, 2, 1], [1, 0, -1])

        assert spaces_equal(u, v)
        assert ctx3.equal(orth_projector_onto(u), orth_projector_onto(v))

    def test_extremes(self, ctx3):
        assert ctx3.equal(orth_projector_onto(zero_space(ctx3)), ctx3.zero)
        assert ctx3.equal(orth_projector_onto(whole_space(ctx3)), ctx3.one)
