from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from projcalc.exact import gaussian
from projcalc.exceptions import (
    BackendMismatchError,
    DimensionMismatchError,
    NearCutoffWarning,
    SingularMatrixError,
)
from projcalc.ring import (
    StarRingContext,
    check_involution,
    check_star_reducing,
    is_idempotent,
    is_projection,
    is_self_adjoint,
    mp_inverse,
    penrose_check,
)

EXACT_DIM = 3


@st.composite
def exact_elements(draw, n=EXACT_DIM):
    """Small Gaussian-integer matrices, including singular ones."""
    parts = draw(
        st.lists(st.integers(-3, 3), min_size=2 * n * n, max_size=2 * n * n)
    )
    entries = [f"{re}+{im}i" for re, im in zip(parts[::2], parts[1::2])]
    rows = [entries[i * n : (i + 1) * n] for i in range(n)]
    return StarRingContext("exact", n).element(rows)


class TestContext:
    def test_invalid_dimension(self):
        with pytest.raises(ValueError):
            StarRingContext("exact", 0)

    def test_unknown_backend(self):
        with pytest.raises(ValueError):
            StarRingContext("quaternion", 2)

    def test_backend_mismatch(self):
        x = StarRingContext("exact", 2).one
        y = StarRingContext("float", 2).one

        with pytest.raises(BackendMismatchError):
            x + y
        with pytest.raises(BackendMismatchError):
            penrose_check(x, y)

    def test_dimension_mismatch(self):
        x = StarRingContext("float", 2).one
        y = StarRingContext("float", 3).one

        with pytest.raises(DimensionMismatchError):
            x @ y

    def test_wrong_shape(self):
        with pytest.raises(DimensionMismatchError):
            StarRingContext("float", 2).element(np.eye(3))

    def test_inverse(self):
        ctx = StarRingContext("exact", 2)
        x = ctx.element([[1, 2], [3, 4]])

        assert ctx.equal(x @ ctx.inverse(x), ctx.one)
        assert ctx.is_invertible(x) == (True, False)

    @pytest.mark.parametrize("backend", ["exact", "float"])
    def test_inverse_singular(self, backend):
        ctx = StarRingContext(backend, 2)
        x = ctx.element([[1, 2], [2, 4]])

        assert not ctx.is_invertible(x)[0]
        with pytest.raises(SingularMatrixError):
            ctx.inverse(x)


class TestElement:
    def setup_class(self):
        self.ctx = StarRingContext("exact", 2)
        self.p = self.ctx.element([[1, 0], [0, 0]])

    def test_unit_arithmetic(self):
        assert self.ctx.equal(1 - self.p, self.ctx.element([[0, 0], [0, 1]]))
        assert self.ctx.equal(self.p + 1, self.ctx.element([[2, 0], [0, 1]]))
        assert self.ctx.equal(-self.p, self.ctx.element([[-1, 0], [0, 0]]))

    def test_scalars(self):
        half = self.p * Fraction(1, 2)

        assert self.ctx.equal(2 * half, self.p)
        with pytest.raises(TypeError):
            self.p * 0.5

    def test_product_requires_matmul(self):
        with pytest.raises(TypeError):
            self.p * self.p

    def test_read_only(self):
        with pytest.raises(ValueError):
            self.p.data[0, 0] = 5

        copy = self.p.to_array()
        copy[0, 0] = 5
        assert self.p.data[0, 0] == gaussian(1)

    def test_input_not_frozen(self):
        data = np.eye(2, dtype=np.complex128)
        StarRingContext("float", 2).element(data)
        data[0, 0] = 3

        assert data[0, 0] == 3

    def test_star(self):
        x = self.ctx.element([[1, "2i"], [0, 3]])

        assert self.ctx.equal(x.star(), self.ctx.element([[1, 0], ["-2i", 3]]))


class TestPredicates:
    def test_projections(self):
        ctx = StarRingContext("exact", 3)

        assert is_projection(ctx.one)
        assert is_projection(ctx.element(np.diag([1, 0, 1])))

    def test_oblique_idempotent(self):
        e = StarRingContext("exact", 2).element([[1, 1], [0, 0]])

        assert is_idempotent(e)
        assert not is_self_adjoint(e)
        assert not is_projection(e)

    def test_not_idempotent(self):
        assert not is_idempotent(2 * StarRingContext("float", 2).one)


class TestPenrose:
    def test_zero(self):
        zero = StarRingContext("exact", 2).zero
        result = penrose_check(zero, zero)

        assert result
        assert result.residuals == (0.0, 0.0, 0.0, 0.0)

    def test_identity(self):
        one = StarRingContext("float", 3).one

        assert penrose_check(one, one).ok

    def test_diagonal(self):
        ctx = StarRingContext("exact", 2)
        result = penrose_check(
            ctx.element([[2, 0], [0, 0]]), ctx.element([["1/2", 0], [0, 0]])
        )

        assert result.ok
        assert max(result.residuals) == 0.0

    def test_failure(self):
        ctx = StarRingContext("exact", 2)
        result = penrose_check(
            ctx.element([[2, 0], [0, 0]]), ctx.element([[1, 0], [0, 0]])
        )

        assert not result
        assert result.failed == (1, 2)


class TestMpInverse:
    def test_zero(self):
        ctx = StarRingContext("exact", 3)

        assert ctx.equal(mp_inverse(ctx.zero), ctx.zero)

    def test_projection(self):
        ctx = StarRingContext("exact", 2)
        p = ctx.element([["1/2", "1/2"], ["1/2", "1/2"]])

        assert ctx.equal(mp_inverse(p), p)

    def test_random_float(self):
        """x^+ = (x^* x)^+ x^*, (x^+)^+ = x and (x^*)^+ = (x^+)^*"""
        rng = np.random.default_rng(1)
        ctx = StarRingContext("float", 5)
        x = ctx.element(
            rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        )
        x_dag = mp_inverse(x)

        assert penrose_check(x, x_dag)
        assert ctx.equal(x_dag, mp_inverse(x.star() @ x) @ x.star())
        assert ctx.equal(mp_inverse(x_dag), x)
        assert ctx.equal(mp_inverse(x.star()), x_dag.star())

    def test_random_rank_deficient_float(self):
        rng = np.random.default_rng(2)
        ctx = StarRingContext("float", 4)
        x = ctx.element(rng.standard_normal((4, 2)) @ rng.standard_normal((2, 4)))

        assert penrose_check(x, mp_inverse(x))
        assert ctx.rank(mp_inverse(x)) == (2, False)

    @pytest.mark.parametrize(
        "data", [1e-11 * np.eye(3), np.diag([5e-11, 5e-11, 1e-11])]
    )
    def test_small_scale_float(self, data):
        ctx = StarRingContext("float", 3)
        x = ctx.element(data)
        x_dag = mp_inverse(x)

        assert penrose_check(x, x_dag)
        assert ctx.rank(x) == (3, False)
        assert ctx.equal(x_dag @ x, ctx.one)

    def test_reference_norm_drops_noise(self):
        ctx = StarRingContext("float", 2).with_reference_norm(1.0)
        x = ctx.element(np.diag([1.0, 5e-11]))

        x_dag, info = mp_inverse(x, return_info=True)
        assert info.rank == 1
        assert ctx.equal(x_dag, ctx.element(np.diag([1.0, 0.0])))

    def test_near_cutoff_info(self):
        ctx = StarRingContext("float", 2)
        x = ctx.element(np.diag([1.0, 5e-12]))

        x_dag, info = mp_inverse(x, return_info=True)
        assert info.near_cutoff
        assert info.rank == 2
        assert penrose_check(x, x_dag)

    def test_near_cutoff_warns(self):
        x = StarRingContext("float", 2).element(np.diag([1.0, 5e-12]))

        with pytest.warns(NearCutoffWarning):
            mp_inverse(x)

    def test_exact_has_no_info(self):
        ctx = StarRingContext("exact", 2)
        x_dag, info = mp_inverse(ctx.element([[2, 0], [0, 0]]), return_info=True)

        assert info is None
        assert ctx.equal(x_dag, ctx.element([["1/2", 0], [0, 0]]))


@seed(1)
@settings(max_examples=40, deadline=None)
@given(x=exact_elements())
def test_exact_mp_properties(x):
    ctx = x.context
    x_dag = mp_inverse(x)

    assert penrose_check(x, x_dag)
    assert ctx.equal(mp_inverse(x_dag), x)
    assert ctx.equal(mp_inverse(x.star()), x_dag.star())
    assert ctx.equal(mp_inverse(x.star() @ x), x_dag @ mp_inverse(x.star()))
    assert ctx.equal(x_dag, x.star() @ mp_inverse(x @ x.star()))


@seed(2)
@settings(max_examples=25, deadline=None)
@given(x=exact_elements())
def test_self_adjoint_commutes_with_mp(x):
    h = x + x.star()
    h_dag = mp_inverse(h)

    assert h.context.equal(h @ h_dag, h_dag @ h)


@seed(3)
@settings(max_examples=25, deadline=None)
@given(x=exact_elements(), s=exact_elements(), t=exact_elements())
def test_involution_and_star_reducing(x, s, t):
    assert check_involution(x, s)
    assert check_star_reducing(x, s, t)


def test_star_reducing_float():
    rng = np.random.default_rng(4)
    ctx = StarRingContext("float", 4)
    for _ in range(20):
        x = ctx.element(rng.standard_normal((4, 4)) * 1e-8)

        assert check_star_reducing(x)
    assert check_star_reducing(ctx.zero)
