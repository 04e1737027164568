import numpy as np
import pytest

from projcalc.exact import (
    QQ_I,
    adjoint,
    as_exact,
    exact_identity,
    exact_zeros,
    frobenius_norm2,
    from_domain_matrix,
    gaussian,
    inverse_exact,
    matmul,
    mp_exact,
    nullspace_exact,
    projector_from_basis,
    rank_factorize,
    rref,
    to_domain_matrix,
)
from projcalc.exceptions import SingularMatrixError


def assert_exact_equal(a, b):
    assert a.shape == b.shape
    assert all(x == y for x, y in zip(a.flat, b.flat))


class TestConversion:
    def test_mixed_inputs(self):
        m = as_exact([[1, "1/2"], [gaussian(0, 1), "2+-1/3i"]])

        assert m.dtype == object
        assert m[0, 1] == gaussian("1/2")
        assert m[1, 1] == gaussian(2, "-1/3")

    def test_integral_floats_accepted(self):
        assert_exact_equal(as_exact([[1.0, 2 + 0j]]), as_exact([[1, 2]]))

    def test_inexact_floats_rejected(self):
        with pytest.raises(TypeError):
            as_exact([[0.5, 0]])

    def test_ndim(self):
        with pytest.raises(ValueError):
            as_exact([1, 2, 3])

    def test_adjoint(self):
        m = as_exact([[1, "2i"], [0, 0]])

        assert_exact_equal(adjoint(m), as_exact([[1, 0], ["-2i", 0]]))


class TestRref:
    def test_zero(self):
        r, pivots, rank = rref(exact_zeros(3, 3))

        assert_exact_equal(r, exact_zeros(3, 3))
        assert pivots == []
        assert rank == 0

    def test_identity(self):
        r, pivots, rank = rref(exact_identity(4))

        assert_exact_equal(r, exact_identity(4))
        assert pivots == [0, 1, 2, 3]
        assert rank == 4

    def test_rank_one(self):
        r, pivots, rank = rref(as_exact([[1, 2], [2, 4]]))

        assert_exact_equal(r, as_exact([[1, 2], [0, 0]]))
        assert pivots == [0]
        assert rank == 1

    def test_input_unchanged(self):
        m = as_exact([[0, 2], [3, 4]])
        rref(m)

        assert_exact_equal(m, as_exact([[0, 2], [3, 4]]))


class TestFactorizations:
    def test_rank_factorize_identity(self):
        f, g = rank_factorize(exact_identity(3))

        assert_exact_equal(f, exact_identity(3))
        assert_exact_equal(g, exact_identity(3))

    def test_rank_factorize_rank_one(self):
        m = as_exact([[1, 2], [2, 4]])
        f, g = rank_factorize(m)

        assert_exact_equal(f, as_exact([[1], [2]]))
        assert_exact_equal(g, as_exact([[1, 2]]))
        assert_exact_equal(matmul(f, g), m)

    def test_rank_factorize_zero(self):
        f, g = rank_factorize(exact_zeros(2, 2))

        assert f.shape == (2, 0)
        assert g.shape == (0, 2)
        assert_exact_equal(mp_exact(exact_zeros(2, 2)), exact_zeros(2, 2))

    def test_inverse(self):
        inv = inverse_exact(as_exact([[1, 2], [3, 4]]))

        assert_exact_equal(inv, as_exact([[-2, 1], ["3/2", "-1/2"]]))

    def test_inverse_singular(self):
        with pytest.raises(SingularMatrixError):
            inverse_exact(as_exact([[1, 2], [2, 4]]))

    def test_nullspace(self):
        basis = nullspace_exact(as_exact([[1, 2], [2, 4]]))

        assert_exact_equal(basis, as_exact([[-2], [1]]))


class TestMpExact:
    def test_diagonal(self):
        assert_exact_equal(
            mp_exact(as_exact([[3, 0], [0, 0]])), as_exact([["1/3", 0], [0, 0]])
        )

    def test_rank_one(self):
        m = as_exact([[1, 2], [2, 4]])
        expected = as_exact([["1/25", "2/25"], ["2/25", "4/25"]])

        assert_exact_equal(mp_exact(m), expected)

    def test_projection_is_own_inverse(self):
        p = as_exact([["1/2", "1/2"], ["1/2", "1/2"]])

        assert_exact_equal(mp_exact(p), p)

    def test_complex_penrose(self):
        m = as_exact([[1, "1+i", 0], ["2i", "-2+2i", 0], [0, 0, 3]])
        md = mp_exact(m)

        assert_exact_equal(matmul(matmul(m, md), m), m)
        assert_exact_equal(matmul(matmul(md, m), md), md)
        mmd = matmul(m, md)
        assert_exact_equal(adjoint(mmd), mmd)
        dmm = matmul(md, m)
        assert_exact_equal(adjoint(dmm), dmm)


class TestProjectorFromBasis:
    def test_line(self):
        p = projector_from_basis(as_exact([[1], [1]]))

        assert_exact_equal(p, as_exact([["1/2", "1/2"], ["1/2", "1/2"]]))

    def test_empty_basis(self):
        assert_exact_equal(projector_from_basis(exact_zeros(3, 0)), exact_zeros(3, 3))

    def test_norm(self):
        assert frobenius_norm2(as_exact([[1, "1+i"]])) == 3
        assert frobenius_norm2(np.empty((0, 0), dtype=object)) == 0


class TestDomainMatrix:
    def test_conversion_keeps_entries(self):
        m = as_exact([["1/2", "2i"], [0, "-1+i"]])
        dm = to_domain_matrix(m)

        assert dm.domain == QQ_I
        assert dm.shape == (2, 2)
        assert_exact_equal(from_domain_matrix(dm), m)

    def test_complex_kernel(self):
        m = as_exact([[1, "i"], ["i", -1]])
        basis = nullspace_exact(m)

        assert basis.shape == (2, 1)
        assert_exact_equal(basis, as_exact([["-i"], [1]]))
        assert_exact_equal(matmul(m, basis), exact_zeros(2, 1))

    def test_full_rank_kernel_is_empty(self):
        assert nullspace_exact(exact_identity(3)).shape == (3, 0)

    def test_empty_inverse(self):
        assert inverse_exact(exact_zeros(0, 0)).shape == (0, 0)
