import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from projcalc.exceptions import (
    NotAProjectionError,
    NotIdempotentError,
    ProjectionDriftError,
)
from projcalc.ring import StarRingContext, is_projection, mp_inverse, penrose_check

HALF = "1/2"
P_HALF = [[1, 0], [0, 0]]
Q_HALF = [[HALF, HALF], [HALF, HALF]]


class TestBuildPair:
    def test_derived_elements(self, exact_pair):
        pair = exact_pair(P_HALF, Q_HALF)
        ctx = pair.context

        assert ctx.equal(pair.a, ctx.element([[HALF, 0], [0, 0]]))
        assert ctx.equal(pair.b, ctx.element([[0, HALF], [0, 0]]))
        assert ctx.equal(pair.d, ctx.element([[0, 0], [0, HALF]]))
        assert ctx.equal(pair.p_minus_a_dag, ctx.element([[2, 0], [0, 0]]))
        assert ctx.equal(pair.d_dag, ctx.element([[0, 0], [0, 2]]))

    def test_complement(self, exact_pair):
        pair = exact_pair(P_HALF, Q_HALF)
        comp = pair.complement()

        assert pair.context.equal(comp.p, pair.pbar)
        assert pair.context.equal(comp.qbar, pair.q)

    def test_not_a_projection(self, exact_pair):
        with pytest.raises(NotAProjectionError):
            exact_pair([[1, 1], [0, 0]], P_HALF)

    def test_snap(self, float_pair):
        noise = np.array([[1e-9, 2e-9], [2e-9, -1e-9]])
        p = np.diag([1.0, 0.0]) + noise

        with pytest.raises(NotAProjectionError):
            float_pair(p, np.eye(2))

        from projcalc.pairs import build_pair

        ctx = StarRingContext("float", 2)
        pair = build_pair(ctx.element(p), ctx.one, snap=True)
        assert is_projection(pair.p)
        assert np.allclose(pair.p.data, np.diag([1, 0]), atol=1e-8)

    def test_conditioning(self, float_pair):
        pair = float_pair(np.diag([1.0, 0.0]), 0.5 * np.ones((2, 2)))

        assert pair.well_conditioned
        assert not pair.marginal


class TestClosedForms:
    def setup_class(self):
        from projcalc.pairs import build_pair

        ctx = StarRingContext("exact", 2)
        self.ctx = ctx
        self.pair = build_pair(ctx.element(P_HALF), ctx.element(Q_HALF))

    def test_one_minus_pq(self):
        from projcalc.pairs import mp_one_minus_pq

        expected = self.ctx.element([[2, 1], [0, 1]])
        one_minus_pq = 1 - self.pair.p @ self.pair.q

        assert self.ctx.equal(mp_one_minus_pq(self.pair), expected)
        assert self.ctx.equal(self.ctx.inverse(one_minus_pq), expected)

    def test_one_minus_qp(self):
        from projcalc.pairs import mp_one_minus_pq, mp_one_minus_qp

        assert self.ctx.equal(
            mp_one_minus_qp(self.pair), mp_one_minus_pq(self.pair).star()
        )

    def test_transfer(self):
        from projcalc.pairs import mp_transfer

        expected = self.ctx.element([[0, 1], [0, 1]])
        pbar_q = self.pair.pbar @ self.pair.q

        assert self.ctx.equal(mp_transfer(self.pair), expected)
        assert penrose_check(pbar_q, expected)

    def test_qbar_p(self):
        from projcalc.pairs import mp_p_qbar, mp_qbar_p

        expected = self.ctx.element([[1, -1], [0, 0]])

        assert self.ctx.equal(mp_qbar_p(self.pair), expected)
        assert self.ctx.equal(mp_p_qbar(self.pair), expected.star())

    def test_p_minus_pqp(self):
        from projcalc.pairs import mp_p_minus_pqp

        assert self.ctx.equal(
            mp_p_minus_pqp(self.pair), mp_inverse(self.pair.p_minus_a)
        )


class TestJoinMeet:
    def test_full_join(self, exact_pair):
        from projcalc.pairs import join_projection, meet_projection

        pair = exact_pair(P_HALF, Q_HALF)

        assert pair.context.equal(join_projection(pair), pair.one)
        assert pair.context.equal(meet_projection(pair), pair.context.zero)

    def test_coordinate_planes(self, exact_pair):
        from projcalc.pairs import (
            complement_join_projection,
            join_projection,
            meet_projection,
        )

        pair = exact_pair(np.diag([1, 1, 0]), np.diag([0, 1, 1]))
        ctx = pair.context

        assert ctx.equal(meet_projection(pair), ctx.element(np.diag([0, 1, 0])))
        assert ctx.equal(join_projection(pair), ctx.one)
        assert ctx.equal(
            complement_join_projection(pair), ctx.element(np.diag([1, 0, 1]))
        )

    def test_skew_line(self, exact_pair):
        from projcalc.pairs import join_projection, meet_projection

        q = [[0, 0, 0], [0, HALF, HALF], [0, HALF, HALF]]
        pair = exact_pair(np.diag([1, 0, 0]), q)
        ctx = pair.context
        expected = ctx.element([[1, 0, 0], [0, HALF, HALF], [0, HALF, HALF]])

        assert ctx.equal(join_projection(pair), expected)
        assert ctx.equal(meet_projection(pair), ctx.zero)

    def test_equal_projections(self, float_pair):
        from projcalc.pairs import join_projection, meet_projection

        p = np.diag([1.0, 1.0, 0.0])
        pair = float_pair(p, p)

        assert pair.context.equal(join_projection(pair), pair.p)
        assert pair.context.equal(meet_projection(pair), pair.p)


class TestChecks:
    def test_surjectivity_criterion(self, exact_pair):
        from projcalc.pairs import check_surjectivity_criterion

        full = check_surjectivity_criterion(exact_pair(P_HALF, Q_HALF))
        assert full.passed
        assert full.hypothesis_flags == {"join full": True, "d R = pbar R": True}

        equal = check_surjectivity_criterion(exact_pair(P_HALF, P_HALF))
        assert equal.passed
        assert equal.hypothesis_flags == {"join full": False, "d R = pbar R": False}

    def test_lemma33(self):
        from projcalc.pairs import check_lemma33

        ctx = StarRingContext("exact", 2)

        assert check_lemma33(ctx.element([[1, 1], [0, 0]])).passed
        assert check_lemma33(ctx.zero).passed
        assert check_lemma33(ctx.one).statement_id == "L3.3"

    def test_lemma33_not_idempotent(self):
        from projcalc.pairs import check_lemma33

        with pytest.raises(NotIdempotentError):
            check_lemma33(StarRingContext("exact", 2).element([[2, 0], [0, 0]]))

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_exact_random_pairs(self, seed):
        from projcalc.harness import STATEMENTS, random_pair

        pair = random_pair(3, 1, 2, seed, backend="exact")
        for sid in ("L2.2", "L2.3", "L2.5", "L3.1", "L3.2.1", "L3.2.2"):
            report = STATEMENTS[sid].check(pair)
            assert report.passed, (sid, report.to_dict())
            assert report.max_residual == 0.0

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_float_random_pairs(self, seed):
        from projcalc.harness import STATEMENTS, random_pair
        from projcalc.reports import Verdict

        pair = random_pair(5, 2, 3, seed)
        for sid in ("L2.2", "L2.3", "L2.5", "L3.1", "L3.2.1", "L3.2.2", "L3.2.3"):
            report = STATEMENTS[sid].check(pair)
            assert report.verdict is not Verdict.FAIL, (sid, report.to_dict())
            assert report.max_residual < 1e-6


class TestReferenceNorm:
    def test_build_pair_sets_reference_norm(self, float_pair):
        pair = float_pair(np.diag([1.0, 1.0, 0.0]), np.diag([0.0, 1.0, 0.0]))

        assert pair.context.reference_norm == pytest.approx(1 + np.sqrt(2))
        assert pair.d.context.reference_norm == pair.context.reference_norm

    def test_tiny_pairs_use_unit_reference(self, float_pair):
        pair = float_pair(np.zeros((2, 2)), np.zeros((2, 2)))

        assert pair.context.reference_norm == 1.0

    def test_given_reference_norm_kept(self):
        from projcalc.pairs import build_pair

        ctx = StarRingContext("float", 2).with_reference_norm(5.0)
        pair = build_pair(ctx.one, ctx.zero)

        assert pair.context.reference_norm == 5.0

    def test_noise_below_reference_floor(self, float_pair):
        """Residuals of order 1e-11 next to a zero element are rounding noise."""
        pair = float_pair(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
        ctx = pair.context
        noise = ctx.element(np.diag([7.9e-12, 0.0]))

        assert ctx.equal(noise, ctx.zero)
        assert not StarRingContext("float", 2).equal(noise, ctx.zero)


class TestBackendMpInverse:
    def test_marks_near_cutoff(self, float_pair):
        from projcalc.pairs import backend_mp_inverse, new_report

        pair = float_pair(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
        report = new_report(pair, "L2.3")
        x = StarRingContext("float", 2).element(np.diag([1.0, 5e-12]))
        x_dag = backend_mp_inverse(report, "x^+ closed form", x)

        assert report.marginal == {"x^+ closed form"}
        assert penrose_check(x, x_dag)

    def test_exact_never_marginal(self, exact_pair):
        from projcalc.pairs import backend_mp_inverse, new_report

        pair = exact_pair(P_HALF, Q_HALF)
        report = new_report(pair, "L2.3")
        backend_mp_inverse(report, "claim", pair.p_minus_a)

        assert not report.marginal


class TestCheckedProjection:
    def test_drift_raises(self):
        from projcalc.pairs import checked_projection

        x = StarRingContext("float", 2).element([[1.0, 0.1], [0.0, 0.0]])

        with pytest.raises(ProjectionDriftError):
            checked_projection(x, "x")

    def test_snap(self):
        from projcalc.pairs import checked_projection

        ctx = StarRingContext("float", 2)
        x = ctx.element(np.diag([1.0 + 1e-8, 0.0]))

        assert is_projection(checked_projection(x, "x", snap=True))

    def test_unvalidated_formulas(self, exact_pair):
        from projcalc.pairs import join_projection, meet_projection

        pair = exact_pair(P_HALF, Q_HALF)
        ctx = pair.context

        assert ctx.equal(join_projection(pair, validate=False), join_projection(pair))
        assert ctx.equal(meet_projection(pair, validate=False), meet_projection(pair))


ranks = st.integers(0, 3)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), rank_p=ranks, rank_q=ranks)
def test_meet_is_complement_of_join_exact(seed, rank_p, rank_q):
    """p ∧ q = 1 - (pbar ∨ qbar)"""
    from projcalc.harness import random_pair
    from projcalc.pairs import join_projection, meet_projection

    pair = random_pair(3, rank_p, rank_q, seed, backend="exact")
    ctx = pair.context

    assert ctx.equal(meet_projection(pair), 1 - join_projection(pair.complement()))
    assert ctx.equal(join_projection(pair), 1 - meet_projection(pair.complement()))


@pytest.mark.slow
@settings(max_examples=200, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    n=st.integers(2, 6),
    rank_p=st.integers(0, 6),
    rank_q=st.integers(0, 6),
)
def test_meet_is_complement_of_join_float(seed, n, rank_p, rank_q):
    from projcalc.harness import random_pair
    from projcalc.pairs import join_projection, meet_projection

    pair = random_pair(n, min(rank_p, n), min(rank_q, n), seed)
    assume(pair.well_conditioned and not pair.marginal)
    comp = pair.complement()
    assume(comp.well_conditioned and not comp.marginal)
    ctx = pair.context

    assert ctx.equal(meet_projection(pair), 1 - join_projection(comp))
