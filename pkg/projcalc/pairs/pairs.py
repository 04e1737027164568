"""Projection pairs and the closed-form MP inverses built from them.

For projections ``p`` and ``q`` the fixed notation is ::

    a = pqp,  b = pq(1-p),  d = (1-p)q(1-p),  pbar = 1-p,  qbar = 1-q

Every closed form below is assembled from ``(p-a)^+`` and ``d^+`` only.
The ``check_*`` functions compare these closed forms with the backend
MP inverse and range claims with :mod:`projcalc.subspaces`.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

from projcalc import numeric
from projcalc.exceptions import (
    NotAProjectionError,
    NotIdempotentError,
    ProjectionDriftError,
)
from projcalc.reports import TheoremReport
from projcalc.ring import (
    RingElement,
    StarRingContext,
    is_idempotent,
    is_projection,
    mp_inverse,
    penrose_check,
)
from projcalc.subspaces import (
    Subspace,
    column_space,
    contains,
    orth_projector_onto,
    space_intersection,
    space_sum,
    spaces_equal,
)

__all__ = [
    "ProjectionPair",
    "backend_mp_inverse",
    "build_pair",
    "check_join_projection",
    "check_lemma22",
    "check_lemma23",
    "check_lemma25",
    "check_lemma31",
    "check_lemma32_transfer",
    "check_lemma33",
    "check_meet_projection",
    "check_surjectivity_criterion",
    "checked_projection",
    "complement_join_projection",
    "join_projection",
    "meet_projection",
    "mp_one_minus_pq",
    "mp_one_minus_qp",
    "mp_p_minus_pqp",
    "mp_p_qbar",
    "mp_qbar_p",
    "mp_transfer",
    "new_report",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ProjectionPair:
    """Two projections with the derived elements cached.

    Build instances with :func:`build_pair`, which validates ``p`` and
    ``q`` and computes ``a``, ``b``, ``d``, ``pbar`` and ``qbar``.
    """

    p: RingElement
    q: RingElement
    a: RingElement
    b: RingElement
    d: RingElement
    pbar: RingElement
    qbar: RingElement

    @property
    def context(self) -> StarRingContext:
        return self.p.context

    @property
    def one(self) -> RingElement:
        return self.context.one

    @cached_property
    def p_minus_a(self) -> RingElement:
        """``p - a = p qbar p``."""
        return self.p - self.a

    @cached_property
    def _spectra(self) -> dict:
        """MP inverses of ``p - a`` and ``d`` with their SVD diagnostics."""
        out = {}
        for name, x in (("p_minus_a", self.p_minus_a), ("d", self.d)):
            x_dag, info = mp_inverse(x, return_info=True)
            if info is None:
                out[name] = (x_dag, 1.0, False)
            else:
                out[name] = (x_dag, info.condition, info.near_cutoff)
        return out

    @property
    def p_minus_a_dag(self) -> RingElement:
        return self._spectra["p_minus_a"][0]

    @property
    def d_dag(self) -> RingElement:
        return self._spectra["d"][0]

    @cached_property
    def p_minus_a_range_proj(self) -> RingElement:
        """``(p-a)(p-a)^+``."""
        return self.p_minus_a @ self.p_minus_a_dag

    @cached_property
    def d_range_proj(self) -> RingElement:
        """``d d^+``."""
        return self.d @ self.d_dag

    @property
    def conditioning(self) -> float:
        """Largest condition number of the nonzero spectra of ``p-a`` and ``d``."""
        return max(v[1] for v in self._spectra.values())

    @property
    def well_conditioned(self) -> bool:
        return self.conditioning <= self.context.tolerance.condition_cap

    @property
    def marginal(self) -> bool:
        """Whether the rank of ``p-a`` or ``d`` sits close to the cutoff."""
        return any(v[2] for v in self._spectra.values())

    @cached_property
    def p_range(self) -> Subspace:
        return column_space(self.p)

    @cached_property
    def q_range(self) -> Subspace:
        return column_space(self.q)

    @cached_property
    def pbar_range(self) -> Subspace:
        return column_space(self.pbar)

    @cached_property
    def qbar_range(self) -> Subspace:
        return column_space(self.qbar)

    def complement(self) -> "ProjectionPair":
        """The pair ``(1-p, 1-q)``."""
        return build_pair(self.pbar, self.qbar)

    def __repr__(self) -> str:
        ctx = self.context
        return f"ProjectionPair({ctx.backend_kind.value}, n={ctx.dimension})"


def _validated_projection(x: RingElement, name: str, snap: bool) -> RingElement:
    if is_projection(x):
        return x

    ctx = x.context
    if snap and not ctx.is_exact:
        log.info("Snapping %s to the nearest projection.", name)
        return ctx.element(numeric.project_to_nearest_projection(x.data, ctx.tolerance))

    raise NotAProjectionError(
        f"Input {name} is not a projection (x^2 = x = x^* fails); "
        "pass snap=True to round an almost-projection in float mode."
    )


def build_pair(p: RingElement, q: RingElement, snap: bool = False) -> ProjectionPair:
    """Validates two projections and caches the derived elements.

    Parameters
    ----------
    p, q : RingElement
        Projections of the same ring.
    snap : bool, optional
        Float backend only: round almost-projections with
        :func:`projcalc.numeric.project_to_nearest_projection` instead of
        rejecting them. Default: ``False``

    Returns
    -------
    ProjectionPair
        Its ring carries the reference norm ``max(|p|_F + |q|_F, 1)``
        unless the input ring already has one.

    Raises
    ------
    NotAProjectionError
        If ``p`` or ``q`` is not a projection.
    """
    p.context.check_compatible(q.context)
    ctx = p.context
    if ctx.reference_norm is None:
        scale = ctx.residual(p, ctx.zero) + ctx.residual(q, ctx.zero)
        ctx = ctx.with_reference_norm(max(scale, 1.0))
        p, q = RingElement(ctx, p.data), RingElement(ctx, q.data)

    p = _validated_projection(p, "p", snap)
    q = _validated_projection(q, "q", snap)

    pbar, qbar = 1 - p, 1 - q
    pq = p @ q

    log.debug("Built pair of dimension %d.", p.context.dimension)
    return ProjectionPair(
        p=p,
        q=q,
        a=pq @ p,
        b=pq @ pbar,
        d=pbar @ q @ pbar,
        pbar=pbar,
        qbar=qbar,
    )


def new_report(pair: ProjectionPair, statement_id: str) -> TheoremReport:
    """An empty report carrying the pair's conditioning diagnostics."""
    report = TheoremReport(statement_id)
    if not pair.well_conditioned:
        report.mark_ill_conditioned()
        report.note(f"conditioning {pair.conditioning:.3e} exceeds the cap")
    if pair.marginal:
        report.marginal.add("pair spectrum")
    return report


def mp_one_minus_pq(pair: ProjectionPair) -> RingElement:
    """``(1-pq)^+ = (p-a)^+ (1+b) + 1 - p``."""
    return pair.p_minus_a_dag @ (1 + pair.b) + pair.pbar


def mp_one_minus_qp(pair: ProjectionPair) -> RingElement:
    """``(1-qp)^+ = (p-a)^+ + b^* (p-a)^+ + 1 - p``.

    This is the adjoint of :func:`mp_one_minus_pq`.
    """
    return pair.p_minus_a_dag + pair.b.star() @ pair.p_minus_a_dag + pair.pbar


def mp_p_minus_pqp(pair: ProjectionPair) -> RingElement:
    """``(p-pqp)^+ = (1-pq)^+ p``."""
    return mp_one_minus_pq(pair) @ pair.p


def mp_transfer(pair: ProjectionPair) -> RingElement:
    """``(pbar q)^+ = q (pbar q pbar)^+ = q d^+``."""
    return pair.q @ pair.d_dag


def mp_qbar_p(pair: ProjectionPair) -> RingElement:
    """``(qbar p)^+ = (p qbar p)^+ qbar = (p-a)^+ qbar``."""
    return pair.p_minus_a_dag @ pair.qbar


def mp_p_qbar(pair: ProjectionPair) -> RingElement:
    """``(p qbar)^+ = qbar (p-a)^+``."""
    return pair.qbar @ pair.p_minus_a_dag


def checked_projection(x: RingElement, name: str, snap: bool = False) -> RingElement:
    """Returns ``x`` if it is a projection.

    Raises
    ------
    ProjectionDriftError
        If it is not and ``snap`` is ``False``; with ``snap`` a float
        ``x`` is rounded to the nearest projection instead.
    """
    if is_projection(x):
        return x

    ctx = x.context
    if snap and not ctx.is_exact:
        residual = ctx.residual(x @ x, x) + ctx.residual(x.star(), x)
        log.warning("%s drifted from a projection by %.3e; snapping.", name, residual)
        return ctx.element(numeric.project_to_nearest_projection(x.data, ctx.tolerance))

    raise ProjectionDriftError(
        f"Constructed {name} is not a projection within the equality tolerance."
    )


def _join(pair: ProjectionPair) -> RingElement:
    return pair.p + pair.pbar @ mp_transfer(pair)


def _meet(pair: ProjectionPair) -> RingElement:
    return pair.p - pair.p @ mp_p_qbar(pair)


def _complement_join(pair: ProjectionPair) -> RingElement:
    return pair.pbar + pair.p @ mp_p_qbar(pair)


def join_projection(
    pair: ProjectionPair, snap: bool = False, validate: bool = True
) -> RingElement:
    """``x = p + pbar (pbar q)^+``, the projection onto ``pR + qR``.

    Parameters
    ----------
    pair : ProjectionPair
    snap : bool, optional
        Round a drifted float result to the nearest projection with a
        warning. Default: ``False``
    validate : bool, optional
        If ``False``, return the formula value without the projection
        check. Default: ``True``

    Raises
    ------
    ProjectionDriftError
        If the result is not a projection and ``snap`` is ``False``.
    """
    if not validate:
        return _join(pair)
    return checked_projection(_join(pair), "join projection", snap)


def meet_projection(
    pair: ProjectionPair, snap: bool = False, validate: bool = True
) -> RingElement:
    """``y = p - p (p qbar)^+``, the projection onto ``pR ∩ qR``.

    Same options as :func:`join_projection`.
    """
    if not validate:
        return _meet(pair)
    return checked_projection(_meet(pair), "meet projection", snap)


def complement_join_projection(pair: ProjectionPair, snap: bool = False) -> RingElement:
    """``q' = pbar + p (p qbar)^+``, the projection onto ``pbar R + qbar R``."""
    return checked_projection(
        _complement_join(pair), "complement join projection", snap
    )


def backend_mp_inverse(report: TheoremReport, claim: str, x: RingElement):
    """``mp_inverse(x)``; a near-cutoff rank decision marks ``claim`` marginal."""
    x_dag, info = mp_inverse(x, return_info=True)
    if info is not None and info.near_cutoff:
        report.marginal.add(claim)
    return x_dag


def _penrose(report: TheoremReport, name: str, x: RingElement, x_dag: RingElement):
    result = penrose_check(x, x_dag)
    return report.residual(name, max(result.residuals), bool(result))


def check_lemma22(pair: ProjectionPair) -> TheoremReport:
    """``bb^* = (p-a) - (p-a)^2`` and ``b^*b = d - d^2``."""
    report = new_report(pair, "L2.2")
    pa, b, d = pair.p_minus_a, pair.b, pair.d
    report.compare("bb* = (p-a)-(p-a)^2", b @ b.star(), pa - pa @ pa)
    report.compare("b*b = d-d^2", b.star() @ b, d - d @ d)
    return report


def check_lemma23(pair: ProjectionPair) -> TheoremReport:
    """The transfer identities between ``(p-a)^+`` and ``d^+``."""
    report = new_report(pair, "L2.3")
    b, bs = pair.b, pair.b.star()
    pa_dag, d_dag = pair.p_minus_a_dag, pair.d_dag

    report.compare("(p-a)(p-a)^+b = b", pair.p_minus_a_range_proj @ b, b)
    report.compare("bdd^+ = b", b @ pair.d_range_proj, b)
    report.compare("bd^+ = (p-a)^+b", b @ d_dag, pa_dag @ b)
    report.compare("d^+b* = b*(p-a)^+", d_dag @ bs, bs @ pa_dag)

    p_minus_q = pair.p - pair.q
    name = "p-q penrose"
    _penrose(report, name, p_minus_q, backend_mp_inverse(report, name, p_minus_q))
    return report


def check_lemma25(pair: ProjectionPair) -> TheoremReport:
    """Closed forms (i)-(iii) for ``(1-pq)^+`` and ``(p-pqp)^+``."""
    report = new_report(pair, "L2.5")
    one_minus_pq = 1 - pair.p @ pair.q
    one_minus_qp = 1 - pair.q @ pair.p

    closed_pq = mp_one_minus_pq(pair)
    _penrose(report, "(1-pq)^+ penrose", one_minus_pq, closed_pq)
    name = "(1-pq)^+ = backend"
    report.compare(name, closed_pq, backend_mp_inverse(report, name, one_minus_pq))

    closed_pa = mp_p_minus_pqp(pair)
    _penrose(report, "(p-pqp)^+ penrose", pair.p_minus_a, closed_pa)
    name = "(p-pqp)^+ = backend"
    report.compare(name, closed_pa, backend_mp_inverse(report, name, pair.p_minus_a))

    range_proj = pair.p_minus_a_range_proj + pair.pbar
    report.compare("(1-pq)(1-pq)^+", one_minus_pq @ closed_pq, range_proj)
    report.compare("(1-pq)^+(1-pq)", closed_pq @ one_minus_pq, range_proj)

    closed_qp = mp_one_minus_qp(pair)
    report.compare("(1-qp)^+ = ((1-pq)^+)*", closed_qp, closed_pq.star())
    name = "(1-qp)^+ = backend"
    report.compare(name, closed_qp, backend_mp_inverse(report, name, one_minus_qp))
    return report


def check_lemma31(pair: ProjectionPair) -> TheoremReport:
    """``pqp (pqp)^+ pq = pq``, and ``dd^+ pbar q = pbar q`` for the complements."""
    report = new_report(pair, "L3.1")
    pq = pair.p @ pair.q
    name = "a a^+ pq = pq"
    a_dag = backend_mp_inverse(report, name, pair.a)
    report.compare(name, pair.a @ a_dag @ pq, pq)

    pbar_q = pair.pbar @ pair.q
    report.compare("dd^+ pbar q = pbar q", pair.d_range_proj @ pbar_q, pbar_q)
    return report


def check_lemma32_transfer(pair: ProjectionPair) -> TheoremReport:
    """``(pbar q)^+ = q (pbar q pbar)^+`` and ``(qbar p)^+ = (p qbar p)^+ qbar``."""
    report = new_report(pair, "L3.2.1")

    pbar_q = pair.pbar @ pair.q
    transfer = mp_transfer(pair)
    _penrose(report, "(pbar q)^+ penrose", pbar_q, transfer)
    name = "(pbar q)^+ = backend"
    report.compare(name, transfer, backend_mp_inverse(report, name, pbar_q))

    qbar_p = pair.qbar @ pair.p
    closed = mp_qbar_p(pair)
    _penrose(report, "(qbar p)^+ penrose", qbar_p, closed)
    name = "(qbar p)^+ = backend"
    report.compare(name, closed, backend_mp_inverse(report, name, qbar_p))
    return report


def _range_claim(report, name, x: Subspace, y: Subspace) -> bool:
    return report.claim(name, spaces_equal(x, y), x.marginal or y.marginal)


def check_join_projection(pair: ProjectionPair) -> TheoremReport:
    """``x`` is a projection with ``xR = pR + qR``, equal to the oracle projector."""
    report = new_report(pair, "L3.2.2")
    x = _join(pair)
    report.claim("x is a projection", is_projection(x), element=True)

    target = space_sum(pair.p_range, pair.q_range)
    x_range = column_space(x)
    _range_claim(report, "xR = pR + qR", x_range, target)
    report.claim("pR within xR", contains(x_range, pair.p_range), x_range.marginal)
    report.compare("x = oracle projector", x, orth_projector_onto(target))

    q_prime = _complement_join(pair)
    report.claim("q' is a projection", is_projection(q_prime), element=True)
    _range_claim(
        report,
        "q'R = pbar R + qbar R",
        column_space(q_prime),
        space_sum(pair.pbar_range, pair.qbar_range),
    )
    return report


def check_meet_projection(pair: ProjectionPair) -> TheoremReport:
    """``y`` is a projection with ``yR = pR ∩ qR``; ``y = 1 - join(pbar, qbar)``."""
    report = new_report(pair, "L3.2.3")
    y = _meet(pair)
    report.claim("y is a projection", is_projection(y), element=True)

    target = space_intersection(pair.p_range, pair.q_range)
    y_range = column_space(y)
    _range_claim(report, "yR = pR ∩ qR", y_range, target)
    report.claim("yR within pR", contains(pair.p_range, y_range), y_range.marginal)
    report.compare("y = oracle projector", y, orth_projector_onto(target))

    report.compare("y = 1 - join(pbar, qbar)", y, 1 - _join(pair.complement()))
    return report


def check_surjectivity_criterion(pair: ProjectionPair) -> TheoremReport:
    """``pR + qR = R`` iff ``pbar q pbar R = pbar R``, both sides by the oracle."""
    report = new_report(pair, "L3.2.4")

    joined = space_sum(pair.p_range, pair.q_range)
    d_range = column_space(pair.d)
    left = report.hypothesis("join full", joined.is_whole, joined.marginal)
    right = report.hypothesis(
        "d R = pbar R",
        spaces_equal(d_range, pair.pbar_range),
        d_range.marginal or pair.pbar_range.marginal,
    )
    marginal = joined.marginal or d_range.marginal or pair.pbar_range.marginal
    report.claim("biconditional", left == right, marginal)
    return report


def check_lemma33(e: RingElement, statement_id: str = "L3.3") -> TheoremReport:
    """``ee^+ R = eR`` and ``(1 - e^+ e) R = (1-e) R`` for an idempotent ``e``.

    Raises
    ------
    NotIdempotentError
        If ``e^2 != e``.
    """
    if not is_idempotent(e):
        raise NotIdempotentError("Lemma 3.3 needs an idempotent element (e^2 = e).")

    report = TheoremReport(statement_id)
    e_dag, info = mp_inverse(e, return_info=True)
    if info is not None and info.near_cutoff:
        report.marginal.update({"ee^+ R = eR", "(1-e^+e) R = (1-e) R"})

    _range_claim(report, "ee^+ R = eR", column_space(e @ e_dag), column_space(e))
    _range_claim(
        report,
        "(1-e^+e) R = (1-e) R",
        column_space(1 - e_dag @ e),
        column_space(1 - e),
    )
    return report
