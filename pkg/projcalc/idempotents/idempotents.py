"""Oblique idempotents built from a projection pair.

Three idempotents carry the main results:

* ``E = (qbar p)^+``, equal to ``(1-pq)^+ p qbar``;
* ``F = (1-qp)^+ qbar`` with MP inverse ``z = 1 - qp - dd^+``;
* ``G = p (p+q-qp)^+`` with MP inverse ``z' = 2p - qp - (p-a)(p-a)^+``.

Every range claim is decided by :mod:`projcalc.subspaces`, and every
element identity by the ring equality test, so the two sides of each
equivalence come from disjoint code paths.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field

from projcalc.exceptions import SingularMatrixError
from projcalc.pairs import (
    ProjectionPair,
    backend_mp_inverse,
    check_lemma33,
    checked_projection,
    meet_projection,
    mp_one_minus_pq,
    mp_p_qbar,
    mp_transfer,
    new_report,
)
from projcalc.reports import TheoremReport
from projcalc.ring import RingElement, is_idempotent, is_projection, mp_inverse
from projcalc.ring import penrose_check
from projcalc.subspaces import (
    Subspace,
    column_space,
    is_direct_sum_whole,
    is_orthogonal,
    space_intersection,
    space_sum,
    spaces_equal,
)

__all__ = [
    "ObliqueIdempotent",
    "ProbeResult",
    "check_corollaries",
    "check_corollary35",
    "check_corollary36",
    "check_corollary310",
    "check_lemma33_constructions",
    "check_remark38",
    "check_theorem311",
    "check_theorem34",
    "check_theorem39",
    "check_theorem313",
    "oblique_one_minus_qp",
    "oblique_p_pqqp",
    "oblique_qbar_p",
    "orth_decomposition",
    "probe_theorem311",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ObliqueIdempotent:
    """An idempotent together with its oracle ranges.

    Attributes
    ----------
    element : RingElement
        The idempotent as defined through backend MP inverses.
    onto_space : Subspace
        Column space of ``element``.
    along_space : Subspace
        Column space of ``1 - element``.
    closed_form : RingElement
        The same idempotent assembled from ``(p-a)^+`` and ``d^+``.
    witness_mp : RingElement or None
        Explicit MP inverse of ``element`` if one is known.
    mp_marginal : bool
        The backend MP inverse behind ``element`` made a near-cutoff
        rank decision.
    """

    element: RingElement
    onto_space: Subspace
    along_space: Subspace
    closed_form: RingElement
    witness_mp: RingElement | None = None
    mp_marginal: bool = False

    @classmethod
    def from_element(cls, element, closed_form, witness_mp=None, mp_marginal=False):
        return cls(
            element=element,
            onto_space=column_space(element),
            along_space=column_space(1 - element),
            closed_form=closed_form,
            witness_mp=witness_mp,
            mp_marginal=mp_marginal,
        )

    @property
    def is_idempotent(self) -> bool:
        return is_idempotent(self.element)

    @property
    def marginal(self) -> bool:
        return self.mp_marginal or self.onto_space.marginal or self.along_space.marginal


def _mp(x: RingElement) -> tuple[RingElement, bool]:
    x_dag, info = mp_inverse(x, return_info=True)
    return x_dag, info is not None and info.near_cutoff


def oblique_qbar_p(pair: ProjectionPair) -> ObliqueIdempotent:
    """``E = (qbar p)^+``, with closed form ``(1-pq)^+ p qbar``."""
    element, near = _mp(pair.qbar @ pair.p)
    closed = mp_one_minus_pq(pair) @ pair.p @ pair.qbar
    return ObliqueIdempotent.from_element(element, closed, mp_marginal=near)


def oblique_one_minus_qp(pair: ProjectionPair) -> ObliqueIdempotent:
    """``F = (1-qp)^+ qbar``.

    Closed form ``(p-a)^+(p-a) - (p-a)^+ b + 1 - p - dd^+``; the MP
    inverse of ``F`` is ``z = 1 - qp - dd^+``.
    """
    pa, pa_dag = pair.p_minus_a, pair.p_minus_a_dag
    inv, near = _mp(1 - pair.q @ pair.p)
    element = inv @ pair.qbar
    closed = pa_dag @ pa - pa_dag @ pair.b + pair.pbar - pair.d_range_proj
    z = 1 - pair.q @ pair.p - pair.d_range_proj
    return ObliqueIdempotent.from_element(element, closed, z, near)


def oblique_p_pqqp(pair: ProjectionPair) -> ObliqueIdempotent:
    """``G = p (p+q-qp)^+``.

    Closed form ``p - b d^+``; the MP inverse of ``G`` is
    ``z' = 2p - qp - (p-a)(p-a)^+``.
    """
    p, q = pair.p, pair.q
    inv, near = _mp(p + q - q @ p)
    element = p @ inv
    closed = p - pair.b @ pair.d_dag
    z_prime = 2 * p - q @ p - pair.p_minus_a_range_proj
    return ObliqueIdempotent.from_element(element, closed, z_prime, near)


def orth_decomposition(
    pair: ProjectionPair, snap: bool = False, validate: bool = True
) -> RingElement:
    """``w = 1 - p qbar (p qbar p)^+ - pbar q (pbar q pbar)^+``.

    ``w`` is the projection onto ``(pR ∩ qR) ⊕ (pbar R ∩ qbar R)``.
    ``snap`` and ``validate`` work as in
    :func:`projcalc.pairs.join_projection`.

    Raises
    ------
    ProjectionDriftError
        If ``w`` is not a projection, ``validate`` is set and ``snap`` is not.
    """
    w = 1 - pair.p @ mp_p_qbar(pair) - pair.pbar @ mp_transfer(pair)
    if not validate:
        return w
    return checked_projection(w, "orthogonal decomposition", snap)


def _range_claim(report, name, x: Subspace, y: Subspace) -> bool:
    return report.claim(name, spaces_equal(x, y), x.marginal or y.marginal)


def _orthogonal_claim(report, name, x: Subspace, y: Subspace) -> bool:
    return report.claim(name, is_orthogonal(x, y), x.marginal or y.marginal)


def _mark(report: TheoremReport, idem: ObliqueIdempotent, *claims: str) -> None:
    if idem.mp_marginal:
        report.marginal.update(claims)


def _penrose(report, name, x, x_dag) -> bool:
    result = penrose_check(x, x_dag)
    return report.residual(name, max(result.residuals), bool(result))


def _both_complements_meet(pair: ProjectionPair) -> Subspace:
    return space_intersection(pair.pbar_range, pair.qbar_range)


def check_theorem34(pair: ProjectionPair) -> TheoremReport:
    """``E = (qbar p)^+`` is idempotent with the two stated ranges."""
    report = new_report(pair, "T3.4")
    e = oblique_qbar_p(pair)
    _mark(report, e, "E = (1-pq)^+ p qbar", "E^2 = E")

    report.compare("E = (1-pq)^+ p qbar", e.element, e.closed_form)
    report.compare("E^2 = E", e.element @ e.element, e.element)

    onto = space_intersection(
        pair.p_range, space_sum(pair.pbar_range, pair.qbar_range)
    )
    _range_claim(report, "ER = pR ∩ (pbar R + qbar R)", e.onto_space, onto)

    complements = _both_complements_meet(pair)
    _range_claim(
        report,
        "(1-E)R = (pbar R ∩ qbar R) + qR",
        e.along_space,
        space_sum(complements, pair.q_range),
    )
    _orthogonal_claim(report, "(pbar R ∩ qbar R) ⊥ qR", complements, pair.q_range)
    return report


_FZ = "Fz = (p-a)^+(p-a) + 1-p - dd^+"
_ZG = "z'G = 2p - q - (p-a)(p-a)^+ + dd^+"


def check_theorem39(pair: ProjectionPair) -> TheoremReport:
    """``F`` and ``G``: idempotency, closed forms, MP witnesses and ranges."""
    report = new_report(pair, "T3.9")
    f, g = oblique_one_minus_qp(pair), oblique_p_pqqp(pair)
    f_claims = ("F^2 = F", "F closed form", "F^+ = z", "zF = 1-q", _FZ)
    g_claims = ("G^2 = G", "G closed form", "G^+ = z'", "Gz' = p", _ZG)
    _mark(report, f, *f_claims)
    _mark(report, g, *g_claims)
    p, q = pair.p, pair.q
    pa, pa_dag = pair.p_minus_a, pair.p_minus_a_dag

    report.compare("F^2 = F", f.element @ f.element, f.element)
    report.compare("G^2 = G", g.element @ g.element, g.element)
    report.compare("F closed form", f.element, f.closed_form)
    report.compare("G closed form", g.element, g.closed_form)
    name = "(p+q-qp)^+ = d^+ - bd^+ + p"
    report.compare(
        name,
        backend_mp_inverse(report, name, p + q - q @ p),
        pair.d_dag - pair.b @ pair.d_dag + p,
    )

    z, z_prime = f.witness_mp, g.witness_mp
    _penrose(report, "F^+ = z", f.element, z)
    report.compare("zF = 1-q", z @ f.element, pair.qbar)
    report.compare(_FZ, f.element @ z, pa_dag @ pa + pair.pbar - pair.d_range_proj)
    _penrose(report, "G^+ = z'", g.element, z_prime)
    report.compare("Gz' = p", g.element @ z_prime, p)
    report.compare(
        _ZG,
        z_prime @ g.element,
        2 * p - q - pair.p_minus_a_range_proj + pair.d_range_proj,
    )

    complements = _both_complements_meet(pair)
    comp_sum = space_sum(pair.pbar_range, pair.qbar_range)
    f_left = space_intersection(pair.p_range, comp_sum)
    g_left = space_intersection(comp_sum, pair.q_range)

    _range_claim(report, "FR", f.onto_space, space_sum(f_left, complements))
    _orthogonal_claim(report, "FR summands orthogonal", f_left, complements)
    _range_claim(report, "(1-F)R = qR", f.along_space, pair.q_range)
    _range_claim(report, "GR = pR", g.onto_space, pair.p_range)
    _range_claim(report, "(1-G)R", g.along_space, space_sum(g_left, complements))
    _orthogonal_claim(report, "(1-G)R summands orthogonal", g_left, complements)
    return report


_CLAUSES = {
    1: ("E = F", "join full"),
    2: ("E = G", "meet trivial"),
    3: ("F = G", "direct sum"),
}


def _subspace_conditions(pair: ProjectionPair) -> dict[str, tuple[bool, bool]]:
    joined = space_sum(pair.p_range, pair.q_range)
    met = space_intersection(pair.p_range, pair.q_range)
    direct = is_direct_sum_whole(pair.p_range, pair.q_range)
    marginal = joined.marginal or met.marginal
    return {
        "join full": (joined.is_whole, joined.marginal),
        "meet trivial": (met.is_zero, met.marginal),
        "direct sum": (direct, marginal),
    }


def _element_equalities(pair: ProjectionPair):
    """Name to ``(equal, residual, marginal)`` for the three equalities."""
    e = oblique_qbar_p(pair)
    f = oblique_one_minus_qp(pair)
    g = oblique_p_pqqp(pair)
    ctx = pair.context
    out = {}
    for name, (x, y) in {"E = F": (e, f), "E = G": (e, g), "F = G": (f, g)}.items():
        out[name] = (
            ctx.equal(x.element, y.element),
            ctx.residual(x.element, y.element),
            x.mp_marginal or y.mp_marginal,
        )
    return out


def check_theorem311(pair: ProjectionPair, clauses=(1, 2, 3)) -> TheoremReport:
    """The equivalences between equal idempotents and subspace conditions.

    Parameters
    ----------
    pair : ProjectionPair
    clauses : iterable of int, optional
        Which of the three equivalences to check. Default: all

    Returns
    -------
    TheoremReport
        Statement id ``'T3.11.k'`` for a single clause, ``'T3.11'``
        otherwise.
    """
    clauses = tuple(clauses)
    sid = f"T3.11.{clauses[0]}" if len(clauses) == 1 else "T3.11"
    report = new_report(pair, sid)

    equalities = _element_equalities(pair)
    conditions = _subspace_conditions(pair)

    for k in clauses:
        eq_name, cond_name = _CLAUSES[k]
        equal, residual, mp_marginal = equalities[eq_name]
        holds, marginal = conditions[cond_name]

        report.residuals[eq_name] = residual
        report.hypothesis(cond_name, holds, marginal)
        report.claim(
            f"({k}) {eq_name} iff {cond_name}",
            equal == holds,
            marginal or mp_marginal,
            element=True,
        )

    if 1 in clauses:
        report.hypothesis(
            "pbar = dd^+", pair.context.equal(pair.pbar, pair.d_range_proj)
        )
    return report


def check_remark38(pair: ProjectionPair) -> TheoremReport:
    """``pR ∩ qR = {0}`` iff ``1 - pq`` is invertible."""
    report = new_report(pair, "R3.8")
    met = space_intersection(pair.p_range, pair.q_range)
    left = report.hypothesis("meet trivial", met.is_zero, met.marginal)

    invertible, marginal = pair.context.is_invertible(1 - pair.p @ pair.q)
    right = report.hypothesis("1-pq invertible", invertible, marginal)
    report.claim("biconditional", left == right, met.marginal or marginal)
    return report


def check_theorem313(pair: ProjectionPair) -> TheoremReport:
    """``w`` is the projection onto ``(pR ∩ qR) ⊕ (pbar R ∩ qbar R)``."""
    report = new_report(pair, "T3.13")
    w = orth_decomposition(pair, validate=False)

    report.claim("w is a projection", is_projection(w), element=True)
    meet_pq = space_intersection(pair.p_range, pair.q_range)
    meet_bar = _both_complements_meet(pair)
    _range_claim(report, "wR", column_space(w), space_sum(meet_pq, meet_bar))
    _orthogonal_claim(report, "summands orthogonal", meet_pq, meet_bar)

    y = meet_projection(pair, validate=False)
    y_bar = meet_projection(pair.complement(), validate=False)
    report.claim("meet(p, q) is a projection", is_projection(y), element=True)
    report.claim("meet(pbar, qbar) is a projection", is_projection(y_bar), element=True)
    report.compare("w = meet(p, q) + meet(pbar, qbar)", w, y + y_bar)
    return report


def _gated(report: TheoremReport, name: str, holds: bool, marginal: bool) -> bool:
    """Records the hypothesis; the statement is skipped when it fails."""
    if report.hypothesis(name, holds, marginal):
        return True
    report.skip(f"hypothesis not met: {name}")
    return False


def check_corollary35(pair: ProjectionPair) -> TheoremReport:
    """Trivial meet: ``1-pq`` is invertible and ``E = (1-pq)^{-1} p qbar``."""
    met = space_intersection(pair.p_range, pair.q_range)
    report = new_report(pair, "C3.5")
    if not _gated(report, "meet trivial", met.is_zero, met.marginal):
        return report

    ctx = pair.context
    e = oblique_qbar_p(pair)
    one_minus_pq = 1 - pair.p @ pair.q

    invertible, marginal = ctx.is_invertible(one_minus_pq)
    if report.claim("1-pq invertible", invertible, marginal):
        inverse = ctx.inverse(one_minus_pq)
        report.compare("E = (1-pq)^-1 p qbar", e.element, inverse @ pair.p @ pair.qbar)

    _range_claim(report, "ER = pR", e.onto_space, pair.p_range)
    complements = _both_complements_meet(pair)
    _range_claim(
        report,
        "(1-E)R = (pbar R ∩ qbar R) + qR",
        e.along_space,
        space_sum(complements, pair.q_range),
    )
    _orthogonal_claim(report, "(pbar R ∩ qbar R) ⊥ qR", complements, pair.q_range)
    return report


def check_corollary36(pair: ProjectionPair) -> TheoremReport:
    """Full join: ``(1-E)R = qR``."""
    joined = space_sum(pair.p_range, pair.q_range)
    report = new_report(pair, "C3.6")
    if not _gated(report, "join full", joined.is_whole, joined.marginal):
        return report

    e = oblique_qbar_p(pair)
    onto = space_intersection(
        pair.p_range, space_sum(pair.pbar_range, pair.qbar_range)
    )
    _range_claim(report, "ER = pR ∩ (pbar R + qbar R)", e.onto_space, onto)
    _range_claim(report, "(1-E)R = qR", e.along_space, pair.q_range)
    return report


def check_corollary310(pair: ProjectionPair) -> TheoremReport:
    """Direct sum: ``1-qp`` and ``p+q-qp`` are invertible.

    Both ``(1-qp)^{-1} qbar`` and ``p (p+q-qp)^{-1}`` are then the
    idempotent onto ``pR`` along ``qR``.
    """
    direct = is_direct_sum_whole(pair.p_range, pair.q_range)
    marginal = pair.p_range.marginal or pair.q_range.marginal
    report = new_report(pair, "C3.10")
    if not _gated(report, "direct sum", direct, marginal):
        return report

    ctx = pair.context
    p, q = pair.p, pair.q
    one_minus_qp = 1 - q @ p
    p_plus = p + q - q @ p

    inv_ok, inv_marginal = ctx.is_invertible(one_minus_qp)
    sum_ok, sum_marginal = ctx.is_invertible(p_plus)
    report.claim("1-qp invertible", inv_ok, inv_marginal)
    report.claim("p+q-qp invertible", sum_ok, sum_marginal)
    if not (inv_ok and sum_ok):
        return report

    try:
        f = ctx.inverse(one_minus_qp) @ pair.qbar
        g = p @ ctx.inverse(p_plus)
    except SingularMatrixError as e:
        report.claim("inverses computed", False, True)
        report.note(str(e))
        return report

    for name, x in (("(1-qp)^-1 qbar", f), ("p(p+q-qp)^-1", g)):
        _range_claim(report, f"{name} R = pR", column_space(x), pair.p_range)
        _range_claim(report, f"(1 - {name}) R = qR", column_space(1 - x), pair.q_range)
    report.compare("(1-qp)^-1 qbar = p(p+q-qp)^-1", f, g)
    return report


def check_corollaries(pair: ProjectionPair) -> TheoremReport:
    """Runs every corollary whose hypothesis holds for ``pair``.

    Corollaries whose hypothesis fails are listed in ``notes`` and in
    ``hypothesis_flags`` but do not make the combined report inconclusive.
    """
    combined = new_report(pair, "C3")
    for check in (check_corollary35, check_corollary36, check_corollary310):
        report = check(pair)
        if report.skipped:
            sid = report.statement_id
            combined.hypothesis_flags.update(
                {f"{sid}:{k}": v for k, v in report.hypothesis_flags.items()}
            )
            combined.note(f"{sid} {report.skipped}")
            continue
        combined.absorb(report, f"{report.statement_id}:")
    return combined


def check_lemma33_constructions(pair: ProjectionPair) -> TheoremReport:
    """Runs the ``ee^+`` range check on ``E``, ``F`` and ``G``."""
    report = new_report(pair, "L3.3")
    constructions = {
        "E": oblique_qbar_p(pair),
        "F": oblique_one_minus_qp(pair),
        "G": oblique_p_pqqp(pair),
    }
    for name, idem in constructions.items():
        if not report.claim(f"{name} idempotent", idem.is_idempotent, element=True):
            continue
        report.absorb(check_lemma33(idem.element), f"{name}: ")
    return report


@dataclass
class ProbeResult:
    """Outcome of :func:`probe_theorem311`.

    Attributes
    ----------
    samples : int
        Number of pairs examined.
    disagreements : list of dict
        One entry per clause where the element equality and the
        subspace condition disagree outside the marginal zone.
    marginal : int
        Clause evaluations skipped because a rank decision was marginal.
    residuals : dict
        Largest residual of each element equality on pairs where the
        subspace condition holds.
    """

    samples: int = 0
    disagreements: list[dict] = field(default_factory=list)
    marginal: int = 0
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return not self.disagreements


def probe_theorem311(pairs: Iterable[ProjectionPair]) -> ProbeResult:
    """Searches sampled pairs for behavior contradicting Theorem 3.11.

    Matrix rings over a field are *-reducing, so no disagreement is
    expected; the result documents this on the sampled pairs.
    """
    result = ProbeResult()
    for index, pair in enumerate(pairs):
        result.samples += 1
        equalities = _element_equalities(pair)
        conditions = _subspace_conditions(pair)

        for k, (eq_name, cond_name) in _CLAUSES.items():
            equal, residual, mp_marginal = equalities[eq_name]
            holds, marginal = conditions[cond_name]
            if marginal or mp_marginal:
                result.marginal += 1
                continue
            if holds:
                result.residuals[eq_name] = max(
                    result.residuals.get(eq_name, 0.0), residual
                )
            if equal != holds:
                log.info("Clause %d disagrees on sample %d.", k, index)
                result.disagreements.append(
                    {
                        "sample": index,
                        "clause": k,
                        "element_equal": equal,
                        "condition": holds,
                        "residual": residual,
                    }
                )
    return result
