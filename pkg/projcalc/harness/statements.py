"""Registry of verifiable statements and the ``verify`` dispatcher."""

from collections.abc import Callable
from dataclasses import dataclass
from functools import partial

from projcalc import idempotents, pairs
from projcalc.exceptions import UnknownStatementError
from projcalc.numeric import ToleranceConfig
from projcalc.pairs import ProjectionPair, build_pair
from projcalc.reports import TheoremReport

__all__ = ["STATEMENTS", "STATEMENT_IDS", "Statement", "verify"]


@dataclass(frozen=True)
class Statement:
    statement_id: str
    summary: str
    check: Callable[[ProjectionPair], TheoremReport]


def _t311(clause):
    return partial(idempotents.check_theorem311, clauses=(clause,))


_ENTRIES = [
    ("L2.2", "bb* = (p-a)-(p-a)^2, b*b = d-d^2", pairs.check_lemma22),
    ("L2.3", "transfer identities between (p-a)^+ and d^+", pairs.check_lemma23),
    ("L2.5", "closed forms of (1-pq)^+ and (p-pqp)^+", pairs.check_lemma25),
    ("L3.1", "pqp(pqp)^+pq = pq", pairs.check_lemma31),
    ("L3.2.1", "(pbar q)^+ = q(pbar q pbar)^+", pairs.check_lemma32_transfer),
    ("L3.2.2", "join projection onto pR + qR", pairs.check_join_projection),
    ("L3.2.3", "meet projection onto pR ∩ qR", pairs.check_meet_projection),
    (
        "L3.2.4",
        "pR + qR = R iff pbar q pbar R = pbar R",
        pairs.check_surjectivity_criterion,
    ),
    ("L3.3", "ee^+R = eR for E, F and G", idempotents.check_lemma33_constructions),
    ("T3.4", "(qbar p)^+ is an idempotent", idempotents.check_theorem34),
    ("C3.5", "trivial meet: 1-pq invertible", idempotents.check_corollary35),
    ("C3.6", "full join: (1-(qbar p)^+)R = qR", idempotents.check_corollary36),
    ("R3.8", "pR ∩ qR = {0} iff 1-pq invertible", idempotents.check_remark38),
    ("T3.9", "(1-qp)^+ qbar and p(p+q-qp)^+", idempotents.check_theorem39),
    ("C3.10", "direct sum: invertible 1-qp and p+q-qp", idempotents.check_corollary310),
    ("T3.11.1", "E = F iff pR + qR = R", _t311(1)),
    ("T3.11.2", "E = G iff pR ∩ qR = {0}", _t311(2)),
    ("T3.11.3", "F = G iff pR ⊕ qR = R", _t311(3)),
    ("T3.13", "projection onto both meets", idempotents.check_theorem313),
]

STATEMENTS: dict[str, Statement] = {
    sid: Statement(sid, summary, check) for sid, summary, check in _ENTRIES
}
STATEMENT_IDS: tuple[str, ...] = tuple(STATEMENTS)


def _retolerance(pair: ProjectionPair, tol: ToleranceConfig) -> ProjectionPair:
    ctx = pair.context.with_tolerance(tol)
    return build_pair(ctx.element(pair.p.data), ctx.element(pair.q.data))


def verify(
    statement_id: str, pair: ProjectionPair, tol: ToleranceConfig | None = None
) -> TheoremReport:
    """Runs the check registered under ``statement_id``.

    Parameters
    ----------
    statement_id : str
        One of :data:`STATEMENT_IDS`.
    pair : ProjectionPair
    tol : ToleranceConfig, optional
        Replaces the tolerance of the pair's context (float backend).

    Raises
    ------
    UnknownStatementError
        If ``statement_id`` is not registered.
    """
    try:
        statement = STATEMENTS[statement_id]
    except KeyError:
        raise UnknownStatementError(
            f"Unknown statement {statement_id!r}; "
            f"choose one of {', '.join(STATEMENT_IDS)}."
        ) from None

    if tol is not None and tol != pair.context.tolerance:
        pair = _retolerance(pair, tol)
    return statement.check(pair)
