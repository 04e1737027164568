from .pairs import (
    ProjectionPair,
    backend_mp_inverse,
    build_pair,
    check_join_projection,
    check_lemma22,
    check_lemma23,
    check_lemma25,
    check_lemma31,
    check_lemma32_transfer,
    check_lemma33,
    check_meet_projection,
    check_surjectivity_criterion,
    checked_projection,
    complement_join_projection,
    join_projection,
    meet_projection,
    mp_one_minus_pq,
    mp_one_minus_qp,
    mp_p_minus_pqp,
    mp_p_qbar,
    mp_qbar_p,
    mp_transfer,
    new_report,
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
