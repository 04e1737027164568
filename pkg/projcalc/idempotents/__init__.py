from .idempotents import (
    ObliqueIdempotent,
    ProbeResult,
    check_corollaries,
    check_corollary35,
    check_corollary36,
    check_corollary310,
    check_lemma33_constructions,
    check_remark38,
    check_theorem34,
    check_theorem39,
    check_theorem311,
    check_theorem313,
    oblique_one_minus_qp,
    oblique_p_pqqp,
    oblique_qbar_p,
    orth_decomposition,
    probe_theorem311,
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
    "check_theorem313",
    "check_theorem34",
    "check_theorem39",
    "oblique_one_minus_qp",
    "oblique_p_pqqp",
    "oblique_qbar_p",
    "orth_decomposition",
    "probe_theorem311",
]
