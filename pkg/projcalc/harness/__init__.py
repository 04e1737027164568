from .campaign import (
    CampaignConfig,
    CampaignSummary,
    TrialSpec,
    exit_code,
    run_campaign,
    run_probe,
    summarize,
    trial_specs,
)
from .generators import (
    FIXTURE_NAMES,
    SEED_KEY,
    RandomPairGenerator,
    child_seed,
    degenerate_fixtures,
    hypothesis_grid,
    pair_fingerprint,
    random_pair,
    random_pair_with_overlap,
    random_projection,
)
from .matrix_io import (
    element_from_dict,
    matrix_from_dict,
    matrix_to_dict,
    pair_from_dict,
    pair_to_dict,
    read_element,
    read_json,
    read_pair,
    write_json,
)
from .statements import STATEMENT_IDS, STATEMENTS, Statement, verify

__all__ = [
    "FIXTURE_NAMES",
    "SEED_KEY",
    "STATEMENTS",
    "STATEMENT_IDS",
    "CampaignConfig",
    "CampaignSummary",
    "RandomPairGenerator",
    "Statement",
    "TrialSpec",
    "child_seed",
    "degenerate_fixtures",
    "element_from_dict",
    "exit_code",
    "hypothesis_grid",
    "matrix_from_dict",
    "matrix_to_dict",
    "pair_fingerprint",
    "pair_from_dict",
    "pair_to_dict",
    "random_pair",
    "random_pair_with_overlap",
    "random_projection",
    "read_element",
    "read_json",
    "read_pair",
    "run_campaign",
    "run_probe",
    "summarize",
    "trial_specs",
    "verify",
    "write_json",
]
