"""Seeded verification campaigns over many projection pairs."""

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import pandas as pd
import toml

from projcalc.exceptions import ConfigError, ProjcalcError
from projcalc.idempotents import ProbeResult, probe_theorem311
from projcalc.numeric import ToleranceConfig
from projcalc.reports import SCHEMA, TheoremReport, Verdict
from projcalc.ring import BackendKind

from .generators import (
    FIXTURE_NAMES,
    RandomPairGenerator,
    child_seed,
    degenerate_fixtures,
    pair_fingerprint,
)
from .statements import STATEMENT_IDS, verify

__all__ = [
    "CampaignConfig",
    "CampaignSummary",
    "TrialSpec",
    "exit_code",
    "run_campaign",
    "run_probe",
    "summarize",
    "trial_specs",
]

log = logging.getLogger(__name__)

_RANK_RULES = ("uniform", "grid")


@dataclass(frozen=True)
class CampaignConfig:
    """What a campaign samples and verifies.

    Parameters
    ----------
    backend : BackendKind or str
        ``'exact'`` or ``'float'``.
    dims : sequence of int
        Ring dimensions, each at least 1.
    trials_per_dim : int
        Random pairs per dimension, on top of the degenerate fixtures.
    seed : int
        Campaign seed, ``0 <= seed < 2**64``.
    theorems : sequence of str, optional
        Statement ids, or ``['all']``. Default: all
    ranks : str or sequence of pairs, optional
        ``'uniform'`` draws ``rank_p`` and ``rank_q`` uniformly from
        ``0..n``, ``'grid'`` cycles through all rank combinations by
        trial index, and an explicit list of ``[rank_p, rank_q]`` is
        cycled as given (ranks above ``n`` are clipped).
        Default: ``'uniform'``
    fixtures : bool, optional
        Inject the degenerate pairs once per dimension. Default: ``True``
    tolerance : ToleranceConfig, optional

    Notes
    -----
    A TOML config may look like the following:

    .. code-block:: toml

        backend = "float"
        dims = [2, 3, 4]
        trials_per_dim = 20
        seed = 1
        theorems = ["L2.2", "T3.4"]

        [tolerance]
        equality_rel_tol = 1e-10
    """

    backend: BackendKind
    dims: tuple[int, ...]
    trials_per_dim: int
    seed: int
    theorems: tuple[str, ...] = STATEMENT_IDS
    ranks: str | tuple[tuple[int, int], ...] = "uniform"
    fixtures: bool = True
    tolerance: ToleranceConfig = field(default_factory=ToleranceConfig)

    def __post_init__(self):
        try:
            object.__setattr__(self, "backend", BackendKind(self.backend))
        except ValueError as e:
            raise ConfigError(f"Unknown backend {self.backend!r}.") from e

        dims = tuple(int(n) for n in self.dims)
        if not dims or any(n < 1 for n in dims):
            raise ConfigError(f"dims must be a nonempty list of n >= 1, got {dims}.")
        object.__setattr__(self, "dims", dims)

        if int(self.trials_per_dim) < 1:
            raise ConfigError(
                f"trials_per_dim must be at least 1, got {self.trials_per_dim}."
            )
        object.__setattr__(self, "trials_per_dim", int(self.trials_per_dim))

        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError(f"seed must fit in 64 unsigned bits, got {self.seed}.")
        object.__setattr__(self, "seed", int(self.seed))

        theorems = self.theorems
        theorems = (theorems,) if isinstance(theorems, str) else tuple(theorems)
        if theorems in (("all",), ()):
            theorems = STATEMENT_IDS
        unknown = [t for t in theorems if t not in STATEMENT_IDS]
        if unknown:
            raise ConfigError(f"Unknown statement ids: {', '.join(unknown)}.")
        object.__setattr__(self, "theorems", theorems)

        if isinstance(self.ranks, str):
            if self.ranks not in _RANK_RULES:
                raise ConfigError(
                    f"ranks must be one of {_RANK_RULES} or a list of pairs, "
                    f"got {self.ranks!r}."
                )
        else:
            try:
                ranks = tuple((int(rp), int(rq)) for rp, rq in self.ranks)
            except (TypeError, ValueError) as e:
                raise ConfigError("ranks must be a list of [rank_p, rank_q].") from e
            if not ranks or any(r < 0 for pair in ranks for r in pair):
                raise ConfigError("Explicit ranks must be nonempty and >= 0.")
            object.__setattr__(self, "ranks", ranks)

        if not isinstance(self.tolerance, ToleranceConfig):
            object.__setattr__(
                self, "tolerance", ToleranceConfig.from_dict(self.tolerance)
            )

    @classmethod
    def from_dict(cls, data: dict) -> "CampaignConfig":
        data = dict(data)
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Unknown config keys: {', '.join(sorted(unknown))}.")

        missing = {"backend", "dims", "trials_per_dim", "seed"} - set(data)
        if missing:
            raise ConfigError(f"Missing config keys: {', '.join(sorted(missing))}.")

        data["tolerance"] = ToleranceConfig.from_dict(data.get("tolerance"))
        return cls(**data)

    @classmethod
    def load(cls, config: "dict | str | Path") -> "CampaignConfig":
        """Reads a config from a dict or a TOML/JSON file (chosen by suffix)."""
        if isinstance(config, dict):
            return cls.from_dict(config)

        path = Path(config)
        if not path.is_file():
            raise OSError(f"File {path.absolute()} does not exist.")

        with open(path) as f:
            try:
                if path.suffix == ".json":
                    data = json.load(f)
                else:
                    data = toml.load(f)
            except (json.JSONDecodeError, toml.TomlDecodeError) as e:
                raise ConfigError(f"Cannot parse {path}: {e}") from e
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["backend"] = self.backend.value
        out["dims"] = list(self.dims)
        out["theorems"] = list(self.theorems)
        if not isinstance(self.ranks, str):
            out["ranks"] = [list(r) for r in self.ranks]
        return out


@dataclass(frozen=True)
class TrialSpec:
    """Reproduction coordinates of one pair."""

    dim: int
    trial: int | str
    child_seed: int
    fixture: str | None = None

    def seed_path(self, config: CampaignConfig) -> dict:
        return {
            "seed": config.seed,
            "dim": self.dim,
            "trial": self.trial,
            "child_seed": self.child_seed,
            "fixture": self.fixture,
        }


def trial_specs(config: CampaignConfig) -> list[TrialSpec]:
    """Every trial in deterministic ``(dim, fixtures, trial)`` order."""
    specs = []
    for n in config.dims:
        if config.fixtures:
            seed = child_seed(config.seed, n, "fixtures")
            specs.extend(
                TrialSpec(n, f"fixture:{f}", seed, f) for f in FIXTURE_NAMES
            )
        specs.extend(
            TrialSpec(n, t, child_seed(config.seed, n, t))
            for t in range(config.trials_per_dim)
        )
    return specs


def _ranks(config: CampaignConfig, spec: TrialSpec, gen: RandomPairGenerator):
    n = spec.dim
    if config.ranks == "uniform":
        return int(gen.rng.integers(0, n + 1)), int(gen.rng.integers(0, n + 1))
    if config.ranks == "grid":
        return divmod(spec.trial % (n + 1) ** 2, n + 1)
    rank_p, rank_q = config.ranks[spec.trial % len(config.ranks)]
    return min(rank_p, n), min(rank_q, n)


def _build(config: CampaignConfig, spec: TrialSpec):
    if spec.fixture is not None:
        fixtures = degenerate_fixtures(
            spec.dim, spec.child_seed, config.backend, config.tolerance
        )
        return fixtures[spec.fixture], None

    gen = RandomPairGenerator(spec.child_seed, config.backend, config.tolerance)
    rank_p, rank_q = _ranks(config, spec, gen)
    return gen.pair(spec.dim, rank_p, rank_q), (rank_p, rank_q)


def _error_report(statement_id: str, error: Exception) -> TheoremReport:
    report = TheoremReport(statement_id)
    report.claim("completed", False)
    report.note(f"{type(error).__name__}: {error}")
    return report


def _run_trial(config: CampaignConfig, spec: TrialSpec) -> list[dict]:
    pair, ranks = _build(config, spec)
    fingerprint = pair_fingerprint(pair)
    seed_path = spec.seed_path(config)
    if ranks is not None:
        seed_path["rank_p"], seed_path["rank_q"] = ranks

    records = []
    for sid in config.theorems:
        try:
            report = verify(sid, pair)
        except ProjcalcError as e:
            log.error("Statement %s raised on trial %s: %s", sid, spec.trial, e)
            report = _error_report(sid, e)

        report.pair_fingerprint = fingerprint
        report.seed_path = seed_path
        record = report.to_dict()
        record["backend"] = config.backend.value
        record["dim"] = spec.dim
        record["max_residual"] = report.max_residual
        records.append(record)
    return records


def _run_trial_packed(args) -> list[dict]:
    return _run_trial(*args)


def exit_code(verdicts) -> int:
    """0 if everything passed, 1 on any failure, 2 if only inconclusives remain."""
    verdicts = set(verdicts)
    if Verdict.FAIL.value in verdicts:
        return 1
    if Verdict.INCONCLUSIVE.value in verdicts:
        return 2
    return 0


@dataclass
class CampaignSummary:
    """Aggregated campaign outcome.

    Attributes
    ----------
    records : list of dict
        One report per (trial, statement) in deterministic order.
    table : pandas.DataFrame
        Per-statement counts of each verdict and the largest residual.
    """

    records: list[dict]
    table: pd.DataFrame

    @property
    def exit_code(self) -> int:
        return exit_code(r["verdict"] for r in self.records)

    @property
    def failures(self) -> list[dict]:
        return [r for r in self.records if r["verdict"] == Verdict.FAIL.value]

    @property
    def inconclusive(self) -> list[dict]:
        return [
            r for r in self.records if r["verdict"] == Verdict.INCONCLUSIVE.value
        ]

    def to_dict(self) -> dict:
        per_statement = {
            sid: {
                "pass": int(row["pass"]),
                "fail": int(row["fail"]),
                "inconclusive": int(row["inconclusive"]),
                "max_residual": float(row["max_residual"]),
            }
            for sid, row in self.table.iterrows()
        }
        return {
            "schema": SCHEMA,
            "summary": {
                "records": len(self.records),
                "exit_code": self.exit_code,
                "per_statement": per_statement,
                "failures": [
                    {"statement_id": r["statement_id"], "seed_path": r["seed_path"]}
                    for r in self.failures
                ],
                "inconclusive": [
                    {
                        "statement_id": r["statement_id"],
                        "seed_path": r["seed_path"],
                        "reason": r["skipped"] or ", ".join(r["marginal"]) or None,
                    }
                    for r in self.inconclusive
                ],
            },
        }


def summarize(records: list[dict], theorems=None) -> CampaignSummary:
    """Aggregates report records with pandas."""
    columns = [v.value for v in Verdict]
    if not records:
        table = pd.DataFrame(columns=[*columns, "max_residual"])
        return CampaignSummary(records, table)

    df = pd.DataFrame(
        {
            "statement_id": [r["statement_id"] for r in records],
            "verdict": [r["verdict"] for r in records],
            "max_residual": [r["max_residual"] for r in records],
        }
    )
    counts = (
        df.groupby(["statement_id", "verdict"]).size().unstack(fill_value=0)
    ).reindex(columns=columns, fill_value=0)
    residuals = df.groupby("statement_id")["max_residual"].max()
    table = counts.join(residuals)

    order = [t for t in (theorems or table.index) if t in table.index]
    return CampaignSummary(records, table.loc[order])


def run_campaign(
    config: CampaignConfig, report_path=None, workers: int = 1
) -> CampaignSummary:
    """Runs every statement of ``config`` on every sampled pair.

    Parameters
    ----------
    config : CampaignConfig
    report_path : str or Path, optional
        Where to write the JSON lines report: one record per line,
        followed by a summary object. Keys are sorted and no timing is
        recorded, so identical configs give identical files.
    workers : int, optional
        Process pool size; results keep the trial order. Default: 1

    Returns
    -------
    CampaignSummary
    """
    specs = trial_specs(config)
    log.info(
        "Running %d trials x %d statements on the %s backend.",
        len(specs),
        len(config.theorems),
        config.backend.value,
    )

    jobs = [(config, spec) for spec in specs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_trial_packed, jobs))
    else:
        results = []
        for job in jobs:
            if not results or job[1].dim != jobs[len(results) - 1][1].dim:
                log.info("Dimension %d", job[1].dim)
            results.append(_run_trial_packed(job))

    records = [record for trial in results for record in trial]
    summary = summarize(records, config.theorems)

    if report_path is not None:
        path = Path(report_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            for record in records:
                f.write(json.dumps(record, sort_keys=True) + "\n")
            f.write(json.dumps(summary.to_dict(), sort_keys=True) + "\n")
        log.info("Report written to %s", path)

    return summary


def run_probe(
    backend="float",
    dims=(2, 3, 4),
    trials: int = 50,
    seed: int = 0,
    tolerance: ToleranceConfig | None = None,
) -> dict[int, ProbeResult]:
    """Samples random pairs per dimension for :func:`probe_theorem311`."""
    tolerance = tolerance or ToleranceConfig()
    results = {}
    for n in dims:

        def pairs(n=n):
            for t in range(trials):
                gen = RandomPairGenerator(child_seed(seed, n, t), backend, tolerance)
                ranks = gen.rng.integers(0, n + 1, size=2)
                yield gen.pair(n, int(ranks[0]), int(ranks[1]))

        results[n] = probe_theorem311(pairs())
        log.info(
            "n=%d: %d samples, %d disagreements",
            n,
            results[n].samples,
            len(results[n].disagreements),
        )
    return results
