"""Structured verdicts for single statements.

A :class:`TheoremReport` collects named claims. Element identities carry
a Frobenius residual, subspace claims only a truth value. The verdict
is derived from the claims, never stored.
"""

from dataclasses import dataclass, field
from enum import Enum

__all__ = ["SCHEMA", "TheoremReport", "Verdict"]

SCHEMA = "projcalc/1"


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"

    @property
    def json_value(self) -> bool | str:
        if self is Verdict.INCONCLUSIVE:
            return self.value
        return self is Verdict.PASS


@dataclass
class TheoremReport:
    """Outcome of verifying one statement on one projection pair.

    Attributes
    ----------
    statement_id : str
        Registry key, e.g. ``'L2.2'`` or ``'T3.11.2'``.
    residuals : dict
        Claim name to Frobenius residual ``|lhs - rhs|_F``.
    claims : dict
        Claim name to truth value under the context equality test.
    hypothesis_flags : dict
        Hypothesis name to truth value, as decided by the subspace oracle.
    marginal : set
        Names of claims or hypotheses whose rank decision was close to
        the cutoff.
    ill_conditioned : bool
        Float pair outside the conditioning cap; failing residual claims
        are then inconclusive instead of hard failures.
    skipped : str or None
        Reason why the statement does not apply to the pair.
    """

    statement_id: str
    residuals: dict[str, float] = field(default_factory=dict)
    claims: dict[str, bool] = field(default_factory=dict)
    hypothesis_flags: dict[str, bool] = field(default_factory=dict)
    marginal: set[str] = field(default_factory=set)
    ill_conditioned: bool = False
    skipped: str | None = None
    pair_fingerprint: str | None = None
    seed_path: dict | None = None
    notes: list[str] = field(default_factory=list)
    _element_claims: set[str] = field(default_factory=set, repr=False)

    def compare(self, name: str, lhs, rhs) -> bool:
        """Records the identity ``lhs = rhs`` of two ring elements."""
        ctx = lhs.context
        return self.residual(name, ctx.residual(lhs, rhs), ctx.equal(lhs, rhs))

    def residual(self, name: str, value: float, holds: bool) -> bool:
        self.residuals[name] = float(value)
        self.claims[name] = bool(holds)
        return bool(holds)

    def claim(
        self, name: str, holds: bool, marginal: bool = False, element: bool = False
    ) -> bool:
        """Records a truth value.

        ``element`` marks claims decided by the ring equality test on
        constructed elements; like residuals they soften on
        ill-conditioned pairs.
        """
        self.claims[name] = bool(holds)
        if element:
            self._element_claims.add(name)
        if marginal:
            self.marginal.add(name)
        return bool(holds)

    def hypothesis(self, name: str, holds: bool, marginal: bool = False) -> bool:
        self.hypothesis_flags[name] = bool(holds)
        if marginal:
            self.marginal.add(name)
        return bool(holds)

    def skip(self, reason: str) -> None:
        self.skipped = reason

    def note(self, text: str) -> None:
        self.notes.append(text)

    def mark_ill_conditioned(self, flag: bool = True) -> None:
        self.ill_conditioned = self.ill_conditioned or bool(flag)

    def hard_failures(self) -> list[str]:
        """Claims that fail and cannot be blamed on tolerance or conditioning."""
        out = []
        for name, holds in self.claims.items():
            if holds or name in self.marginal:
                continue
            if self.ill_conditioned and (
                name in self.residuals or name in self._element_claims
            ):
                continue
            out.append(name)
        return out

    @property
    def verdict(self) -> Verdict:
        if self.hard_failures():
            return Verdict.FAIL
        if self.skipped or self.marginal or not all(self.claims.values()):
            return Verdict.INCONCLUSIVE
        return Verdict.PASS

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def absorb(self, other: "TheoremReport", prefix: str = "") -> "TheoremReport":
        """Merges the claims of ``other`` under ``prefix``."""

        def key(name):
            return f"{prefix}{name}"

        self.residuals.update({key(k): v for k, v in other.residuals.items()})
        self.claims.update({key(k): v for k, v in other.claims.items()})
        self.hypothesis_flags.update(
            {key(k): v for k, v in other.hypothesis_flags.items()}
        )
        self.marginal.update(key(k) for k in other.marginal)
        self._element_claims.update(key(k) for k in other._element_claims)
        self.ill_conditioned = self.ill_conditioned or other.ill_conditioned
        if other.skipped and not self.skipped:
            self.skipped = other.skipped
        self.notes.extend(other.notes)
        return self

    @classmethod
    def combine(cls, statement_id: str, reports, prefixes=None) -> "TheoremReport":
        """One report holding the claims of several."""
        combined = cls(statement_id)
        prefixes = prefixes or [f"{r.statement_id}:" for r in reports]
        for prefix, report in zip(prefixes, reports):
            combined.absorb(report, prefix)
        return combined

    def to_dict(self) -> dict:
        """JSON-ready record; keys and names are sorted for stable output."""
        return {
            "schema": SCHEMA,
            "statement_id": self.statement_id,
            "pass": self.verdict.json_value,
            "verdict": self.verdict.value,
            "residuals": dict(sorted(self.residuals.items())),
            "claims": dict(sorted(self.claims.items())),
            "hypothesis_flags": dict(sorted(self.hypothesis_flags.items())),
            "marginal": sorted(self.marginal),
            "ill_conditioned": self.ill_conditioned,
            "skipped": self.skipped,
            "pair_fingerprint": self.pair_fingerprint,
            "seed_path": self.seed_path,
            "notes": list(self.notes),
        }
