"""Tolerance policy of the float backend."""

import os
from dataclasses import asdict, dataclass, fields, replace

from projcalc.exceptions import ConfigError

__all__ = ["ENV_TOL", "ToleranceConfig"]

ENV_TOL = "PROJCALC_TOL"


@dataclass(frozen=True)
class ToleranceConfig:
    """Rank cutoff and equality thresholds for floating-point rings.

    The exact backend ignores all of these.

    Parameters
    ----------
    rank_cutoff_factor : float, optional
        Singular values ``s <= rank_cutoff_factor * max(rows, cols) * s_max``
        count as zero. Default: 1e-12
    equality_rel_tol : float, optional
        Relative part of the Frobenius equality test. Default: 1e-10
    equality_abs_tol : float, optional
        Absolute part of the Frobenius equality test. Default: 1e-12
    rank_noise_floor : float, optional
        Only applied when a reference norm is given: singular values
        ``s <= rank_noise_floor * reference_norm`` also count as zero,
        so that rounding noise such as ``p - p @ p`` has rank zero in a
        ring built from projections. Default: 1e-10
    near_cutoff_ratio : float, optional
        A singular value within a factor ``near_cutoff_ratio`` of the
        cutoff makes the rank decision marginal. Default: 100
    condition_cap : float, optional
        Largest ratio of nonzero singular values for which residual
        guarantees are claimed. Default: 1e6
    """

    rank_cutoff_factor: float = 1e-12
    equality_rel_tol: float = 1e-10
    equality_abs_tol: float = 1e-12
    rank_noise_floor: float = 1e-10
    near_cutoff_ratio: float = 100.0
    condition_cap: float = 1e6

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, (int, float)) or not value > 0:
                raise ConfigError(
                    f"Tolerance '{f.name}' must be a strictly positive number, "
                    f"got {value!r}."
                )
        if self.near_cutoff_ratio < 1:
            raise ConfigError(
                f"near_cutoff_ratio must be at least 1, got {self.near_cutoff_ratio}."
            )

    @classmethod
    def from_env(cls, env=None, **overrides) -> "ToleranceConfig":
        """Builds a config, reading ``PROJCALC_TOL`` into ``equality_rel_tol``.

        Keyword overrides win over the environment.
        """
        env = os.environ if env is None else env
        values = {}

        raw = env.get(ENV_TOL)
        if raw not in (None, ""):
            try:
                values["equality_rel_tol"] = float(raw)
            except ValueError as e:
                raise ConfigError(f"{ENV_TOL}={raw!r} is not a number.") from e

        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @classmethod
    def from_dict(cls, data: dict | None) -> "ToleranceConfig":
        if not data:
            return cls()
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(
                f"Unknown tolerance keys {sorted(unknown)}. "
                f"Valid keys are {sorted(known)}."
            )
        return cls(**{k: float(v) for k, v in data.items()})

    def to_dict(self) -> dict:
        return asdict(self)

    def with_rel_tol(self, rel_tol: float | None) -> "ToleranceConfig":
        if rel_tol is None:
            return self
        return replace(self, equality_rel_tol=float(rel_tol))

    def cutoff(
        self,
        shape: tuple[int, int],
        sigma_max: float,
        reference_norm: float | None = None,
    ) -> float:
        """Singular value threshold for a matrix of the given shape.

        Without ``reference_norm`` the rule is purely relative to
        ``sigma_max``.
        """
        relative = self.rank_cutoff_factor * max(shape) * sigma_max
        if reference_norm is None:
            return relative
        return max(relative, self.rank_noise_floor * reference_norm)

    def equality_bound(self, scale: float, reference_norm: float | None = None):
        """Largest Frobenius distance accepted between operands of norm ``scale``."""
        if reference_norm is not None:
            scale = max(scale, reference_norm)
        return self.equality_abs_tol + self.equality_rel_tol * scale
