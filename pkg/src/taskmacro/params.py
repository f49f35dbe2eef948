"""Model parameters and conventions shared across all modules.

All rates are monthly unless noted. The default values reproduce the baseline
calibration used throughout the package; everything can be overridden per run,
either in code or through the CLI's flat ``key = value`` parameter files.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Any


class ConfigError(ValueError):
    """Invalid parameter value or unknown configuration key."""


GROWTH_CONVENTIONS = ("annual-label", "printed")
EXPONENT_CONVENTIONS = ("standard", "printed")
FRONTIER_METHODS = ("taylor", "exact")


@dataclass(frozen=True)
class ModelParams:
    """Complete parameter set for the steady-state economy.

    Technology
    ----------
    sigma : elasticity of substitution across tasks (0 < sigma < 1 baseline).
    alpha : exponential productivity gradient across labor tasks.
    B : final-good productivity scale.
    gamma_k : capital task-productivity scale. ``None`` (default) pins gamma_k
        so that the capital-cost ratio equals 1 + mu exactly, which makes the
        zero-return automation frontier vanish to machine precision. Set a
        number (e.g. 0.10) to use an explicit scale instead.
    m : measure of tasks assigned to labor by the technology frontier. Lower
        values mean more tasks are automatable.

    Capital production (time to build)
    ----------------------------------
    delta : monthly depreciation rate of capital.
    g : trend growth rate. ``None`` resolves via ``growth_convention``.
    z_psi : trend decline rate of the capital deflator. ``None`` resolves via
        ``growth_convention``.
    upsilon : convexity of the project-cost schedule.
    pi_I : monthly completion probability of an investment project.
    beta_c : capitalist discount factor.

    Labor market
    ------------
    iota : curvature of the degree-one matching function.
    lam : exogenous monthly job-separation rate.
    kappa0, kappa1 : fixed and per-fill components of the vacancy cost.
    eps0, eps1 : level and elasticity of the disutility of hours.
    b0, b1 : unemployment-benefit policy rule b = b0 + b1 * (1 - L).
    beta_w : worker discount factor (bargaining-relevant).

    Conventions / solver knobs
    --------------------------
    growth_convention : "annual-label" reads the trend growth as 2% per year
        (0.02/12 monthly); "printed" uses 0.0167 monthly.
    investment_exponent_convention : sign convention of the time-to-build
        adjustment exponents; "standard" (default) keeps the summed expenditure
        recursion exactly consistent with the closed form.
    frontier_method : "taylor" (default) selects regimes with the quadratic
        frontier approximation; "exact" inverts the full boundary condition.
    theta_min, theta_max, theta_grid_points : tightness scan window.
    damping, inner_tol, max_inner : nested fixed-point controls.
    """

    # technology
    sigma: float = 0.6
    alpha: float = 1.15
    B: float = 1.0
    gamma_k: float | None = None
    m: float = 0.9

    # capital production
    delta: float = 0.0079
    g: float | None = None
    z_psi: float | None = None
    upsilon: float = 5.84
    pi_I: float = 0.12
    beta_c: float = 1.0

    # labor market
    iota: float = 1.27
    lam: float = 0.034
    kappa0: float = 8.25
    kappa1: float = 0.5
    eps0: float = 1.1
    eps1: float = 0.75
    b0: float = 0.05
    b1: float = 0.5
    beta_w: float = 0.98

    # conventions
    growth_convention: str = "annual-label"
    investment_exponent_convention: str = "standard"
    frontier_method: str = "taylor"

    # solver controls
    theta_min: float = 1e-3
    theta_max: float = 20.0
    theta_grid_points: int = 200
    damping: float = 0.5
    inner_tol: float = 1e-14
    max_inner: int = 800

    def __post_init__(self) -> None:
        problems = self.validate()
        if problems:
            raise ConfigError("; ".join(problems))

    # -- resolved conventions -------------------------------------------------

    @property
    def growth_rate(self) -> float:
        """Monthly trend growth rate after applying the convention flag."""
        if self.g is not None:
            return self.g
        return 0.02 / 12.0 if self.growth_convention == "annual-label" else 0.0167

    @property
    def deflator_decline(self) -> float:
        """Monthly decline rate of the capital deflator."""
        if self.z_psi is not None:
            return self.z_psi
        return 0.02 / 12.0 if self.growth_convention == "annual-label" else 0.0167

    @property
    def zbar(self) -> float:
        """Combined trend rate entering the time-to-build discounting."""
        return self.growth_rate + self.deflator_decline

    # -- validation -----------------------------------------------------------

    def validate(self) -> list[str]:
        problems: list[str] = []
        if not 0.0 < self.sigma < 1.0:
            problems.append(f"sigma must lie in (0,1), got {self.sigma}")
        if self.alpha <= 0.0:
            problems.append(f"alpha must be positive, got {self.alpha}")
        if self.B <= 0.0:
            problems.append(f"B must be positive, got {self.B}")
        if self.gamma_k is not None and self.gamma_k <= 0.0:
            problems.append(f"gamma_k must be positive, got {self.gamma_k}")
        if not 0.0 < self.m <= 1.0:
            problems.append(f"m must lie in (0,1], got {self.m}")
        if not 0.0 < self.delta < 1.0:
            problems.append(f"delta must lie in (0,1), got {self.delta}")
        if not 1.0 < self.upsilon:
            problems.append(f"upsilon must exceed 1, got {self.upsilon}")
        if not 0.0 < self.pi_I <= 1.0:
            problems.append(f"pi_I must lie in (0,1], got {self.pi_I}")
        if not 0.0 < self.beta_c <= 1.0:
            problems.append(f"beta_c must lie in (0,1], got {self.beta_c}")
        if not 0.0 < self.beta_w <= 1.0:
            problems.append(f"beta_w must lie in (0,1], got {self.beta_w}")
        if self.beta_w > self.beta_c:
            problems.append(
                f"beta_w ({self.beta_w}) must not exceed beta_c ({self.beta_c})"
            )
        if self.iota <= 0.0:
            problems.append(f"iota must be positive, got {self.iota}")
        if not 0.0 < self.lam < 1.0:
            problems.append(f"lam must lie in (0,1), got {self.lam}")
        if self.kappa0 < 0.0 or self.kappa1 < 0.0:
            problems.append("vacancy cost components must be nonnegative")
        if self.eps0 <= 0.0 or self.eps1 <= 0.0:
            problems.append("hours disutility parameters must be positive")
        if self.b0 < 0.0 or self.b1 < 0.0:
            problems.append("benefit policy parameters must be nonnegative")
        if self.growth_convention not in GROWTH_CONVENTIONS:
            problems.append(
                f"growth_convention must be one of {GROWTH_CONVENTIONS}, "
                f"got {self.growth_convention!r}"
            )
        if self.investment_exponent_convention not in EXPONENT_CONVENTIONS:
            problems.append(
                f"investment_exponent_convention must be one of "
                f"{EXPONENT_CONVENTIONS}, got {self.investment_exponent_convention!r}"
            )
        if self.frontier_method not in FRONTIER_METHODS:
            problems.append(
                f"frontier_method must be one of {FRONTIER_METHODS}, "
                f"got {self.frontier_method!r}"
            )
        if not 0.0 < self.theta_min < self.theta_max:
            problems.append("theta scan window must satisfy 0 < theta_min < theta_max")
        if self.theta_grid_points < 10:
            problems.append("theta_grid_points must be at least 10")
        if not 0.0 < self.damping <= 1.0:
            problems.append("damping must lie in (0,1]")
        return problems

    # -- construction / serialization ------------------------------------------

    def updated(self, **changes: Any) -> "ModelParams":
        """Return a copy with the given fields replaced."""
        return replace(self, **changes)

    def to_mapping(self) -> dict[str, Any]:
        """Flat mapping of every field, suitable for manifests."""
        out: dict[str, Any] = {}
        for f in fields(self):
            out[f.name] = getattr(self, f.name)
        # resolved conventions are echoed explicitly so a manifest is complete
        out["resolved_g"] = self.growth_rate
        out["resolved_z_psi"] = self.deflator_decline
        return out

    @classmethod
    def field_names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    @classmethod
    def from_mapping(cls, mapping: dict[str, str | float | int | None]) -> "ModelParams":
        """Build from a flat mapping, rejecting unknown keys.

        String values are coerced to the target type; ``none``/empty strings
        map to ``None`` for optional fields.
        """
        known = {f.name: f for f in fields(cls)}
        values: dict[str, Any] = {}
        for key, raw in mapping.items():
            if key not in known:
                raise ConfigError(f"unknown parameter key {key!r}")
            values[key] = _coerce(key, raw)
        return cls(**values)


_STRING_FIELDS = {"growth_convention", "investment_exponent_convention", "frontier_method"}
_INT_FIELDS = {"theta_grid_points", "max_inner"}
_OPTIONAL_FIELDS = {"gamma_k", "g", "z_psi"}


def _coerce(key: str, raw: Any) -> Any:
    if raw is None:
        return None
    if isinstance(raw, str):
        text = raw.strip()
        if key in _STRING_FIELDS:
            return text
        if text.lower() in {"none", ""} and key in _OPTIONAL_FIELDS:
            return None
        try:
            return int(text) if key in _INT_FIELDS else float(text)
        except ValueError as exc:
            raise ConfigError(f"cannot parse value {raw!r} for key {key!r}") from exc
    if key in _INT_FIELDS:
        return int(raw)
    if key in _STRING_FIELDS:
        return str(raw)
    return float(raw)
