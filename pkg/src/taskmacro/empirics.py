"""Annual national-accounts moments, calibration, and counterfactual splits.

The model runs at a monthly frequency; national-accounts data are annual.
Flow moments therefore compare annualized model flows (twelve times the
monthly flow) with annual data, while the capital stock is a point-in-time
value. All data ratios are unit-free, so no deflators are needed.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import capital, technology
from .equilibrium import SolverError, SteadyState, solve_steady_state
from .params import ModelParams

logger = logging.getLogger(__name__)

MONTHS_PER_YEAR = 12

#: columns a macro series file must provide, in canonical order
REQUIRED_COLUMNS = (
    "year",
    "py",
    "wn",
    "dep",
    "inv",
    "pkk",
    "u",
    "retained",
    "profits_after_tax",
)

#: columns that must be strictly positive in valid data
_POSITIVE_COLUMNS = ("py", "wn", "dep", "pkk")


class DataError(ValueError):
    """A macro series file is malformed; the message cites file and line."""


class CalibrationError(RuntimeError):
    """Targets could not be matched; the message reports the nearest fit."""


# ---------------------------------------------------------------------------
# series container and loading
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MacroSeries:
    """Annual macro aggregates in current prices plus the unemployment rate.

    ``py`` value added, ``wn`` compensation, ``dep`` capital consumption,
    ``inv`` gross investment expenditure, ``pkk`` end-of-year capital value,
    ``retained`` retained profits, ``profits_after_tax`` profits net of
    transfers and hiring costs. All except ``year`` and ``u`` share a common
    (arbitrary) currency unit.
    """

    year: np.ndarray
    py: np.ndarray
    wn: np.ndarray
    dep: np.ndarray
    inv: np.ndarray
    pkk: np.ndarray
    u: np.ndarray
    retained: np.ndarray
    profits_after_tax: np.ndarray
    source: str = "<memory>"

    def __len__(self) -> int:
        return len(self.year)

    def window(self, start: int, stop: int) -> "MacroSeries":
        """Rows with ``start <= year <= stop``; raises if none fall inside."""
        mask = (self.year >= start) & (self.year <= stop)
        if not mask.any():
            raise DataError(
                f"{self.source}: no rows with year in [{start}, {stop}] "
                f"(data cover {self.year.min()}..{self.year.max()})"
            )
        keep = {c: getattr(self, c)[mask] for c in REQUIRED_COLUMNS}
        return MacroSeries(source=self.source, **keep)


def load_series(path: str | Path) -> MacroSeries:
    """Read an annual macro series from a delimited file.

    The file must be comma-separated with a header row naming at least the
    columns in :data:`REQUIRED_COLUMNS`. Errors carry the file name and the
    1-based line number of the offending row.
    """
    path = Path(path)
    rows: dict[str, list[float]] = {c: [] for c in REQUIRED_COLUMNS}
    with path.open(newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise DataError(f"{path}: file is empty")
        missing = [c for c in REQUIRED_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise DataError(f"{path}: missing column(s): {', '.join(missing)}")
        for record in reader:
            lineno = reader.line_num
            for column in REQUIRED_COLUMNS:
                raw = (record.get(column) or "").strip()
                if not raw:
                    raise DataError(f"{path}:{lineno}: column '{column}' is empty")
                try:
                    value = float(raw)
                except ValueError:
                    raise DataError(
                        f"{path}:{lineno}: column '{column}': "
                        f"cannot parse {raw!r} as a number"
                    ) from None
                rows[column].append(value)
            _validate_row(rows, path, lineno)
    if not rows["year"]:
        raise DataError(f"{path}: no data rows")
    arrays = {c: np.asarray(v, dtype=float) for c, v in rows.items()}
    arrays["year"] = arrays["year"].astype(int)
    return MacroSeries(source=str(path), **arrays)


def _validate_row(rows: dict[str, list[float]], path: Path, lineno: int) -> None:
    idx = len(rows["year"]) - 1
    year = rows["year"][idx]
    if year != int(year):
        raise DataError(f"{path}:{lineno}: year {year!r} is not an integer")
    if idx > 0 and year <= rows["year"][idx - 1]:
        raise DataError(
            f"{path}:{lineno}: year {int(year)} does not increase "
            f"(previous row has {int(rows['year'][idx - 1])})"
        )
    for column in _POSITIVE_COLUMNS:
        if rows[column][idx] <= 0.0:
            raise DataError(
                f"{path}:{lineno}: column '{column}' must be positive, "
                f"got {rows[column][idx]!r}"
            )
    u = rows["u"][idx]
    if not 0.0 <= u < 1.0:
        raise DataError(
            f"{path}:{lineno}: unemployment rate {u!r} outside [0, 1)"
        )


def write_series(path: str | Path, series: MacroSeries) -> None:
    """Write a series as comma-separated text with full float precision."""
    path = Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(REQUIRED_COLUMNS)
        for i in range(len(series)):
            row: list[str] = [str(int(series.year[i]))]
            for column in REQUIRED_COLUMNS[1:]:
                row.append(f"{getattr(series, column)[i]:.12g}")
            writer.writerow(row)


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MomentSet:
    """Window averages of the ratios the calibration targets and checks."""

    label: str
    start: int
    stop: int
    mu_data: float
    capital_cost_share: float
    labor_share: float
    inv_output: float
    k_output: float
    u_rate: float
    s_data: float

    def to_mapping(self) -> dict[str, float | int | str]:
        return {
            "label": self.label,
            "start": self.start,
            "stop": self.stop,
            "mu_data": self.mu_data,
            "capital_cost_share": self.capital_cost_share,
            "labor_share": self.labor_share,
            "inv_output": self.inv_output,
            "k_output": self.k_output,
            "u_rate": self.u_rate,
            "s_data": self.s_data,
        }


def compute_moments(
    series: MacroSeries,
    window: tuple[int, int] | None = None,
    label: str = "",
) -> MomentSet:
    """Average annual ratios over a year window.

    The markup moment is gross profits over total costs,
    ``(py - dep - wn) / (dep + wn)``; the capital cost share is capital
    consumption over total costs. Ratios are averaged year by year rather
    than formed from pooled sums, so each year carries equal weight.
    """
    if window is not None:
        series = series.window(*window)
        start, stop = window
    else:
        start, stop = int(series.year.min()), int(series.year.max())
    costs = series.dep + series.wn
    mu = (series.py - costs) / costs
    return MomentSet(
        label=label or f"{start}-{stop}",
        start=start,
        stop=stop,
        mu_data=float(np.mean(mu)),
        capital_cost_share=float(np.mean(series.dep / costs)),
        labor_share=float(np.mean(series.wn / series.py)),
        inv_output=float(np.mean(series.inv / series.py)),
        k_output=float(np.mean(series.pkk / series.py)),
        u_rate=float(np.mean(series.u)),
        s_data=float(np.mean(series.retained / series.profits_after_tax)),
    )


def state_to_moments(state: SteadyState, params: ModelParams, label: str = "model") -> MomentSet:
    """Model counterparts of the data moments at annual frequency."""
    return MomentSet(
        label=label,
        start=0,
        stop=0,
        mu_data=state.mu,
        capital_cost_share=1.0 - state.omega_c,
        labor_share=state.omega_w,
        inv_output=state.x_over_y,
        k_output=(1.0 - state.omega_c) / (MONTHS_PER_YEAR * params.delta * (1.0 + state.mu)),
        u_rate=state.U,
        s_data=state.s,
    )


def moments_from_params(params: ModelParams, label: str = "model") -> MomentSet:
    """Solve the steady state and report its annualized moments."""
    state = solve_steady_state(params)
    return state_to_moments(state, params, label=label)


def state_to_annual_rows(
    state: SteadyState,
    params: ModelParams,
    years: Sequence[int],
    scale: float = 1.0,
) -> MacroSeries:
    """Annual accounts a balanced path generates over the given years.

    Value flows are twelve monthly flows and grow along the path at the
    nominal growth rate; the capital value is the stock at year end. Ratios
    are constant across years by construction.
    """
    years = np.asarray(sorted(int(y) for y in years), dtype=int)
    g_year = math.expm1(MONTHS_PER_YEAR * params.growth_rate)
    level = scale * (1.0 + g_year) ** np.arange(len(years), dtype=float)
    y_hat = state.y_hat
    py_m = (1.0 + state.mu) * y_hat
    taxes_m = (1.0 + state.mu) * state.U * state.b_hat
    vac_m = (1.0 + state.mu) * state.kappa_hat * state.theta * state.U
    net_profit_m = state.mu * y_hat - taxes_m - vac_m
    flows = MONTHS_PER_YEAR * level
    return MacroSeries(
        source="<synthetic>",
        year=years,
        py=flows * py_m,
        wn=flows * state.omega_c * y_hat,
        dep=flows * (1.0 - state.omega_c) * y_hat,
        inv=flows * state.x_over_y * py_m,
        pkk=level * state.pk_k,
        u=np.full(len(years), state.U),
        retained=flows * params.growth_rate * state.pk_k,
        profits_after_tax=flows * net_profit_m,
    )


def concat_series(parts: Iterable[MacroSeries], source: str = "<synthetic>") -> MacroSeries:
    """Stack several year-disjoint series into one, ordered by year."""
    parts = list(parts)
    arrays = {
        c: np.concatenate([getattr(p, c) for p in parts]) for c in REQUIRED_COLUMNS
    }
    order = np.argsort(arrays["year"])
    if len(np.unique(arrays["year"])) != len(arrays["year"]):
        raise DataError(f"{source}: overlapping years across parts")
    return MacroSeries(source=source, **{c: v[order] for c, v in arrays.items()})


# ---------------------------------------------------------------------------
# calibration
# ---------------------------------------------------------------------------


@dataclass
class CalibrationResult:
    """Outcome of matching the markup and capital cost share moments."""

    params: ModelParams
    state: SteadyState
    target_mu: float
    target_capital_cost_share: float
    achieved_mu: float
    achieved_capital_cost_share: float
    iterations: int
    converged: bool
    jacobian_condition: float
    message: str = ""

    @property
    def m(self) -> float:
        return self.params.m

    @property
    def beta_w(self) -> float:
        return self.params.beta_w

    @property
    def residual(self) -> float:
        return max(
            abs(self.achieved_mu - self.target_mu),
            abs(self.achieved_capital_cost_share - self.target_capital_cost_share),
        )


_M_BOUNDS = (0.05, 0.9995)
_BETA_W_FLOOR = 0.05
_BETA_W_INIT = (0.3, 0.85)


def _moment_pair(m: float, beta_w: float, params: ModelParams) -> tuple[float, float, SteadyState]:
    state = solve_steady_state(params.updated(m=m, beta_w=beta_w))
    return state.mu, 1.0 - state.omega_c, state


def calibrate(
    targets: MomentSet | Mapping[str, float],
    params: ModelParams | None = None,
    *,
    b0: float | None = None,
    tol: float = 1e-8,
    max_iter: int = 60,
) -> CalibrationResult:
    """Choose the task assignment and worker patience to match two moments.

    Targets are the markup moment ``mu_data`` and the capital cost share.
    The labor-task measure ``m`` is initialized from the cost-share
    identity (the capital cost share equals the automated task measure
    times the cost ratio raised to ``1 - sigma``) and the pair is then
    polished with a damped finite-difference Newton iteration. On failure
    the attainable moment region is scanned and the nearest feasible point
    is reported.
    """
    if params is None:
        params = ModelParams()
    if b0 is not None:
        params = params.updated(b0=b0)
    if isinstance(targets, MomentSet):
        mu_star, cc_star = targets.mu_data, targets.capital_cost_share
    else:
        mu_star = float(targets["mu_data"])
        cc_star = float(targets["capital_cost_share"])
    if not 0.0 < cc_star < 1.0:
        raise CalibrationError(f"capital cost share target {cc_star!r} outside (0, 1)")
    if mu_star <= 0.0:
        raise CalibrationError(f"markup target {mu_star!r} must be positive")

    ratio = capital.capital_cost_ratio(mu_star, params)
    m0 = 1.0 - cc_star * ratio ** (params.sigma - 1.0)
    m0 = min(max(m0, _M_BOUNDS[0] + 1e-3), _M_BOUNDS[1] - 1e-3)
    beta0 = min(max(params.beta_w, _BETA_W_INIT[0]), min(_BETA_W_INIT[1], params.beta_c))
    x = np.array([m0, beta0])
    target = np.array([mu_star, cc_star])
    lo = np.array([_M_BOUNDS[0], _BETA_W_FLOOR])
    hi = np.array([_M_BOUNDS[1], params.beta_c])

    def residual(point: np.ndarray) -> tuple[np.ndarray, SteadyState]:
        mu, cc, state = _moment_pair(point[0], point[1], params)
        return np.array([mu, cc]) - target, state

    try:
        f, state = residual(x)
    except SolverError as exc:
        raise CalibrationError(
            f"no equilibrium at the initial guess m={x[0]:.4f}, "
            f"beta_w={x[1]:.4f}: {exc}"
        ) from exc

    cond = math.nan
    iterations = 0
    for iterations in range(1, max_iter + 1):
        if np.max(np.abs(f)) < tol:
            break
        jac = np.empty((2, 2))
        for j in range(2):
            step = 1e-6 * max(abs(x[j]), 1e-3)
            if x[j] + step > hi[j]:
                step = -step
            bumped = x.copy()
            bumped[j] += step
            try:
                fb, _ = residual(bumped)
            except SolverError as exc:
                raise CalibrationError(
                    f"equilibrium vanished while differencing at "
                    f"m={bumped[0]:.4f}, beta_w={bumped[1]:.4f}: {exc}"
                ) from exc
            jac[:, j] = (fb - f) / step
        cond = float(np.linalg.cond(jac))
        if not np.isfinite(cond) or cond > 1e12:
            logger.warning("calibration Jacobian nearly singular (cond=%.3g)", cond)
            break
        delta = np.linalg.solve(jac, -f)
        lam = 1.0
        norm0 = np.max(np.abs(f))
        for _ in range(10):
            trial = np.clip(x + lam * delta, lo + 1e-9, hi)
            try:
                f_trial, state_trial = residual(trial)
            except SolverError:
                lam *= 0.5
                continue
            if np.max(np.abs(f_trial)) < norm0 or lam < 2e-3:
                x, f, state = trial, f_trial, state_trial
                break
            lam *= 0.5
        else:
            break
    converged = bool(np.max(np.abs(f)) < tol)

    if not converged:
        nearest = _nearest_attainable(target, params)
        raise CalibrationError(
            f"targets (mu={mu_star:.4f}, capital cost share={cc_star:.4f}) "
            f"not attained after {iterations} iterations; best residual "
            f"{np.max(np.abs(f)):.3g}; nearest attainable point is "
            f"mu={nearest[0]:.4f}, capital cost share={nearest[1]:.4f} at "
            f"m={nearest[2]:.4f}, beta_w={nearest[3]:.4f}"
        )

    message = ""
    if state.region == 2:
        message = (
            "task assignment lies below the adoption frontier; "
            "m is not identified by the capital cost share there"
        )
        logger.warning("calibration: %s", message)
    calibrated = params.updated(m=float(x[0]), beta_w=float(x[1]))
    logger.info(
        "calibrated m=%.6f beta_w=%.6f in %d iterations (cond=%.3g)",
        x[0], x[1], iterations, cond,
    )
    return CalibrationResult(
        params=calibrated,
        state=state,
        target_mu=mu_star,
        target_capital_cost_share=cc_star,
        achieved_mu=state.mu,
        achieved_capital_cost_share=1.0 - state.omega_c,
        iterations=iterations,
        converged=converged,
        jacobian_condition=cond,
        message=message,
    )


def _nearest_attainable(
    target: np.ndarray, params: ModelParams
) -> tuple[float, float, float, float]:
    """Coarse scan of the attainable moment region; returns the closest hit."""
    best = (math.inf, math.nan, math.nan, math.nan, math.nan)
    for m in np.linspace(0.3, 0.995, 8):
        for beta_w in np.linspace(0.1, params.beta_c, 6):
            try:
                mu, cc, _ = _moment_pair(float(m), float(beta_w), params)
            except SolverError:
                continue
            dist = float(np.hypot(mu - target[0], cc - target[1]))
            if dist < best[0]:
                best = (dist, mu, cc, float(m), float(beta_w))
    if not math.isfinite(best[0]):
        raise CalibrationError("no equilibrium anywhere on the scan grid")
    return best[1], best[2], best[3], best[4]


# ---------------------------------------------------------------------------
# counterfactual decomposition
# ---------------------------------------------------------------------------


@dataclass
class HypothesisSplit:
    """Counterfactual steady states splitting a change into two channels.

    ``technology`` moves only the task assignment; ``institutions`` moves
    only worker patience and the benefit floor; ``full`` moves both.
    """

    base: SteadyState
    technology: SteadyState
    institutions: SteadyState
    full: SteadyState
    fields_moved: dict[str, tuple[float, float]] = field(default_factory=dict)

    def contributions(self, name: str) -> dict[str, float]:
        """Additive split of the total change in one steady-state field."""
        base = getattr(self.base, name)
        tech = getattr(self.technology, name) - base
        inst = getattr(self.institutions, name) - base
        total = getattr(self.full, name) - base
        return {
            "total": total,
            "technology": tech,
            "institutions": inst,
            "interaction": total - tech - inst,
        }


def hypothesis_paths(params_a: ModelParams, params_b: ModelParams) -> HypothesisSplit:
    """Split the move from economy A to economy B into two channels.

    The technology channel carries B's task assignment into A; the
    institutions channel carries B's worker patience and benefit floor into
    A. If the task assignments coincide, the technology counterfactual is
    the base economy itself.
    """
    base = solve_steady_state(params_a)
    if params_b.m == params_a.m:
        tech = base
    else:
        tech = solve_steady_state(params_a.updated(m=params_b.m))
    inst = solve_steady_state(
        params_a.updated(beta_w=params_b.beta_w, b0=params_b.b0)
    )
    full = solve_steady_state(
        params_a.updated(m=params_b.m, beta_w=params_b.beta_w, b0=params_b.b0)
    )
    moved = {
        "m": (params_a.m, params_b.m),
        "beta_w": (params_a.beta_w, params_b.beta_w),
        "b0": (params_a.b0, params_b.b0),
    }
    return HypothesisSplit(
        base=base, technology=tech, institutions=inst, full=full, fields_moved=moved
    )
