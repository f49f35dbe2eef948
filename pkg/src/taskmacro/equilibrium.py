"""Joint steady state: tightness, rate of return, hours, wage, task split.

The equilibrium intersects two curves in tightness space: the return
required by free entry of vacancies (demand side) and the return conceded
by surplus bargaining (supply side). At every scanned tightness the wage,
hours, benefit level, and task assignment are solved jointly by a damped
fixed point; the outer root is then bracketed on a log grid and polished.

Also provides the stability corridor for the rate of return, income
distribution, profit/growth accounting, the comparative-statics engine,
and a flow-of-funds audit of every reported state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields

import numpy as np
from scipy.optimize import brentq

from . import capital, labor, technology
from .params import ModelParams


class SolverError(RuntimeError):
    """Base class for equilibrium solver failures."""


class NoEquilibriumError(SolverError):
    """The two return curves never cross on the scan grid."""


class ConvergenceError(SolverError):
    """Inner fixed point or outer polish did not reach tolerance."""


class InternalConsistencyError(SolverError):
    """Two independent computations of the same object disagree."""


class UnsustainableGrowthError(SolverError):
    """Net profitability cannot finance balanced growth."""


class CorridorFloorViolation(SolverError):
    """Owner consumption is negative: the return sits below its floor."""


@dataclass
class SteadyState:
    """Solved balanced-growth-path cross section.

    All rates are monthly; value ratios are in months of output at sale
    prices. ``roots`` lists every bracketed tightness crossing (normally
    one); ``warnings`` collects non-fatal diagnostics.
    """

    mu: float
    theta: float
    L: float
    U: float
    h: float
    w_hat: float
    m_star: float
    omega_c: float
    omega_w: float
    y_k_hat: float
    k_over_y: float
    x_over_y: float
    r: float
    s: float
    tau: float
    zeta: float
    T_P: float
    eta_w: float
    mu_min: float
    mu_max: float
    eta_U: float
    b_hat: float
    kappa_hat: float
    z_hat: float
    y_hat: float
    pk_k: float
    region: int
    residual: float
    roots: list[float] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_mapping(self) -> dict[str, float | int | str]:
        out: dict[str, float | int | str] = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "roots":
                out[f.name] = ";".join(f"{v:.12g}" for v in value)
            elif f.name == "warnings":
                out[f.name] = ";".join(value)
            else:
                out[f.name] = value
        return out


@dataclass(frozen=True)
class Corridor:
    """Stability interval for the rate of return and the implied power cap."""

    mu_min: float
    mu_max: float
    eta_U: float


# ---------------------------------------------------------------------------
# inner fixed point
# ---------------------------------------------------------------------------


def _inner_block(theta, params: ModelParams):
    """Solve (mu, wage, hours, task split) jointly at given tightness.

    Vectorized over theta. Returns a dict of arrays; non-converged or
    infeasible entries (free entry cannot break even) carry NaN.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    q = labor.vacancy_fill_rate(theta, params)
    L = labor.employment_rate(theta, params)
    b_hat = labor.benefit_level(L, params)
    kappa_hat = params.kappa0 + params.kappa1 * q
    lam_hat = labor.separation_total(params)
    annuity = 1.0 - params.beta_c * (1.0 - lam_hat)
    c_k = capital.capital_return_coefficient(params)
    gamma_eff = capital.gamma_k_effective(params)

    mu = np.full_like(theta, 0.25)
    w_hat = np.ones_like(theta)
    h = np.full_like(theta, 0.96)
    converged = np.zeros_like(theta, dtype=bool)
    d = params.damping
    for _ in range(params.max_inner):
        m_star, region = technology.effective_labor_tasks(params.m, mu, params)
        m_star = np.asarray(m_star, dtype=float)
        w_hat = np.asarray(technology.stationary_wage(m_star, mu, params), dtype=float)
        h = np.asarray(labor.hours_worked(L, b_hat, w_hat, params), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            lever = params.beta_c * h * w_hat * q / (annuity * kappa_hat)
            mu_implied = np.where(lever > 1.0, 1.0 / np.maximum(lever - 1.0, 1e-300), np.inf)
        mu_next = np.clip((1.0 - d) * mu + d * mu_implied, 0.0, 1e6)
        change = np.abs(mu_next - mu) / (1.0 + np.abs(mu))
        converged = change < params.inner_tol
        mu = mu_next
        if np.all(converged | ~np.isfinite(mu) | (mu >= 1e6)):
            break

    feasible = converged & np.isfinite(mu) & (mu < 1e6)
    mu = np.where(feasible, mu, np.nan)
    m_star, region = technology.effective_labor_tasks(params.m, np.where(feasible, mu, 0.0), params)
    m_star = np.where(feasible, np.asarray(m_star, dtype=float), np.nan)
    region = np.asarray(region)
    w_hat = np.where(feasible, w_hat, np.nan)
    h = np.where(feasible, h, np.nan)

    mu_s = labor.markup_supply(theta, h, w_hat, b_hat, params)
    return {
        "theta": theta,
        "q": q,
        "L": L,
        "b_hat": b_hat,
        "kappa_hat": kappa_hat,
        "mu": mu,
        "w_hat": w_hat,
        "h": h,
        "m_star": m_star,
        "region": region,
        "mu_supply": mu_s,
        "residual": mu_s - mu,
        "feasible": feasible,
    }


def residual_curve(params: ModelParams, theta=None):
    """Return-curve gap across a tightness grid, for audits and plots.

    Returns a dict with the grid, both curves, their difference, and the
    feasibility mask (NaN entries mean free entry cannot break even there).
    """
    if theta is None:
        theta = np.logspace(
            math.log10(params.theta_min),
            math.log10(params.theta_max),
            params.theta_grid_points,
        )
    block = _inner_block(theta, params)
    return {
        "theta": block["theta"],
        "mu_supply": block["mu_supply"],
        "mu_demand": block["mu"],
        "residual": block["residual"],
        "feasible": block["feasible"],
    }


def _residual_at(theta: float, params: ModelParams) -> float:
    return float(_inner_block(theta, params)["residual"][0])


# ---------------------------------------------------------------------------
# steady-state solve
# ---------------------------------------------------------------------------


def solve_steady_state(
    params: ModelParams,
    m: float | None = None,
    b0: float | None = None,
    b1: float | None = None,
) -> SteadyState:
    """Solve the full steady state for the given parameters.

    ``m``, ``b0``, ``b1`` override the corresponding fields for convenience
    when sweeping technology or benefit policy. Raises
    :class:`NoEquilibriumError` when the bargained return stays below the
    free-entry return everywhere on the scan grid; returns a flagged
    boundary state when it stays above everywhere (vanishing hiring costs
    push tightness to the scan ceiling).
    """
    overrides = {}
    if m is not None:
        overrides["m"] = m
    if b0 is not None:
        overrides["b0"] = b0
    if b1 is not None:
        overrides["b1"] = b1
    if overrides:
        params = params.updated(**overrides)

    grid = np.logspace(
        math.log10(params.theta_min),
        math.log10(params.theta_max),
        params.theta_grid_points,
    )
    block = _inner_block(grid, params)
    resid = block["residual"]
    valid = np.isfinite(resid)
    warnings: list[str] = []

    if not np.any(valid):
        raise NoEquilibriumError(
            "free entry is infeasible at every scanned tightness; "
            "check hiring costs and productivity levels"
        )

    brackets: list[tuple[float, float, int]] = []  # (lo, hi, direction)
    idx = np.flatnonzero(valid)
    for a, b in zip(idx[:-1], idx[1:]):
        ra, rb = resid[a], resid[b]
        if ra == 0.0:
            brackets.append((grid[a], grid[a], 0))
        if ra * rb < 0.0:
            direction = 1 if ra > 0.0 else -1  # 1: supply cuts demand from above
            brackets.append((grid[a], grid[b], direction))

    if not brackets:
        if np.all(resid[valid] > 0.0):
            warnings.append("theta-at-upper-scan-bound")
            state = _assemble_state(float(grid[idx[-1]]), params, warnings=warnings)
            state.residual = float(resid[idx[-1]])
            return state
        raise NoEquilibriumError(
            "bargained return lies below the free-entry return on the whole "
            "scan grid; no steady state in the configured tightness window"
        )

    roots: list[tuple[float, int]] = []
    for lo, hi, direction in brackets:
        if lo == hi:
            roots.append((float(lo), direction))
            continue
        root = brentq(_residual_at, lo, hi, args=(params,), xtol=1e-14, rtol=8.9e-16)
        roots.append((float(root), direction))

    if len(roots) > 1:
        listing = ", ".join(f"{r:.6g}" for r, _ in roots)
        warnings.append(f"multiple-equilibria: theta roots at {listing}")

    stable = [r for r, direction in roots if direction >= 0]
    theta_star = stable[-1] if stable else roots[-1][0]
    if not stable:
        warnings.append("no-stable-crossing: returning last root")

    state = _assemble_state(theta_star, params, warnings=warnings)
    state.roots = [r for r, _ in roots]
    _verify_residuals(state, params)
    return state


def _assemble_state(theta: float, params: ModelParams, warnings: list[str] | None = None) -> SteadyState:
    block = _inner_block(theta, params)
    if not bool(block["feasible"][0]):
        raise ConvergenceError(f"inner block infeasible at theta={theta:g}")
    mu = float(block["mu"][0])
    L = float(block["L"][0])
    h = float(block["h"][0])
    w_hat = float(block["w_hat"][0])
    m_star = float(block["m_star"][0])
    region = int(np.atleast_1d(block["region"])[0])
    b_hat = float(block["b_hat"][0])
    kappa_hat = float(block["kappa_hat"][0])
    U = 1.0 - L

    omega_c = float(technology.labor_share_from_tasks(m_star, mu, params))
    omega_c_wage = float(technology.labor_share_from_wage(w_hat, m_star, params))
    if abs(omega_c - omega_c_wage) > 1e-8:
        raise InternalConsistencyError(
            "labor-share routes disagree: "
            f"{omega_c:.12g} (task complement) vs {omega_c_wage:.12g} (wage bill)"
        )
    omega_w = omega_c / (1.0 + mu)
    y_hat = w_hat * L * h / omega_c
    pk_k = (1.0 - omega_c) * y_hat / params.delta
    tau = (1.0 + mu) * U * b_hat / pk_k
    zeta = (1.0 + mu) * kappa_hat * theta * U / pk_k
    g = params.growth_rate
    r = params.delta * mu / (1.0 - omega_c)
    T_P = math.log1p(g * (1.0 - omega_c) / params.delta) / g
    warn = list(warnings or [])
    net_rate = r - tau - zeta
    if net_rate > 0.0:
        s = g / net_rate
    else:
        s = math.nan
        warn.append("unsustainable-growth: r <= tau + zeta")
    z_hat = float(labor.citizen_wage(b_hat, h, w_hat, params))
    mu_max = float(labor.markup_ceiling(h, w_hat, b_hat, params))
    mu_min = (1.0 - omega_c) * (g + tau + zeta) / params.delta
    eta_U = float(labor.worker_power_ceiling(theta, h, w_hat, b_hat, mu_min, params))
    if not mu_min < mu < mu_max:
        warn.append(f"outside-corridor: mu={mu:.6g} not in ({mu_min:.6g}, {mu_max:.6g})")
    if not math.isnan(s) and not 0.0 < s < 1.0:
        warn.append(f"savings-rate-outside-unit-interval: s={s:.6g}")

    return SteadyState(
        mu=mu,
        theta=float(theta),
        L=L,
        U=U,
        h=h,
        w_hat=w_hat,
        m_star=m_star,
        omega_c=omega_c,
        omega_w=omega_w,
        y_k_hat=float(capital.capital_productivity(mu, params)),
        k_over_y=pk_k / ((1.0 + mu) * y_hat),
        x_over_y=float(capital.investment_output_ratio(mu, m_star, params)),
        r=r,
        s=s,
        tau=tau,
        zeta=zeta,
        T_P=T_P,
        eta_w=labor.bargaining_power(params),
        mu_min=mu_min,
        mu_max=mu_max,
        eta_U=eta_U,
        b_hat=b_hat,
        kappa_hat=kappa_hat,
        z_hat=z_hat,
        y_hat=y_hat,
        pk_k=pk_k,
        region=region,
        residual=float(block["residual"][0]),
        warnings=warn,
    )


def _verify_residuals(state: SteadyState, params: ModelParams) -> None:
    """Max-norm check of every simultaneous condition at the reported state."""
    f = float(labor.job_finding_rate(state.theta, params))
    lam_hat = labor.separation_total(params)
    hours_resid = (
        params.eps0
        * state.h ** (1.0 / params.eps1)
        * (state.L * state.h + (1.0 - state.L) * state.b_hat / state.w_hat)
        - 1.0
    )
    m_star_target, _ = technology.effective_labor_tasks(params.m, state.mu, params)
    checks = {
        "return-curves": state.residual,
        "hours": hours_resid,
        "employment": state.L - f / (lam_hat + f),
        "benefits": state.b_hat - (params.b0 + params.b1 * (1.0 - state.L)),
        "wage-index": state.w_hat - technology.stationary_wage(state.m_star, state.mu, params),
        "task-split": state.m_star - m_star_target,
    }
    worst = max(abs(v) for v in checks.values())
    if worst > 1e-10:
        detail = ", ".join(f"{k}={v:.3e}" for k, v in checks.items())
        raise ConvergenceError(f"steady-state residuals exceed 1e-10: {detail}")


# ---------------------------------------------------------------------------
# corridor
# ---------------------------------------------------------------------------


def corridor(
    params: ModelParams,
    state: SteadyState,
    zeta_mode: str = "state",
    refine: bool = False,
) -> Corridor:
    """Stability interval of the rate of return around a solved state.

    ``zeta_mode="zero"`` excludes vacancy costs from the floor (useful when
    quoting the ceiling on worker power net of hiring frictions).
    ``refine=True`` iterates the floor to consistency: the tax and vacancy
    ratios are re-evaluated at the floor return itself, holding the labor
    block (tightness, employment, hours, benefits) at the solved state.
    """
    if zeta_mode not in ("state", "zero"):
        raise ValueError(f"zeta_mode must be 'state' or 'zero', got {zeta_mode!r}")
    g = params.growth_rate
    zeta0 = state.zeta if zeta_mode == "state" else 0.0
    mu_min = (1.0 - state.omega_c) * (g + state.tau + zeta0) / params.delta
    if refine:
        mu_min = _refine_floor(params, state, zeta_mode, mu_min)
    eta_U = float(
        labor.worker_power_ceiling(
            state.theta, state.h, state.w_hat, state.b_hat, mu_min, params
        )
    )
    return Corridor(mu_min=mu_min, mu_max=state.mu_max, eta_U=eta_U)


def _floor_flows(mu: float, params: ModelParams, state: SteadyState, zeta_mode: str):
    """Cost shares and fiscal ratios at a counterfactual return level.

    Holds the labor block at the solved state and re-prices technology.
    """
    m_star, _ = technology.effective_labor_tasks(params.m, mu, params)
    w_hat = technology.stationary_wage(m_star, mu, params)
    omega_c = float(technology.labor_share_from_tasks(m_star, mu, params))
    y_hat = w_hat * state.L * state.h / omega_c
    pk_k = (1.0 - omega_c) * y_hat / params.delta
    U = 1.0 - state.L
    tau = (1.0 + mu) * U * state.b_hat / pk_k
    zeta = 0.0 if zeta_mode == "zero" else (1.0 + mu) * state.kappa_hat * state.theta * U / pk_k
    return omega_c, tau, zeta, y_hat, pk_k, w_hat


def _refine_floor(params: ModelParams, state: SteadyState, zeta_mode: str, mu_start: float) -> float:
    g = params.growth_rate
    mu = mu_start
    for _ in range(400):
        omega_c, tau, zeta, _, _, _ = _floor_flows(mu, params, state, zeta_mode)
        mu_next = (1.0 - omega_c) * (g + tau + zeta) / params.delta
        if abs(mu_next - mu) < 1e-14:
            return mu_next
        mu = 0.5 * mu + 0.5 * mu_next
    raise ConvergenceError("corridor floor refinement did not converge")


# ---------------------------------------------------------------------------
# distribution, profits, audit
# ---------------------------------------------------------------------------


def income_distribution(state: SteadyState, params: ModelParams) -> tuple[float, float]:
    """Labor shares on costs and on income, cross-checked two ways."""
    route_tasks = float(technology.labor_share_from_tasks(state.m_star, state.mu, params))
    route_wage = float(technology.labor_share_from_wage(state.w_hat, state.m_star, params))
    if abs(route_tasks - route_wage) > 1e-8:
        raise InternalConsistencyError(
            f"labor-share routes disagree: {route_tasks:.12g} vs {route_wage:.12g}"
        )
    return route_tasks, route_tasks / (1.0 + state.mu)


def profit_and_growth(state: SteadyState, params: ModelParams) -> tuple[float, float, float]:
    """Profit rate on capital value, production time, and savings rate."""
    r = params.delta * state.mu / (1.0 - state.omega_c)
    g = params.growth_rate
    T_P = math.log1p(g * (1.0 - state.omega_c) / params.delta) / g
    net = r - state.tau - state.zeta
    if net <= 0.0:
        raise UnsustainableGrowthError(
            f"net profitability {net:.6g} cannot finance growth {g:.6g}"
        )
    return r, T_P, g / net


def _flow_table(state: SteadyState, params: ModelParams) -> dict[str, float]:
    """Monthly flow of funds at cost prices, capital producers consolidated.

    Investment use of funds is valued at deliveries, (delta + g) times the
    capital value, which is what balanced growth of the capital stock's
    value requires. The raw project-expenditure flow differs from it by the
    financing of work in progress; the wedge is reported, not audited.
    """
    mu, y_hat = state.mu, state.y_hat
    py = (1.0 + mu) * y_hat
    wn = state.omega_c * y_hat
    dep = (1.0 - state.omega_c) * y_hat
    taxes = (1.0 + mu) * state.U * state.b_hat
    vac = (1.0 + mu) * state.kappa_hat * state.theta * state.U
    g = params.growth_rate
    investment_use = (params.delta + g) * state.pk_k
    expenditure_flow = state.x_over_y * py
    gross_profit = mu * y_hat
    net_profit = gross_profit - taxes - vac
    worker_cons = wn + taxes
    owner_cons = py - wn - taxes - vac - investment_use
    return {
        "py": py,
        "wn": wn,
        "dep": dep,
        "taxes": taxes,
        "vacancy_costs": vac,
        "investment_use": investment_use,
        "expenditure_flow": expenditure_flow,
        "gross_profit": gross_profit,
        "net_profit": net_profit,
        "worker_consumption": worker_cons,
        "owner_consumption": owner_cons,
        "net_investment": g * state.pk_k,
    }


def accounting_audit(state: SteadyState, params: ModelParams) -> dict[str, float]:
    """Relative residuals of every balanced-path accounting identity.

    Raises :class:`CorridorFloorViolation` when owner consumption is
    negative (the return sits at or below its stability floor).
    """
    t = _flow_table(state, params)
    g = params.growth_rate
    py = t["py"]
    if t["owner_consumption"] < 0.0:
        raise CorridorFloorViolation(
            f"owner consumption {t['owner_consumption']:.6g} < 0: "
            f"mu={state.mu:.6g} at or below floor {state.mu_min:.6g}"
        )
    resource = (
        py
        - (
            t["worker_consumption"]
            + t["owner_consumption"]
            + t["investment_use"]
            + t["vacancy_costs"]
        )
    ) / py
    savings_flows = t["net_profit"] - t["owner_consumption"]
    savings_net_inv = (savings_flows - t["net_investment"]) / t["net_investment"]
    s_flows = savings_flows / t["net_profit"]
    cambridge = (g - s_flows * (state.r - state.tau - state.zeta)) / g
    owner_alt = (1.0 - state.s) * t["net_profit"]
    owner_budget = (t["owner_consumption"] - owner_alt) / py
    tax_cross = (state.tau * state.pk_k - t["taxes"]) / py

    z = params.deflator_decline
    tp_identity = math.exp(g * state.T_P) - (1.0 + g * (1.0 - state.omega_c) / params.delta)
    growth_shares = g - (
        -(1.0 - state.omega_c) * z
        + (1.0 - state.omega_c) * (g + z)
        + state.omega_c * g
    )
    production_time = g - (g + state.r / state.mu) * (-math.expm1(-g * state.T_P))

    return {
        "resource_constraint": resource,
        "savings_net_investment": savings_net_inv,
        "owner_budget": owner_budget,
        "cambridge": cambridge,
        "tax_crosscheck": tax_cross,
        "production_time_identity": tp_identity,
        "growth_share_decomposition": growth_shares,
        "production_time_growth": production_time,
        "owner_consumption": t["owner_consumption"] / (1.0 + state.mu),
        "expenditure_delivery_wedge": (t["investment_use"] - t["expenditure_flow"]) / py,
    }


def consumption_at_return(
    mu: float, state: SteadyState, params: ModelParams, zeta_mode: str = "state"
) -> float:
    """Owner consumption at a counterfactual return, labor block held fixed.

    Used to verify that consumption vanishes exactly at the corridor floor.
    """
    omega_c, tau, zeta, y_hat, pk_k, _ = _floor_flows(mu, params, state, zeta_mode)
    g = params.growth_rate
    gross_profit = mu * y_hat
    taxes = tau * pk_k
    vac = zeta * pk_k
    # at the floor, retained profits exactly cover net capital additions
    return gross_profit - taxes - vac - g * pk_k


# ---------------------------------------------------------------------------
# comparative statics
# ---------------------------------------------------------------------------

COMPSTAT_OUTPUTS = (
    "w_hat",
    "theta",
    "L",
    "omega_c",
    "mu",
    "y_k_hat",
    "k_over_y",
    "x_over_y",
    "r",
    "s",
)


@dataclass
class CompStatTable:
    """Central-difference responses of the steady state to one shifter."""

    shock: str
    magnitude: float
    base: SteadyState
    derivative: dict[str, float]
    response_to_decrease: dict[str, float]
    sign: dict[str, int]
    flags: list[str] = field(default_factory=list)


def comparative_statics(
    params: ModelParams, shock: str, rel_change: float = 0.01
) -> CompStatTable:
    """Signed steady-state responses to a small parameter perturbation.

    ``shock`` is one of ``m`` (task assignment), ``b0`` (benefit level), or
    ``beta_w`` (worker discounting). Central differences around the base;
    ``response_to_decrease`` reports the change following a decrease of
    ``rel_change`` (relative), which is the sign convention of the summary
    table. A shocked solve that fails or leaves the corridor is flagged and
    its column filled with NaN.
    """
    if shock not in ("m", "b0", "beta_w"):
        raise ValueError(f"shock must be one of m, b0, beta_w; got {shock!r}")
    base = solve_steady_state(params)
    value = getattr(params, shock)
    step = abs(value) * rel_change
    flags: list[str] = []

    def shocked(delta: float) -> SteadyState | None:
        try:
            st = solve_steady_state(params.updated(**{shock: value + delta}))
        except SolverError as exc:
            flags.append(f"{shock}{'+' if delta > 0 else '-'}: {exc}")
            return None
        for w in st.warnings:
            if w.startswith("outside-corridor"):
                flags.append(f"{shock}{'+' if delta > 0 else '-'}: {w}")
        return st

    hi = shocked(step)
    lo = shocked(-step)
    derivative: dict[str, float] = {}
    decrease: dict[str, float] = {}
    sign: dict[str, int] = {}
    for key in COMPSTAT_OUTPUTS:
        if hi is None or lo is None:
            derivative[key] = math.nan
            decrease[key] = math.nan
            sign[key] = 0
            continue
        d = (getattr(hi, key) - getattr(lo, key)) / (2.0 * step)
        derivative[key] = d
        decrease[key] = getattr(lo, key) - getattr(base, key)
        scale = max(abs(getattr(base, key)), 1.0)
        sign[key] = 0 if abs(d) * step < 1e-8 * scale else (1 if d > 0 else -1)
    return CompStatTable(
        shock=shock,
        magnitude=rel_change,
        base=base,
        derivative=derivative,
        response_to_decrease=decrease,
        sign=sign,
        flags=flags,
    )


# ---------------------------------------------------------------------------
# rescaling helper (unit invariance)
# ---------------------------------------------------------------------------


def rescaled_economy(params: ModelParams, scale: float) -> ModelParams:
    """Rescale the productivity level and wage-denominated institutions.

    Multiplies the output scale by ``scale`` and divides the capital task
    scale by it (their product, hence the capital cost ratio, is unchanged);
    benefit and hiring-cost levels are price-indexed magnitudes and co-scale
    with the wage. Equilibrium ratios (mu, theta, L, cost shares) are
    invariant under this map.
    """
    gamma_eff = capital.gamma_k_effective(params)
    return params.updated(
        B=params.B * scale,
        gamma_k=gamma_eff / scale,
        b0=params.b0 * scale,
        b1=params.b1 * scale,
        kappa0=params.kappa0 * scale,
        kappa1=params.kappa1 * scale,
    )
