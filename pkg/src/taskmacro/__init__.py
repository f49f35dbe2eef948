"""Task-based automation macro model: steady state, calibration, policy.

A general-equilibrium steady-state solver for an economy where production
tasks are split between labor and capital (automation), the labor market
clears through search and matching, and the rate of return on capital is
set by surplus bargaining against free entry of vacancies. The package
also provides the calibration toolkit that matches national-accounts
moments, counterfactual decompositions, a stability corridor and full
accounting audit, and a Bayesian time-varying-coefficient estimator for
the unemployment-benefit policy rule.
"""

from .params import ConfigError, ModelParams
from .technology import (
    WageIndexError,
    automation_frontier,
    automation_frontier_status,
    effective_labor_tasks,
    labor_share_from_tasks,
    labor_share_from_wage,
    stationary_wage,
    task_cost_integral,
)
from .capital import (
    adjustment_factor,
    capital_cost_ratio,
    capital_productivity,
    capital_return_coefficient,
    expenditure_flow_coefficient,
    gamma_k_effective,
    investment_output_ratio,
)
from .labor import (
    HoursError,
    bargaining_power,
    benefit_level,
    citizen_wage,
    displacement_rate,
    employment_rate,
    hiring_drag,
    hours_worked,
    job_finding_rate,
    markup_ceiling,
    markup_demand,
    markup_supply,
    vacancy_cost,
    vacancy_fill_rate,
    worker_power_ceiling,
)
from .equilibrium import (
    COMPSTAT_OUTPUTS,
    CompStatTable,
    ConvergenceError,
    Corridor,
    CorridorFloorViolation,
    InternalConsistencyError,
    NoEquilibriumError,
    SolverError,
    SteadyState,
    UnsustainableGrowthError,
    accounting_audit,
    comparative_statics,
    consumption_at_return,
    corridor,
    income_distribution,
    profit_and_growth,
    rescaled_economy,
    residual_curve,
    solve_steady_state,
)
from .empirics import (
    CalibrationError,
    CalibrationResult,
    DataError,
    HypothesisSplit,
    MacroSeries,
    MomentSet,
    calibrate,
    compute_moments,
    concat_series,
    hypothesis_paths,
    load_series,
    moments_from_params,
    state_to_annual_rows,
    state_to_moments,
    write_series,
)
from .tvp import (
    ConditioningError,
    FilterResult,
    PolicyPosterior,
    SamplerDivergenceError,
    TVPModel,
    TVPPriors,
    backward_sample,
    gibbs,
    kalman_filter,
    kalman_smoother,
    make_model,
)

__version__ = "0.1.0"

__all__ = [
    "COMPSTAT_OUTPUTS",
    "CalibrationError",
    "CalibrationResult",
    "CompStatTable",
    "ConditioningError",
    "ConfigError",
    "ConvergenceError",
    "Corridor",
    "CorridorFloorViolation",
    "DataError",
    "FilterResult",
    "HoursError",
    "HypothesisSplit",
    "InternalConsistencyError",
    "MacroSeries",
    "ModelParams",
    "MomentSet",
    "NoEquilibriumError",
    "PolicyPosterior",
    "SamplerDivergenceError",
    "SolverError",
    "SteadyState",
    "TVPModel",
    "TVPPriors",
    "UnsustainableGrowthError",
    "WageIndexError",
    "accounting_audit",
    "adjustment_factor",
    "automation_frontier",
    "automation_frontier_status",
    "backward_sample",
    "bargaining_power",
    "benefit_level",
    "calibrate",
    "capital_cost_ratio",
    "capital_productivity",
    "capital_return_coefficient",
    "citizen_wage",
    "comparative_statics",
    "compute_moments",
    "concat_series",
    "consumption_at_return",
    "corridor",
    "displacement_rate",
    "effective_labor_tasks",
    "employment_rate",
    "expenditure_flow_coefficient",
    "gamma_k_effective",
    "gibbs",
    "hiring_drag",
    "hours_worked",
    "hypothesis_paths",
    "income_distribution",
    "investment_output_ratio",
    "job_finding_rate",
    "kalman_filter",
    "kalman_smoother",
    "labor_share_from_tasks",
    "labor_share_from_wage",
    "load_series",
    "make_model",
    "markup_ceiling",
    "markup_demand",
    "markup_supply",
    "moments_from_params",
    "profit_and_growth",
    "rescaled_economy",
    "residual_curve",
    "solve_steady_state",
    "stationary_wage",
    "state_to_annual_rows",
    "state_to_moments",
    "task_cost_integral",
    "vacancy_cost",
    "vacancy_fill_rate",
    "worker_power_ceiling",
    "write_series",
]
