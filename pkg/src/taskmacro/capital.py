"""Capital production under time to build.

Investment projects mature with a fixed monthly probability, which makes the
stationary marginal product of capital an affine function of the rate of
return and ties the investment-expenditure share of output to the automated
task range. Everything here is closed form; the expenditure recursion summed
over completion times is provided as an independent cross-check.
"""
from __future__ import annotations

import math

import numpy as np

from .params import ModelParams


def adjustment_factor(params: ModelParams) -> float:
    """Stationary project-cost adjustment on the delivery margin.

    Combines the completion probability with the convexity of the project
    cost schedule; appears in both the capital-supply price and the
    expenditure flow.
    """
    pi, ups, zb = params.pi_I, params.upsilon, params.zbar
    sign = -1.0 if params.investment_exponent_convention == "standard" else 1.0
    bracket = 1.0 - (1.0 - pi) * math.exp(sign * zb * (ups - 1.0) / ups)
    if bracket <= 0.0:
        raise ValueError(
            "time-to-build adjustment bracket is nonpositive; "
            f"pi_I={pi}, upsilon={ups}, zbar={zb} are inconsistent"
        )
    return pi ** ((1.0 + ups) / (1.0 - ups)) * bracket ** (1.0 / (ups - 1.0))


def adjustment_factor_next(params: ModelParams) -> float:
    """Derivative-like adjustment term carried one delivery period ahead."""
    return (
        -(1.0 - params.pi_I)
        * adjustment_factor(params)
        * math.exp(params.zbar / params.upsilon)
    )


def _delivery_denominator(params: ModelParams) -> float:
    sign = -1.0 if params.investment_exponent_convention == "standard" else 1.0
    den = 1.0 - (1.0 - params.pi_I) * math.exp(sign * params.zbar)
    if den <= 0.0:
        raise ValueError(
            "delivery discounting does not converge; "
            f"pi_I={params.pi_I}, zbar={params.zbar}"
        )
    return den


def capital_return_coefficient(params: ModelParams) -> float:
    """Coefficient c_k in the affine law Y_K = c_k * (1 + mu)."""
    pi, ups, zb = params.pi_I, params.upsilon, params.zbar
    sign = -1.0 if params.investment_exponent_convention == "standard" else 1.0
    bracket = 1.0 - (1.0 - pi) * math.exp(sign * zb * (ups - 1.0) / ups)
    return params.delta * adjustment_factor(params) * bracket / _delivery_denominator(params)


def capital_productivity(mu, params: ModelParams):
    """Stationary marginal value product of capital, Y_K = c_k * (1 + mu)."""
    return capital_return_coefficient(params) * (1.0 + np.asarray(mu, dtype=float))


def capital_productivity_series(mu, params: ModelParams, horizon: int = 4000) -> float:
    """Y_K recovered by summing the expenditure recursion over delivery dates.

    Independent of the closed form: discounts a constant rate-of-return path
    over completion times and truncates the geometric tail at ``horizon``
    periods (the tail bound is added back analytically).
    """
    mu = float(mu)
    pi, zb, d = params.pi_I, params.zbar, params.delta
    omega = adjustment_factor(params)
    omega_next = adjustment_factor_next(params)
    step = (1.0 - pi) * math.exp(-zb)
    coeff = d * (omega + omega_next / (1.0 - pi))
    total = d * (1.0 + mu) * omega
    acc = 0.0
    term = 1.0
    for _ in range(1, horizon + 1):
        term *= step
        acc += term * (1.0 + mu)
    # geometric tail beyond the horizon
    acc += term * step / (1.0 - step) * (1.0 + mu)
    return total + coeff * acc


def gamma_k_effective(params: ModelParams) -> float:
    """Capital task-productivity scale actually used by the model.

    Defaults to c_k / B so that the capital-cost ratio is exactly 1 + mu and
    the automation frontier passes through zero at mu = 0.
    """
    if params.gamma_k is not None:
        return params.gamma_k
    return capital_return_coefficient(params) / params.B


def capital_cost_ratio(mu, params: ModelParams):
    """Ratio of the capital marginal product to its productivity-scaled cost.

    Equals 1 + mu exactly under the default scale convention.
    """
    return capital_productivity(mu, params) / (params.B * gamma_k_effective(params))


def expenditure_flow_coefficient(params: ModelParams) -> float:
    """Scale of the stationary investment-expenditure flow."""
    return (
        params.pi_I ** (1.0 + params.upsilon)
        * adjustment_factor(params) ** params.upsilon
        / _delivery_denominator(params)
    )


def investment_output_ratio(mu, m_star, params: ModelParams):
    """Investment expenditure over output at sale prices.

    Scales with the automated task range (1 - m*) and falls with the capital
    cost ratio when tasks substitute imperfectly.
    """
    mu = np.asarray(mu, dtype=float)
    m_star = np.asarray(m_star, dtype=float)
    rho = capital_cost_ratio(mu, params)
    scale = (params.delta + params.growth_rate) * expenditure_flow_coefficient(params)
    return scale * (1.0 - m_star) * rho ** (-params.sigma) / (
        params.B * gamma_k_effective(params)
    )
