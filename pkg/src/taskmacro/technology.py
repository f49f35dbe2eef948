"""Task assignment, automation frontier, stationary wage, and cost shares.

Output combines a unit continuum of tasks with constant elasticity sigma.
Tasks up to an endogenous frontier are produced by capital, the rest by
labor whose productivity rises exponentially across tasks. The frontier
below which further automation stops paying is pinned by the capital cost
ratio; the stationary wage then follows from the requirement that the task
cost index equals the numeraire.
"""
from __future__ import annotations

import numpy as np

from . import capital
from .params import ModelParams


class WageIndexError(ArithmeticError):
    """The task cost index cannot be matched by any positive wage."""


def task_cost_integral(m_star, params: ModelParams):
    """Integral of relative labor task costs over the labor range.

    Equals (1 - exp(-a m*)) / a with a = alpha (1 - sigma); evaluated in a
    form that stays accurate for small ranges.
    """
    a = params.alpha * (1.0 - params.sigma)
    m_star = np.asarray(m_star, dtype=float)
    return -np.expm1(-a * m_star) / a


def automation_frontier(mu, params: ModelParams, method: str | None = None):
    """Task measure below which automation stops being cost effective.

    ``method`` overrides the params choice: "taylor" uses the quadratic
    expansion of the boundary condition, "exact" inverts the full condition.
    Values are clamped to [0, 1]; use :func:`automation_frontier_status` when
    the clamping flag is needed.
    """
    value, _ = automation_frontier_status(mu, params, method)
    return value


def automation_frontier_status(mu, params: ModelParams, method: str | None = None):
    """Frontier value plus a flag describing any clamping.

    Returns ``(m_bar, flag)`` where flag is ``None``, ``"all-automated"``
    (cost ratio below 1, frontier clamped to 0) or ``"none-automated"``
    (boundary condition has no interior solution, frontier clamped to 1).
    """
    method = method or params.frontier_method
    mu_arr = np.asarray(mu, dtype=float)
    rho = capital.capital_cost_ratio(mu_arr, params)
    if method == "taylor":
        value, flag = _frontier_taylor(rho, params)
    elif method == "exact":
        value, flag = _frontier_exact(rho, params)
    else:
        raise ValueError(f"unknown frontier method {method!r}")
    if np.isscalar(mu) or np.ndim(mu) == 0:
        return float(value), flag
    return value, flag


def _frontier_taylor(rho, params: ModelParams):
    a = params.alpha * (1.0 - params.sigma)
    gap = 1.0 - np.power(rho, params.sigma - 1.0)
    raw = 2.0 * gap / a
    flag = None
    if np.any(raw < 0.0):
        flag = "all-automated"
    value = np.sqrt(np.clip(raw, 0.0, None))
    if np.any(value > 1.0):
        flag = "none-automated"
    return np.clip(value, 0.0, 1.0), flag


def _boundary_gap(m_bar, rho, params: ModelParams):
    """Residual of the exact frontier condition (zero at the boundary)."""
    a = params.alpha * (1.0 - params.sigma)
    lhs = 1.0 - m_bar - np.expm1(-a * m_bar) / a
    return lhs - np.power(rho, params.sigma - 1.0)


def _frontier_exact(rho, params: ModelParams):
    a = params.alpha * (1.0 - params.sigma)
    rho = np.asarray(rho, dtype=float)
    target = np.power(rho, params.sigma - 1.0)
    flag = None
    # residual at the endpoints decides clamping: the condition value falls
    # from 1 at m=0 to (1 - exp(-a))/a at m=1.
    low_val = -np.expm1(-a) / a
    if np.any(target > 1.0):
        flag = "all-automated"
    if np.any(target < low_val):
        flag = "none-automated"
    # Newton from the quadratic expansion; the map is smooth and concave.
    guess, _ = _frontier_taylor(rho, params)
    x = np.clip(np.asarray(guess, dtype=float), 1e-12, 1.0)
    for _ in range(60):
        fx = (1.0 - x - np.expm1(-a * x) / a) - target
        dfx = -1.0 + np.exp(-a * x)
        dfx = np.where(np.abs(dfx) < 1e-14, -1e-14, dfx)
        step = fx / dfx
        x = np.clip(x - step, 0.0, 1.0)
        if np.all(np.abs(step) < 1e-15):
            break
    x = np.where(target >= 1.0, 0.0, x)
    x = np.where(target <= low_val, 1.0, x)
    return x, flag


def effective_labor_tasks(m, mu, params: ModelParams, method: str | None = None):
    """Task measure actually produced by labor, with the binding regime.

    Returns ``(m_star, region)``: region 1 means the technology frontier
    binds (m above the cost-minimizing frontier), region 2 means the
    cost-minimizing frontier binds and small changes in m are irrelevant.
    """
    m_bar = automation_frontier(mu, params, method)
    m_arr = np.asarray(m, dtype=float)
    m_star = np.maximum(m_arr, m_bar)
    region = np.where(m_arr >= m_bar, 1, 2)
    if np.ndim(m) == 0 and np.ndim(mu) == 0:
        return float(m_star), int(region)
    return m_star, region


def stationary_wage(m_star, mu, params: ModelParams):
    """Wage per efficiency unit at the marginal labor task.

    Inverts the stationary task cost index given the capital cost ratio and
    the labor task range. Raises :class:`WageIndexError` when the capital
    side already exhausts the index (no positive wage can close it).
    """
    one_less = 1.0 - params.sigma
    m_star = np.asarray(m_star, dtype=float)
    rho = capital.capital_cost_ratio(mu, params)
    numerator = params.B ** one_less * (1.0 - (1.0 - m_star) * np.power(rho, one_less))
    if np.any(numerator <= 0.0):
        raise WageIndexError(
            "task cost index cannot be closed: capital tasks absorb the whole "
            f"index (m*={m_star}, cost ratio={rho})"
        )
    value = np.power(numerator / task_cost_integral(m_star, params), 1.0 / one_less)
    if np.ndim(m_star) == 0 and np.ndim(mu) == 0:
        return float(value)
    return value


def labor_share_from_tasks(m_star, mu, params: ModelParams):
    """Labor share of production costs from the automated-range complement."""
    rho = capital.capital_cost_ratio(mu, params)
    m_star = np.asarray(m_star, dtype=float)
    return 1.0 - (1.0 - m_star) * np.power(rho, 1.0 - params.sigma)


def labor_share_from_wage(w_hat, m_star, params: ModelParams):
    """Labor share of production costs from the wage bill over the index."""
    one_less = 1.0 - params.sigma
    w_hat = np.asarray(w_hat, dtype=float)
    return (
        np.power(w_hat, one_less)
        * task_cost_integral(m_star, params)
        / params.B ** one_less
    )
