"""Search-and-matching labor market with bargained surplus division.

Provides the matching-rate functions, balanced-path separations including
technological displacement, the hours-supply condition, the bargaining
weight implied by discounting asymmetries, the opportunity cost of
employment, and the two curves whose intersection pins the equilibrium
rate of return: the free-entry (demand) curve and the bargained (supply)
curve in tightness space.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from .params import ModelParams


class HoursError(ArithmeticError):
    """The hours-supply condition has no positive solution."""


# -- matching ---------------------------------------------------------------


def job_finding_rate(theta, params: ModelParams):
    """Monthly probability an unemployed worker matches, bounded in (0,1)."""
    theta = np.asarray(theta, dtype=float)
    return np.power(1.0 + np.power(theta, -params.iota), -1.0 / params.iota)


def vacancy_fill_rate(theta, params: ModelParams):
    """Monthly probability a vacancy matches, bounded in (0,1)."""
    theta = np.asarray(theta, dtype=float)
    return np.power(1.0 + np.power(theta, params.iota), -1.0 / params.iota)


def vacancy_cost(theta, params: ModelParams):
    """Per-vacancy flow cost with a fill-contingent component."""
    return params.kappa0 + params.kappa1 * vacancy_fill_rate(theta, params)


# -- separations and employment --------------------------------------------


def displacement_rate(params: ModelParams) -> float:
    """Balanced-path monthly share of workers displaced by task reassignment."""
    return -math.expm1((params.sigma - 1.0) * params.growth_rate)


def separation_total(params: ModelParams) -> float:
    """Exogenous separations plus balanced-path displacement."""
    return params.lam + displacement_rate(params)


def employment_rate(theta, params: ModelParams):
    """Steady-state employment from flow balance of hires and separations."""
    f = job_finding_rate(theta, params)
    return f / (separation_total(params) + f)


def benefit_level(L, params: ModelParams):
    """Unemployment benefit under the linear policy rule."""
    return params.b0 + params.b1 * (1.0 - np.asarray(L, dtype=float))


# -- hours ------------------------------------------------------------------


def hours_worked(L, b_hat, w_hat, params: ModelParams):
    """Hours per employed worker solving the aggregate labor-supply margin.

    The condition eps0 * h^(1/eps1) * (L h + (1-L) b/w) = 1 has a unique
    positive root because the left side increases monotonically from zero.
    Accepts scalars or arrays (broadcast together).
    """
    L_arr, b_arr, w_arr = np.broadcast_arrays(
        np.asarray(L, dtype=float),
        np.asarray(b_hat, dtype=float),
        np.asarray(w_hat, dtype=float),
    )
    scalar = L_arr.ndim == 0
    L_arr = np.atleast_1d(L_arr).astype(float)
    b_arr = np.atleast_1d(b_arr).astype(float)
    w_arr = np.atleast_1d(w_arr).astype(float)
    ratio = np.where(w_arr > 0.0, b_arr / np.where(w_arr > 0.0, w_arr, 1.0), np.inf)
    if np.any((L_arr <= 0.0) & (ratio <= 0.0)):
        raise HoursError("no employment and no benefits: hours condition is empty")

    # Newton in log-hours; the transformed residual is strictly increasing.
    x = np.zeros_like(L_arr)  # h = 1 start
    eps0, eps1 = params.eps0, params.eps1
    for _ in range(80):
        h = np.exp(x)
        inner = L_arr * h + (1.0 - L_arr) * ratio
        F = math.log(eps0) + x / eps1 + np.log(inner)
        dF = 1.0 / eps1 + L_arr * h / inner
        step = F / dF
        step = np.clip(step, -2.0, 2.0)
        x = x - step
        if np.all(np.abs(step) < 1e-16):
            break
    h = np.exp(x)

    # bisection fallback for any stragglers (rare; keeps the contract tight)
    resid = eps0 * h ** (1.0 / eps1) * (L_arr * h + (1.0 - L_arr) * ratio) - 1.0
    bad = np.abs(resid) > 1e-12
    if np.any(bad):
        for idx in np.flatnonzero(bad):
            Li, ri = L_arr.flat[idx], ratio.flat[idx]
            fn = lambda hh: eps0 * hh ** (1.0 / eps1) * (Li * hh + (1.0 - Li) * ri) - 1.0
            h.flat[idx] = brentq(fn, 1e-9, 1e6, xtol=1e-15, rtol=8.9e-16)
    return float(h[0]) if scalar else h


# -- bargaining -------------------------------------------------------------


def bargaining_power(params: ModelParams) -> float:
    """Worker weight in surplus division implied by discounting asymmetry.

    Equals 1/2 exactly when worker and capitalist discount factors coincide,
    and falls below 1/2 when workers discount the future more heavily.
    """
    log_surv = math.log(1.0 - params.lam)
    num = log_surv + math.log(params.beta_c)
    # grouped so that equal discount factors give exactly num / (2 num)
    den = num + (log_surv + math.log(params.beta_w))
    return num / den


def citizen_wage(b_hat, h, y_n, params: ModelParams):
    """Opportunity cost of employment: benefits plus the hours margin value."""
    lever = params.eps1 / (1.0 + params.eps1)
    return np.asarray(b_hat, dtype=float) + lever * np.asarray(h) * np.asarray(y_n)


def hiring_drag(theta, params: ModelParams):
    """Tightness-dependent hiring-cost leverage inside the bargained curve."""
    ratio = params.beta_w / params.beta_c
    q = vacancy_fill_rate(theta, params)
    lam_hat = separation_total(params)
    return (1.0 - ratio) * (1.0 - lam_hat) / q + ratio * np.asarray(theta, dtype=float)


def markup_supply(theta, h, y_n, b_hat, params: ModelParams):
    """Rate of return conceded by bargaining at given tightness.

    Decreasing in worker power and in the opportunity cost of employment;
    its intersection with :func:`markup_demand` is the equilibrium.
    """
    eta = bargaining_power(params)
    z = citizen_wage(b_hat, h, y_n, params)
    flow = np.asarray(h) * np.asarray(y_n)
    kg = vacancy_cost(theta, params) * hiring_drag(theta, params)
    num = (1.0 - eta) * (flow - z) - eta * kg
    den = (1.0 - eta) * z + eta * (flow + kg)
    return num / den


def markup_demand(theta, h, y_n, params: ModelParams):
    """Rate of return required by free entry of vacancies at given tightness.

    Diverges (returned as +inf) when expected match output cannot cover the
    annuitized hiring cost; callers treat such grid points as infeasible.
    """
    q = vacancy_fill_rate(theta, params)
    kappa = vacancy_cost(theta, params)
    annuity = 1.0 - params.beta_c * (1.0 - separation_total(params))
    lever = params.beta_c * np.asarray(h) * np.asarray(y_n) * q / (annuity * kappa)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(lever > 1.0, 1.0 / np.where(lever > 1.0, lever - 1.0, 1.0), np.inf)
    return out


def markup_ceiling(h, y_n, b_hat, params: ModelParams):
    """Upper corridor bound: the bargained return when workers have no weight."""
    z = citizen_wage(b_hat, h, y_n, params)
    return (np.asarray(h) * np.asarray(y_n) - z) / z


def worker_power_ceiling(theta, h, y_n, b_hat, mu_min, params: ModelParams):
    """Largest bargaining weight compatible with nonnegative owner consumption.

    Strictly below one; evaluated at a candidate lower corridor bound for the
    rate of return.
    """
    z = citizen_wage(b_hat, h, y_n, params)
    flow = np.asarray(h) * np.asarray(y_n)
    kg = vacancy_cost(theta, params) * hiring_drag(theta, params)
    return (flow - z * (1.0 + mu_min)) / ((1.0 + mu_min) * (flow - z + kg))
