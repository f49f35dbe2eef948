"""Matching, hours, and bargaining curves.

Frozen reference values come from an independent mpmath implementation
evaluated before this module was written.
"""
from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from taskmacro import ModelParams, labor
from taskmacro.labor import HoursError


# -- matching -----------------------------------------------------------------


def test_matching_rates_at_unit_tightness():
    p = ModelParams()
    expected = 2.0 ** (-1.0 / p.iota)
    assert labor.job_finding_rate(1.0, p) == pytest.approx(0.579386680965928043, rel=1e-14)
    assert labor.vacancy_fill_rate(1.0, p) == pytest.approx(expected, rel=1e-14)


@given(theta=st.floats(1e-4, 50.0))
@settings(max_examples=60)
def test_matching_rates_bounded_and_consistent(theta):
    p = ModelParams()
    f = float(labor.job_finding_rate(theta, p))
    q = float(labor.vacancy_fill_rate(theta, p))
    assert 0.0 < f < 1.0 and 0.0 < q < 1.0
    # both sides of the market see the same matching flow
    assert f == pytest.approx(theta * q, rel=1e-12)


def test_finding_rate_increases_fill_rate_decreases():
    p = ModelParams()
    grid = np.geomspace(1e-3, 20.0, 64)
    f = labor.job_finding_rate(grid, p)
    q = labor.vacancy_fill_rate(grid, p)
    assert np.all(np.diff(f) > 0.0)
    assert np.all(np.diff(q) < 0.0)


def test_displacement_and_separation_totals():
    p = ModelParams()
    assert labor.displacement_rate(p) == pytest.approx(6.66444493818931138e-4, rel=1e-14)
    assert labor.separation_total(p) == pytest.approx(0.0346664444938189311, rel=1e-14)


def test_employment_rate_flow_balance():
    p = ModelParams()
    theta = 0.5
    L = float(labor.employment_rate(theta, p))
    f = float(labor.job_finding_rate(theta, p))
    lam_hat = labor.separation_total(p)
    # hires into employment equal separations out of it
    assert f * (1.0 - L) == pytest.approx(lam_hat * L, rel=1e-12)


# -- hours ----------------------------------------------------------------------


def test_hours_closed_form_at_full_employment():
    p = ModelParams()
    h = labor.hours_worked(1.0, 0.0, 1.5, p)
    closed = p.eps0 ** (-p.eps1 / (1.0 + p.eps1))
    assert h == pytest.approx(closed, rel=1e-14)
    assert closed == pytest.approx(0.959975783925382586, rel=1e-14)


@given(
    L=st.floats(0.3, 1.0),
    b=st.floats(0.0, 0.8),
    w=st.floats(0.5, 3.0),
)
@settings(max_examples=60)
def test_hours_satisfy_supply_margin(L, b, w):
    p = ModelParams()
    h = labor.hours_worked(L, b, w, p)
    resid = p.eps0 * h ** (1.0 / p.eps1) * (L * h + (1.0 - L) * b / w) - 1.0
    assert abs(resid) < 1e-10
    assert h > 0.0


def test_hours_vectorized_matches_scalar():
    p = ModelParams()
    Ls = np.array([0.5, 0.9, 1.0])
    hs = labor.hours_worked(Ls, 0.1, 1.6, p)
    for L, h in zip(Ls, hs):
        assert h == pytest.approx(labor.hours_worked(float(L), 0.1, 1.6, p), rel=1e-12)


def test_hours_error_when_condition_is_empty():
    p = ModelParams()
    with pytest.raises(HoursError):
        labor.hours_worked(0.0, 0.0, 1.5, p)


def test_benefit_rule_linear_in_unemployment():
    p = ModelParams(b0=0.05, b1=0.5)
    assert labor.benefit_level(1.0, p) == pytest.approx(0.05)
    assert labor.benefit_level(0.9, p) == pytest.approx(0.10)


# -- bargaining ----------------------------------------------------------------


def test_bargaining_power_fixed_point():
    p = ModelParams(beta_w=0.98)
    assert labor.bargaining_power(p) == pytest.approx(0.386991260180906193, rel=1e-14)


@given(
    lam=st.floats(0.001, 0.3),
    beta=st.floats(0.5, 1.0),
)
@settings(max_examples=60)
def test_equal_patience_splits_surplus_equally(lam, beta):
    p = ModelParams(lam=lam, beta_w=beta, beta_c=beta)
    assert labor.bargaining_power(p) == 0.5  # exact, no tolerance


def test_more_impatient_workers_have_less_power():
    p_hi = ModelParams(beta_w=0.9)
    p_lo = ModelParams(beta_w=0.5)
    assert labor.bargaining_power(p_lo) < labor.bargaining_power(p_hi) < 0.5


def test_citizen_wage_components():
    p = ModelParams()
    lever = p.eps1 / (1.0 + p.eps1)
    z = labor.citizen_wage(0.1, 1.0, 1.6, p)
    assert z == pytest.approx(0.1 + lever * 1.6, rel=1e-14)


def test_hiring_drag_patience_limits():
    p_equal = ModelParams(beta_w=1.0, beta_c=1.0)
    theta = 0.7
    # equal patience: pure tightness leverage
    assert labor.hiring_drag(theta, p_equal) == pytest.approx(theta, rel=1e-14)
    p_weak = ModelParams(beta_w=0.5, beta_c=1.0)
    lam_hat = labor.separation_total(p_weak)
    q = float(labor.vacancy_fill_rate(theta, p_weak))
    expected = 0.5 * (1.0 - lam_hat) / q + 0.5 * theta
    assert labor.hiring_drag(theta, p_weak) == pytest.approx(expected, rel=1e-13)


def test_markup_supply_equals_surplus_split_route():
    # independent algebraic route: 1 + mu_S = h y_n / omega_bar with
    # omega_bar = (1-eta) z + eta (h y_n + kappa G)
    p = ModelParams(beta_w=0.6)
    theta, h, y_n, b_hat = 0.45, 0.99, 1.58, 0.095
    eta = labor.bargaining_power(p)
    z = float(labor.citizen_wage(b_hat, h, y_n, p))
    kg = float(labor.vacancy_cost(theta, p) * labor.hiring_drag(theta, p))
    omega_bar = (1.0 - eta) * z + eta * (h * y_n + kg)
    mu_route = h * y_n / omega_bar - 1.0
    assert float(labor.markup_supply(theta, h, y_n, b_hat, p)) == pytest.approx(
        mu_route, rel=1e-12
    )


def test_markup_demand_free_entry_identity():
    # at mu = mu_D the annuitized hiring cost is exactly covered:
    # beta_c h y_n q / (1 - beta_c (1 - lam_hat)) = kappa (1 + 1/mu_D) ... i.e.
    # value of a filled job equals the expected cost of filling the vacancy
    p = ModelParams(beta_w=0.6)
    theta, h, y_n = 0.45, 0.99, 1.58
    mu_d = float(labor.markup_demand(theta, h, y_n, p))
    q = float(labor.vacancy_fill_rate(theta, p))
    kappa = float(labor.vacancy_cost(theta, p))
    annuity = 1.0 - p.beta_c * (1.0 - labor.separation_total(p))
    lever = p.beta_c * h * y_n * q / (annuity * kappa)
    assert lever - 1.0 == pytest.approx(1.0 / mu_d, rel=1e-12)


def test_markup_demand_infeasible_is_infinite():
    p = ModelParams()
    # microscopic tightness: vacancies fill instantly but output cannot
    # cover the cost at tiny match output
    out = float(labor.markup_demand(5.0, 0.1, 0.05, p))
    assert math.isinf(out)


def test_markup_demand_increasing_in_tightness():
    # tighter markets fill vacancies more slowly, so free entry demands a
    # higher bargained return
    p = ModelParams(beta_w=0.6)
    grid = np.linspace(0.05, 2.0, 40)
    vals = np.asarray(labor.markup_demand(grid, 1.0, 1.6, p), dtype=float)
    finite = np.isfinite(vals)
    assert np.all(np.diff(vals[finite]) > 0.0)


def test_markup_supply_decreasing_in_benefits():
    p = ModelParams(beta_w=0.6)
    lo = float(labor.markup_supply(0.45, 0.99, 1.58, 0.05, p))
    hi = float(labor.markup_supply(0.45, 0.99, 1.58, 0.25, p))
    assert hi < lo


def test_markup_ceiling_is_zero_power_limit():
    p = ModelParams(beta_w=0.6)
    h, y_n, b_hat = 0.99, 1.58, 0.095
    z = float(labor.citizen_wage(b_hat, h, y_n, p))
    assert float(labor.markup_ceiling(h, y_n, b_hat, p)) == pytest.approx(
        (h * y_n - z) / z, rel=1e-14
    )


def test_worker_power_ceiling_below_one_and_decreasing_in_floor():
    p = ModelParams(beta_w=0.6)
    args = (0.45, 0.99, 1.58, 0.095)
    lo = float(labor.worker_power_ceiling(*args, 0.02, p))
    hi = float(labor.worker_power_ceiling(*args, 0.30, p))
    assert hi < lo < 1.0
