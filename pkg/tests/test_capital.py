"""Time-to-build capital block: closed forms vs the summed recursion.

Frozen reference values come from an independent mpmath implementation
evaluated at 30 significant digits before this module was written.
"""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from taskmacro import ModelParams, capital


def test_adjustment_factor_fixed_point():
    p = ModelParams()
    assert capital.adjustment_factor(p) == pytest.approx(12.9678434357629379, rel=1e-14)


def test_adjustment_factor_next_fixed_point():
    p = ModelParams()
    assert capital.adjustment_factor_next(p) == pytest.approx(
        -11.4182176113752215, rel=1e-14
    )


def test_return_coefficient_fixed_point():
    p = ModelParams()
    assert capital.capital_return_coefficient(p) == pytest.approx(
        0.102028644952572638, rel=1e-14
    )


def test_return_coefficient_printed_growth_convention():
    p = ModelParams(growth_convention="printed")
    assert capital.adjustment_factor(p) == pytest.approx(13.4105301262432302, rel=1e-14)
    assert capital.capital_return_coefficient(p) == pytest.approx(
        0.102470126124237404, rel=1e-14
    )


def test_return_coefficient_printed_exponent_convention():
    p = ModelParams(investment_exponent_convention="printed")
    assert capital.adjustment_factor(p) == pytest.approx(12.8597198710865927, rel=1e-14)
    assert capital.capital_return_coefficient(p) == pytest.approx(
        0.102029022854580329, rel=1e-14
    )


@pytest.mark.parametrize(
    "mu,expected",
    [
        (0.25, 0.127535806190715797),
        (0.37, 0.139779243585024514),
        (0.45, 0.147941535181230325),
    ],
)
def test_capital_productivity_fixed_points(mu, expected):
    p = ModelParams()
    assert capital.capital_productivity(mu, p) == pytest.approx(expected, rel=1e-14)


def test_capital_productivity_is_affine_in_markup():
    p = ModelParams()
    c_k = capital.capital_return_coefficient(p)
    grid = np.linspace(0.0, 0.6, 13)
    vals = capital.capital_productivity(grid, p)
    assert np.allclose(vals, c_k * (1.0 + grid), rtol=1e-15, atol=0.0)


def test_series_recursion_matches_closed_form():
    p = ModelParams()
    for mu in (0.0, 0.3, 0.45):
        series = capital.capital_productivity_series(mu, p, horizon=1200)
        closed = float(capital.capital_productivity(mu, p))
        assert series == pytest.approx(closed, rel=1e-12)


def test_series_truncation_insensitive():
    p = ModelParams()
    short = capital.capital_productivity_series(0.3, p, horizon=600)
    long = capital.capital_productivity_series(0.3, p, horizon=1200)
    assert abs(short - long) < 1e-12


def test_default_scale_pins_cost_ratio_to_one_plus_mu():
    p = ModelParams()
    grid = np.linspace(0.0, 0.6, 7)
    assert np.allclose(capital.capital_cost_ratio(grid, p), 1.0 + grid, rtol=1e-15)
    assert capital.gamma_k_effective(p) == pytest.approx(
        capital.capital_return_coefficient(p), rel=0.0
    )


def test_explicit_scale_respected():
    p = ModelParams(gamma_k=0.10)
    assert capital.gamma_k_effective(p) == 0.10
    assert capital.capital_cost_ratio(0.3, p) == pytest.approx(
        capital.capital_productivity(0.3, p) / 0.10, rel=1e-15
    )


def test_expenditure_flow_coefficient_fixed_point():
    p = ModelParams()
    assert capital.expenditure_flow_coefficient(p) == pytest.approx(
        12.9150183484269162, rel=1e-13
    )


@pytest.mark.parametrize(
    "mu,m_star,expected",
    [
        (0.40, 0.85, 0.148438989209517857),
        (0.28, 0.891276, 0.113535843495642188),
        (0.30, 0.90, 0.103458824427604825),
    ],
)
def test_investment_output_ratio_fixed_points(mu, m_star, expected):
    p = ModelParams()
    assert capital.investment_output_ratio(mu, m_star, p) == pytest.approx(
        expected, rel=1e-13
    )


def test_inconsistent_delivery_discounting_raises():
    p = ModelParams(pi_I=1e-9, z_psi=-0.5, g=0.0)
    with pytest.raises(ValueError, match="does not converge|nonpositive"):
        capital.capital_return_coefficient(p)


@given(
    mu=st.floats(0.0, 0.6),
    pi=st.floats(0.02, 0.9),
    ups=st.floats(1.5, 12.0),
)
@settings(max_examples=40)
def test_series_matches_closed_form_across_parameters(mu, pi, ups):
    p = ModelParams(pi_I=pi, upsilon=ups)
    series = capital.capital_productivity_series(mu, p, horizon=4000)
    closed = float(capital.capital_productivity(mu, p))
    assert series == pytest.approx(closed, rel=1e-10)
