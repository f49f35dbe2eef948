"""Shared fixtures: solved baseline states, fixture-period parameters, and
the synthetic policy-series generator used across the suite."""
from __future__ import annotations

import pathlib

import numpy as np
import pytest

from taskmacro import ModelParams, solve_steady_state

DATA_DIR = pathlib.Path(__file__).parent / "data"
MACRO_CSV = DATA_DIR / "synthetic_macro.csv"
POLICY_CSV = DATA_DIR / "synthetic_policy.csv"

# Fitted parameters behind the shipped fixture windows (see
# scripts/make_fixture.py; produced by taskmacro.calibrate against the
# window targets and frozen).
PERIOD_A = dict(m=0.8926130090, beta_w=0.5792166751, b0=0.05)
PERIOD_B = dict(m=0.7902219581, beta_w=0.4089444730, b0=0.03)
WINDOW_A = (1978, 1982)
WINDOW_B = (1996, 2001)
TARGETS_A = dict(mu_data=0.32, capital_cost_share=0.12)
TARGETS_B = dict(mu_data=0.40, capital_cost_share=0.24)

# Constant-coefficient truth behind the synthetic policy series.
POLICY_TRUTH = dict(intercept=0.04, u_coeff=0.5, lag_coeff=0.3, noise_sd=0.001)
POLICY_CYCLE = dict(u_mean=0.06, u_rho=0.985, u_sd=0.004)
POLICY_SEED = 1954
POLICY_T = 600


def make_policy_series(T: int = POLICY_T, seed: int = POLICY_SEED):
    """Monthly benefit-ratio series from a constant-coefficient rule.

    Mirrors scripts/make_fixture.py; a unit test asserts the shipped CSV
    matches this generator so the two cannot drift apart.
    """
    rng = np.random.default_rng(seed)
    c = POLICY_TRUTH["intercept"]
    b_u = POLICY_TRUTH["u_coeff"]
    rho = POLICY_TRUTH["lag_coeff"]
    sd = POLICY_TRUTH["noise_sd"]
    um, ur, us = POLICY_CYCLE["u_mean"], POLICY_CYCLE["u_rho"], POLICY_CYCLE["u_sd"]
    u = np.empty(T)
    y = np.empty(T)
    u[0] = um
    y[0] = (c + b_u * u[0]) / (1.0 - rho)
    for t in range(1, T):
        u[t] = np.clip(um + ur * (u[t - 1] - um) + rng.normal(0.0, us), 0.02, 0.25)
        y[t] = c + b_u * u[t - 1] + rho * y[t - 1] + rng.normal(0.0, sd)
    dates = [f"{1954 + t // 12:04d}-{t % 12 + 1:02d}" for t in range(T)]
    return dates, y, u


@pytest.fixture(scope="session")
def table1() -> ModelParams:
    """Baseline calibration (package defaults)."""
    return ModelParams()


@pytest.fixture(scope="session")
def params_a() -> ModelParams:
    return ModelParams(**PERIOD_A)


@pytest.fixture(scope="session")
def params_b() -> ModelParams:
    return ModelParams(**PERIOD_B)


@pytest.fixture(scope="session")
def baseline_state(table1):
    return solve_steady_state(table1)


@pytest.fixture(scope="session")
def state_a(params_a):
    return solve_steady_state(params_a)


@pytest.fixture(scope="session")
def state_b(params_b):
    return solve_steady_state(params_b)


@pytest.fixture(scope="session")
def macro_csv() -> pathlib.Path:
    assert MACRO_CSV.exists(), "fixture missing; run scripts/make_fixture.py"
    return MACRO_CSV


@pytest.fixture(scope="session")
def policy_csv() -> pathlib.Path:
    assert POLICY_CSV.exists(), "fixture missing; run scripts/make_fixture.py"
    return POLICY_CSV
