#!/usr/bin/env python3
"""Regenerate the synthetic fixtures under tests/data/.

``synthetic_macro.csv`` is an annual national-accounts panel, 1978-2001.
Two balanced-path windows anchor it:

* 1978-1982 — high labor-task assignment, stronger worker patience, a
  higher benefit floor (m = 0.8926, beta_w = 0.5792, b0 = 0.05);
* 1996-2001 — lower assignment, weaker patience, lower floor
  (m = 0.7902, beta_w = 0.4089, b0 = 0.03).

The two parameter pairs were produced by ``taskmacro.calibrate`` against
round-number moment targets (window A: markup 0.32, capital cost share
0.12; window B: markup 0.40, capital cost share 0.24) and are frozen here
so the file regenerates identically. Between the windows the accounts are
bridged by interpolating the annual ratios linearly along a log-linear
nominal-output path, so the panel reads as one continuous series.

``synthetic_policy.csv`` is a monthly benefit-policy series, 1954-2003
(600 observations), generated from a constant-coefficient rule driven by
slow, wide unemployment swings; the estimator's bands should cover the
constants. Truth: intercept 0.04, unemployment coefficient 0.5, one lag
with coefficient 0.3, innovation s.d. 0.001, seed 1954. The small
innovation matches the character of the administrative series the
estimator is meant for, which is nearly deterministic month to month.

Run from the repository root:  python3 scripts/make_fixture.py
"""
from __future__ import annotations

import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from taskmacro import (  # noqa: E402
    ModelParams,
    MacroSeries,
    concat_series,
    solve_steady_state,
    state_to_annual_rows,
    state_to_moments,
    write_series,
)

DATA_DIR = pathlib.Path(__file__).resolve().parents[1] / "tests" / "data"

# Frozen output of taskmacro.calibrate on the window targets (see module
# docstring). Regenerate with scripts/recalibrate shown in the README if the
# solver internals ever change.
WINDOW_A = dict(years=range(1978, 1983), m=0.8926130090, beta_w=0.5792166751, b0=0.05)
WINDOW_B = dict(years=range(1996, 2002), m=0.7902219581, beta_w=0.4089444730, b0=0.03)

POLICY_SEED = 1954
POLICY_T = 600
POLICY_TRUTH = dict(intercept=0.04, u_coeff=0.5, lag_coeff=0.3, noise_sd=0.001)
POLICY_CYCLE = dict(u_mean=0.06, u_rho=0.985, u_sd=0.004)


def _annual_growth(params: ModelParams) -> float:
    return float(np.expm1(12.0 * params.growth_rate))


def make_macro_panel() -> MacroSeries:
    pa = ModelParams(m=WINDOW_A["m"], beta_w=WINDOW_A["beta_w"], b0=WINDOW_A["b0"])
    pb = ModelParams(m=WINDOW_B["m"], beta_w=WINDOW_B["beta_w"], b0=WINDOW_B["b0"])
    sa, sb = solve_steady_state(pa), solve_steady_state(pb)
    for label, st in (("A", sa), ("B", sb)):
        if st.warnings:
            raise RuntimeError(f"window {label} state carries warnings: {st.warnings}")

    years_a = list(WINDOW_A["years"])
    years_b = list(WINDOW_B["years"])
    gy = _annual_growth(pa)

    rows_a = state_to_annual_rows(sa, pa, years_a, scale=1.0)
    # Continue the log-linear nominal-output path through the bridge into
    # window B: scale B so its first-year output sits on that path.
    py_a_end = float(rows_a.py[-1])
    steps = years_b[0] - years_a[-1]
    py_b_start = py_a_end * (1.0 + gy) ** steps
    py_b_m = (1.0 + sb.mu) * sb.y_hat
    scale_b = py_b_start / (12.0 * py_b_m)
    rows_b = state_to_annual_rows(sb, pb, years_b, scale=scale_b)

    ma = state_to_moments(sa, pa)
    mb = state_to_moments(sb, pb)
    profit_share_a = float(rows_a.profits_after_tax[0] / rows_a.py[0])
    profit_share_b = float(rows_b.profits_after_tax[0] / rows_b.py[0])

    bridge_years = list(range(years_a[-1] + 1, years_b[0]))
    frac = np.array([(y - years_a[-1]) / steps for y in bridge_years])
    py = py_a_end * (1.0 + gy) ** np.arange(1, len(bridge_years) + 1)

    def lerp(a: float, b: float) -> np.ndarray:
        return (1.0 - frac) * a + frac * b

    labor_share = lerp(ma.labor_share, mb.labor_share)
    cc_share = lerp(ma.capital_cost_share, mb.capital_cost_share)
    wn = labor_share * py
    dep = wn * cc_share / (1.0 - cc_share)
    profits = lerp(profit_share_a, profit_share_b) * py
    bridge = MacroSeries(
        source="<synthetic>",
        year=np.array(bridge_years, dtype=int),
        py=py,
        wn=wn,
        dep=dep,
        inv=lerp(ma.inv_output, mb.inv_output) * py,
        pkk=lerp(ma.k_output, mb.k_output) * py,
        u=lerp(ma.u_rate, mb.u_rate),
        retained=lerp(ma.s_data, mb.s_data) * profits,
        profits_after_tax=profits,
    )
    return concat_series([rows_a, bridge, rows_b])


def make_policy_series(
    T: int = POLICY_T, seed: int = POLICY_SEED
) -> tuple[list[str], np.ndarray, np.ndarray]:
    """Monthly UI-generosity series from a constant-coefficient rule."""
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


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)

    panel = make_macro_panel()
    macro_path = DATA_DIR / "synthetic_macro.csv"
    write_series(macro_path, panel)
    print(f"wrote {macro_path} ({len(panel.year)} rows, {panel.year[0]}-{panel.year[-1]})")

    dates, y, u = make_policy_series()
    policy_path = DATA_DIR / "synthetic_policy.csv"
    with open(policy_path, "w", encoding="utf-8") as fh:
        fh.write("date,benefits_ratio,unemployment\n")
        for d, yy, uu in zip(dates, y, u):
            fh.write(f"{d},{yy:.12g},{uu:.12g}\n")
    print(f"wrote {policy_path} ({len(dates)} rows, {dates[0]}..{dates[-1]})")


if __name__ == "__main__":
    main()
