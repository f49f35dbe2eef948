"""Static SVG figures for the command-line report path.

Every function takes prepared arrays or result objects, draws one figure,
and writes it to the given path. Output is deterministic: the SVG hash salt
is pinned and no timestamps are embedded, so identical inputs yield
byte-identical files. The delimited outputs written next to the figures are
authoritative; figures are a convenience view.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .empirics import MacroSeries, HypothesisSplit
from .equilibrium import SteadyState
from .params import ModelParams
from . import technology

_RC = {
    "svg.hashsalt": "taskmacro",
    "svg.fonttype": "none",
    "figure.figsize": (8.0, 5.0),
    "figure.dpi": 100,
    "axes.grid": True,
    "grid.alpha": 0.3,
}


def _save(fig: "plt.Figure", path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def plot_return_curves(
    theta: np.ndarray,
    mu_supply: np.ndarray,
    mu_demand: np.ndarray,
    theta_star: float | None,
    path: str | Path,
) -> Path:
    """Wage-setting and job-creation return schedules over market tightness."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        ax.plot(theta, mu_supply, label="bargained return (supply)", color="tab:blue")
        ax.plot(theta, mu_demand, label="free-entry return (demand)", color="tab:red")
        if theta_star is not None:
            ax.axvline(theta_star, color="black", linestyle=":", linewidth=1,
                       label=f"equilibrium tightness = {theta_star:.4g}")
        ax.set_xlabel("labor market tightness")
        ax.set_ylabel("net return on capital value (markup)")
        finite = mu_demand[np.isfinite(mu_demand)]
        if finite.size:
            top = np.nanmax(np.concatenate([finite, mu_supply[np.isfinite(mu_supply)]]))
            ax.set_ylim(-0.05, min(1.0, 1.2 * top + 0.05))
        ax.legend(loc="best")
        ax.set_title("Steady-state return determination")
        fig.tight_layout()
        return _save(fig, path)


def plot_policy_bands(
    rows: Sequence[Mapping[str, float | str]],
    path: str | Path,
    level: float = 68.0,
) -> Path:
    """Reduced-form policy coefficient paths with central posterior bands."""
    t = np.arange(len(rows))
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(2, 1, sharex=True, figsize=(8.0, 6.0))
        for ax, name, label in (
            (axes[0], "b0", "long-run benefit level (intercept)"),
            (axes[1], "b1", "long-run response to unemployment"),
        ):
            lo = np.array([float(r[f"{name}_lo"]) for r in rows])
            med = np.array([float(r[f"{name}_median"]) for r in rows])
            hi = np.array([float(r[f"{name}_hi"]) for r in rows])
            ax.fill_between(t, lo, hi, alpha=0.3, color="tab:blue",
                            label=f"{level:.0f}% band")
            ax.plot(t, med, color="tab:blue", label="posterior median")
            ax.set_ylabel(label)
            ax.legend(loc="best")
        axes[1].set_xlabel("period")
        axes[0].set_title("Time-varying benefit policy coefficients")
        fig.tight_layout()
        return _save(fig, path)


_PANEL_SPECS = (
    ("mu_data", "markup over total costs"),
    ("capital_cost_share", "capital share of costs"),
    ("labor_share", "labor share of output"),
    ("inv_output", "investment / output"),
    ("k_output", "capital / output (years)"),
    ("u_rate", "unemployment rate"),
)


def moment_paths(series: MacroSeries) -> dict[str, np.ndarray]:
    """Per-year ratio paths underlying the moment panels."""
    costs = series.dep + series.wn
    return {
        "year": series.year.astype(float),
        "mu_data": (series.py - costs) / costs,
        "capital_cost_share": series.dep / costs,
        "labor_share": series.wn / series.py,
        "inv_output": series.inv / series.py,
        "k_output": series.pkk / series.py,
        "u_rate": series.u,
    }


def plot_moment_panels(series: MacroSeries, path: str | Path) -> Path:
    """Six annual-ratio panels (markup, shares, big ratios, unemployment)."""
    paths = moment_paths(series)
    year = paths["year"]
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(3, 2, figsize=(9.0, 8.0), sharex=True)
        for ax, (key, label) in zip(axes.ravel(), _PANEL_SPECS):
            ax.plot(year, paths[key], marker="o", markersize=3, color="tab:blue")
            ax.set_title(label, fontsize=10)
        for ax in axes[-1]:
            ax.set_xlabel("year")
        fig.suptitle("Annual accounting moments")
        fig.tight_layout()
        return _save(fig, path)


def plot_automation_frontier(
    params: ModelParams,
    path: str | Path,
    mu_max: float = 0.5,
    points: Sequence[tuple[float, float, str]] = (),
) -> Path:
    """Adoption frontier against the return, both approximations.

    ``points`` are (markup, labor-task measure, label) markers, e.g.
    calibrated economies.
    """
    mu = np.linspace(0.0, mu_max, 201)
    taylor = technology.automation_frontier(mu, params, method="taylor")
    exact = technology.automation_frontier(mu, params, method="exact")
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        ax.plot(mu, taylor, label="frontier (quadratic expansion)", color="tab:blue")
        ax.plot(mu, exact, label="frontier (exact)", color="tab:red", linestyle="--")
        for mu_pt, m_pt, label in points:
            ax.plot([mu_pt], [m_pt], marker="o", color="black")
            ax.annotate(label, (mu_pt, m_pt), textcoords="offset points",
                        xytext=(5, 5), fontsize=8)
        ax.set_xlabel("net return (markup)")
        ax.set_ylabel("labor-task measure")
        ax.set_title("Automation adoption frontier")
        ax.legend(loc="best")
        fig.tight_layout()
        return _save(fig, path)


def plot_contributions(
    split: HypothesisSplit,
    fields: Sequence[tuple[str, str]],
    path: str | Path,
) -> Path:
    """Grouped bars splitting each field's change into the two channels."""
    labels = [label for _, label in fields]
    channels = ("technology", "institutions", "interaction", "total")
    colors = ("tab:blue", "tab:red", "tab:gray", "black")
    width = 0.2
    x = np.arange(len(fields))
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        for i, channel in enumerate(channels):
            vals = [split.contributions(name)[channel] for name, _ in fields]
            ax.bar(x + (i - 1.5) * width, vals, width, label=channel, color=colors[i])
        ax.axhline(0.0, color="black", linewidth=0.8)
        ax.set_xticks(x)
        ax.set_xticklabels(labels, rotation=20, ha="right")
        ax.set_ylabel("change from base economy")
        ax.set_title("Counterfactual decomposition")
        ax.legend(loc="best")
        fig.tight_layout()
        return _save(fig, path)


def plot_compstat(
    outputs: Sequence[str],
    response: Mapping[str, float],
    shock: str,
    delta: float,
    path: str | Path,
) -> Path:
    """Bar chart of relative steady-state responses to one perturbation."""
    vals = [response[name] for name in outputs]
    x = np.arange(len(outputs))
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        bars = ax.bar(x, vals, color=["tab:blue" if v >= 0 else "tab:red" for v in vals])
        ax.axhline(0.0, color="black", linewidth=0.8)
        ax.set_xticks(x)
        ax.set_xticklabels(outputs, rotation=30, ha="right")
        ax.set_ylabel("response")
        sign = "+" if delta > 0 else ""
        ax.set_title(f"Steady-state response to {shock} change of {sign}{delta:g}")
        fig.tight_layout()
        return _save(fig, path)
