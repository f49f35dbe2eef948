"""Batch command-line front end.

Subcommands: ``solve``, ``calibrate``, ``compstat``, ``hypothesis``,
``estimate-policy``, ``moments``, ``audit``. Every run writes a manifest
echoing the fully resolved parameter set, the numeric results as
comma-separated files (authoritative), and SVG figures where a figure is
meaningful. Outputs contain no timestamps, so identical inputs and seed
yield byte-identical artifacts.

Exit codes: 0 success, 2 configuration error, 3 solver failure, 4 data or
calibration error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from . import empirics, equilibrium, plots, tvp
from .empirics import CalibrationError, DataError
from .equilibrium import SolverError
from .params import ConfigError, ModelParams

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_DATA = 4

OUT_DIR_ENV = "TASKMACRO_OUT_DIR"


@dataclass
class RunConfig:
    """Fully resolved invocation: command, inputs, outputs, seed, overrides."""

    command: str
    params_file: Path | None
    data_file: Path | None
    out_dir: Path
    seed: int
    flags: dict[str, str] = field(default_factory=dict)
    extra: dict[str, object] = field(default_factory=dict)

    def load_params(self) -> ModelParams:
        mapping: dict[str, str] = {}
        if self.params_file is not None:
            mapping.update(read_params_file(self.params_file))
        mapping.update(self.flags)
        return ModelParams.from_mapping(mapping)


def read_params_file(path: str | Path) -> dict[str, str]:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"parameter file not found: {path}")
    out: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            raise ConfigError(f"{path}:{lineno}: empty key")
        if key in out:
            raise ConfigError(f"{path}:{lineno}: duplicate key '{key}'")
        out[key] = value.strip()
    return out


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _fmt(value: object) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _write_kv(path: Path, mapping: Mapping[str, object]) -> None:
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["key", "value"])
        for key, value in mapping.items():
            writer.writerow([key, _fmt(value)])


def _write_rows(path: Path, rows: Sequence[Mapping[str, object]], fieldnames: Sequence[str]) -> None:
    with path.open("w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=list(fieldnames))
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _fmt(v) for k, v in row.items()})


def _write_manifest(config: RunConfig, params: ModelParams | None) -> None:
    lines = [f"command = {config.command}", f"seed = {config.seed}"]
    lines.append(f"params_file = {config.params_file or ''}")
    lines.append(f"data_file = {config.data_file or ''}")
    for key, value in sorted(config.extra.items()):
        lines.append(f"{key} = {_fmt(value)}")
    if params is not None:
        for key, value in params.to_mapping().items():
            lines.append(f"{key} = {_fmt(value)}")
    (config.out_dir / "manifest.txt").write_text("\n".join(lines) + "\n")


def _try_plot(fn: Callable[[], Path], label: str) -> None:
    """Figures are best-effort; the delimited output is authoritative."""
    try:
        fn()
    except Exception as exc:  # noqa: BLE001 - plotting must never fail the run
        logger.warning("figure %s failed: %s", label, exc)


def _parse_window(text: str) -> tuple[int, int]:
    try:
        start, stop = text.split(":")
        return int(start), int(stop)
    except ValueError:
        raise ConfigError(f"window must look like 1978:1982, got {text!r}") from None


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------


def _cmd_solve(config: RunConfig, params: ModelParams) -> int:
    state = equilibrium.solve_steady_state(params)
    _write_kv(config.out_dir / "steady_state.csv", state.to_mapping())
    curve = equilibrium.residual_curve(params)
    rows = [
        {
            "theta": curve["theta"][i],
            "mu_supply": curve["mu_supply"][i],
            "mu_demand": curve["mu_demand"][i],
            "residual": curve["residual"][i],
        }
        for i in range(curve["theta"].shape[0])
    ]
    _write_rows(
        config.out_dir / "return_curves.csv",
        rows,
        ["theta", "mu_supply", "mu_demand", "residual"],
    )
    _try_plot(
        lambda: plots.plot_return_curves(
            curve["theta"],
            curve["mu_supply"],
            curve["mu_demand"],
            state.theta,
            config.out_dir / "return_curves.svg",
        ),
        "return_curves",
    )
    for warning in state.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(
        f"mu={state.mu:.6f} theta={state.theta:.6f} L={state.L:.6f} "
        f"omega_w={state.omega_w:.6f} r={state.r:.6f} s={state.s:.6f}"
    )
    return EXIT_OK


def _cmd_audit(config: RunConfig, params: ModelParams) -> int:
    state = equilibrium.solve_steady_state(params)
    _write_kv(config.out_dir / "steady_state.csv", state.to_mapping())
    audit = equilibrium.accounting_audit(state, params)
    rows: dict[str, object] = dict(audit)
    cor = equilibrium.corridor(params, state)
    rows["corridor_mu_min"] = cor.mu_min
    rows["corridor_mu_max"] = cor.mu_max
    rows["corridor_eta_U"] = cor.eta_U
    rows["mu_inside_corridor"] = int(cor.mu_min < state.mu < cor.mu_max)
    _write_kv(config.out_dir / "audit.csv", rows)
    worst = max(
        abs(v)
        for k, v in audit.items()
        if k not in ("owner_consumption", "expenditure_delivery_wedge")
    )
    print(f"largest identity residual = {worst:.3e}")
    return EXIT_OK


def _cmd_compstat(config: RunConfig, params: ModelParams) -> int:
    shock = str(config.extra["shock"])
    delta = float(config.extra["delta"])
    table = equilibrium.comparative_statics(params, shock, rel_change=abs(delta))
    rows = []
    for name in equilibrium.COMPSTAT_OUTPUTS:
        decrease = table.response_to_decrease[name]
        rows.append(
            {
                "output": name,
                "base": getattr(table.base, name),
                "derivative": table.derivative[name],
                "response_to_decrease": decrease,
                "response_requested": decrease if delta < 0 else -decrease,
                "sign_of_derivative": table.sign[name],
            }
        )
    _write_rows(
        config.out_dir / f"compstat_{shock}.csv",
        rows,
        [
            "output",
            "base",
            "derivative",
            "response_to_decrease",
            "response_requested",
            "sign_of_derivative",
        ],
    )
    for flag in table.flags:
        print(f"warning: {flag}", file=sys.stderr)
    responses = {r["output"]: float(r["response_requested"]) for r in rows}
    _try_plot(
        lambda: plots.plot_compstat(
            equilibrium.COMPSTAT_OUTPUTS,
            responses,
            shock,
            delta,
            config.out_dir / f"compstat_{shock}.svg",
        ),
        "compstat",
    )
    print(f"wrote signed responses for shock '{shock}' (delta={delta:+g})")
    return EXIT_OK


def _require_data(config: RunConfig) -> Path:
    if config.data_file is None:
        raise ConfigError(f"command '{config.command}' requires --data FILE")
    return config.data_file


def _cmd_moments(config: RunConfig, params: ModelParams) -> int:
    series = empirics.load_series(_require_data(config))
    window = config.extra.get("window")
    moments = empirics.compute_moments(series, window)  # type: ignore[arg-type]
    _write_kv(config.out_dir / "moments.csv", moments.to_mapping())
    paths = plots.moment_paths(series)
    rows = [
        {key: paths[key][i] for key in paths} for i in range(series.year.shape[0])
    ]
    _write_rows(config.out_dir / "moment_paths.csv", rows, list(paths))
    _try_plot(
        lambda: plots.plot_moment_panels(series, config.out_dir / "moments.svg"),
        "moments",
    )
    print(
        f"window {moments.label}: mu={moments.mu_data:.4f} "
        f"capital cost share={moments.capital_cost_share:.4f}"
    )
    return EXIT_OK


def _calibrate_window(
    config: RunConfig,
    params: ModelParams,
    window: tuple[int, int],
    b0: float | None,
) -> tuple[empirics.MomentSet, empirics.CalibrationResult]:
    series = empirics.load_series(_require_data(config))
    moments = empirics.compute_moments(series, window)
    result = empirics.calibrate(moments, params, b0=b0)
    return moments, result


def _cmd_calibrate(config: RunConfig, params: ModelParams) -> int:
    window = config.extra["window"]
    b0 = config.extra.get("b0")
    moments, result = _calibrate_window(config, params, window, b0)  # type: ignore[arg-type]
    out: dict[str, object] = {
        "window": moments.label,
        "m": result.m,
        "beta_w": result.beta_w,
        "b0": result.params.b0,
        "target_mu": result.target_mu,
        "achieved_mu": result.achieved_mu,
        "target_capital_cost_share": result.target_capital_cost_share,
        "achieved_capital_cost_share": result.achieved_capital_cost_share,
        "iterations": result.iterations,
        "jacobian_condition": result.jacobian_condition,
        "message": result.message,
    }
    _write_kv(config.out_dir / "calibration.csv", out)
    _write_kv(config.out_dir / "calibrated_state.csv", result.state.to_mapping())
    _try_plot(
        lambda: plots.plot_automation_frontier(
            result.params,
            config.out_dir / "frontier.svg",
            points=[(result.state.mu, result.params.m, moments.label)],
        ),
        "frontier",
    )
    print(
        f"calibrated m={result.m:.6f} beta_w={result.beta_w:.6f} "
        f"({result.iterations} iterations)"
    )
    return EXIT_OK


def _cmd_hypothesis(config: RunConfig, params: ModelParams) -> int:
    window_a = config.extra["window_a"]
    window_b = config.extra["window_b"]
    _, result_a = _calibrate_window(config, params, window_a, config.extra.get("b0_a"))  # type: ignore[arg-type]
    _, result_b = _calibrate_window(config, params, window_b, config.extra.get("b0_b"))  # type: ignore[arg-type]
    split = empirics.hypothesis_paths(result_a.params, result_b.params)
    state_rows = []
    for label in ("base", "technology", "institutions", "full"):
        row: dict[str, object] = {"path": label}
        row.update(getattr(split, label).to_mapping())
        state_rows.append(row)
    _write_rows(
        config.out_dir / "hypothesis_states.csv", state_rows, list(state_rows[0])
    )
    tracked = [
        ("mu", "markup"),
        ("L", "employment rate"),
        ("omega_w", "labor share"),
        ("theta", "tightness"),
        ("w_hat", "wage index"),
    ]
    contrib_rows = []
    for name, label in tracked:
        row = {"field": name, "label": label}
        row.update(split.contributions(name))
        contrib_rows.append(row)
    _write_rows(
        config.out_dir / "hypothesis_contributions.csv",
        contrib_rows,
        ["field", "label", "total", "technology", "institutions", "interaction"],
    )
    _try_plot(
        lambda: plots.plot_contributions(
            split, tracked[:3], config.out_dir / "hypothesis.svg"
        ),
        "hypothesis",
    )
    mu_split = split.contributions("mu")
    print(
        f"markup change {mu_split['total']:+.4f} = technology "
        f"{mu_split['technology']:+.4f} + institutions {mu_split['institutions']:+.4f} "
        f"+ interaction {mu_split['interaction']:+.4f}"
    )
    return EXIT_OK


def _cmd_estimate_policy(config: RunConfig, params: ModelParams) -> int:
    dates, y, u = tvp.load_policy_series(_require_data(config))
    model = tvp.make_model(y, u, p=int(config.extra["p"]), dates=dates)
    posterior = tvp.gibbs(
        model,
        n_burn=int(config.extra["burn"]),
        n_keep=int(config.extra["keep"]),
        rng=config.seed,
    )
    rows = posterior.band_rows()
    _write_rows(config.out_dir / "policy_bands.csv", rows, list(rows[0]))
    _try_plot(
        lambda: plots.plot_policy_bands(rows, config.out_dir / "policy_bands.svg"),
        "policy_bands",
    )
    reduced = posterior.reduced_bands()
    print(
        f"terminal reduced-form medians: b0={reduced['b0'][-1, 1]:.4f} "
        f"b1={reduced['b1'][-1, 1]:.4f} ({posterior.n_draws} draws kept)"
    )
    return EXIT_OK


_COMMANDS = {
    "solve": _cmd_solve,
    "audit": _cmd_audit,
    "compstat": _cmd_compstat,
    "moments": _cmd_moments,
    "calibrate": _cmd_calibrate,
    "hypothesis": _cmd_hypothesis,
    "estimate-policy": _cmd_estimate_policy,
}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taskmacro",
        description=(
            "Steady-state solver, calibration, and policy estimation for a "
            "task-based automation model with matching unemployment."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, data: bool = False) -> None:
        p.add_argument("--params", type=Path, default=None,
                       help="flat key = value parameter file")
        p.add_argument("--out-dir", type=Path, default=None,
                       help=f"output directory (default ${OUT_DIR_ENV} or ./taskmacro-out)")
        p.add_argument("--seed", type=int, default=0, help="random seed")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override one parameter (repeatable)")
        if data:
            p.add_argument("--data", type=Path, required=False, default=None,
                           help="input data file")

    common(sub.add_parser("solve", help="solve the steady state at given parameters"))
    common(sub.add_parser("audit", help="solve and audit every accounting identity"))

    p = sub.add_parser("compstat", help="signed responses to a parameter change")
    common(p)
    p.add_argument("--shock", choices=["m", "b0", "beta_w"], required=True)
    p.add_argument("--delta", type=float, default=0.01,
                   help="relative change; sign selects the reported direction")

    p = sub.add_parser("moments", help="annual moments of a macro series")
    common(p, data=True)
    p.add_argument("--window", type=str, default=None, help="year window start:stop")

    p = sub.add_parser("calibrate", help="match markup and capital cost share")
    common(p, data=True)
    p.add_argument("--window", type=str, required=True, help="year window start:stop")
    p.add_argument("--b0", type=float, default=None, help="benefit floor during window")

    p = sub.add_parser("hypothesis", help="two-window counterfactual decomposition")
    common(p, data=True)
    p.add_argument("--window-a", type=str, required=True)
    p.add_argument("--window-b", type=str, required=True)
    p.add_argument("--b0-a", type=float, default=None)
    p.add_argument("--b0-b", type=float, default=None)

    p = sub.add_parser("estimate-policy", help="time-varying policy regression")
    common(p, data=True)
    p.add_argument("--p", type=int, default=1, help="own-lag order")
    p.add_argument("--burn", type=int, default=10_000)
    p.add_argument("--keep", type=int, default=10_000)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    out_dir = args.out_dir
    if out_dir is None:
        out_dir = Path(os.environ.get(OUT_DIR_ENV, "taskmacro-out"))
    flags: dict[str, str] = {}
    for item in args.set:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        flags[key.strip()] = value.strip()
    extra: dict[str, object] = {}
    if args.command == "compstat":
        extra = {"shock": args.shock, "delta": args.delta}
    elif args.command == "moments":
        extra = {"window": _parse_window(args.window) if args.window else None}
    elif args.command == "calibrate":
        extra = {"window": _parse_window(args.window), "b0": args.b0}
    elif args.command == "hypothesis":
        extra = {
            "window_a": _parse_window(args.window_a),
            "window_b": _parse_window(args.window_b),
            "b0_a": args.b0_a,
            "b0_b": args.b0_b,
        }
    elif args.command == "estimate-policy":
        extra = {"p": args.p, "burn": args.burn, "keep": args.keep}
    return RunConfig(
        command=args.command,
        params_file=args.params,
        data_file=getattr(args, "data", None),
        out_dir=out_dir,
        seed=args.seed,
        flags=flags,
        extra=extra,
    )


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        params = config.load_params()
        config.out_dir.mkdir(parents=True, exist_ok=True)
        _write_manifest(config, params)
        return _COMMANDS[config.command](config, params)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (DataError, CalibrationError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
