"""Command-line front end: ``largespin list | run | predict``.

Exit codes: 0 success, 1 invalid configuration, 2 numerical failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import analysis
from .config import SCENARIOS, ConfigError, RunConfig, build_config, load_config, convert_value
from .dynamics import evolve_bloch, evolve_master, initial_state_x_up, initial_state_spin_up
from .exceptions import AnalysisError, NumericalError
from .io import write_plot_script, write_summary, write_trajectory_csv
from .rates import compute_rates

log = logging.getLogger("largespin")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_IO = 0, 1, 2, 3


@dataclass
class RunResult:
    config: RunConfig
    trajectories: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)
    files: list = field(default_factory=list)


def list_scenarios() -> str:
    lines = []
    for sc in SCENARIOS.values():
        lines.append(f"{sc.name}: {sc.source}")
        for key, value in sc.values.items():
            if key in sc.sweep:
                value = ", ".join(f"{v:g}" for v in sc.sweep[key])
                lines.append(f"    {key} = {value}  (swept)")
            else:
                lines.append(f"    {key} = {value:g}")
    return "\n".join(lines) + "\n"


def _simulate(cfg: RunConfig):
    params, bath = cfg.system(), cfg.bath()
    rates = compute_rates(params, bath)
    if cfg.initial_state == "x-up":
        rho0 = initial_state_x_up(params.spin)
    else:
        rho0 = initial_state_spin_up(params.spin)
    traj = evolve_master(params, rho0=rho0, t_end=cfg.t_end, dt=cfg.dt, sample_every=cfg.sample_every, rates=rates)
    return params, bath, rates, traj


def _measure(cfg, params, bath, rates, traj, prefix, decay_mode="level"):
    out = {}
    out[f"{prefix}.min_eig"] = float(traj.min_eig.min())
    out[f"{prefix}.max_trace_err"] = float(traj.trace_err.max())
    out[f"{prefix}.max_herm_err"] = float(traj.herm_err.max())
    try:
        out[f"{prefix}.decay_time"] = analysis.extract_decay_time(traj, mode=decay_mode)
    except AnalysisError:
        out[f"{prefix}.decay_time"] = "no-crossing"
    if params.spin.two_j == 1 and bath.alpha > 0:
        eq = analysis.equilibrium_bloch(params, rates)
        th = analysis.equilibrium_thermodynamic(params, bath.temperature)
        out.update({
            f"{prefix}.equilibrium_bloch.jz": eq.jz_inf,
            f"{prefix}.equilibrium_bloch.jx": eq.jx_inf,
            f"{prefix}.equilibrium_thermodynamic.jz": th.jz_inf,
            f"{prefix}.equilibrium_thermodynamic.jx": th.jx_inf,
        })
    if params.epsilon == 0 and bath.temperature == 0 and bath.alpha > 0:
        pred = analysis.beat_prediction(params, bath)
        out[f"{prefix}.beat_prediction.omega_0"] = pred.omega_0
        out[f"{prefix}.beat_prediction.omega_b"] = pred.omega_b
        out[f"{prefix}.beat_closed_form.omega_b"] = analysis.beat_frequency(bath.alpha, bath.omega_c, params.tc)
        try:
            out[f"{prefix}.beat_measured.omega_b"] = analysis.extract_beat_frequency(traj)
        except AnalysisError as exc:
            out[f"{prefix}.beat_measured.omega_b"] = f"degraded ({exc})"
    return out


def run_scenario(config: RunConfig, decay_mode: str = "level") -> RunResult:
    """Integrate every trajectory of ``config`` and write CSV, summary and plot script.

    ``decay_mode`` is "level" (first zero crossing of <J_z>/J) or "1/e".
    """
    result = RunResult(config)
    prefix = Path(config.output)
    runs = config.expand()
    summary = result.summary
    summary["scenario"] = config.scenario
    summary["source"] = SCENARIOS[config.scenario].source
    summary["units"] = "energies in T_c, times in 1/T_c, hbar = k_B = 1"
    summary["trajectories"] = len(runs)
    summary["decay_mode"] = decay_mode
    csv_files, norms = {}, {}
    decay = []
    for cfg in runs:
        tag = cfg.tag()
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            params, bath, rates, traj = _simulate(cfg)
        for w in caught:
            log.warning("%s: %s", tag, w.message)
        if bath.beyond_weak_coupling:
            log.warning("%s: alpha=%g is beyond the weak-coupling regime (> 0.1)", tag, bath.alpha)
        result.trajectories[tag] = traj
        extra = None
        for key in ("two_j", "epsilon", "tc", "alpha", "omega_c", "temperature", "t_end", "dt"):
            summary[f"{tag}.{key}"] = getattr(cfg, key)
        summary[f"{tag}.delta"] = params.delta
        summary[f"{tag}.gamma"] = repr(rates.gamma)
        summary[f"{tag}.gamma_c"] = repr(rates.gamma_c)
        summary[f"{tag}.gamma_s"] = repr(rates.gamma_s)
        if params.spin.two_j == 1 and cfg.initial_state == "z-up":
            bloch = evolve_bloch(params, t_end=cfg.t_end, dt=cfg.dt, sample_every=cfg.sample_every, rates=rates)
            extra = {"bloch_jx": bloch.jx, "bloch_jy": bloch.jy, "bloch_jz": bloch.jz}
            summary[f"{tag}.bloch_master_max_dev"] = float(
                max(np.abs(bloch.jz - traj.jz).max(), np.abs(bloch.jx - traj.jx).max())
            )
        summary.update(_measure(cfg, params, bath, rates, traj, tag, decay_mode))
        decay.append(summary[f"{tag}.decay_time"])
        path = prefix.parent / f"{prefix.name}_{tag}.csv" if len(runs) > 1 else prefix.with_suffix(".csv")
        write_trajectory_csv(traj, path, extra)
        summary[f"{tag}.csv"] = path.name
        result.files.append(path)
        csv_files[tag] = path
        norms[tag] = params.spin.j
    if config.sweep and config.sweep[0] == "two_j":
        times = [d for d in decay if isinstance(d, float)]
        summary["decay_times"] = decay
        summary["decay_times_strictly_decreasing"] = len(times) == len(decay) and all(
            a > b for a, b in zip(times, times[1:])
        )
    normalize = norms if any(n != 0.5 for n in norms.values()) or len(runs) > 1 else None
    script = write_plot_script(csv_files, prefix.parent / f"{prefix.name}.gp", config.scenario, normalize)
    summary_path = write_summary(summary, prefix.parent / f"{prefix.name}_summary.txt")
    result.files += [script, summary_path]
    return result


def predict(config: RunConfig) -> dict:
    """Closed-form predictions without time integration."""
    out = {}
    for cfg in config.expand():
        params, bath = cfg.system(), cfg.bath()
        tag = cfg.tag()
        rates = compute_rates(params, bath)
        out[f"{tag}.delta"] = params.delta
        out[f"{tag}.gamma"] = repr(rates.gamma)
        out[f"{tag}.gamma_c"] = repr(rates.gamma_c)
        out[f"{tag}.gamma_s"] = repr(rates.gamma_s)
        if params.spin.two_j == 1:
            th = analysis.equilibrium_thermodynamic(params, bath.temperature)
            out[f"{tag}.equilibrium_thermodynamic.jz"] = th.jz_inf
            out[f"{tag}.equilibrium_thermodynamic.jx"] = th.jx_inf
            if bath.alpha > 0:
                eq = analysis.equilibrium_bloch(params, rates)
                out[f"{tag}.equilibrium_bloch.jz"] = eq.jz_inf
                out[f"{tag}.equilibrium_bloch.jx"] = eq.jx_inf
        if params.epsilon == 0 and bath.temperature == 0:
            pred = analysis.beat_prediction(params, bath)
            out[f"{tag}.beat_prediction.omega_0"] = pred.omega_0
            out[f"{tag}.beat_prediction.omega_b"] = pred.omega_b
            out[f"{tag}.beat_closed_form.omega_b"] = analysis.beat_frequency(bath.alpha, bath.omega_c, params.tc)
    return out


def _parser():
    parser = argparse.ArgumentParser(prog="largespin", description="Born-Markov dynamics of a large spin in an ohmic bath.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="list scenario presets")
    for name, helptext in (("run", "integrate a scenario and write CSV/summary/plot files"),
                           ("predict", "evaluate closed-form equilibria and beat frequencies")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", help="file of 'key = value' lines; flags override it")
        p.add_argument("--scenario", choices=list(SCENARIOS))
        p.add_argument("--spin", help="spin size J, e.g. 1/2 or 5")
        p.add_argument("--two-j", help="2J (alternative to --spin)")
        for flag in ("epsilon", "tc", "alpha", "omega-c", "temperature", "t-end", "dt", "sample-every"):
            p.add_argument(f"--{flag}")
        p.add_argument("--initial-state", choices=["z-up", "x-up"])
        p.add_argument("--output", help="output path prefix (default: scenario name)")
        if name == "run":
            p.add_argument("--decay-mode", choices=["level", "1/e"], default="level",
                           help="decay time: first zero crossing of <J_z>/J, or 1/e of its range")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def _overrides(args) -> dict:
    overrides = load_config(args.config) if args.config else {}
    for key, raw in vars(args).items():
        if key in ("command", "config", "verbose", "decay_mode") or raw is None:
            continue
        k, v = convert_value(key, str(raw))
        overrides[k] = v
    return overrides


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if args.command == "list":
        sys.stdout.write(list_scenarios())
        return EXIT_OK
    try:
        config = build_config(_overrides(args))
        if args.command == "predict":
            for key, value in predict(config).items():
                print(f"{key} = {value!r}" if isinstance(value, float) else f"{key} = {value}")
            return EXIT_OK
        result = run_scenario(config, args.decay_mode)
    except ConfigError as exc:
        log.error("invalid configuration: %s", exc)
        return EXIT_CONFIG
    except NumericalError as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except OSError as exc:
        log.error("I/O failure: %s", exc)
        return EXIT_IO
    except ValueError as exc:
        log.error("invalid configuration: %s", exc)
        return EXIT_CONFIG
    for path in result.files:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
