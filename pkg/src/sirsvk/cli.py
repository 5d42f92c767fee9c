"""Command-line front end: config ingestion, experiment dispatch, and
bit-stable CSV emission.

Subcommands: ``simulate`` (one trajectory), ``analyze`` (equilibria,
reproduction numbers, stability verdict), ``sweep`` (grid experiments),
and ``compare`` (SIRS / SIRSV / SIRSVK side by side). Identical inputs
always produce byte-identical CSV; ``--plot`` additionally renders a
PNG next to the output file.

Exit codes: 0 success, 2 configuration or validation error, 3 numerical
divergence.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .analysis import classify, dfe, eep, r0
from .config import (
    ConfigError,
    RunConfig,
    dumps,
    figure_preset,
    loads_flat,
    merge_flat,
    parse_flat,
)
from .integrator import DivergenceError, Trajectory, integrate
from .model import (
    ParameterError,
    Params,
    StateError,
    vaccine_hesitance,
    validate_params,
)
from .sweep import (
    Experiment,
    ExperimentSpec,
    run_kappa_trajectories,
    run_model_compare,
    run_peak_vs_kappa,
    run_threshold_sweep,
    validate_spec,
)

__all__ = ["main"]


def _fmt(x: float) -> str:
    """Locale-free decimal formatting with 17 significant digits."""
    return f"{x:.17g}"


def _bool(flag: bool) -> str:
    return "true" if flag else "false"


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _trajectory_rows(traj: Trajectory, prefix: str = "") -> list[str]:
    return [
        f"{prefix}{_fmt(t)},{_fmt(row[0])},{_fmt(row[1])},{_fmt(row[2])},{_fmt(row[3])}"
        for t, row in zip(traj.times, traj.states)
    ]


def _cmd_simulate(cfg: RunConfig, out: Path | None, plot: bool) -> int:
    if cfg.x0 is None:
        raise ConfigError(
            ["missing required keys: state.s, state.i, state.r, state.v"]
        )
    traj = integrate(cfg.params, cfg.x0, cfg.integration)
    lines = ["t,S,I,R,V"] + _trajectory_rows(traj)
    _emit("\n".join(lines) + "\n", out)
    if plot:
        from . import plotting

        plotting.plot_trajectory(traj, _plot_path(out))
    return 0


def _cmd_analyze(cfg: RunConfig, out: Path | None, plot: bool = False) -> int:
    p = cfg.params
    issues = validate_params(p)
    if issues:
        raise ParameterError(issues)
    verdict = classify(p)
    disease_free = dfe(p)
    endemic = eep(p)
    hesitance = vaccine_hesitance(p)
    rows: list[tuple[str, str]] = [
        ("r0", _fmt(r0(p))),
        ("threshold_value", _fmt(verdict.threshold_value)),
        ("dfe_gas", _bool(verdict.dfe_gas)),
        ("eep_exists", _bool(verdict.eep_exists)),
    ]
    for name, value in zip("SIRV", disease_free.state.as_tuple()):
        rows.append((f"dfe_{name}", _fmt(value)))
    for name, value in zip(
        "SIRV",
        endemic.state.as_tuple() if endemic is not None else (None,) * 4,
    ):
        rows.append((f"eep_{name}", "NONE" if value is None else _fmt(value)))
    rows.append(("hesitance", _fmt(hesitance.value)))
    rows.append(("hesitance_is_limit", _bool(hesitance.is_limit)))
    lines = ["quantity,value"] + [f"{k},{v}" for k, v in rows]
    _emit("\n".join(lines) + "\n", out)
    return 0


def _require_valid_spec(spec: ExperimentSpec) -> None:
    issues = validate_spec(spec)
    if issues:
        raise ConfigError(issues)


def _cmd_sweep(cfg: RunConfig, out: Path | None, plot: bool) -> int:
    spec = cfg.experiment_spec()
    if spec.experiment is Experiment.MODEL_COMPARE:
        raise ConfigError(
            ["experiment MODEL_COMPARE is served by the compare subcommand"]
        )
    _require_valid_spec(spec)
    if spec.experiment in (Experiment.KAPPA_V, Experiment.KAPPA_I):
        runs = run_kappa_trajectories(spec)
        lines = ["swept,t,S,I,R,V"]
        for run in runs:
            if run.trajectory is None:
                print(
                    f"warning: skipping kappa = {_fmt(run.kappa)}: {run.error}",
                    file=sys.stderr,
                )
                continue
            lines += _trajectory_rows(run.trajectory, prefix=f"{_fmt(run.kappa)},")
        compartment = "V" if spec.experiment is Experiment.KAPPA_V else "I"
        _emit("\n".join(lines) + "\n", out)
        if plot:
            from . import plotting

            plotting.plot_kappa_curves(runs, compartment, _plot_path(out))
        return 0
    if spec.experiment is Experiment.PEAK_VS_KAPPA:
        records = run_peak_vs_kappa(spec)
        lines = ["swept,peak_I,peak_t"] + [
            f"{_fmt(rec.swept)},{_fmt(rec.observables['peak_I'])},"
            f"{_fmt(rec.observables['peak_t'])}"
            for rec in records
        ]
        _emit("\n".join(lines) + "\n", out)
        if plot:
            from . import plotting

            plotting.plot_peak_summary(records, _plot_path(out))
        return 0
    records = run_threshold_sweep(spec)
    lines = ["swept,eradication_time"] + [
        f"{_fmt(rec.swept)},{_fmt(rec.observables['eradication_time'])}"
        for rec in records
    ]
    _emit("\n".join(lines) + "\n", out)
    if plot:
        from . import plotting

        plotting.plot_threshold(records, _plot_path(out))
    return 0


def _cmd_compare(cfg: RunConfig, out: Path | None, plot: bool) -> int:
    if cfg.experiment not in (None, Experiment.MODEL_COMPARE):
        raise ConfigError(
            [f"compare requires experiment MODEL_COMPARE, got {cfg.experiment.value}"]
        )
    if cfg.experiment is None:
        cfg = RunConfig(
            params=cfg.params,
            x0=cfg.x0,
            integration=cfg.integration,
            experiment=Experiment.MODEL_COMPARE,
            grid=cfg.grid,
            eradication_threshold=cfg.eradication_threshold,
            out=cfg.out,
        )
    spec = cfg.experiment_spec()
    _require_valid_spec(spec)
    runs = run_model_compare(spec)
    lines = ["t,model,S,I,R,V"]
    for label, traj in runs:
        lines += [
            f"{_fmt(t)},{label},{_fmt(row[0])},{_fmt(row[1])},"
            f"{_fmt(row[2])},{_fmt(row[3])}"
            for t, row in zip(traj.times, traj.states)
        ]
    _emit("\n".join(lines) + "\n", out)
    if plot:
        from . import plotting

        plotting.plot_model_compare(runs, _plot_path(out))
    return 0


def _plot_path(out: Path | None) -> Path:
    if out is None:
        raise ConfigError(["--plot requires --out"])
    return out.with_suffix(".png")


_COMMANDS = {
    "simulate": _cmd_simulate,
    "analyze": _cmd_analyze,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sirsvk",
        description=(
            "Deterministic simulation, equilibrium analysis, and confidence "
            "sweeps for an SIRS epidemic model with a capped vaccinated "
            "compartment."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "simulate": "integrate one trajectory and emit t,S,I,R,V rows",
        "analyze": "emit equilibria, reproduction numbers, and the stability verdict",
        "sweep": "run a confidence-grid experiment and emit its records",
        "compare": "run the SIRS / SIRSV / SIRSVK comparison",
    }
    for name, help_text in helps.items():
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", type=Path, help="flat JSON config document")
        cmd.add_argument("--out", type=Path, help="output CSV path (default stdout)")
        cmd.add_argument(
            "--paper-figure",
            type=int,
            choices=(2, 3, 4, 5, 6),
            help="load the built-in defaults of one published figure",
        )
        cmd.add_argument(
            "--dump-config",
            action="store_true",
            help="print the effective config and exit",
        )
        if name != "analyze":
            cmd.add_argument(
                "--plot",
                action="store_true",
                help="render a PNG figure next to the CSV output",
            )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        flat: dict = {}
        if args.paper_figure is not None:
            flat = figure_preset(args.paper_figure)
        if args.config is not None:
            flat = merge_flat(flat, loads_flat(args.config.read_text(encoding="utf-8")))
        cfg = parse_flat(flat)
        if args.dump_config:
            sys.stdout.write(dumps(cfg))
            return 0
        out = args.out if args.out is not None else (
            Path(cfg.out) if cfg.out is not None else None
        )
        plot = getattr(args, "plot", False)
        return _COMMANDS[args.command](cfg, out, plot)
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, ParameterError, StateError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
