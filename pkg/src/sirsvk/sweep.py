"""Confidence-sweep experiments producing tabular records.

Five stock experiments explore how the vaccine confidence cap shapes an
epidemic:

* ``KAPPA_V`` / ``KAPPA_I`` — one trajectory per confidence value, for
  plotting the vaccination level or infection level over time.
* ``MODEL_COMPARE`` — the same outbreak under three nested models: no
  roll-out (SIRS), uncapped roll-out (SIRSV), and capped roll-out
  (SIRSVK).
* ``PEAK_VS_KAPPA`` — peak infection value and its time per confidence
  value.
* ``THRESHOLD`` — earliest eradication time (infected fraction below a
  cutoff) against the stability threshold ``(1 - kappa) * beta /
  gamma``, with the sentinel ``-10`` when the cutoff is never reached
  within the horizon.

Each experiment carries overridable defaults. Grid points are mutually
independent; results are keyed and sorted by the swept value, so the
output never depends on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .analysis import classify
from .integrator import IntegrationConfig, Trajectory, first_time_below, integrate, peak
from .model import Params, State, validate_params, validate_state

__all__ = [
    "Experiment",
    "ExperimentSpec",
    "KappaRun",
    "MODEL_LABELS",
    "NOT_REACHED_SENTINEL",
    "SweepRecord",
    "default_spec",
    "run_experiment",
    "run_kappa_trajectories",
    "run_model_compare",
    "run_peak_vs_kappa",
    "run_threshold_sweep",
    "validate_spec",
]

# Encoding of "never reached the cutoff" in tabular output.
NOT_REACHED_SENTINEL = -10.0

MODEL_LABELS = ("SIRS", "SIRSV", "SIRSVK")


class Experiment(str, Enum):
    KAPPA_V = "KAPPA_V"
    KAPPA_I = "KAPPA_I"
    MODEL_COMPARE = "MODEL_COMPARE"
    PEAK_VS_KAPPA = "PEAK_VS_KAPPA"
    THRESHOLD = "THRESHOLD"


@dataclass(frozen=True)
class ExperimentSpec:
    """One experiment: base parameters, initial state, confidence grid,
    and integration settings.

    ``grid`` holds the kappa values to sweep (strictly increasing,
    ``math.inf`` allowed as the last entry); it is ignored by
    ``MODEL_COMPARE``, which runs exactly three models off the base
    parameters.
    """

    experiment: Experiment
    params: Params
    x0: State
    grid: tuple[float, ...]
    integration: IntegrationConfig = field(default_factory=IntegrationConfig)
    eradication_threshold: float = 1e-3


@dataclass(frozen=True)
class SweepRecord:
    """One row of a sweep result: swept value -> named observables."""

    swept: float
    observables: dict[str, float]


@dataclass(frozen=True)
class KappaRun:
    """Per-grid-point outcome: a trajectory, or an error message."""

    kappa: float
    trajectory: Trajectory | None
    error: str | None = None


def validate_spec(spec: ExperimentSpec) -> list[str]:
    """Check an experiment spec; returns a list of violations (empty = ok)."""
    errors = validate_params(spec.params)
    if spec.experiment is Experiment.MODEL_COMPARE:
        errors += validate_state(spec.params, spec.x0)
        return errors
    if not spec.grid:
        errors.append("grid must be non-empty")
        return errors
    if any(spec.grid[j] >= spec.grid[j + 1] for j in range(len(spec.grid) - 1)):
        errors.append("grid must be strictly increasing")
    if any(not k > 0.0 for k in spec.grid):
        errors.append("grid values must be > 0 (math.inf allowed)")
    # Admissibility for the smallest cap implies it for all grid points.
    smallest = replace(spec.params, kappa=spec.grid[0])
    errors += validate_state(smallest, spec.x0)
    if spec.experiment is Experiment.THRESHOLD and not (
        0.0 < spec.eradication_threshold < 1.0
    ):
        errors.append(
            f"eradication threshold must lie in (0, 1), got {spec.eradication_threshold!r}"
        )
    return errors


def _grid_runs(spec: ExperimentSpec) -> list[KappaRun]:
    runs = []
    for kappa in spec.grid:
        p = replace(spec.params, kappa=kappa)
        issues = validate_params(p) + validate_state(p, spec.x0)
        if issues:
            runs.append(KappaRun(kappa, None, "; ".join(issues)))
            continue
        runs.append(KappaRun(kappa, integrate(p, spec.x0, spec.integration)))
    return runs


def run_kappa_trajectories(spec: ExperimentSpec) -> list[KappaRun]:
    """One trajectory per confidence value (``KAPPA_V`` / ``KAPPA_I``).

    Inadmissible grid points yield an error record; the rest of the
    sweep still runs.
    """
    if spec.experiment not in (Experiment.KAPPA_V, Experiment.KAPPA_I):
        raise ValueError(f"not a per-kappa trajectory experiment: {spec.experiment}")
    return _grid_runs(spec)


def run_model_compare(spec: ExperimentSpec) -> list[tuple[str, Trajectory]]:
    """The same outbreak under the SIRS, SIRSV, and SIRSVK models.

    SIRS switches the roll-out off (``rho = 0``), SIRSV lifts the
    confidence cap (``kappa = inf``), and SIRSVK runs the base
    parameters unchanged.
    """
    base = spec.params
    variants = (
        ("SIRS", replace(base, rho=0.0, allow_zero_rho=True)),
        ("SIRSV", replace(base, kappa=math.inf)),
        ("SIRSVK", base),
    )
    return [
        (label, integrate(p, spec.x0, spec.integration)) for label, p in variants
    ]


def run_peak_vs_kappa(spec: ExperimentSpec) -> list[SweepRecord]:
    """Peak infection value and earliest peak time per confidence value."""
    records = []
    for run in _grid_runs(spec):
        if run.trajectory is None:
            continue
        pk = peak(run.trajectory, "I")
        records.append(
            SweepRecord(run.kappa, {"peak_I": pk.value, "peak_t": pk.time})
        )
    records.sort(key=lambda rec: rec.swept)
    return records


def run_threshold_sweep(spec: ExperimentSpec) -> list[SweepRecord]:
    """Eradication time against the stability threshold.

    The swept value is ``(1 - kappa) * beta / gamma``; the observable is
    the earliest recorded time with the infected fraction below the
    eradication cutoff, or ``-10`` when the cutoff is never reached
    within the horizon.
    """
    records = []
    for run in _grid_runs(spec):
        if run.trajectory is None:
            continue
        p = replace(spec.params, kappa=run.kappa)
        swept = classify(p).threshold_value
        t = first_time_below(run.trajectory, "I", spec.eradication_threshold)
        records.append(
            SweepRecord(
                swept,
                {"eradication_time": NOT_REACHED_SENTINEL if t is None else t},
            )
        )
    records.sort(key=lambda rec: rec.swept)
    return records


def run_experiment(spec: ExperimentSpec):
    """Dispatch a spec to its runner."""
    runner = {
        Experiment.KAPPA_V: run_kappa_trajectories,
        Experiment.KAPPA_I: run_kappa_trajectories,
        Experiment.MODEL_COMPARE: run_model_compare,
        Experiment.PEAK_VS_KAPPA: run_peak_vs_kappa,
        Experiment.THRESHOLD: run_threshold_sweep,
    }[spec.experiment]
    return runner(spec)


# Stock configurations. The confidence-curve experiments use the faster
# waning rate so the per-kappa separation is visible within the default
# horizon; the remaining experiments share one base parameter set.
_CURVE_PARAMS = Params(beta=1.6, gamma=0.8, rho=0.12, omega=3.0, kappa=0.8)
_BASE_PARAMS = Params(beta=1.6, gamma=0.8, rho=0.12, omega=0.2, kappa=0.8)

_CURVE_GRID = (0.1, 0.3, 0.5, 0.6, 0.8, 1.2, math.inf)
# Uniform 0.05 spacing keeps 0.2 on-grid for the peak-summary sweep.
_PEAK_GRID = tuple(float(k) for k in np.linspace(0.05, 2.0, 40)) + (math.inf,)
# Spans the stability threshold (1 - kappa)*beta/gamma from 1.9 down to 0.
_THRESHOLD_GRID = tuple(float(k) for k in np.linspace(0.05, 1.0, 60))

_DEFAULTS: dict[Experiment, ExperimentSpec] = {
    Experiment.KAPPA_V: ExperimentSpec(
        Experiment.KAPPA_V,
        _CURVE_PARAMS,
        State(0.54, 0.41, 0.05, 0.0),
        _CURVE_GRID,
    ),
    Experiment.KAPPA_I: ExperimentSpec(
        Experiment.KAPPA_I,
        _CURVE_PARAMS,
        State(0.54, 0.41, 0.05, 0.0),
        _CURVE_GRID,
    ),
    Experiment.MODEL_COMPARE: ExperimentSpec(
        Experiment.MODEL_COMPARE,
        _BASE_PARAMS,
        State(0.99, 0.01, 0.0, 0.0),
        (),
    ),
    Experiment.PEAK_VS_KAPPA: ExperimentSpec(
        Experiment.PEAK_VS_KAPPA,
        _BASE_PARAMS,
        State(0.99, 0.01, 0.0, 0.0),
        _PEAK_GRID,
    ),
    Experiment.THRESHOLD: ExperimentSpec(
        Experiment.THRESHOLD,
        _BASE_PARAMS,
        State(0.7, 0.3, 0.0, 0.0),
        _THRESHOLD_GRID,
    ),
}


def default_spec(experiment: Experiment) -> ExperimentSpec:
    """The stock configuration of an experiment."""
    return _DEFAULTS[experiment]
