"""Run configuration: a flat JSON document with dotted key paths.

Values are strings, numbers, booleans, or arrays; an unlimited
confidence cap is spelled as the literal string ``"inf"``. Parsing is
strict: unknown keys are rejected, and every diagnostic names the
offending key. A configuration dumped with :func:`dumps` re-parses to an
equal :class:`RunConfig`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .integrator import IntegrationConfig
from .model import Params, State
from .sweep import Experiment, ExperimentSpec, default_spec

__all__ = [
    "ConfigError",
    "FORMAT_VERSION",
    "RunConfig",
    "dumps",
    "figure_preset",
    "loads",
    "loads_flat",
    "merge_flat",
    "parse_flat",
    "to_flat",
]

FORMAT_VERSION = "1"

_PARAM_KEYS = (
    "params.beta",
    "params.gamma",
    "params.rho",
    "params.omega",
    "params.kappa",
)
_STATE_KEYS = ("state.s", "state.i", "state.r", "state.v")
_KNOWN_KEYS = frozenset(
    _PARAM_KEYS
    + _STATE_KEYS
    + (
        "format_version",
        "experiment",
        "params.allow_zero_rho",
        "integration.t0",
        "integration.t_end",
        "integration.dt",
        "integration.record_stride",
        "sweep.grid",
        "sweep.eradication_threshold",
        "out",
    )
)


class ConfigError(ValueError):
    """Configuration is malformed; the message names each bad key."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


@dataclass(frozen=True)
class RunConfig:
    """Parsed configuration: model parameters plus optional experiment,
    initial state, grid, and output path."""

    params: Params
    x0: State | None
    integration: IntegrationConfig
    experiment: Experiment | None
    grid: tuple[float, ...] | None
    eradication_threshold: float
    out: str | None
    format_version: str = FORMAT_VERSION

    def experiment_spec(self) -> ExperimentSpec:
        """Resolve into an experiment spec, filling grid defaults."""
        if self.experiment is None:
            raise ConfigError(["missing required key: experiment"])
        stock = default_spec(self.experiment)
        return ExperimentSpec(
            experiment=self.experiment,
            params=self.params,
            x0=self.x0 if self.x0 is not None else stock.x0,
            grid=self.grid if self.grid is not None else stock.grid,
            integration=self.integration,
            eradication_threshold=self.eradication_threshold,
        )


def _number(flat: dict, key: str, errors: list[str]) -> float | None:
    value = flat[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        errors.append(f"{key} must be a number, got {value!r}")
        return None
    return float(value)


def _kappa_value(value: object, key: str, errors: list[str]) -> float | None:
    if value == "inf":
        return math.inf
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        errors.append(f'{key} must be a number or the string "inf", got {value!r}')
        return None
    return float(value)


def parse_flat(flat: dict) -> RunConfig:
    """Build a RunConfig from a flat key/value mapping.

    Raises ``ConfigError`` listing every violation (unknown keys, wrong
    types, missing required parameter fields).
    """
    errors: list[str] = []
    unknown = sorted(set(flat) - _KNOWN_KEYS)
    for key in unknown:
        errors.append(f"unknown key: {key}")

    version = flat.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        errors.append(
            f"format_version must be {FORMAT_VERSION!r}, got {version!r}"
        )

    numbers: dict[str, float] = {}
    for key in _PARAM_KEYS:
        if key not in flat:
            errors.append(f"missing required key: {key}")
        elif key == "params.kappa":
            value = _kappa_value(flat[key], key, errors)
            if value is not None:
                numbers[key] = value
        else:
            value = _number(flat, key, errors)
            if value is not None:
                numbers[key] = value

    allow_zero_rho = flat.get("params.allow_zero_rho", False)
    if not isinstance(allow_zero_rho, bool):
        errors.append(
            f"params.allow_zero_rho must be a boolean, got {allow_zero_rho!r}"
        )
        allow_zero_rho = False

    present_state = [key for key in _STATE_KEYS if key in flat]
    x0 = None
    if present_state:
        if len(present_state) < len(_STATE_KEYS):
            missing = sorted(set(_STATE_KEYS) - set(present_state))
            errors.append(f"incomplete initial state, missing: {', '.join(missing)}")
        else:
            values = [_number(flat, key, errors) for key in _STATE_KEYS]
            if None not in values:
                x0 = State(*values)

    integration_kwargs = {}
    for key, name in (
        ("integration.t0", "t0"),
        ("integration.t_end", "t_end"),
        ("integration.dt", "dt"),
    ):
        if key in flat:
            value = _number(flat, key, errors)
            if value is not None:
                integration_kwargs[name] = value
    if "integration.record_stride" in flat:
        stride = flat["integration.record_stride"]
        if isinstance(stride, bool) or not isinstance(stride, int):
            errors.append(
                f"integration.record_stride must be an integer, got {stride!r}"
            )
        else:
            integration_kwargs["record_stride"] = stride

    experiment = None
    if "experiment" in flat:
        try:
            experiment = Experiment(flat["experiment"])
        except ValueError:
            valid = ", ".join(e.value for e in Experiment)
            errors.append(
                f"experiment must be one of {valid}, got {flat['experiment']!r}"
            )

    grid = None
    if "sweep.grid" in flat:
        raw = flat["sweep.grid"]
        if not isinstance(raw, list) or not raw:
            errors.append(f"sweep.grid must be a non-empty array, got {raw!r}")
        else:
            values = [
                _kappa_value(entry, f"sweep.grid[{j}]", errors)
                for j, entry in enumerate(raw)
            ]
            if None not in values:
                grid = tuple(values)

    threshold = 1e-3
    if "sweep.eradication_threshold" in flat:
        value = _number(flat, "sweep.eradication_threshold", errors)
        if value is not None:
            threshold = value

    out = flat.get("out")
    if out is not None and not isinstance(out, str):
        errors.append(f"out must be a string path, got {out!r}")
        out = None

    if errors:
        raise ConfigError(errors)

    try:
        integration = IntegrationConfig(**integration_kwargs)
    except ValueError as exc:
        raise ConfigError([f"integration: {exc}"]) from exc

    params = Params(
        beta=numbers["params.beta"],
        gamma=numbers["params.gamma"],
        rho=numbers["params.rho"],
        omega=numbers["params.omega"],
        kappa=numbers["params.kappa"],
        allow_zero_rho=allow_zero_rho,
    )
    return RunConfig(
        params=params,
        x0=x0,
        integration=integration,
        experiment=experiment,
        grid=grid,
        eradication_threshold=threshold,
        out=out,
        format_version=FORMAT_VERSION,
    )


def loads_flat(text: str) -> dict:
    """Decode a JSON config document into its flat key/value form."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            [f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"]
        ) from exc
    if not isinstance(doc, dict):
        raise ConfigError(["config document must be a JSON object"])
    return doc


def loads(text: str) -> RunConfig:
    """Parse a JSON config document."""
    return parse_flat(loads_flat(text))


def _encode_kappa(value: float):
    return "inf" if math.isinf(value) else value


def to_flat(cfg: RunConfig) -> dict:
    """Flatten a RunConfig back into its key/value form."""
    flat: dict = {
        "format_version": cfg.format_version,
        "params.beta": cfg.params.beta,
        "params.gamma": cfg.params.gamma,
        "params.rho": cfg.params.rho,
        "params.omega": cfg.params.omega,
        "params.kappa": _encode_kappa(cfg.params.kappa),
        "integration.t0": cfg.integration.t0,
        "integration.t_end": cfg.integration.t_end,
        "integration.dt": cfg.integration.dt,
        "integration.record_stride": cfg.integration.record_stride,
        "sweep.eradication_threshold": cfg.eradication_threshold,
    }
    if cfg.params.allow_zero_rho:
        flat["params.allow_zero_rho"] = True
    if cfg.x0 is not None:
        flat["state.s"] = cfg.x0.s
        flat["state.i"] = cfg.x0.i
        flat["state.r"] = cfg.x0.r
        flat["state.v"] = cfg.x0.v
    if cfg.experiment is not None:
        flat["experiment"] = cfg.experiment.value
    if cfg.grid is not None:
        flat["sweep.grid"] = [_encode_kappa(k) for k in cfg.grid]
    if cfg.out is not None:
        flat["out"] = cfg.out
    return flat


def dumps(cfg: RunConfig) -> str:
    """Serialize deterministically (sorted keys, LF-terminated)."""
    return json.dumps(to_flat(cfg), indent=2, sort_keys=True) + "\n"


def merge_flat(base: dict, override: dict) -> dict:
    """Overlay one flat document on another (override wins)."""
    merged = dict(base)
    merged.update(override)
    return merged


# Stock experiment configurations behind each published-figure preset.
_FIGURE_EXPERIMENTS = {
    2: Experiment.KAPPA_V,
    3: Experiment.KAPPA_I,
    4: Experiment.MODEL_COMPARE,
    5: Experiment.PEAK_VS_KAPPA,
    6: Experiment.THRESHOLD,
}


def figure_preset(figure: int) -> dict:
    """Flat config document reproducing one of the built-in figures (2-6)."""
    if figure not in _FIGURE_EXPERIMENTS:
        raise ConfigError(
            [f"figure preset must be one of {sorted(_FIGURE_EXPERIMENTS)}, got {figure!r}"]
        )
    spec = default_spec(_FIGURE_EXPERIMENTS[figure])
    flat = {
        "format_version": FORMAT_VERSION,
        "experiment": spec.experiment.value,
        "params.beta": spec.params.beta,
        "params.gamma": spec.params.gamma,
        "params.rho": spec.params.rho,
        "params.omega": spec.params.omega,
        "params.kappa": _encode_kappa(spec.params.kappa),
        "state.s": spec.x0.s,
        "state.i": spec.x0.i,
        "state.r": spec.x0.r,
        "state.v": spec.x0.v,
        "integration.t0": spec.integration.t0,
        "integration.t_end": spec.integration.t_end,
        "integration.dt": spec.integration.dt,
        "integration.record_stride": spec.integration.record_stride,
        "sweep.eradication_threshold": spec.eradication_threshold,
    }
    if spec.grid:
        flat["sweep.grid"] = [_encode_kappa(k) for k in spec.grid]
    return flat
