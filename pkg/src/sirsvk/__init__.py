"""Deterministic simulation and stability analysis of an SIRS epidemic
model with a confidence-capped vaccinated compartment."""

from .analysis import (
    Equilibrium,
    StabilityVerdict,
    classify,
    dfe,
    eep,
    r0,
    rt,
    rt_upper_bound,
)
from .integrator import (
    DivergenceError,
    IntegrationConfig,
    Peak,
    Trajectory,
    first_time_below,
    integrate,
    peak,
)
from .model import (
    EPS_SUM,
    Derivative,
    Hesitance,
    ParameterError,
    Params,
    State,
    StateError,
    clamp_state,
    vaccine_hesitance,
    validate_params,
    validate_state,
    vector_field,
)

__version__ = "0.1.0"

__all__ = [
    "EPS_SUM",
    "Derivative",
    "DivergenceError",
    "Equilibrium",
    "Hesitance",
    "IntegrationConfig",
    "ParameterError",
    "Params",
    "Peak",
    "StabilityVerdict",
    "State",
    "StateError",
    "Trajectory",
    "classify",
    "clamp_state",
    "dfe",
    "eep",
    "first_time_below",
    "integrate",
    "peak",
    "r0",
    "rt",
    "rt_upper_bound",
    "vaccine_hesitance",
    "validate_params",
    "validate_state",
    "vector_field",
]
