"""Domain types and vector field of the confidence-capped SIRS-V model.

The population is split into four fractions: susceptible (S), infected
(I), recovered (R), and vaccinated (V). Susceptibles are infected at
rate ``beta*S*I`` and recover at rate ``gamma``; natural immunity wanes
back to S at rate ``omega``. Vaccination proceeds at roll-out rate
``rho``, throttled by the saturation factor ``(1 - V/kappa)``: the
vaccine confidence ``kappa`` acts as a carrying capacity on V, so
uptake stalls as the vaccinated fraction approaches it. ``kappa =
math.inf`` models an uncapped roll-out (the plain SIRSV limit).

All states live on the unit simplex with the extra cap
``V <= min(1, kappa)``; every operation here is a pure function of its
inputs and all types are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

__all__ = [
    "EPS_SUM",
    "Derivative",
    "Hesitance",
    "ParameterError",
    "Params",
    "State",
    "StateError",
    "clamp_state",
    "vaccine_hesitance",
    "validate_params",
    "validate_state",
    "vector_field",
]

# Admissibility tolerance at API boundaries. Fixed-step integration drift
# over the supported horizons stays orders of magnitude below this.
EPS_SUM = 1e-9


class ParameterError(ValueError):
    """Model parameters violate their domain."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class StateError(ValueError):
    """A state lies outside the admissible set beyond tolerance."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


@dataclass(frozen=True)
class Params:
    """Model rates plus the vaccine confidence cap.

    Parameters
    ----------
    beta : transmission rate, 1/time
    gamma : recovery rate, 1/time
    rho : vaccination roll-out rate, 1/time
    omega : waning-immunity rate, 1/time
    kappa : vaccine confidence, the ceiling on the vaccinated fraction;
        ``math.inf`` means an uncapped roll-out
    allow_zero_rho : opt-in for the ``rho = 0`` no-roll-out (plain SIRS)
        variant; strict positivity is enforced otherwise
    """

    beta: float
    gamma: float
    rho: float
    omega: float
    kappa: float
    allow_zero_rho: bool = False

    @property
    def kappa_eff(self) -> float:
        """``min(1, kappa)``: the reachable ceiling of the vaccinated fraction."""
        return min(1.0, self.kappa)

    @property
    def kappa_is_infinite(self) -> bool:
        return math.isinf(self.kappa)


@dataclass(frozen=True)
class State:
    """Population fractions (s, i, r, v) on the unit simplex."""

    s: float
    i: float
    r: float
    v: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.s, self.i, self.r, self.v)

    @property
    def total(self) -> float:
        return self.s + self.i + self.r + self.v


@dataclass(frozen=True)
class Derivative:
    """Rates of change of the four compartments, 1/time.

    The components always sum to zero up to floating rounding: every
    flow leaves one compartment and enters another.
    """

    ds: float
    di: float
    dr: float
    dv: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.ds, self.di, self.dr, self.dv)


class Hesitance(NamedTuple):
    """Reciprocal confidence; ``is_limit`` marks the uncapped-kappa limit."""

    value: float
    is_limit: bool


def vaccine_hesitance(p: Params) -> Hesitance:
    """Hesitance ``1/kappa``; reports ``(0.0, True)`` for uncapped kappa.

    The zero is the limiting value as the cap grows without bound, kept
    total (flagged rather than raised) so confidence sweeps that include
    the uncapped endpoint need no special casing.
    """
    if math.isinf(p.kappa):
        return Hesitance(0.0, True)
    return Hesitance(1.0 / p.kappa, False)


def validate_params(p: Params) -> list[str]:
    """Check parameter domains; returns a list of violations (empty = ok)."""
    errors: list[str] = []
    for name in ("beta", "gamma", "omega"):
        value = getattr(p, name)
        if not (value > 0.0 and math.isfinite(value)):
            errors.append(f"{name} must be a positive finite rate, got {value!r}")
    if p.allow_zero_rho:
        if not (p.rho >= 0.0 and math.isfinite(p.rho)):
            errors.append(f"rho must be a finite rate >= 0, got {p.rho!r}")
    elif not (p.rho > 0.0 and math.isfinite(p.rho)):
        errors.append(
            f"rho must be a positive finite rate, got {p.rho!r}"
            " (rho = 0 requires allow_zero_rho)"
        )
    if not p.kappa > 0.0:  # math.inf passes, nan fails
        errors.append(f"kappa must be > 0 (math.inf allowed), got {p.kappa!r}")
    return errors


def validate_state(p: Params, x: State, tol: float = EPS_SUM) -> list[str]:
    """Check membership of the admissible set within ``tol``.

    Requires components in [0, 1], the simplex sum ``s+i+r+v = 1``, and
    the cap ``v <= min(1, kappa)``, each up to ``tol``.
    """
    errors: list[str] = []
    for name, value in zip("sirv", x.as_tuple()):
        if math.isnan(value):
            errors.append(f"{name} is NaN")
        elif value < -tol or value > 1.0 + tol:
            errors.append(f"{name} = {value!r} outside [0, 1]")
    cap = p.kappa_eff
    if x.v > cap + tol:
        errors.append(f"v = {x.v!r} exceeds min(1, kappa) = {cap!r}")
    total = x.total
    if not abs(total - 1.0) <= tol:
        errors.append(f"s+i+r+v = {total!r} differs from 1 by more than {tol!r}")
    return errors


def clamp_state(p: Params, x: State, tol: float = EPS_SUM) -> State:
    """Snap rounding-level violations back onto the admissible set.

    Raises ``StateError`` when any violation exceeds ``tol``; violations
    within ``tol`` are clamped, which keeps long integrations inside the
    admissible set without masking genuine escapes.
    """
    issues = validate_state(p, x, tol)
    if issues:
        raise StateError(issues)
    cap = p.kappa_eff
    s = min(max(x.s, 0.0), 1.0)
    i = min(max(x.i, 0.0), 1.0)
    r = min(max(x.r, 0.0), 1.0)
    v = min(max(x.v, 0.0), cap)
    return State(s, i, r, v)


def _rhs(
    beta: float,
    gamma: float,
    rho: float,
    omega: float,
    kappa: float,
    s: float,
    i: float,
    r: float,
    v: float,
) -> tuple[float, float, float, float]:
    # v/inf == 0.0 exactly, so an uncapped kappa yields pressure 1.0 with
    # no special case and no cancellation.
    pressure = 1.0 - v / kappa
    infection = beta * s * i
    recovery = gamma * i
    waning = omega * r
    vacc_s = rho * pressure * s
    vacc_r = rho * pressure * r
    return (
        waning - infection - vacc_s,
        infection - recovery,
        recovery - waning - vacc_r,
        vacc_s + vacc_r,
    )


def vector_field(p: Params, x: State, *, validate: bool = True) -> Derivative:
    """Time derivative of the compartment fractions.

    ds = -beta*s*i - rho*(1 - v/kappa)*s + omega*r
    di =  beta*s*i - gamma*i
    dr =  gamma*i - omega*r - rho*(1 - v/kappa)*r
    dv =  rho*(1 - v/kappa)*(s + r)

    ``validate=False`` skips the domain checks for hot paths that have
    already validated their inputs.

    Raises
    ------
    ParameterError
        If ``p`` violates its domain.
    StateError
        If ``x`` lies outside the admissible set beyond ``EPS_SUM``.
    """
    if validate:
        issues = validate_params(p)
        if issues:
            raise ParameterError(issues)
        issues = validate_state(p, x, EPS_SUM)
        if issues:
            raise StateError(issues)
    ds, di, dr, dv = _rhs(
        p.beta, p.gamma, p.rho, p.omega, p.kappa, x.s, x.i, x.r, x.v
    )
    return Derivative(ds, di, dr, dv)
