"""Closed-form equilibria, reproduction numbers, and the stability
threshold of the confidence-capped SIRS-V model.

The model has at most two admissible equilibria. The disease-free
equilibrium ``(1 - min(1, kappa), 0, 0, min(1, kappa))`` always exists
and is globally asymptotically stable exactly when
``(1 - kappa) * beta / gamma <= 1``. When that quantity exceeds 1 a
unique endemic equilibrium appears instead, with every component
strictly positive and the vaccinated fraction pinned at ``kappa``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .model import Params, State

__all__ = [
    "Equilibrium",
    "StabilityVerdict",
    "classify",
    "dfe",
    "eep",
    "r0",
    "rt",
    "rt_upper_bound",
]


@dataclass(frozen=True)
class Equilibrium:
    kind: Literal["DFE", "EEP"]
    state: State
    exists: bool


@dataclass(frozen=True)
class StabilityVerdict:
    """Outcome of the global stability test.

    ``threshold_value`` is the literal quantity ``(1 - kappa) * beta /
    gamma`` (negative for kappa > 1, ``-inf`` for uncapped kappa); the
    disease-free equilibrium is globally attracting iff it is <= 1, and
    the endemic equilibrium exists iff it is > 1. The two verdicts are
    complementary for finite kappa.
    """

    dfe_gas: bool
    eep_exists: bool
    threshold_value: float


def _analysis_kappa(p: Params) -> float:
    # With rho = 0 the vaccinated compartment is frozen, so (for an
    # initially unvaccinated population) the long-run behaviour is the
    # kappa -> 0 evaluation of the closed forms.
    if p.rho == 0.0:
        return 0.0
    return p.kappa


def dfe(p: Params) -> Equilibrium:
    """The unique disease-free equilibrium ``(1 - min(1,kappa), 0, 0, min(1,kappa))``."""
    cap = p.kappa_eff
    return Equilibrium("DFE", State(1.0 - cap, 0.0, 0.0, cap), True)


def eep(p: Params) -> Equilibrium | None:
    """The endemic equilibrium, or ``None`` when it does not exist.

    Exists iff ``(1 - kappa) * beta / gamma > 1`` (equivalently
    ``kappa < 1 - gamma/beta``), in which case it equals::

        S = gamma / beta
        I = (1 - kappa - gamma/beta) / (1 + gamma/omega)
        R = (1 - kappa - gamma/beta) / (1 + omega/gamma)
        V = kappa

    so that ``I/R = omega/gamma``. An uncapped kappa admits no endemic
    point; the ``rho = 0`` variant uses the kappa = 0 closed form.
    """
    kappa = _analysis_kappa(p)
    if math.isinf(kappa):
        return None
    # Same expression as classify() so the two can never disagree at the
    # existence boundary.
    if not (1.0 - kappa) * p.beta / p.gamma > 1.0:
        return None
    surplus = 1.0 - kappa - p.gamma / p.beta
    state = State(
        p.gamma / p.beta,
        surplus / (1.0 + p.gamma / p.omega),
        surplus / (1.0 + p.omega / p.gamma),
        kappa,
    )
    return Equilibrium("EEP", state, True)


def r0(p: Params) -> float:
    """Basic reproduction number ``beta / gamma``."""
    return p.beta / p.gamma


def rt(p: Params, x: State) -> float:
    """Effective reproduction number ``s * beta / gamma``."""
    return x.s * p.beta / p.gamma


def rt_upper_bound(p: Params, x: State) -> float:
    """Bound ``(1 - v) * beta / gamma`` on the effective reproduction number.

    Follows from ``s = 1 - v - i - r <= 1 - v`` on the simplex.
    """
    return (1.0 - x.v) * p.beta / p.gamma


def classify(p: Params) -> StabilityVerdict:
    """Decide global stability of the disease-free equilibrium.

    The threshold value is reported even when negative so confidence
    sweeps can plot the literal expression; the stability predicate is
    simply ``<= 1``.
    """
    kappa = _analysis_kappa(p)
    threshold = (1.0 - kappa) * p.beta / p.gamma  # -inf for uncapped kappa
    dfe_gas = threshold <= 1.0
    eep_exists = math.isfinite(threshold) and threshold > 1.0
    return StabilityVerdict(dfe_gas, eep_exists, threshold)
