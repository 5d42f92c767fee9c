"""Fixed-step 4th-order Runge-Kutta integration of the model dynamics,
plus the trajectory observables (peaks, threshold crossings) used by the
sweep experiments.

The scheme is deliberately fixed-step: the dynamics are smooth and
non-stiff at the supported parameter magnitudes, and a fixed grid makes
every run bit-reproducible. There is no adaptive error control; a
convergence-order property test stands in for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .model import (
    EPS_SUM,
    ParameterError,
    Params,
    State,
    StateError,
    validate_params,
    validate_state,
)

__all__ = [
    "COMPARTMENTS",
    "DivergenceError",
    "IntegrationConfig",
    "Peak",
    "Trajectory",
    "first_time_below",
    "integrate",
    "peak",
]

COMPARTMENTS = {"S": 0, "I": 1, "R": 2, "V": 3}

# A step that strays from the admissible set by more than this signals a
# step size too large for the given rates.
DIVERGENCE_TOL = 1e3 * EPS_SUM


class DivergenceError(RuntimeError):
    """Integration left the admissible set; names the offending step."""

    def __init__(self, step: int, time: float):
        super().__init__(
            f"state left the admissible set at step {step} (t = {time:g}); "
            "the step size is too large for these rates"
        )
        self.step = step
        self.time = time


@dataclass(frozen=True)
class IntegrationConfig:
    """Time grid for a fixed-step run.

    ``record_stride`` thins storage: every k-th step is kept (the final
    step is always kept).
    """

    t0: float = 0.0
    t_end: float = 100.0
    dt: float = 0.01
    record_stride: int = 1

    def __post_init__(self):
        if not self.t_end > self.t0:
            raise ValueError(f"t_end = {self.t_end!r} must exceed t0 = {self.t0!r}")
        if not self.dt > 0.0:
            raise ValueError(f"dt must be > 0, got {self.dt!r}")
        if self.dt > self.t_end - self.t0:
            raise ValueError(
                f"dt = {self.dt!r} exceeds the horizon {self.t_end - self.t0!r}"
            )
        if not (isinstance(self.record_stride, int) and self.record_stride >= 1):
            raise ValueError(
                f"record_stride must be a positive integer, got {self.record_stride!r}"
            )

    @property
    def n_steps(self) -> int:
        return max(1, round((self.t_end - self.t0) / self.dt))


@dataclass(frozen=True)
class Trajectory:
    """Recorded solution: times, a (n, 4) state block, and provenance.

    Columns follow ``COMPARTMENTS`` order (S, I, R, V). Arrays are
    frozen after construction; a trajectory is safe to share.
    """

    times: np.ndarray
    states: np.ndarray
    params: Params

    def __post_init__(self):
        self.times.flags.writeable = False
        self.states.flags.writeable = False

    def __len__(self) -> int:
        return len(self.times)

    def compartment(self, name: str) -> np.ndarray:
        """Column of one compartment ('S', 'I', 'R', or 'V') over time."""
        return self.states[:, COMPARTMENTS[name]]

    def state_at(self, k: int) -> State:
        s, i, r, v = self.states[k]
        return State(float(s), float(i), float(r), float(v))

    @property
    def final_state(self) -> State:
        return self.state_at(-1)


class Peak(NamedTuple):
    value: float
    time: float


def integrate(
    p: Params, x0: State, cfg: IntegrationConfig | None = None
) -> Trajectory:
    """Advance the dynamics from ``x0`` with classical RK4 at fixed step.

    Each accepted step is clamped back onto the admissible set within
    rounding tolerance before storage, so every recorded state is
    admissible. Identical inputs produce bit-identical trajectories.

    Raises
    ------
    ParameterError, StateError
        On invalid inputs.
    DivergenceError
        If the state strays from the admissible set by more than
        ``DIVERGENCE_TOL`` at any step (step size too large).
    """
    if cfg is None:
        cfg = IntegrationConfig()
    issues = validate_params(p)
    if issues:
        raise ParameterError(issues)
    issues = validate_state(p, x0, EPS_SUM)
    if issues:
        raise StateError(issues)

    beta, gamma, rho, omega, kappa = p.beta, p.gamma, p.rho, p.omega, p.kappa
    cap = p.kappa_eff
    t0, dt, stride = cfg.t0, cfg.dt, cfg.record_stride
    n_steps = cfg.n_steps
    half = 0.5 * dt
    sixth = dt / 6.0

    n_records = n_steps // stride + 1 + (1 if n_steps % stride else 0)
    times = np.empty(n_records)
    states = np.empty((n_records, 4))

    s = min(max(x0.s, 0.0), 1.0)
    i = min(max(x0.i, 0.0), 1.0)
    r = min(max(x0.r, 0.0), 1.0)
    v = min(max(x0.v, 0.0), cap)
    times[0] = t0
    states[0] = (s, i, r, v)
    rec = 1

    for k in range(1, n_steps + 1):
        # Classical RK4, stages inlined; this loop dominates runtime.
        q = 1.0 - v / kappa
        a = beta * s * i
        b = gamma * i
        c = omega * r
        d = rho * q * s
        e = rho * q * r
        k1s = c - a - d
        k1i = a - b
        k1r = b - c - e
        k1v = d + e

        s1 = s + half * k1s
        i1 = i + half * k1i
        r1 = r + half * k1r
        v1 = v + half * k1v
        q = 1.0 - v1 / kappa
        a = beta * s1 * i1
        b = gamma * i1
        c = omega * r1
        d = rho * q * s1
        e = rho * q * r1
        k2s = c - a - d
        k2i = a - b
        k2r = b - c - e
        k2v = d + e

        s1 = s + half * k2s
        i1 = i + half * k2i
        r1 = r + half * k2r
        v1 = v + half * k2v
        q = 1.0 - v1 / kappa
        a = beta * s1 * i1
        b = gamma * i1
        c = omega * r1
        d = rho * q * s1
        e = rho * q * r1
        k3s = c - a - d
        k3i = a - b
        k3r = b - c - e
        k3v = d + e

        s1 = s + dt * k3s
        i1 = i + dt * k3i
        r1 = r + dt * k3r
        v1 = v + dt * k3v
        q = 1.0 - v1 / kappa
        a = beta * s1 * i1
        b = gamma * i1
        c = omega * r1
        d = rho * q * s1
        e = rho * q * r1
        k4s = c - a - d
        k4i = a - b
        k4r = b - c - e
        k4v = d + e

        s = s + sixth * (k1s + 2.0 * (k2s + k3s) + k4s)
        i = i + sixth * (k1i + 2.0 * (k2i + k3i) + k4i)
        r = r + sixth * (k1r + 2.0 * (k2r + k3r) + k4r)
        v = v + sixth * (k1v + 2.0 * (k2v + k3v) + k4v)

        if (
            s < -DIVERGENCE_TOL
            or i < -DIVERGENCE_TOL
            or r < -DIVERGENCE_TOL
            or v < -DIVERGENCE_TOL
            or v > cap + DIVERGENCE_TOL
            or not abs(s + i + r + v - 1.0) <= DIVERGENCE_TOL
        ):
            raise DivergenceError(k, t0 + k * dt)

        # Clamp-then-record keeps stored states strictly admissible.
        if s < 0.0:
            s = 0.0
        if i < 0.0:
            i = 0.0
        if r < 0.0:
            r = 0.0
        if v < 0.0:
            v = 0.0
        elif v > cap:
            v = cap

        if k % stride == 0 or k == n_steps:
            times[rec] = t0 + k * dt
            states[rec] = (s, i, r, v)
            rec += 1

    return Trajectory(times[:rec], states[:rec], p)


def first_time_below(
    traj: Trajectory, compartment: str, threshold: float
) -> float | None:
    """Earliest recorded time with the compartment below ``threshold``.

    Returns ``None`` when the threshold is never undercut within the
    recorded horizon. Crossings are resolved at grid resolution; no
    interpolation between recorded points.
    """
    if len(traj) == 0:
        raise ValueError("empty trajectory")
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold!r}")
    below = traj.compartment(compartment) < threshold
    if not below.any():
        return None
    return float(traj.times[int(np.argmax(below))])


def peak(traj: Trajectory, compartment: str) -> Peak:
    """Maximum recorded value of a compartment and the earliest time attaining it."""
    if len(traj) == 0:
        raise ValueError("empty trajectory")
    values = traj.compartment(compartment)
    idx = int(np.argmax(values))  # argmax takes the first (earliest) maximum
    return Peak(float(values[idx]), float(traj.times[idx]))
