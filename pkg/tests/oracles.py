"""Independent numerical oracles and randomized-input helpers.

The explicit-Euler integrator here shares no code with the library's
integration path; at a micro step it is the reference the higher-order
scheme is checked against.
"""

from __future__ import annotations

import math

import numpy as np

from sirsvk import Params, State


def euler_states(
    p: Params, x0: State, t_end: float, dt: float, sample_stride: int
) -> np.ndarray:
    """Explicit-Euler solution sampled every ``sample_stride`` steps.

    Returns an array of shape (n_samples, 4) including the initial state.
    """
    beta, gamma, rho, omega, kappa = p.beta, p.gamma, p.rho, p.omega, p.kappa
    s, i, r, v = x0.s, x0.i, x0.r, x0.v
    n = round(t_end / dt)
    out = [(s, i, r, v)]
    for k in range(1, n + 1):
        q = 1.0 - v / kappa
        a = beta * s * i
        b = gamma * i
        c = omega * r
        d = rho * q * s
        e = rho * q * r
        s += dt * (c - a - d)
        i += dt * (a - b)
        r += dt * (b - c - e)
        v += dt * (d + e)
        if k % sample_stride == 0:
            out.append((s, i, r, v))
    return np.array(out)


def random_params(rng: np.random.Generator, allow_infinite: bool = False) -> Params:
    """Draw valid parameters; with ``allow_infinite`` roughly one draw in
    ten has an uncapped confidence."""
    kappa = float(rng.uniform(0.05, 3.0))
    if allow_infinite and rng.random() < 0.1:
        kappa = math.inf
    return Params(
        beta=float(rng.uniform(0.1, 4.0)),
        gamma=float(rng.uniform(0.1, 4.0)),
        rho=float(rng.uniform(0.01, 1.0)),
        omega=float(rng.uniform(0.05, 4.0)),
        kappa=kappa,
    )


def random_state(rng: np.random.Generator, p: Params) -> State:
    """Draw an admissible state: v below the cap, the rest on the simplex."""
    v = float(rng.uniform(0.0, 1.0)) * p.kappa_eff
    weights = rng.uniform(0.01, 1.0, size=3)
    remainder = 1.0 - v
    s, i, r = (remainder * w / weights.sum() for w in weights)
    return State(float(s), float(i), float(r), v)
