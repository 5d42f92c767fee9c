"""Fixed-step integration: conservation, accuracy, and observables."""

import math

import numpy as np
import pytest

from sirsvk import (
    DivergenceError,
    IntegrationConfig,
    ParameterError,
    Params,
    State,
    StateError,
    dfe,
    eep,
    first_time_below,
    integrate,
    peak,
    validate_state,
    vector_field,
)
from oracles import euler_states

P_BASE = Params(1.6, 0.8, 0.12, 0.2, 0.8)
X_OUTBREAK = State(0.99, 0.01, 0.0, 0.0)


# ── basic contract ───────────────────────────────────────────────────

def test_equilibrium_is_a_fixed_point():
    x0 = dfe(P_BASE).state
    traj = integrate(P_BASE, x0, IntegrationConfig(0.0, 10.0, 0.01, 1))
    assert np.all(traj.states == traj.states[0])
    assert traj.state_at(0) == x0


def test_one_step_matches_the_public_vector_field():
    # The inlined stage arithmetic must agree bit for bit with a step
    # composed from vector_field, or the two code paths have drifted.
    dt = 0.01
    x = State(0.54, 0.41, 0.05, 0.0)
    xt = x.as_tuple()
    k1 = vector_field(P_BASE, x).as_tuple()
    k2 = vector_field(
        P_BASE, State(*(a + 0.5 * dt * b for a, b in zip(xt, k1))), validate=False
    ).as_tuple()
    k3 = vector_field(
        P_BASE, State(*(a + 0.5 * dt * b for a, b in zip(xt, k2))), validate=False
    ).as_tuple()
    k4 = vector_field(
        P_BASE, State(*(a + dt * b for a, b in zip(xt, k3))), validate=False
    ).as_tuple()
    manual = tuple(
        a + dt / 6.0 * (b1 + 2.0 * (b2 + b3) + b4)
        for a, b1, b2, b3, b4 in zip(xt, k1, k2, k3, k4)
    )
    traj = integrate(P_BASE, x, IntegrationConfig(0.0, dt, dt, 1))
    assert tuple(traj.states[1]) == manual


def test_time_grid_and_record_stride():
    traj = integrate(P_BASE, X_OUTBREAK, IntegrationConfig(0.0, 1.0, 0.01, 7))
    assert traj.times[0] == 0.0
    assert np.all(np.diff(traj.times) > 0)
    assert traj.times[-1] == pytest.approx(1.0)  # final step always recorded
    assert traj.times[1] == pytest.approx(0.07)
    assert len(traj) == 100 // 7 + 2


def test_trajectory_is_immutable():
    traj = integrate(P_BASE, X_OUTBREAK, IntegrationConfig(0.0, 1.0, 0.01, 1))
    with pytest.raises(ValueError):
        traj.states[0, 0] = 2.0
    with pytest.raises(ValueError):
        traj.times[0] = -1.0


def test_determinism_bitwise():
    cfg = IntegrationConfig(0.0, 50.0, 0.01, 3)
    a = integrate(P_BASE, X_OUTBREAK, cfg)
    b = integrate(P_BASE, X_OUTBREAK, cfg)
    assert a.times.tobytes() == b.times.tobytes()
    assert a.states.tobytes() == b.states.tobytes()


def test_integrate_validates_inputs():
    with pytest.raises(ParameterError):
        integrate(Params(1.6, 0.0, 0.12, 0.2, 0.8), X_OUTBREAK)
    with pytest.raises(StateError):
        integrate(P_BASE, State(0.5, 0.5, 0.5, 0.5))
    with pytest.raises(ParameterError):
        integrate(Params(1.6, 0.8, 0.0, 0.2, 0.8), X_OUTBREAK)
    # the no-roll-out variant is allowed once opted in
    p = Params(1.6, 0.8, 0.0, 0.2, 0.8, allow_zero_rho=True)
    integrate(p, X_OUTBREAK, IntegrationConfig(0.0, 1.0, 0.01, 10))


def test_integration_config_invariants():
    with pytest.raises(ValueError):
        IntegrationConfig(0.0, 0.0, 0.01, 1)
    with pytest.raises(ValueError):
        IntegrationConfig(0.0, 1.0, -0.1, 1)
    with pytest.raises(ValueError):
        IntegrationConfig(0.0, 1.0, 2.0, 1)
    with pytest.raises(ValueError):
        IntegrationConfig(0.0, 1.0, 0.01, 0)


def test_divergence_error_names_the_step():
    p = Params(4.0, 0.1, 0.5, 0.1, 0.9)
    with pytest.raises(DivergenceError) as excinfo:
        integrate(p, State(0.5, 0.5, 0.0, 0.0), IntegrationConfig(0.0, 50.0, 2.0, 1))
    assert excinfo.value.step == 1
    assert "step 1" in str(excinfo.value)


# ── conservation and admissibility ───────────────────────────────────

def test_conservation_and_cap_over_long_horizon():
    traj = integrate(P_BASE, X_OUTBREAK, IntegrationConfig(0.0, 200.0, 0.01, 1))
    assert np.max(np.abs(traj.states.sum(axis=1) - 1.0)) < 1e-9
    v = traj.compartment("V")
    assert v.max() <= P_BASE.kappa_eff
    assert np.all(np.diff(v) >= 0.0)  # uptake never reverses
    for k in (0, len(traj) // 2, len(traj) - 1):
        assert validate_state(P_BASE, traj.state_at(k)) == []


def test_vaccinated_saturates_at_the_cap_not_above():
    p = Params(1.6, 0.8, 0.5, 3.0, 0.3)
    traj = integrate(p, State(0.54, 0.41, 0.05, 0.0), IntegrationConfig(0.0, 100.0, 0.01, 10))
    v = traj.compartment("V")
    assert v.max() <= 0.3
    assert traj.final_state.v == pytest.approx(0.3, abs=1e-9)


# ── accuracy ─────────────────────────────────────────────────────────

def test_halving_the_step_shows_fourth_order():
    ref = integrate(P_BASE, X_OUTBREAK, IntegrationConfig(0.0, 40.0, 0.001, 10))
    coarse = integrate(P_BASE, X_OUTBREAK, IntegrationConfig(0.0, 40.0, 0.01, 1))
    fine = integrate(P_BASE, X_OUTBREAK, IntegrationConfig(0.0, 40.0, 0.005, 2))
    e_coarse = np.max(np.abs(coarse.states - ref.states))
    e_fine = np.max(np.abs(fine.states - ref.states))
    assert 12.0 <= e_coarse / e_fine <= 20.0


def test_short_horizon_euler_cross_check():
    # Micro-step forward Euler is an independent reference.
    cfg = IntegrationConfig(0.0, 10.0, 0.01, 1)
    traj = integrate(P_BASE, State(0.54, 0.41, 0.05, 0.0), cfg)
    reference = euler_states(P_BASE, State(0.54, 0.41, 0.05, 0.0), 10.0, 1e-5, 1000)
    assert np.max(np.abs(reference - traj.states)) < 1e-4


def test_settles_on_the_endemic_state():
    p = Params(1.6, 0.8, 0.12, 3.0, 0.4)
    x0 = State(0.54, 0.41, 0.05, 0.0)
    traj = integrate(p, x0, IntegrationConfig(0.0, 200.0, 0.01, 100))
    target = np.array(eep(p).state.as_tuple())
    assert np.max(np.abs(np.array(traj.final_state.as_tuple()) - target)) < 1e-3


def test_settles_on_the_disease_free_state_above_unit_cap():
    # kappa > 1 clamps the cap at 1; convergence is slow because the
    # residual vaccination pressure is rho*(1 - 1/kappa).
    p = Params(1.6, 0.8, 0.12, 3.0, 1.2)
    x0 = State(0.54, 0.41, 0.05, 0.0)
    traj = integrate(p, x0, IntegrationConfig(0.0, 400.0, 0.01, 100))
    target = np.array([0.0, 0.0, 0.0, 1.0])
    assert np.max(np.abs(np.array(traj.final_state.as_tuple()) - target)) < 1e-3


# ── observables ──────────────────────────────────────────────────────

def test_first_time_below_at_the_start():
    traj = integrate(P_BASE, dfe(P_BASE).state, IntegrationConfig(0.0, 5.0, 0.01, 1))
    assert first_time_below(traj, "I", 0.001) == 0.0


def test_first_time_below_not_reached_at_an_endemic_state():
    p = Params(1.6, 0.8, 0.12, 3.0, 0.4)
    traj = integrate(
        p, State(0.54, 0.41, 0.05, 0.0), IntegrationConfig(0.0, 200.0, 0.01, 10)
    )
    assert eep(p).state.i > 0.001
    assert first_time_below(traj, "I", 0.001) is None


def test_first_time_below_is_grid_resolved():
    traj = integrate(P_BASE, X_OUTBREAK, IntegrationConfig(0.0, 100.0, 0.01, 1))
    t = first_time_below(traj, "I", 0.001)
    assert t is not None
    k = int(np.searchsorted(traj.times, t))
    assert traj.times[k] == t
    assert traj.states[k, 1] < 0.001 <= traj.states[k - 1, 1]


def test_first_time_below_input_checks():
    traj = integrate(P_BASE, X_OUTBREAK, IntegrationConfig(0.0, 1.0, 0.01, 1))
    with pytest.raises(ValueError):
        first_time_below(traj, "I", 0.0)
    with pytest.raises(ValueError):
        first_time_below(traj, "I", 1.0)


def test_peak_of_a_declining_infection_is_the_start():
    x0 = State(0.2, 0.5, 0.3, 0.0)
    traj = integrate(P_BASE, x0, IntegrationConfig(0.0, 50.0, 0.01, 1))
    assert np.all(np.diff(traj.compartment("I")) <= 0)
    assert peak(traj, "I") == (0.5, 0.0)


def test_peak_of_a_constant_trajectory_is_the_start():
    traj = integrate(P_BASE, dfe(P_BASE).state, IntegrationConfig(0.0, 5.0, 0.01, 1))
    assert peak(traj, "V") == (0.8, 0.0)


def test_peak_against_the_frozen_oracle_value():
    # Expected values computed with the micro-step Euler reference
    # (dt = 1e-5) for this configuration.
    traj = integrate(P_BASE, X_OUTBREAK, IntegrationConfig(0.0, 100.0, 0.01, 1))
    value, time = peak(traj, "I")
    assert value == pytest.approx(0.0574169336, abs=1e-6)
    assert time == pytest.approx(5.04, abs=0.011)


def test_peak_ties_break_to_the_earliest_time():
    traj = integrate(P_BASE, dfe(P_BASE).state, IntegrationConfig(0.0, 5.0, 0.01, 1))
    assert peak(traj, "S").time == 0.0
