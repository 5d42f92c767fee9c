"""Equilibria, reproduction numbers, and the stability threshold."""

import math

import numpy as np
import pytest

from sirsvk import (
    Params,
    State,
    classify,
    dfe,
    eep,
    r0,
    rt,
    rt_upper_bound,
    vector_field,
)
from oracles import random_params, random_state

P_BASE = Params(1.6, 0.8, 0.12, 0.2, 0.8)


# ── disease-free equilibrium ─────────────────────────────────────────

def test_dfe_closed_form():
    assert dfe(P_BASE).state == State(1.0 - 0.8, 0.0, 0.0, 0.8)
    assert dfe(Params(1.6, 0.8, 0.12, 0.2, 1.5)).state == State(0.0, 0.0, 0.0, 1.0)
    assert dfe(Params(1.6, 0.8, 0.12, 0.2, math.inf)).state == State(0.0, 0.0, 0.0, 1.0)


def test_dfe_always_exists_and_is_exact():
    rng = np.random.default_rng(7)
    for _ in range(100):
        p = random_params(rng, allow_infinite=True)
        eq = dfe(p)
        assert eq.exists and eq.kind == "DFE"
        assert vector_field(p, eq.state).as_tuple() == (0.0, 0.0, 0.0, 0.0)


# ── endemic equilibrium ──────────────────────────────────────────────

def test_eep_closed_form():
    eq = eep(Params(1.6, 0.8, 0.12, 0.2, 0.3))
    np.testing.assert_allclose(
        eq.state.as_tuple(), (0.5, 0.04, 0.16, 0.3), rtol=1e-12
    )
    assert eq.kind == "EEP" and eq.exists


def test_eep_absent_when_confidence_is_high():
    assert eep(P_BASE) is None  # kappa = 0.8 >= 1 - gamma/beta = 0.5
    assert eep(Params(1.6, 0.8, 0.12, 0.2, math.inf)) is None


def test_eep_of_the_no_rollout_variant():
    # rho = 0 freezes V, so the endemic point is the kappa -> 0 closed
    # form: the classic SIRS endemic state.
    p = Params(1.6, 0.8, 0.0, 0.2, 0.8, allow_zero_rho=True)
    eq = eep(p)
    np.testing.assert_allclose(eq.state.as_tuple(), (0.5, 0.1, 0.4, 0.0), rtol=1e-12)


def test_eep_satisfies_the_fixed_point_and_ratio_conditions():
    rng = np.random.default_rng(11)
    found = 0
    while found < 200:
        p = random_params(rng)
        eq = eep(p)
        if eq is None:
            continue
        found += 1
        x = eq.state
        assert all(value > 0.0 for value in x.as_tuple())
        assert x.v == p.kappa
        assert x.s == p.gamma / p.beta
        d = vector_field(p, x)
        assert max(abs(value) for value in d.as_tuple()) < 1e-12
        assert abs(x.i / x.r - p.omega / p.gamma) < 1e-12


# ── reproduction numbers ─────────────────────────────────────────────

def test_r0_is_the_rate_quotient():
    assert r0(P_BASE) == 2.0
    assert r0(Params(0.7, 0.7, 0.12, 0.2, 0.8)) == 1.0
    assert r0(Params(0.4, 0.8, 0.12, 0.2, 0.8)) == 0.5


def test_rt_examples():
    assert rt(P_BASE, State(1.0, 0.0, 0.0, 0.0)) == r0(P_BASE) == 2.0
    x = State(0.2, 0.0, 0.0, 0.8)
    assert rt(P_BASE, x) == pytest.approx(0.4)
    assert rt_upper_bound(P_BASE, x) == pytest.approx(0.4)  # tight when i = r = 0
    x = State(0.54, 0.41, 0.05, 0.0)
    assert rt(P_BASE, x) == pytest.approx(1.08)
    assert rt_upper_bound(P_BASE, x) == pytest.approx(2.0)


def test_rt_never_exceeds_its_bound():
    rng = np.random.default_rng(13)
    for _ in range(200):
        p = random_params(rng, allow_infinite=True)
        x = random_state(rng, p)
        assert rt(p, x) <= rt_upper_bound(p, x) + 1e-15


# ── stability classification ─────────────────────────────────────────

def test_classify_examples():
    v = classify(P_BASE)
    assert v.threshold_value == pytest.approx(0.4)
    assert v.dfe_gas and not v.eep_exists

    v = classify(Params(1.6, 0.8, 0.12, 0.2, 0.5))
    assert v.threshold_value == pytest.approx(1.0)
    assert v.dfe_gas and not v.eep_exists  # boundary counts as stable

    v = classify(Params(1.6, 0.8, 0.12, 0.2, 0.3))
    assert v.threshold_value == pytest.approx(1.4)
    assert not v.dfe_gas and v.eep_exists


def test_classify_reports_negative_and_infinite_thresholds():
    assert classify(Params(1.6, 0.8, 0.12, 0.2, 1.5)).threshold_value == pytest.approx(-1.0)
    v = classify(Params(1.6, 0.8, 0.12, 0.2, math.inf))
    assert v.threshold_value == -math.inf
    assert v.dfe_gas and not v.eep_exists


def test_classify_of_the_no_rollout_variant_uses_r0():
    p = Params(1.6, 0.8, 0.0, 0.2, 0.8, allow_zero_rho=True)
    assert classify(p).threshold_value == r0(p)
    assert classify(p).eep_exists


def test_existence_matches_the_threshold_with_no_counterexamples():
    rng = np.random.default_rng(17)
    for _ in range(500):
        p = random_params(rng)
        verdict = classify(p)
        assert verdict.eep_exists == (verdict.threshold_value > 1.0)
        assert verdict.eep_exists == (eep(p) is not None)
        assert verdict.dfe_gas != verdict.eep_exists
