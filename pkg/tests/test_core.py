import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lambdaelim import (
    DegeneracyError,
    LambdaParams,
    ReducedParams,
    RegimeError,
    RegimeWarning,
    State2,
    State3,
    Trajectory,
    expand,
    reduce,
)

from conftest import lambda_params


def test_reduce_reference_scenario(ref):
    red = reduce(ref)
    assert red.epsilon == pytest.approx(0.05, rel=1e-15)
    assert red.lam == pytest.approx(1.0, rel=1e-15)
    assert abs(red.lambda_a) == pytest.approx(1.0, rel=1e-15)
    assert abs(red.lambda_b) == pytest.approx(1.0, rel=1e-15)
    assert red.sign == 1


def test_reduce_hand_evaluated():
    red = reduce(LambdaParams(0.02, 1.0, 0.1, 0.05))
    assert red.epsilon == pytest.approx(0.05)
    assert red.lam == pytest.approx(0.2)
    assert red.lambda_a == pytest.approx(1.0)
    assert red.lambda_b == pytest.approx(0.5)


def test_reduce_zero_coupling_is_degenerate():
    with pytest.raises(DegeneracyError):
        reduce(LambdaParams(0.0, 1.0, 0.0, 0.0))


def test_zero_common_detuning_rejected():
    with pytest.raises(RegimeError):
        LambdaParams(0.1, 0.0, 0.1, 0.1)


def test_negative_detuning_sign_is_recorded():
    red = reduce(LambdaParams(-0.1, 1.0, 0.05, 0.05))
    assert red.lam == pytest.approx(1.0)
    assert red.sign == -1
    red = reduce(LambdaParams(0.1, -1.0, 0.05, 0.05))
    assert red.sign == -1
    assert red.lambda_a == pytest.approx(-0.5)


def test_large_epsilon_warns():
    with pytest.warns(RegimeWarning):
        reduce(LambdaParams(0.0, 1.0, 0.5, 0.0))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        reduce(LambdaParams(0.0, 1.0, 0.4, 0.0))  # eps = 0.2 exactly: no warning


def test_laser_detuning_bookkeeping():
    p = LambdaParams.from_laser_detunings(1.05, 0.95, 0.1, 0.1)
    assert p.delta == pytest.approx(0.1)
    assert p.big_delta == pytest.approx(1.0)
    with pytest.raises(ValueError):
        LambdaParams(0.2, 1.0, 0.1, 0.1, delta_a=1.05, delta_b=0.95)


@settings(max_examples=200, deadline=None)
@given(lambda_params())
def test_round_trip(p):
    red = reduce(p)
    back = expand(red, p.big_delta)
    scale = max(abs(p.delta), abs(p.omega_a), abs(p.omega_b))
    for x, y in [(back.delta, p.delta), (back.omega_a, p.omega_a), (back.omega_b, p.omega_b)]:
        assert abs(x - y) <= 1e-14 * scale
    assert max(red.lam, abs(red.lambda_a), abs(red.lambda_b)) == pytest.approx(1.0, abs=1e-15)
    assert red.lam >= 0
    assert red.lambda_a * red.epsilon == pytest.approx(p.omega_a / (2 * p.big_delta), rel=1e-14)


@settings(max_examples=100, deadline=None)
@given(lambda_params(), st.floats(0.01, 100.0))
def test_reduce_scale_covariant(p, s):
    q = LambdaParams(p.delta * s, p.big_delta * s, p.omega_a * s, p.omega_b * s)
    r1, r2 = reduce(p), reduce(q)
    assert r2.epsilon == pytest.approx(r1.epsilon, rel=1e-13)
    assert r2.lam == pytest.approx(r1.lam, rel=1e-13, abs=1e-15)
    assert r2.lambda_a == pytest.approx(r1.lambda_a, rel=1e-13, abs=1e-15)
    assert r2.lambda_b == pytest.approx(r1.lambda_b, rel=1e-13, abs=1e-15)
    assert r2.sign == r1.sign or r1.lam == 0


def test_reduced_params_validation():
    with pytest.raises(DegeneracyError):
        ReducedParams(0.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        ReducedParams(0.1, -1.0, 1.0, 1.0)


def test_states_must_be_normalized():
    State3(np.sqrt(1 / 3), np.sqrt(2 / 3))
    State2(1j, 0)
    with pytest.raises(ValueError):
        State3(1, 1, 0)
    with pytest.raises(ValueError):
        State2(0.5, 0.5)


def test_trajectory_shape_checks():
    t = np.linspace(0, 1, 5)
    tr = Trajectory(t, np.tile([1, 0, 0], (5, 1)))
    assert tr.max_norm_error == 0
    with pytest.raises(AttributeError):
        Trajectory(t, np.tile([1, 0], (5, 1))).gamma
    with pytest.raises(ValueError):
        Trajectory(t, np.ones((4, 3)))
