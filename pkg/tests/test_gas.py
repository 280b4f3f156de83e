import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerwaves import DomainError, make_gas, pressure, rho_from_w, w_from_rho


def test_derived_constants():
    gas = make_gas(2.0)
    assert gas.a == 0.5
    assert gas.speed_factor == 1.5
    assert gas.inv_a == 2.0

    gas = make_gas(5.0 / 3.0)
    assert abs(gas.a - 1.0 / 3.0) < 1e-15
    assert abs(gas.inv_a - 3.0) < 1e-15

    gas = make_gas(1.4)
    assert abs(gas.a - 0.2) < 1e-15
    assert abs(gas.inv_a - 5.0) < 1e-12


@pytest.mark.parametrize("gamma", [1.0, 3.0, 0.5, 3.5, -1.0, float("nan"), float("inf")])
def test_gamma_domain(gamma):
    with pytest.raises(DomainError):
        make_gas(gamma)


@pytest.mark.parametrize("k", [0.0, -1.0, float("nan")])
def test_k_domain(k):
    with pytest.raises(DomainError):
        make_gas(1.4, k)


def test_pressure_values():
    gas = make_gas(2.0, k=3.0)
    assert pressure(gas, 1.0) == 3.0
    assert pressure(gas, 2.0) == 12.0
    out = pressure(gas, np.array([1.0, 2.0]))
    assert out.shape == (2,)
    assert isinstance(pressure(gas, 1.0), float)


def test_pressure_rejects_nonpositive():
    gas = make_gas(1.4)
    with pytest.raises(DomainError):
        pressure(gas, 0.0)
    with pytest.raises(DomainError):
        pressure(gas, np.array([1.0, -2.0]))


def test_w_from_rho_value():
    # gamma=2, k=1, rho=1: w = sqrt(2) / 0.5 = 2 sqrt(2)
    gas = make_gas(2.0)
    assert abs(w_from_rho(gas, 1.0) - 2.8284271247461903) < 1e-15


def test_round_trip_examples():
    for gamma, k, rho in [(1.4, 1.0, 0.7), (2.0, 2.5, 3.0), (2.9, 0.3, 0.02)]:
        gas = make_gas(gamma, k)
        w = w_from_rho(gas, rho)
        back = rho_from_w(gas, w)
        assert abs(back - rho) <= 1e-12 * rho


def test_sound_speed_identity():
    # a * w must equal the sound speed sqrt(gamma p / rho)
    for gamma in (1.4, 5.0 / 3.0, 2.0, 2.5):
        gas = make_gas(gamma, k=1.7)
        rho = np.array([0.3, 1.0, 4.2])
        w = w_from_rho(gas, rho)
        c = np.sqrt(gas.gamma * pressure(gas, rho) / rho)
        assert np.max(np.abs(gas.a * w - c) / c) < 1e-12


@settings(max_examples=200, deadline=None)
@given(
    gamma=st.floats(1.001, 2.999),
    k=st.floats(1e-3, 1e3),
    rho=st.floats(1e-3, 1e3),
)
def test_round_trip_property(gamma, k, rho):
    gas = make_gas(gamma, k)
    w = w_from_rho(gas, rho)
    assert abs(rho_from_w(gas, w) - rho) <= 1e-10 * rho
    assert abs(w_from_rho(gas, rho_from_w(gas, w)) - w) <= 1e-10 * w
