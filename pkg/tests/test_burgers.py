import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerwaves import (
    ConstantProfile,
    DomainError,
    GaussianBumpProfile,
    LinearProfile,
    SineProfile,
    TimeDomainError,
    breaking_time,
    evaluate,
    make_gas,
    make_wave,
    riemann_shock,
)
from eulerwaves.burgers import characteristic_foot, pde_residual

GAS = make_gas(1.4)  # a = 0.2, speed factor 1.2


def numeric_sup_negative_slope(profile, lo=-60.0, hi=60.0, n=2_000_001):
    s = np.linspace(lo, hi, n)
    return float(np.max(-profile.slope(s)))


def test_profile_values_and_slopes():
    s = np.array([-1.0, 0.0, 2.5])
    c = ConstantProfile(level=3.0)
    assert np.all(c.value(s) == 3.0)
    assert np.all(c.slope(s) == 0.0)

    lin = LinearProfile(ramp=2.0, offset=-1.0)
    assert np.allclose(lin.value(s), 2.0 * s - 1.0)
    assert np.all(lin.slope(s) == 2.0)

    sin = SineProfile(amplitude=0.5, wavenumber=3.0, offset=1.0)
    assert np.allclose(sin.value(s), 1.0 + 0.5 * np.sin(3.0 * s))
    assert np.allclose(sin.slope(s), 1.5 * np.cos(3.0 * s))

    gb = GaussianBumpProfile(amplitude=2.0, center=0.5, width=1.5, offset=0.1)
    z = (s - 0.5) / 1.5
    assert np.allclose(gb.value(s), 0.1 + 2.0 * np.exp(-z * z))


def test_profile_parameter_validation():
    with pytest.raises(DomainError):
        GaussianBumpProfile(amplitude=1.0, width=0.0)
    with pytest.raises(DomainError):
        GaussianBumpProfile(amplitude=1.0, width=-2.0)
    with pytest.raises(DomainError):
        SineProfile(amplitude=float("nan"), wavenumber=1.0)
    with pytest.raises(DomainError):
        LinearProfile(ramp=float("inf"))


@pytest.mark.parametrize(
    "profile",
    [
        SineProfile(amplitude=0.7, wavenumber=1.9, offset=2.0),
        GaussianBumpProfile(amplitude=-1.3, center=0.4, width=0.7, offset=3.0),
        LinearProfile(ramp=-0.8),
    ],
)
def test_max_negative_slope_matches_dense_sampling(profile):
    analytic = profile.max_negative_slope()
    numeric = numeric_sup_negative_slope(profile)
    assert abs(analytic - numeric) <= 1e-6 * max(1.0, analytic)


def test_breaking_time_examples():
    # sine A=1, kappa=1, offset 2 at a=0.2 breaks at 1/1.2
    w = make_wave(GAS, SineProfile(amplitude=1.0, wavenumber=1.0, offset=2.0))
    assert abs(breaking_time(w) - 1.0 / 1.2) < 1e-12
    # linear ramp -1 breaks at the same time
    w = make_wave(GAS, LinearProfile(ramp=-1.0))
    assert abs(breaking_time(w) - 1.0 / 1.2) < 1e-12
    # constants never break
    w = make_wave(GAS, ConstantProfile(level=4.0))
    assert breaking_time(w) == math.inf
    # rising linear data never breaks either
    w = make_wave(GAS, LinearProfile(ramp=1.0))
    assert breaking_time(w) == math.inf


def test_constant_profile_evaluation():
    w = make_wave(GAS, ConstantProfile(level=2.5))
    f, f_s, f_t = evaluate(w, 0.7, 3.0)
    assert (f, f_s, f_t) == (2.5, 0.0, 0.0)


def test_linear_closed_form():
    w = make_wave(GAS, LinearProfile(ramp=1.0))
    rng = np.random.default_rng(11)
    s = rng.uniform(-10.0, 10.0, size=1000)
    t = rng.uniform(0.0, 5.0, size=1000)
    for ti in np.unique(np.round(t, 2))[:40]:
        f, _, _ = evaluate(w, s, ti)
        assert np.max(np.abs(f - s / (1.0 + 1.2 * ti))) < 1e-12


def test_monotone_data_survive_long_times():
    w = make_wave(GAS, LinearProfile(ramp=1.0))
    f, _, _ = evaluate(w, 3.0, 1000.0)
    assert abs(f - 3.0 / (1.0 + 1200.0)) < 1e-12


def test_sine_identity_at_t0():
    prof = SineProfile(amplitude=0.5, wavenumber=2.0, offset=1.0)
    w = make_wave(GAS, prof)
    s = np.linspace(-3.0, 3.0, 17)
    f, f_s, _ = evaluate(w, s, 0.0)
    assert np.max(np.abs(f - prof.value(s))) < 1e-14
    assert np.max(np.abs(f_s - prof.slope(s))) < 1e-14


def test_evaluate_scalar_returns_floats():
    w = make_wave(GAS, SineProfile(amplitude=0.3, wavenumber=1.0, offset=1.0))
    out = evaluate(w, 0.5, 0.1)
    assert all(isinstance(v, float) for v in out)


def test_time_domain_errors():
    w = make_wave(GAS, SineProfile(amplitude=1.0, wavenumber=1.0))
    tb = breaking_time(w)
    with pytest.raises(TimeDomainError):
        evaluate(w, 0.0, tb)
    with pytest.raises(TimeDomainError):
        evaluate(w, 0.0, tb + 1.0)
    with pytest.raises(TimeDomainError):
        evaluate(w, 0.0, -0.1)
    with pytest.raises(TimeDomainError):
        pde_residual(w, 0.0, tb - 1e-5, 1e-3)
    with pytest.raises(TimeDomainError):
        pde_residual(w, 0.0, 1e-5, 1e-3)
    with pytest.raises(DomainError):
        pde_residual(w, 0.0, 0.3, 0.0)


def test_derivatives_match_finite_differences():
    w = make_wave(GAS, SineProfile(amplitude=0.6, wavenumber=1.3, offset=1.5))
    s, t = 0.4, 0.5
    _, f_s, f_t = evaluate(w, s, t)
    errs_s, errs_t = [], []
    for h in (1e-3, 5e-4):
        ds = (evaluate(w, s + h, t)[0] - evaluate(w, s - h, t)[0]) / (2 * h)
        dt = (evaluate(w, s, t + h)[0] - evaluate(w, s, t - h)[0]) / (2 * h)
        errs_s.append(abs(ds - f_s))
        errs_t.append(abs(dt - f_t))
    assert math.log2(errs_s[0] / errs_s[1]) > 1.9
    assert math.log2(errs_t[0] / errs_t[1]) > 1.9


def test_pde_residual_decay():
    w = make_wave(GAS, SineProfile(amplitude=1.0, wavenumber=1.0, offset=2.0))
    r1 = pde_residual(w, 0.3, 0.4, 1e-3)
    r2 = pde_residual(w, 0.3, 0.4, 5e-4)
    assert 3.5 < r1 / r2 < 4.5

    w = make_wave(GAS, GaussianBumpProfile(amplitude=0.8, center=0.0, width=1.0, offset=2.0))
    pts = np.linspace(-2.0, 2.0, 9)
    r1 = pde_residual(w, pts, 0.3, 1e-3)
    r2 = pde_residual(w, pts, 0.3, 5e-4)
    assert 3.4 < r1 / r2 < 4.6


def test_pde_residual_trivial_cases():
    w = make_wave(GAS, ConstantProfile(level=2.0))
    assert pde_residual(w, np.linspace(-1, 1, 5), 0.5, 1e-3) == 0.0
    w = make_wave(GAS, LinearProfile(ramp=1.0))
    # f = s/(1+1.2t) still has f_ttt != 0; the h^2 term shrinks as t grows
    assert pde_residual(w, np.linspace(-1, 1, 5), 2.0, 1e-4) < 1e-9


def test_riemann_shock_values():
    assert riemann_shock(0.2, 2.0, 1.0) == pytest.approx(1.8, abs=1e-15)
    assert riemann_shock(0.2, 1.0, -1.0) == pytest.approx(0.0, abs=1e-15)
    assert riemann_shock(0.5, 3.0, 1.0) == pytest.approx(3.0, abs=1e-15)
    # flux-difference cross-check: sigma = [ (1+a) f^2/2 ] / [ f ]
    a, fl, fr = 0.35, 1.7, 0.2
    flux = lambda f: (1.0 + a) * 0.5 * f * f
    assert riemann_shock(a, fl, fr) == pytest.approx((flux(fl) - flux(fr)) / (fl - fr))


def test_riemann_shock_requires_decreasing_jump():
    with pytest.raises(DomainError):
        riemann_shock(0.2, 1.0, 1.0)
    with pytest.raises(DomainError):
        riemann_shock(0.2, 1.0, 2.0)


PROFILES = st.one_of(
    st.builds(
        SineProfile,
        amplitude=st.floats(-1.5, 1.5),
        wavenumber=st.floats(0.1, 3.0),
        offset=st.floats(-1.0, 3.0),
    ),
    st.builds(
        GaussianBumpProfile,
        amplitude=st.floats(-2.0, 2.0),
        center=st.floats(-3.0, 3.0),
        width=st.floats(0.3, 3.0),
        offset=st.floats(-1.0, 3.0),
    ),
    st.builds(LinearProfile, ramp=st.floats(-2.0, 2.0), offset=st.floats(-2.0, 2.0)),
    st.builds(ConstantProfile, level=st.floats(-3.0, 3.0)),
)


@settings(max_examples=120, deadline=None)
@given(profile=PROFILES, frac=st.floats(0.0, 0.9), s=st.floats(-20.0, 20.0))
def test_foot_point_property(profile, frac, s):
    w = make_wave(GAS, profile)
    t = frac * min(breaking_time(w), 5.0)
    foot = characteristic_foot(w, s, t)
    resid = foot + 1.2 * t * float(profile.value(foot)) - s
    assert abs(resid) <= 1e-12 * (1.0 + abs(s))


@settings(max_examples=60, deadline=None)
@given(
    amplitude=st.floats(0.2, 1.2),
    wavenumber=st.floats(0.3, 2.0),
    frac=st.floats(0.05, 0.95),
)
def test_characteristic_map_is_increasing(amplitude, wavenumber, frac):
    prof = SineProfile(amplitude=amplitude, wavenumber=wavenumber, offset=1.0)
    w = make_wave(GAS, prof)
    t = frac * breaking_time(w)
    s0 = np.linspace(-8.0, 8.0, 400)
    mapped = s0 + 1.2 * t * prof.value(s0)
    assert np.all(np.diff(mapped) > 0.0)
