"""Scalar wave profiles and their evolution along characteristics.

A profile f0 launches f(s, t) solving f_t + (1+a) f f_s = 0 by constancy
along straight characteristics: f(s, t) = f0(s0) with the foot point s0
defined implicitly by s0 + (1+a) f0(s0) t = s.  The solve is Newton
iteration with a bracketed root fallback, well posed for t below the
breaking time t* = 1 / ((1+a) sup(-f0')).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np
from scipy.optimize import brentq

from .errors import ConvergenceError, DomainError, TimeDomainError
from .gas import GasParams

_FOOT_TOL = 1e-13  # residual tolerance of the foot-point solve, in units of s
_NEWTON_MAX_ITER = 60


def _require_finite(**params) -> None:
    for name, val in params.items():
        if not np.isfinite(val):
            raise DomainError(f"profile parameter {name} must be finite, got {val}")


@dataclass(frozen=True)
class ConstantProfile:
    """f0(s) = level."""

    level: float
    kind: ClassVar[str] = "constant"

    def __post_init__(self):
        _require_finite(level=self.level)

    def value(self, s):
        return np.full(np.shape(s), self.level)

    def slope(self, s):
        return np.zeros(np.shape(s))

    def max_negative_slope(self) -> float:
        return 0.0


@dataclass(frozen=True)
class LinearProfile:
    """f0(s) = ramp * s + offset."""

    ramp: float
    offset: float = 0.0
    kind: ClassVar[str] = "linear"

    def __post_init__(self):
        _require_finite(ramp=self.ramp, offset=self.offset)

    def value(self, s):
        return self.ramp * np.asarray(s, dtype=float) + self.offset

    def slope(self, s):
        return np.full(np.shape(s), self.ramp)

    def max_negative_slope(self) -> float:
        return max(-self.ramp, 0.0)


@dataclass(frozen=True)
class SineProfile:
    """f0(s) = offset + amplitude * sin(wavenumber * s)."""

    amplitude: float
    wavenumber: float
    offset: float = 0.0
    kind: ClassVar[str] = "sine"

    def __post_init__(self):
        _require_finite(
            amplitude=self.amplitude, wavenumber=self.wavenumber, offset=self.offset
        )

    def value(self, s):
        return self.offset + self.amplitude * np.sin(self.wavenumber * np.asarray(s, dtype=float))

    def slope(self, s):
        k = self.wavenumber
        return self.amplitude * k * np.cos(k * np.asarray(s, dtype=float))

    def max_negative_slope(self) -> float:
        return abs(self.amplitude * self.wavenumber)


@dataclass(frozen=True)
class GaussianBumpProfile:
    """f0(s) = offset + amplitude * exp(-((s - center) / width)**2)."""

    amplitude: float
    center: float = 0.0
    width: float = 1.0
    offset: float = 0.0
    kind: ClassVar[str] = "gaussian-bump"

    def __post_init__(self):
        _require_finite(
            amplitude=self.amplitude, center=self.center, width=self.width, offset=self.offset
        )
        if self.width <= 0.0:
            raise DomainError(f"width must be positive, got {self.width}")

    def value(self, s):
        z = (np.asarray(s, dtype=float) - self.center) / self.width
        return self.offset + self.amplitude * np.exp(-z * z)

    def slope(self, s):
        z = (np.asarray(s, dtype=float) - self.center) / self.width
        return self.amplitude * (-2.0 * z / self.width) * np.exp(-z * z)

    def max_negative_slope(self) -> float:
        # |f0'| peaks at z = 1/sqrt(2); both signs occur on the two flanks
        return abs(self.amplitude) * math.sqrt(2.0) * math.exp(-0.5) / self.width


PROFILE_KINDS = {
    ConstantProfile.kind: ConstantProfile,
    LinearProfile.kind: LinearProfile,
    SineProfile.kind: SineProfile,
    GaussianBumpProfile.kind: GaussianBumpProfile,
}


@dataclass(frozen=True)
class BurgersWave:
    """A profile together with the characteristic speed factor 1 + a."""

    profile: object
    speed_factor: float
    t_break: float = field(init=False)

    def __post_init__(self):
        if not np.isfinite(self.speed_factor) or self.speed_factor <= 0.0:
            raise DomainError(f"speed_factor must be positive, got {self.speed_factor}")
        m = self.profile.max_negative_slope()
        t = math.inf if m <= 0.0 else 1.0 / (self.speed_factor * m)
        object.__setattr__(self, "t_break", t)


def make_wave(gas: GasParams, profile) -> BurgersWave:
    return BurgersWave(profile=profile, speed_factor=gas.speed_factor)


def breaking_time(wave: BurgersWave) -> float:
    """First time a characteristic crossing can occur; inf for monotone data."""
    return wave.t_break


def _check_time(wave: BurgersWave, t: float) -> float:
    t = float(t)
    if not np.isfinite(t) or t < 0.0:
        raise TimeDomainError(f"t must be a finite nonnegative time, got {t}")
    if t >= wave.t_break:
        raise TimeDomainError(f"t={t} is at or beyond the breaking time {wave.t_break}")
    return t


def _bisect_foot(profile, lam_t: float, s: float, tol: float) -> float:
    """Root of g(x) = x + lam_t f0(x) - s on a geometrically grown bracket."""

    def g(x):
        return x + lam_t * float(profile.value(x)) - s

    half = max(1.0, abs(lam_t) * (abs(float(profile.value(s))) + 1.0))
    for _ in range(200):
        lo, hi = s - half, s + half
        if g(lo) <= 0.0 <= g(hi):  # g is strictly increasing before breaking
            root = float(brentq(g, lo, hi, xtol=1e-15, maxiter=200))
            if abs(g(root)) > 10.0 * tol:
                raise ConvergenceError(f"foot-point solve stalled at s={s}")
            return root
        half *= 2.0
    raise ConvergenceError(f"could not bracket the foot point for s={s}")


def characteristic_foot(wave: BurgersWave, s, t: float):
    """Solve s0 + (1+a) t f0(s0) = s for every entry of s."""
    t = _check_time(wave, t)
    prof = wave.profile
    lam_t = wave.speed_factor * t
    s_in = np.asarray(s, dtype=float)
    sig = np.atleast_1d(s_in - lam_t * prof.value(s_in)).astype(float).copy()
    flat_s = np.atleast_1d(s_in).astype(float)
    tol = _FOOT_TOL * (1.0 + np.abs(flat_s))
    for _ in range(_NEWTON_MAX_ITER):
        resid = sig + lam_t * prof.value(sig) - flat_s
        live = np.abs(resid) > tol
        if not live.any():
            break
        # 1 + lam_t f0' >= 1 - t/t_break > 0 everywhere below breaking
        deriv = 1.0 + lam_t * prof.slope(sig)
        sig = sig - np.where(live, resid / deriv, 0.0)
    else:
        resid = sig + lam_t * prof.value(sig) - flat_s
        for idx in np.flatnonzero(np.abs(resid) > tol):
            sig[idx] = _bisect_foot(prof, lam_t, float(flat_s[idx]), float(tol[idx]))
    return float(sig[0]) if s_in.ndim == 0 else sig.reshape(s_in.shape)


def evaluate(wave: BurgersWave, s, t: float):
    """Return (f, f_s, f_t) at points s and time t, shapes matching s.

    f is constant along characteristics; implicit differentiation of the
    foot-point relation gives f_s = f0'(s0) / (1 + (1+a) t f0'(s0)) and the
    wave equation itself gives f_t = -(1+a) f f_s.
    """
    t = _check_time(wave, t)
    sig = characteristic_foot(wave, s, t)
    f = wave.profile.value(sig)
    f0p = wave.profile.slope(sig)
    f_s = f0p / (1.0 + wave.speed_factor * t * f0p)
    f_t = -wave.speed_factor * f * f_s
    if np.ndim(s) == 0:
        return float(f), float(f_s), float(f_t)
    return f, f_s, f_t


def pde_residual(wave: BurgersWave, s, t: float, h: float) -> float:
    """Max |D_t f + (1+a) f D_s f| with central differences of f only."""
    if h <= 0.0:
        raise DomainError(f"h must be positive, got {h}")
    if t - h < 0.0 or t + h >= wave.t_break:
        raise TimeDomainError(
            f"stencil [t-h, t+h] = [{t - h}, {t + h}] leaves [0, t_break)"
        )
    s = np.asarray(s, dtype=float)
    f0v = evaluate(wave, s, t)[0]
    d_t = (evaluate(wave, s, t + h)[0] - evaluate(wave, s, t - h)[0]) / (2.0 * h)
    d_s = (evaluate(wave, s + h, t)[0] - evaluate(wave, s - h, t)[0]) / (2.0 * h)
    return float(np.max(np.abs(d_t + wave.speed_factor * f0v * d_s)))


def riemann_shock(a: float, f_left: float, f_right: float) -> float:
    """Shock speed for f_t + (1+a)(f^2/2)_s = 0 between two constant states."""
    if not f_left > f_right:
        raise DomainError(
            f"need f_left > f_right for an admissible shock, got {f_left} <= {f_right}"
        )
    return (1.0 + a) * 0.5 * (f_left + f_right)
