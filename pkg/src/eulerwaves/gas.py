"""Isentropic gas parameters and the p = k rho^gamma state relations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class GasParams:
    """Adiabatic exponent gamma, pressure constant k, derived exponent a."""

    gamma: float
    k: float
    a: float

    @property
    def speed_factor(self) -> float:
        """Factor (1 + a) multiplying f f_s in the scalar wave equation."""
        return 1.0 + self.a

    @property
    def inv_a(self) -> float:
        # computed from gamma directly rather than as 1/a
        return 2.0 / (self.gamma - 1.0)


def make_gas(gamma: float, k: float = 1.0) -> GasParams:
    """Validate 1 < gamma < 3 and k > 0, derive a = (gamma - 1) / 2."""
    gamma = float(gamma)
    k = float(k)
    if not np.isfinite(gamma) or not 1.0 < gamma < 3.0:
        raise DomainError(f"gamma must lie strictly between 1 and 3, got {gamma}")
    if not np.isfinite(k) or k <= 0.0:
        raise DomainError(f"k must be positive, got {k}")
    return GasParams(gamma=gamma, k=k, a=(gamma - 1.0) / 2.0)


def _positive_array(name, x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(x <= 0.0):
        raise DomainError(f"{name} must be positive and finite")
    return x


def _as_input_shape(out, x):
    return float(out) if np.ndim(x) == 0 else out


def pressure(gas: GasParams, rho):
    """Pressure p = k rho^gamma.  Accepts scalars or arrays."""
    r = _positive_array("rho", rho)
    return _as_input_shape(gas.k * r**gas.gamma, rho)


def w_from_rho(gas: GasParams, rho):
    """Scaled sound speed w = sqrt(gamma p / rho) / a."""
    r = _positive_array("rho", rho)
    return _as_input_shape(np.sqrt(gas.gamma * gas.k * r ** (gas.gamma - 1.0)) / gas.a, rho)


def rho_from_w(gas: GasParams, w):
    """Invert w_from_rho: rho = (a w / sqrt(k gamma)) ** (1/a)."""
    ww = _positive_array("w", w)
    out = (gas.a * ww / np.sqrt(gas.k * gas.gamma)) ** gas.inv_a
    return _as_input_shape(out, w)
