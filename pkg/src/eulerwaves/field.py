"""Exact gas states assembled from superposed scalar waves.

With directions v_j satisfying v_i . v_j = -a and profiles f_j evolving by
f_t + (1+a) f f_s = 0, the velocity u = sum_j f_j(x . v_j, t) v_j and the
density rho = ((a / sqrt(k gamma)) S)^(1/a), S = sum_j f_j, solve the
isentropic Euler system wherever S > 0 and t is below every breaking time.

One scalar wave may be replaced by a steady transverse term
g(x . axis) * v_perp.  Decoupling demands that the propagation axis be
orthogonal to every remaining wave direction and that the polarization
v_perp be orthogonal to everything; the axis is therefore taken as the
component of the replaced (carrier) direction orthogonal to the span of the
active directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .burgers import BurgersWave, evaluate
from .directions import DirectionSet, transverse_direction
from .errors import DomainError, InfeasibleError, TimeDomainError
from .gas import GasParams

# rho ~ S^(1/a) is ill-conditioned near S = 0; smaller values are flagged invalid
VALID_MIN_S = 1e-8

_ORTHO_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class GridSpec:
    """Axis-aligned rectangular grid: bounds plus per-axis resolution."""

    lo: tuple
    hi: tuple
    shape: tuple

    def __post_init__(self):
        if not (len(self.lo) == len(self.hi) == len(self.shape)):
            raise DomainError("lo, hi and shape must have equal lengths")
        if len(self.lo) not in (2, 3):
            raise DomainError(f"grids must be 2- or 3-dimensional, got {len(self.lo)}")
        for lo, hi in zip(self.lo, self.hi):
            if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
                raise DomainError(f"need finite lo < hi per axis, got [{lo}, {hi}]")
        for n in self.shape:
            if int(n) != n or n < 2:
                raise DomainError(f"resolution entries must be integers >= 2, got {n}")

    @property
    def d(self) -> int:
        return len(self.lo)

    @property
    def n_points(self) -> int:
        return int(np.prod(self.shape))

    def node_axes(self):
        """Per-axis sample coordinates including both endpoints."""
        return [np.linspace(lo, hi, n) for lo, hi, n in zip(self.lo, self.hi, self.shape)]

    def node_spacing(self):
        return [(hi - lo) / (n - 1) for lo, hi, n in zip(self.lo, self.hi, self.shape)]

    def node_points(self) -> np.ndarray:
        """All node coordinates, flattened with the first axis varying fastest."""
        return _flatten_axes(self.node_axes(), self.shape)

    def cell_axes(self):
        """Per-axis cell-center coordinates, treating shape as cell counts."""
        return [
            lo + (np.arange(n) + 0.5) * ((hi - lo) / n)
            for lo, hi, n in zip(self.lo, self.hi, self.shape)
        ]

    def cell_spacing(self):
        return [(hi - lo) / n for lo, hi, n in zip(self.lo, self.hi, self.shape)]

    def cell_points(self) -> np.ndarray:
        return _flatten_axes(self.cell_axes(), self.shape)


def _flatten_axes(axes, shape) -> np.ndarray:
    cols = []
    for k, ax in enumerate(axes):
        inner = int(np.prod(shape[:k])) if k > 0 else 1
        outer = int(np.prod(shape[k + 1 :])) if k + 1 < len(shape) else 1
        cols.append(np.tile(np.repeat(ax, inner), outer))
    return np.stack(cols, axis=1)


@dataclass(frozen=True, eq=False)
class TransverseMode:
    """Steady replacement g(x . axis) v_perp for the carrier-indexed wave.

    ``direction`` is the polarization v_perp (canonical orthogonal complement
    of the direction set when omitted); ``axis`` is resolved at assembly as
    the unit component of the carrier direction orthogonal to the active span.
    """

    carrier: int
    profile: object
    direction: Optional[np.ndarray] = None
    axis: Optional[np.ndarray] = None


@dataclass(frozen=True, eq=False)
class ExactField:
    gas: GasParams
    directions: DirectionSet
    waves: tuple
    transverse: Optional[TransverseMode]
    t_max: float

    def limiting_wave_index(self) -> int:
        """Index of the wave attaining the earliest breaking time."""
        idx, best = -1, np.inf
        for j, w in enumerate(self.waves):
            if w is not None and w.t_break < best:
                idx, best = j, w.t_break
        return idx


@dataclass(frozen=True, eq=False)
class FieldSample:
    u: np.ndarray
    rho: float
    p: float
    w: float
    S: float
    valid: bool
    grad_u: np.ndarray
    grad_rho: np.ndarray
    u_t: np.ndarray
    rho_t: float


@dataclass(frozen=True, eq=False)
class FieldSnapshot:
    grid: GridSpec
    t: float
    u: np.ndarray  # (n_points, d)
    rho: np.ndarray
    p: np.ndarray
    w: np.ndarray
    S: np.ndarray
    valid: np.ndarray
    invalid_count: int


class _FieldArrays:
    """Batched samples plus analytic derivatives (internal)."""

    __slots__ = (
        "u", "S", "w", "rho", "p", "valid",
        "grad_u", "grad_S", "grad_rho", "u_t", "S_t", "rho_t",
    )

    def __init__(self, **kw):
        for name in self.__slots__:
            setattr(self, name, kw[name])


def _resolve_transverse(ds: DirectionSet, tv: TransverseMode) -> TransverseMode:
    if not 0 <= tv.carrier < ds.n:
        raise DomainError(f"carrier index {tv.carrier} outside 0..{ds.n - 1}")
    active = np.delete(ds.vectors, tv.carrier, axis=0)
    if active.shape[0] == 0:
        raise InfeasibleError("a transverse term needs at least one active wave")
    carrier_vec = ds.vectors[tv.carrier]
    coef, *_ = np.linalg.lstsq(active.T, carrier_vec, rcond=None)
    residual = carrier_vec - active.T @ coef
    norm = np.linalg.norm(residual)
    if norm < 1e-8:
        raise InfeasibleError(
            "carrier direction lies in the span of the active waves; "
            "no steady transverse wave fits"
        )
    axis = residual / norm
    if tv.direction is None:
        perp = transverse_direction(ds)
        if perp is None:
            raise InfeasibleError(
                "the direction set spans R^d; no transverse polarization exists"
            )
    else:
        perp = np.asarray(tv.direction, dtype=float)
        if perp.shape != (ds.d,):
            raise DomainError(f"polarization must have shape ({ds.d},)")
        if abs(np.linalg.norm(perp) - 1.0) > _ORTHO_TOL:
            raise DomainError("polarization must be a unit vector")
    worst = float(np.max(np.abs(ds.vectors @ perp)))
    if worst > _ORTHO_TOL:
        raise DomainError(
            f"polarization must be orthogonal to every wave direction "
            f"(max |v_j . v_perp| = {worst:.3e})"
        )
    return TransverseMode(carrier=tv.carrier, profile=tv.profile, direction=perp, axis=axis)


def assemble(
    gas: GasParams,
    ds: DirectionSet,
    waves,
    transverse: Optional[TransverseMode] = None,
) -> ExactField:
    """Validate and combine gas, directions and waves into an ExactField.

    ``waves`` must hold one BurgersWave per direction; with a transverse term
    the entry at the carrier index must be None, making the replacement
    explicit.
    """
    waves = tuple(waves)
    if len(waves) != ds.n:
        raise DomainError(f"need one wave per direction: {len(waves)} != {ds.n}")
    if abs(ds.a - gas.a) > 1e-12:
        raise DomainError(
            f"direction set was built for a={ds.a}, gas has a={gas.a}"
        )
    carrier = transverse.carrier if transverse is not None else None
    for j, w in enumerate(waves):
        if j == carrier:
            if w is not None:
                raise DomainError(
                    f"wave slot {j} is replaced by the transverse term and must be None"
                )
            continue
        if w is None:
            raise DomainError(f"wave slot {j} is missing")
        if w.speed_factor != gas.speed_factor:
            raise DomainError(
                f"wave {j} has speed factor {w.speed_factor}, "
                f"gas requires {gas.speed_factor}"
            )
    resolved = _resolve_transverse(ds, transverse) if transverse is not None else None
    t_max = min(w.t_break for w in waves if w is not None)
    return ExactField(gas=gas, directions=ds, waves=waves, transverse=resolved, t_max=t_max)


def _check_field_time(ef: ExactField, t: float) -> float:
    t = float(t)
    if not np.isfinite(t) or t < 0.0:
        raise TimeDomainError(f"t must be a finite nonnegative time, got {t}")
    if t >= ef.t_max:
        raise TimeDomainError(
            f"t={t} is at or beyond t_max={ef.t_max} "
            f"(wave {ef.limiting_wave_index()} breaks first)"
        )
    return t


def sample_batch(ef: ExactField, points: np.ndarray, t: float) -> _FieldArrays:
    """Evaluate the field and its analytic derivatives at an (m, d) point set."""
    t = _check_field_time(ef, t)
    x = np.asarray(points, dtype=float)
    if x.ndim != 2 or x.shape[1] != ef.directions.d:
        raise DomainError(f"points must have shape (m, {ef.directions.d})")
    m, d = x.shape
    gas = ef.gas
    u = np.zeros((m, d))
    u_t = np.zeros((m, d))
    grad_u = np.zeros((m, d, d))
    S = np.zeros(m)
    S_t = np.zeros(m)
    grad_S = np.zeros((m, d))
    for j, wave in enumerate(ef.waves):
        if wave is None:
            continue
        v = ef.directions.vectors[j]
        f, f_s, f_t = evaluate(wave, x @ v, t)
        u += f[:, None] * v
        u_t += f_t[:, None] * v
        grad_u += f_s[:, None, None] * np.outer(v, v)
        S += f
        S_t += f_t
        grad_S += f_s[:, None] * v
    if ef.transverse is not None:
        tv = ef.transverse
        g = tv.profile.value(x @ tv.axis)
        g_s = tv.profile.slope(x @ tv.axis)
        u += g[:, None] * tv.direction
        grad_u += g_s[:, None, None] * np.outer(tv.direction, tv.axis)
        # steady: no u_t term; polarization is orthogonal to every v_j, so the
        # transverse term contributes nothing to S
    valid = S >= VALID_MIN_S
    rho = np.full(m, np.nan)
    p = np.full(m, np.nan)
    grad_rho = np.full((m, d), np.nan)
    rho_t = np.full(m, np.nan)
    if valid.any():
        sv = S[valid]
        rv = (gas.a * sv / np.sqrt(gas.k * gas.gamma)) ** gas.inv_a
        rho[valid] = rv
        p[valid] = gas.k * rv**gas.gamma
        scale = rv / (gas.a * sv)  # d(rho)/d(S) = rho / (a S)
        grad_rho[valid] = scale[:, None] * grad_S[valid]
        rho_t[valid] = scale * S_t[valid]
    return _FieldArrays(
        u=u, S=S, w=S.copy(), rho=rho, p=p, valid=valid,
        grad_u=grad_u, grad_S=grad_S, grad_rho=grad_rho,
        u_t=u_t, S_t=S_t, rho_t=rho_t,
    )


def sample(ef: ExactField, x, t: float) -> FieldSample:
    """Evaluate the field at a single point."""
    x = np.asarray(x, dtype=float)
    if x.shape != (ef.directions.d,):
        raise DomainError(f"x must have shape ({ef.directions.d},)")
    b = sample_batch(ef, x[None, :], t)
    return FieldSample(
        u=b.u[0],
        rho=float(b.rho[0]),
        p=float(b.p[0]),
        w=float(b.w[0]),
        S=float(b.S[0]),
        valid=bool(b.valid[0]),
        grad_u=b.grad_u[0],
        grad_rho=b.grad_rho[0],
        u_t=b.u_t[0],
        rho_t=float(b.rho_t[0]),
    )


def sample_grid(ef: ExactField, grid: GridSpec, t: float) -> FieldSnapshot:
    """Sample the field on the grid nodes (first axis varying fastest)."""
    if grid.d != ef.directions.d:
        raise DomainError(f"grid dimension {grid.d} != field dimension {ef.directions.d}")
    b = sample_batch(ef, grid.node_points(), t)
    return FieldSnapshot(
        grid=grid,
        t=float(t),
        u=b.u,
        rho=b.rho,
        p=b.p,
        w=b.w,
        S=b.S,
        valid=b.valid,
        invalid_count=int(np.count_nonzero(~b.valid)),
    )
