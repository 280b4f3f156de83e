"""First-order finite-volume cross-check on 2-D Cartesian grids.

Unsplit local Lax-Friedrichs (Rusanov) fluxes with forward-Euler stepping
and zero-gradient boundaries.  The scheme is deliberately simple: it is the
independent check on the exact fields, not the product.  Conserved
variables are (rho, rho u1, rho u2); pressure closes via p = k rho^gamma.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from skimage import measure

from .errors import DomainError, PositivityError
from .export import write_contours_csv
from .field import ExactField, GridSpec, sample_batch
from .gas import GasParams


@dataclass(frozen=True, eq=False)
class FvState:
    """Grid, conserved cell averages (3, ny, nx) and current time."""

    gas: GasParams
    grid: GridSpec  # shape interpreted as cell counts (nx, ny)
    cons: np.ndarray
    time: float
    cfl: float = 0.45

    @property
    def dx(self) -> float:
        return self.grid.cell_spacing()[0]

    @property
    def dy(self) -> float:
        return self.grid.cell_spacing()[1]

    def mass(self) -> float:
        return float(self.cons[0].sum() * self.dx * self.dy)


def init_from_exact(ef: ExactField, grid: GridSpec, cfl: float = 0.45) -> FvState:
    """Cell averages approximated by point samples of the field at t = 0."""
    if grid.d != 2 or ef.directions.d != 2:
        raise DomainError("the finite-volume check is two-dimensional")
    if not 0.0 < cfl:
        raise DomainError(f"cfl must be positive, got {cfl}")
    nx, ny = grid.shape
    batch = sample_batch(ef, grid.cell_points(), 0.0)
    if not batch.valid.all():
        bad = np.flatnonzero(~batch.valid)
        coords = grid.cell_points()[bad[:3]]
        raise PositivityError(
            f"{bad.size} grid cells fall outside the positivity region "
            f"(first cell centers: {coords.tolist()})"
        )
    rho = batch.rho.reshape(ny, nx)
    u = batch.u.reshape(ny, nx, 2)
    cons = np.stack([rho, rho * u[:, :, 0], rho * u[:, :, 1]])
    return FvState(gas=ef.gas, grid=grid, cons=cons, time=0.0, cfl=cfl)


def _primitives(gas: GasParams, cons):
    rho = cons[0]
    u1 = cons[1] / rho
    u2 = cons[2] / rho
    p = gas.k * rho**gas.gamma
    c = np.sqrt(gas.gamma * p / rho)
    return rho, u1, u2, p, c


def _flux_x(gas: GasParams, cons):
    rho, u1, u2, p, _ = _primitives(gas, cons)
    return np.stack([cons[1], cons[1] * u1 + p, cons[2] * u1])


def _flux_y(gas: GasParams, cons):
    rho, u1, u2, p, _ = _primitives(gas, cons)
    return np.stack([cons[2], cons[1] * u2, cons[2] * u2 + p])


def _rusanov(gas, left, right, flux, normal_index):
    f_left = flux(gas, left)
    f_right = flux(gas, right)
    s_left = np.abs(left[normal_index] / left[0]) + _primitives(gas, left)[4]
    s_right = np.abs(right[normal_index] / right[0]) + _primitives(gas, right)[4]
    s = np.maximum(s_left, s_right)
    return 0.5 * (f_left + f_right) - 0.5 * s * (right - left)


def max_signal_speed(st: FvState) -> float:
    """Largest |u_n| + c over cells and both axis directions."""
    _, u1, u2, _, c = _primitives(st.gas, st.cons)
    return float(max((np.abs(u1) + c).max(), (np.abs(u2) + c).max()))


def step(st: FvState, dt_limit: float = None) -> FvState:
    """One forward-Euler update; dt = cfl min(dx, dy) / max signal speed."""
    dt = st.cfl * min(st.dx, st.dy) / max_signal_speed(st)
    if dt_limit is not None:
        dt = min(dt, float(dt_limit))
    if dt <= 0.0:
        raise DomainError(f"nonpositive time step {dt}")
    # zero-gradient boundaries: duplicate edge cells
    padded_x = np.pad(st.cons, ((0, 0), (0, 0), (1, 1)), mode="edge")
    padded_y = np.pad(st.cons, ((0, 0), (1, 1), (0, 0)), mode="edge")
    fx = _rusanov(st.gas, padded_x[:, :, :-1], padded_x[:, :, 1:], _flux_x, 1)
    fy = _rusanov(st.gas, padded_y[:, :-1, :], padded_y[:, 1:, :], _flux_y, 2)
    cons = (
        st.cons
        - (dt / st.dx) * (fx[:, :, 1:] - fx[:, :, :-1])
        - (dt / st.dy) * (fy[:, 1:, :] - fy[:, :-1, :])
    )
    bad = ~np.isfinite(cons[0]) | (cons[0] <= 0.0)
    if bad.any():
        iy, ix = np.argwhere(bad)[0]
        x = st.grid.lo[0] + (ix + 0.5) * st.dx
        y = st.grid.lo[1] + (iy + 0.5) * st.dy
        raise PositivityError(
            f"vacuum or non-finite density after step to t={st.time + dt} "
            f"(first cell at x={x:.6g}, y={y:.6g})"
        )
    return replace(st, cons=cons, time=st.time + dt)


def run_until(st: FvState, t_end: float) -> FvState:
    """Step until t_end, clipping the final step to land on it exactly."""
    t_end = float(t_end)
    if t_end < st.time:
        raise DomainError(f"t_end={t_end} is before the current time {st.time}")
    tiny = 1e-13 * max(1.0, abs(t_end))
    while st.time < t_end - tiny:
        st = step(st, dt_limit=t_end - st.time)
    return replace(st, time=t_end)


def l1_error(st: FvState, ef: ExactField) -> dict:
    """Cell-area-weighted L1 differences against the exact field at st.time."""
    nx, ny = st.grid.shape
    batch = sample_batch(ef, st.grid.cell_points(), st.time)
    if not batch.valid.all():
        raise PositivityError("exact field is invalid on part of the comparison grid")
    rho = batch.rho.reshape(ny, nx)
    u = batch.u.reshape(ny, nx, 2)
    exact = np.stack([rho, rho * u[:, :, 0], rho * u[:, :, 1]])
    weight = st.dx * st.dy
    diffs = np.abs(st.cons - exact).sum(axis=(1, 2)) * weight
    return {"rho": float(diffs[0]), "mom_x": float(diffs[1]), "mom_y": float(diffs[2])}


def pressure_contour_export(st: FvState, levels, path) -> list:
    """March pressure iso-lines on the cell-center grid and write them as CSV.

    Returns the list of (level, polyline) pairs, polylines as (m, 2) arrays
    of physical (x, y) coordinates.
    """
    levels = [float(lv) for lv in np.atleast_1d(levels)]
    if not levels:
        raise DomainError("need at least one contour level")
    p = st.gas.k * st.cons[0] ** st.gas.gamma  # (ny, nx)
    x0, y0 = st.grid.lo
    dx, dy = st.dx, st.dy
    blocks = []
    for level in levels:
        for poly in measure.find_contours(p, level):
            xy = np.empty_like(poly)
            xy[:, 0] = x0 + (poly[:, 1] + 0.5) * dx  # columns index x
            xy[:, 1] = y0 + (poly[:, 0] + 0.5) * dy
            blocks.append((level, xy))
    write_contours_csv(blocks, path)
    return blocks
