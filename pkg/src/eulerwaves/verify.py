"""Finite-difference verification of assembled fields.

Every residual here is built from central differences of plain field
samples, never from the field's own analytic derivatives, so a chain-rule
bug in the field cannot certify itself.  Residuals of a correct field decay
as O(h^2); corrupted geometry leaves an h-independent floor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import qmc

from .directions import DirectionSet
from .errors import DomainError, PositivityError, TimeDomainError
from .field import ExactField, sample_batch
from .gas import GasParams, rho_from_w


@dataclass(frozen=True, eq=False)
class SymmetricForm:
    """Coefficient matrices A_j(q) = u_j I + a w L_j of the first-order system.

    The state is q = (u, w).  L_j is symmetric with ones exactly at (j, d)
    and (d, j) (zero-based), so each A_j is symmetric.
    """

    gas: GasParams
    d: int
    lmats: tuple

    def matrix(self, q: np.ndarray, j: int) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        if q.shape != (self.d + 1,):
            raise DomainError(f"q must have shape ({self.d + 1},)")
        return q[j] * np.eye(self.d + 1) + self.gas.a * q[self.d] * self.lmats[j]


def build_symmetric_form(gas: GasParams, d: int) -> SymmetricForm:
    if d not in (2, 3):
        raise DomainError(f"d must be 2 or 3, got {d}")
    mats = []
    for j in range(d):
        L = np.zeros((d + 1, d + 1))
        L[j, d] = 1.0
        L[d, j] = 1.0
        mats.append(L)
    return SymmetricForm(gas=gas, d=d, lmats=tuple(mats))


@dataclass(frozen=True)
class ResidualReport:
    max_momentum_residual: float
    max_continuity_residual: float
    max_symmetric_residual: Optional[float]
    h: float
    points: int

    def to_dict(self) -> dict:
        return {
            "max_momentum_residual": self.max_momentum_residual,
            "max_continuity_residual": self.max_continuity_residual,
            "max_symmetric_residual": self.max_symmetric_residual,
            "h": self.h,
            "points": self.points,
        }


def interior_points(lo, hi, n: int, seed: int = 0, margin: float = 0.0) -> np.ndarray:
    """n low-discrepancy points in the box, shrunk by margin on every side."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    if n < 1:
        raise DomainError(f"need at least one point, got n={n}")
    if np.any(hi - lo <= 2.0 * margin):
        raise DomainError("margin leaves an empty box")
    sampler = qmc.Halton(d=len(lo), scramble=True, seed=seed)
    unit = sampler.random(n)
    return (lo + margin) + (hi - lo - 2.0 * margin) * unit


def _stencil_offsets(d: int, h: float):
    """Offsets of the full space-time central-difference stencil."""
    offs = [(np.zeros(d), 0.0), (np.zeros(d), +h), (np.zeros(d), -h)]
    for i in range(d):
        e = np.zeros(d)
        e[i] = h
        offs.append((+e, 0.0))
        offs.append((-e, 0.0))
    return offs


def stencil_valid_mask(ef: ExactField, points: np.ndarray, t: float, h: float) -> np.ndarray:
    """True where every space-time stencil sample around a point is valid."""
    points = np.asarray(points, dtype=float)
    mask = np.ones(points.shape[0], dtype=bool)
    for dx, dt in _stencil_offsets(points.shape[1], h):
        mask &= sample_batch(ef, points + dx, t + dt).valid
    return mask


def _checked_batches(ef: ExactField, points: np.ndarray, t: float, h: float):
    """Center, time and per-axis shifted batches; error on invalid points."""
    points = np.asarray(points, dtype=float)
    d = points.shape[1]
    if h <= 0.0:
        raise DomainError(f"h must be positive, got {h}")
    if t - h < 0.0 or t + h >= ef.t_max:
        raise TimeDomainError(
            f"stencil [t-h, t+h] leaves the valid window [0, {ef.t_max})"
        )
    center = sample_batch(ef, points, t)
    tplus = sample_batch(ef, points, t + h)
    tminus = sample_batch(ef, points, t - h)
    shifted = []
    for i in range(d):
        e = np.zeros(d)
        e[i] = h
        shifted.append((sample_batch(ef, points + e, t), sample_batch(ef, points - e, t)))
    bad = ~center.valid
    for b in [tplus, tminus] + [b for pair in shifted for b in pair]:
        bad |= ~b.valid
    if bad.any():
        coords = points[bad][:5]
        raise PositivityError(
            f"{int(bad.sum())} sample points have an invalid (S <= 0) stencil "
            f"neighborhood; first offenders: {coords.tolist()}"
        )
    return center, tplus, tminus, shifted


def primitive_residual(ef: ExactField, points: np.ndarray, t: float, h: float) -> ResidualReport:
    """Max residuals of the momentum and continuity equations.

    Momentum: u_t + (u . grad) u + grad(p) / rho.
    Continuity: rho_t + div(rho u).
    """
    points = np.asarray(points, dtype=float)
    center, tplus, tminus, shifted = _checked_batches(ef, points, t, h)
    inv2h = 1.0 / (2.0 * h)
    u_t = (tplus.u - tminus.u) * inv2h
    rho_t = (tplus.rho - tminus.rho) * inv2h
    d = points.shape[1]
    grad_u = np.empty((points.shape[0], d, d))
    grad_p = np.empty((points.shape[0], d))
    div_rho_u = np.zeros(points.shape[0])
    for i, (plus, minus) in enumerate(shifted):
        grad_u[:, :, i] = (plus.u - minus.u) * inv2h
        grad_p[:, i] = (plus.p - minus.p) * inv2h
        div_rho_u += (plus.rho * plus.u[:, i] - minus.rho * minus.u[:, i]) * inv2h
    advect = np.einsum("mi,mji->mj", center.u, grad_u)
    momentum = u_t + advect + grad_p / center.rho[:, None]
    continuity = rho_t + div_rho_u
    return ResidualReport(
        max_momentum_residual=float(np.max(np.abs(momentum))),
        max_continuity_residual=float(np.max(np.abs(continuity))),
        max_symmetric_residual=None,
        h=float(h),
        points=int(points.shape[0]),
    )


def symmetric_residual(ef: ExactField, points: np.ndarray, t: float, h: float) -> float:
    """Max residual of q_t + sum_j A_j(q) q_xj with q = (u, w)."""
    points = np.asarray(points, dtype=float)
    center, tplus, tminus, shifted = _checked_batches(ef, points, t, h)
    form = build_symmetric_form(ef.gas, points.shape[1])
    probe = np.concatenate([center.u[0], [center.w[0]]])
    for j in range(points.shape[1]):
        aj = form.matrix(probe, j)
        assert np.array_equal(aj, aj.T), "A_j must be symmetric by construction"
    inv2h = 1.0 / (2.0 * h)
    m, d = points.shape
    q_t = np.empty((m, d + 1))
    q_t[:, :d] = (tplus.u - tminus.u) * inv2h
    q_t[:, d] = (tplus.w - tminus.w) * inv2h
    residual = q_t
    a = ef.gas.a
    for j, (plus, minus) in enumerate(shifted):
        q_x = np.empty((m, d + 1))
        q_x[:, :d] = (plus.u - minus.u) * inv2h
        q_x[:, d] = (plus.w - minus.w) * inv2h
        term = center.u[:, j, None] * q_x
        # a w L_j q_x couples only components j and d
        term[:, j] += a * center.w * q_x[:, d]
        term[:, d] += a * center.w * q_x[:, j]
        residual = residual + term
    return float(np.max(np.abs(residual)))


def decoupling_check(ds: DirectionSet, gas: GasParams) -> float:
    """Max mismatch |v_k . v_m + a| over pairs k != m.

    Also verifies the self-coefficient (v_k, 1) . (v_k, a) = 1 + a, i.e. that
    every vector has unit norm, within 1e-12.
    """
    norms_sq = np.einsum("ij,ij->i", ds.vectors, ds.vectors)
    worst_self = float(np.max(np.abs(norms_sq + gas.a - (1.0 + gas.a))))
    if worst_self > 1e-12:
        raise DomainError(
            f"direction vectors are not unit length (max deviation {worst_self:.3e})"
        )
    if ds.n == 1:
        return 0.0
    gram = ds.vectors @ ds.vectors.T
    off = ~np.eye(ds.n, dtype=bool)
    return float(np.max(np.abs(gram[off] + gas.a)))


def jump_mismatch_demo(gas: GasParams, ds: DirectionSet, shock, f3_const: float, f2_values) -> np.ndarray:
    """Mismatch of the scalar jump relation [rho] sigma = [rho u . v1].

    A discontinuity in the first wave only (f1 jumping from f1_left to
    f1_right at speed sigma) would have to satisfy this relation for every
    value of the second wave f2; the returned differences LHS - RHS vary
    with f2, so no single sigma works.
    """
    if ds.n != 3:
        raise DomainError(f"the demo uses a three-wave set, got n={ds.n}")
    f1_left, f1_right, sigma = (float(v) for v in shock)
    if f1_left < f1_right:
        raise DomainError(f"need f1_left >= f1_right, got {f1_left} < {f1_right}")
    f2_values = np.asarray(f2_values, dtype=float)
    dots = ds.vectors @ ds.vectors[0]  # (1, v2.v1, v3.v1)
    out = np.empty(f2_values.shape)
    for i, f2 in enumerate(f2_values):
        left = np.array([f1_left, f2, f3_const])
        right = np.array([f1_right, f2, f3_const])
        s_left, s_right = left.sum(), right.sum()
        if s_left <= 0.0 or s_right <= 0.0:
            raise PositivityError(
                f"f2={f2} makes S nonpositive (S_left={s_left}, S_right={s_right})"
            )
        rho_left = rho_from_w(gas, s_left)
        rho_right = rho_from_w(gas, s_right)
        lhs = (rho_left - rho_right) * sigma
        rhs = rho_left * (left @ dots) - rho_right * (right @ dots)
        out[i] = lhs - rhs
    return out
