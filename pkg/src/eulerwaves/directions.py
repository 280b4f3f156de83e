"""Feasible sets of unit wave directions with pairwise dot product -a.

N unit vectors in R^d with v_i . v_j = -a (i != j) exist exactly when their
Gram matrix G = (1+a) I - a J is positive semidefinite with rank <= d.  G has
eigenvalue 1+a with multiplicity N-1 and 1 + a - a N with multiplicity 1, so
the set is full rank unless 1 + a - a N = 0; in that tight case the rank
drops to N-1 and the vectors sum to zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InfeasibleError
from .gas import GasParams

# |1 + a - a n| below this counts as the rank-deficient (tight) case.  The
# slack protects values such as gamma = 5/3 that are not exactly representable.
DEGENERATE_TOL = 1e-9

_SUPPORTED_DIMS = (2, 3)


@dataclass(frozen=True, eq=False)
class DirectionSet:
    """Unit vectors (rows of ``vectors``) with pairwise dot product -a."""

    d: int
    n: int
    vectors: np.ndarray  # shape (n, d)
    a: float

    def gram_target(self) -> np.ndarray:
        g = np.full((self.n, self.n), -self.a)
        np.fill_diagonal(g, 1.0)
        return g


def _rank_if_feasible(a: float, d: int, n: int):
    """Rank of the Gram matrix if a set of n directions fits in R^d, else None."""
    mu = 1.0 + a - a * n  # smallest Gram eigenvalue
    if mu < -DEGENERATE_TOL:
        return None
    rank = n - 1 if abs(mu) <= DEGENERATE_TOL else n
    return rank if rank <= d else None


def _check_dim(d: int) -> None:
    if d not in _SUPPORTED_DIMS:
        raise DomainError(f"d must be one of {_SUPPORTED_DIMS}, got {d}")


def max_wave_count(gas: GasParams, d: int) -> int:
    """Largest feasible number of directions for this gas in dimension d."""
    _check_dim(d)
    best = 0
    for n in range(1, d + 2):  # rank <= d caps n at d + 1
        if _rank_if_feasible(gas.a, d, n) is not None:
            best = n
    return best


def build_directions(gas: GasParams, d: int, n: int) -> DirectionSet:
    """Construct the canonical set of n directions in R^d.

    The vectors are rows of a Cholesky factor of the Gram matrix, which fixes
    the orientation: v1 = e1, v2 has a nonnegative second component, v3 a
    nonnegative third component, trailing components zero-padded.  In the
    tight case the last vector is the negated sum of the others, so that
    sum(v_k) vanishes exactly.
    """
    _check_dim(d)
    if n < 1:
        raise InfeasibleError(f"need at least one direction, got n={n}")
    rank = _rank_if_feasible(gas.a, d, n)
    if rank is None:
        raise InfeasibleError(
            f"no set of {n} unit vectors with pairwise dot -a exists for "
            f"gamma={gas.gamma} in d={d} (max is {max_wave_count(gas, d)})"
        )
    gram = np.full((n, n), -gas.a)
    np.fill_diagonal(gram, 1.0)
    vectors = np.zeros((n, d))
    if rank == n:
        vectors[:, :n] = np.linalg.cholesky(gram)
    else:
        # tight case: factor the leading principal block (positive definite),
        # then close the set with the negated sum
        vectors[: n - 1, : n - 1] = np.linalg.cholesky(gram[: n - 1, : n - 1])
        vectors[n - 1] = -vectors[: n - 1].sum(axis=0)
    return DirectionSet(d=d, n=n, vectors=vectors, a=gas.a)


def gram_residual(ds: DirectionSet) -> float:
    """Max absolute deviation of V V^T from the target Gram matrix."""
    return float(np.max(np.abs(ds.vectors @ ds.vectors.T - ds.gram_target())))


def transverse_direction(ds: DirectionSet):
    """Canonical unit vector orthogonal to every direction, or None.

    Exists iff the span of the set has dimension < d.  The canonical choice
    projects the highest coordinate axis onto the orthogonal complement and
    fixes the sign so the last nonzero component is positive; for a
    two-dimensional span in R^3 this equals the normalized cross product of
    two independent members up to that sign convention.
    """
    _, svals, vt = np.linalg.svd(ds.vectors, full_matrices=True)
    rank = int(np.sum(svals > 1e-8))
    if rank >= ds.d:
        return None
    null_basis = vt[rank:]
    w = None
    for axis in range(ds.d - 1, -1, -1):
        cand = null_basis.T @ null_basis[:, axis]
        norm = np.linalg.norm(cand)
        if norm > 1e-8:
            w = cand / norm
            break
    if w is None:  # unreachable: the complement always meets some axis
        raise InfeasibleError("could not select a transverse direction")
    nonzero = np.flatnonzero(np.abs(w) > 1e-12)
    if w[nonzero[-1]] < 0.0:
        w = -w
    return w
