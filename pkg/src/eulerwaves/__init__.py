"""Exact multidirectional simple-wave solutions of the isentropic Euler system.

The package builds superpositions of scalar plane waves whose directions are
chosen so the nonlinear coupling between them cancels exactly. Each wave
rides its own one-dimensional inviscid Burgers-type equation; the sum gives a
genuinely multidimensional gas flow in closed form, valid until the first
constituent wave breaks. Companion modules verify the construction by
independent finite differences, cross-check it against a finite-volume
solver, and demonstrate why a single discontinuity cannot satisfy the jump
conditions of the full system.
"""

from .burgers import (
    BurgersWave,
    ConstantProfile,
    GaussianBumpProfile,
    LinearProfile,
    SineProfile,
    breaking_time,
    evaluate,
    make_wave,
    riemann_shock,
)
from .directions import (
    DirectionSet,
    build_directions,
    gram_residual,
    max_wave_count,
    transverse_direction,
)
from .errors import (
    ConvergenceError,
    DomainError,
    InfeasibleError,
    PositivityError,
    TimeDomainError,
)
from .field import (
    ExactField,
    FieldSample,
    FieldSnapshot,
    GridSpec,
    TransverseMode,
    assemble,
    sample,
    sample_batch,
    sample_grid,
)
from .gas import GasParams, make_gas, pressure, rho_from_w, w_from_rho
from .verify import (
    ResidualReport,
    decoupling_check,
    jump_mismatch_demo,
    primitive_residual,
    symmetric_residual,
)

__version__ = "0.1.0"

__all__ = [
    "BurgersWave",
    "ConstantProfile",
    "ConvergenceError",
    "DirectionSet",
    "DomainError",
    "ExactField",
    "FieldSample",
    "FieldSnapshot",
    "GasParams",
    "GaussianBumpProfile",
    "GridSpec",
    "InfeasibleError",
    "LinearProfile",
    "PositivityError",
    "ResidualReport",
    "SineProfile",
    "TimeDomainError",
    "TransverseMode",
    "assemble",
    "breaking_time",
    "build_directions",
    "decoupling_check",
    "evaluate",
    "gram_residual",
    "jump_mismatch_demo",
    "make_gas",
    "make_wave",
    "max_wave_count",
    "pressure",
    "primitive_residual",
    "rho_from_w",
    "riemann_shock",
    "sample",
    "sample_batch",
    "sample_grid",
    "symmetric_residual",
    "transverse_direction",
    "w_from_rho",
]
