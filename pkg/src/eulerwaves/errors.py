"""Exception types shared across the package.

The CLI maps these onto process exit codes: domain/infeasibility problems
exit 2, positivity (vacuum) problems exit 3, time-domain problems exit 4.
"""


class DomainError(ValueError):
    """Inputs outside the supported parameter domain."""


class InfeasibleError(ValueError):
    """The requested direction-set geometry does not exist."""


class PositivityError(RuntimeError):
    """Density positivity violated (S <= 0, vacuum cells)."""


class TimeDomainError(ValueError):
    """Requested time at or beyond the first wave-breaking time."""


class ConvergenceError(RuntimeError):
    """An iterative solve failed to reach its tolerance."""
