"""Exception types shared across the package.

Two families: ``PurityBoundsError`` subclasses flag bad inputs and map to
exit code 2 in the command-line tool; ``InvariantViolation`` flags an
internal consistency failure (a bug, not bad input) and maps to exit 3.
"""


class PurityBoundsError(Exception):
    """Base class for input and validation errors."""


class NotHermitian(PurityBoundsError):
    """Matrix differs from its conjugate transpose beyond tolerance."""

    def __init__(self, deviation: float):
        self.magnitude = float(deviation)
        super().__init__(f"matrix is not Hermitian: max |m - m^dag| = {deviation:.3e}")


class NotUnitTrace(PurityBoundsError):
    """Trace differs from one beyond tolerance."""

    def __init__(self, deviation: float):
        self.magnitude = float(deviation)
        super().__init__(f"trace differs from 1 by {deviation:.3e}")


class NotPSD(PurityBoundsError):
    """An eigenvalue is negative beyond tolerance."""

    def __init__(self, smallest: float):
        self.magnitude = float(smallest)
        super().__init__(f"matrix is not positive semidefinite: smallest eigenvalue {smallest:.3e}")


class DimMismatch(PurityBoundsError):
    """Dimensions are inconsistent with the data or the requested operation."""


class StateFileError(PurityBoundsError):
    """A JSON state file is missing, malformed, or non-numeric."""


class OutOfRange(PurityBoundsError):
    """A scalar argument (purity, probability, ...) left its valid range."""

    def __init__(self, name: str, value: float, lo: float, hi: float):
        self.name, self.value, self.lo, self.hi = name, float(value), float(lo), float(hi)
        super().__init__(f"{name} = {value:.12g} outside [{lo:.12g}, {hi:.12g}]")


class InconsistentPurities(PurityBoundsError):
    """A purity pair violates a relation the quantity requires."""


class BadOrder(PurityBoundsError):
    """Unsupported trace-power / copy-count order."""


class TooLarge(PurityBoundsError):
    """The requested dense construction exceeds the supported desk scale."""


class BadMethod(PurityBoundsError):
    """Unknown measurement-simulation method name."""


class NoConvergence(PurityBoundsError):
    """Eigensolver failed to reach tolerance within the sweep cap."""

    def __init__(self, sweeps: int, off_norm: float):
        self.sweeps = int(sweeps)
        self.off_norm = float(off_norm)
        super().__init__(
            f"Jacobi sweep cap reached after {sweeps} sweeps "
            f"(off-diagonal norm {off_norm:.3e})"
        )


class ProjectionFailed(PurityBoundsError):
    """Stochastic search could not match the requested purity targets."""


class InvariantViolation(Exception):
    """Internal consistency failure; indicates a bug, not bad input."""


class SandwichViolation(InvariantViolation):
    """An exact quantity escaped its proven bounds beyond numerical slack."""
