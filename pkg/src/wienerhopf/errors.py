"""Exception types raised by the solver."""


class WienerHopfError(Exception):
    """Base class for solver errors."""


class ContourError(WienerHopfError, ValueError):
    """A point lies on (or too close to) a contour or endpoint it must avoid."""


class RotationError(WienerHopfError):
    """Contour rotation would cross a declared singularity."""


class SolverError(WienerHopfError):
    """The collocation system is singular or too ill-conditioned."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class ClassificationError(WienerHopfError):
    """A preimage could not be matched to a contour branch."""
