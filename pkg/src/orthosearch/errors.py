"""Exception hierarchy shared by every module."""


class OrthoSearchError(Exception):
    """Base class for all library errors."""


class NotHermitian(OrthoSearchError, ValueError):
    pass


class DimensionMismatch(OrthoSearchError, ValueError):
    pass


class NotNormalized(OrthoSearchError, ValueError):
    pass


class OrthogonalSourceTarget(OrthoSearchError, ValueError):
    """Raised when a construction needs a nonzero source/target overlap."""


class CoincidentStates(OrthoSearchError, ValueError):
    pass


class DegenerateOverlap(OrthoSearchError, ValueError):
    """Overlap sits at (or numerically on) a boundary where a formula breaks down."""


class NotOrthogonal(OrthoSearchError, ValueError):
    pass


class EpsilonOutOfRange(OrthoSearchError, ValueError):
    pass


class NonUnitAxis(OrthoSearchError, ValueError):
    pass


class DegenerateResult(OrthoSearchError, ValueError):
    """Composite rotation angle is zero, so the axis is undefined."""


class EmptyTrajectory(OrthoSearchError, ValueError):
    pass


class StepTooLarge(OrthoSearchError, RuntimeError):
    pass


class NoProgress(OrthoSearchError, RuntimeError):
    pass


class NumericalAssertionError(OrthoSearchError, AssertionError):
    """An identity that must hold to a fixed tolerance was violated."""
