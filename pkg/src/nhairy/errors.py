"""Exception hierarchy shared by the numerical modules."""


class NhairyError(Exception):
    """Base class for all numerical failures raised by this package."""


class RadiusExceeded(NhairyError):
    """A truncated series cannot meet its tail criterion at the requested point."""


class NoConvergence(NhairyError):
    pass


class QuadratureFailure(NhairyError):
    pass


class IntervalMiss(NhairyError):
    """A Polya interval showed no sign change."""


class ZeroOnContour(NhairyError):
    pass


class NotASimpleZero(NhairyError):
    pass


class Inconclusive(NhairyError):
    pass


class InsufficientZeros(NhairyError):
    pass


class NotConverged(NhairyError):
    pass


class Oscillating(NhairyError):
    """The ratio sequence alternates between two accumulation values.

    ``values`` holds the two candidate points (already shifted by the
    expansion center).
    """

    def __init__(self, message, values=()):
        super().__init__(message)
        self.values = tuple(values)


class DegenerateA(NhairyError):
    pass


class ZeroSetMismatch(NhairyError):
    pass


class ScanTooCoarse(UserWarning):
    """Advisory: a contour count found more zeros than the real-axis scan."""
