"""Exception hierarchy for cgframes."""


class FrameError(Exception):
    """Base class for every error raised by this package."""


class ShapeMismatch(FrameError, ValueError):
    pass


class NonPositiveWeight(FrameError, ValueError):
    def __init__(self, index, value=None):
        self.index = index
        self.value = value
        super().__init__(f"weight {index} must be positive and finite, got {value!r}")


class InvalidTolerance(FrameError, ValueError):
    pass


class NotAFrame(FrameError):
    pass


class NotOrthonormalBasis(FrameError):
    pass


class NotRieszBasis(FrameError):
    pass


class NotSelfAdjoint(FrameError, ValueError):
    pass


class NormExceedsOne(FrameError, ValueError):
    pass


class NotUnitaryBasis(FrameError, ValueError):
    pass


class LayoutMismatch(FrameError, ValueError):
    pass


class InvalidBounds(FrameError, ValueError):
    pass


class DegenerateSpectrumGrid(FrameError):
    pass


class SpecFormatError(FrameError, ValueError):
    """A frame/certificate document failed to parse; ``where`` names the field."""

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
