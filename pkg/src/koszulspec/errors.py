"""Exception hierarchy shared by the whole package."""


class KoszulSpecError(Exception):
    """Base class for every error raised by koszulspec."""


class DimensionMismatch(KoszulSpecError, ValueError):
    pass


class NonCommutingTuple(KoszulSpecError, ValueError):
    pass


class NonZeroComposition(KoszulSpecError, ValueError):
    """A sequence of matrices was used as a complex but d∘d != 0."""


class FieldError(KoszulSpecError, ValueError):
    pass


class ParseError(KoszulSpecError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset


class SpectrumNotSplit(KoszulSpecError):
    """A characteristic polynomial has an irreducible factor of degree >= 2."""


class CapExceeded(KoszulSpecError):
    pass


class NotStabilized(KoszulSpecError):
    pass


class InfiniteDimensional(KoszulSpecError):
    pass


class NoStandardRepresentation(KoszulSpecError):
    pass


class EmptyVariety(KoszulSpecError, ValueError):
    """The ideal is the unit ideal."""


class PointNotOnVariety(KoszulSpecError, ValueError):
    pass


class UnsupportedCharacteristic(KoszulSpecError, ValueError):
    pass
