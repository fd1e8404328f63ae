"""Exception types raised by threeboson."""


class ThreeBosonError(ValueError):
    """Base class for all library errors."""


class ZeroState(ThreeBosonError):
    pass


class NonUnitary(ThreeBosonError):
    pass


class NotNormalized(ThreeBosonError):
    pass


class NoRootFound(ThreeBosonError):
    """A root-finding route failed to produce any admissible root."""


class WrongClass(ThreeBosonError):
    pass


class DegenerateFrame(ThreeBosonError):
    """The mean spin vanishes, so the transverse frame is undefined."""


class NotDegenerate(ThreeBosonError):
    pass


class OutOfRange(ThreeBosonError):
    pass


class ConsistencyError(ArithmeticError):
    """A quantity that must be nonnegative came out clearly negative."""
