"""Exception hierarchy shared by the library and the CLI."""


class CangeoError(Exception):
    """Base class for every error raised by this package."""


class OutOfRange(CangeoError, ValueError):
    """A coordinate lies outside the domain of its face."""


class InvalidPoint(OutOfRange):
    """A point does not exist on the given surface (e.g. an apex on a can)."""


class SamePoint(CangeoError, ValueError):
    pass


class ParamOutOfBox(CangeoError, ValueError):
    pass


class FaceMismatch(CangeoError, ValueError):
    pass


class SingleSegment(CangeoError):
    """Straightness is undefined for a path with a single segment."""


class CuspParameter(CangeoError, ValueError):
    pass


class EmptyBox(CangeoError, ValueError):
    pass


class NoSolution(CangeoError, ValueError):
    pass


class HypothesisViolated(CangeoError, ValueError):
    pass


class PartnerOffSurface(CangeoError, ValueError):
    pass


class NoPositiveRoot(CangeoError, ArithmeticError):
    pass


class Disconnected(CangeoError, RuntimeError):
    pass


class ParseError(CangeoError, ValueError):
    pass
