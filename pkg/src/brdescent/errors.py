"""Exception hierarchy shared by every module of the package."""


class DescentError(Exception):
    """Base class for all errors raised by brdescent."""


class DivisionByZero(DescentError, ZeroDivisionError):
    pass


class TowerMismatch(DescentError):
    pass


class NameCollision(DescentError):
    pass


class DegenerateLayer(DescentError):
    """The defining element of a new layer was found to lie in the image of t -> t^2 + t."""


class NoQuadraticLayer(DescentError):
    pass


class NotAnExtension(DescentError):
    pass


class ElementSyntaxError(DescentError, ValueError):
    """Malformed element or tower string; ``col`` is 1-based."""

    def __init__(self, message: str, col: int, text: str = ""):
        super().__init__(f"{message} at column {col}")
        self.message = message
        self.col = col
        self.text = text


class BadElementGrammar(ElementSyntaxError):
    pass


class SymbolNotPresent(DescentError):
    pass


class WitnessFails(DescentError):
    pass


class ZeroSecondSlot(DescentError):
    pass


class RelationShape(DescentError):
    pass


class FirstSlotNotInBase(DescentError):
    pass


class SearchSpaceTooLarge(DescentError):
    pass


class NoSolutionUpToBound(DescentError):
    def __init__(self, message: str, bound=None):
        super().__init__(message)
        self.bound = bound


class HypothesisFails(DescentError):
    pass


class ZeroSlot(DescentError):
    pass


class ChainFailed(DescentError):
    def __init__(self, message: str, bound=None):
        super().__init__(message)
        self.bound = bound


class WitnessGap(DescentError):
    pass


class StepReplayFails(DescentError):
    pass


class NotGeneric(DescentError):
    pass


class TrdegDiscrepancy(DescentError):
    pass


class CertificateSyntaxError(DescentError, ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        loc = f" (line {line}, column {col})" if line else ""
        super().__init__(message + loc)
        self.line = line
        self.col = col


class UnknownStepKind(CertificateSyntaxError):
    pass
