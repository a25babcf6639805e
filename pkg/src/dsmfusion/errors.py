"""Exception hierarchy shared by every module of the package."""


class DSmError(Exception):
    """Base class for all domain errors raised by dsmfusion."""


class FrameSizeError(DSmError, ValueError):
    pass


class ParseError(DSmError, ValueError):
    """Malformed focal-element expression.

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class UnknownSingletonError(DSmError, ValueError):
    pass


class DecodeError(DSmError, ValueError):
    pass


class NotDecodableError(DecodeError):
    """The code is not an element of the reduced hyper power set."""


class MassError(DSmError, ValueError):
    pass


class TotalConflictError(DSmError, ArithmeticError):
    pass


class CapacityError(DSmError, MemoryError):
    pass


class UnsupportedRuleError(DSmError, NotImplementedError):
    pass


class DecisionParameterError(DSmError, ValueError):
    pass


class ConfigError(DSmError, ValueError):
    pass
