"""Exception hierarchy shared by all strengthlab modules."""


class StrengthLabError(Exception):
    """Base class for every error raised by the library."""


class ParseError(StrengthLabError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DegreeMismatch(StrengthLabError, ValueError):
    pass


class VariableOutOfRange(StrengthLabError, ValueError):
    pass


class SingularMatrix(StrengthLabError, ValueError):
    pass


class ZeroSectionError(StrengthLabError, ValueError):
    """Strength-type invariants are only defined for nonzero sections."""


class TooManyForms(StrengthLabError, ValueError):
    pass


class InvalidM(StrengthLabError, ValueError):
    pass


class BudgetExceeded(StrengthLabError):
    """The exact decision would exceed the configured unknown budget.

    This is an *unknown* answer, never to be confused with ``False``.
    """

    def __init__(self, message, unknowns=None, budget=None):
        self.unknowns = unknowns
        self.budget = budget
        super().__init__(message)


class NoRationalPoint(StrengthLabError):
    pass


class NotRealTarget(StrengthLabError, ValueError):
    pass


class CertificateError(StrengthLabError):
    """A certificate failed exact re-verification."""


class DegenerateSamples(StrengthLabError):
    pass


class InvalidConeData(StrengthLabError, ValueError):
    pass


class OutOfRange(StrengthLabError, ValueError):
    pass
