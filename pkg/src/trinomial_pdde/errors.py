"""Exception hierarchy shared by the whole package."""


class TrinomialError(Exception):
    """Base class for every error raised by trinomial_pdde."""


class DomainError(TrinomialError, ValueError):
    """A scalar function was called outside its domain (e.g. log 0)."""


class ArityError(TrinomialError, ValueError):
    pass


class AxisError(TrinomialError, ValueError):
    pass


class NonFiniteError(TrinomialError, ArithmeticError):
    """An arithmetic result stopped being a finite complex number."""


class EvaluationError(TrinomialError, ArithmeticError):
    """Numeric evaluation overflowed double range."""


class ValidationError(TrinomialError, ValueError):
    """A model invariant or theorem hypothesis does not hold.

    ``hypothesis`` names the violated condition in the notation used by the
    equation family, e.g. ``"ω² ≠ ab"``.
    """

    def __init__(self, message, hypothesis=None):
        super().__init__(message)
        self.hypothesis = hypothesis


class ZeroDenominatorError(ValidationError):
    pass


class NonElementaryError(TrinomialError, ValueError):
    """The requested solution leaves the exponential-polynomial class."""


class NoSolutionError(TrinomialError, ValueError):
    """A constraint equation has no admissible solution in this family."""


class ParseError(TrinomialError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


class ConfigError(TrinomialError, ValueError):
    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key
