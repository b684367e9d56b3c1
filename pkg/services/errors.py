"""Error taxonomy shared by the field, matrix, code and GRL services.

Every error derives from GrlError plus the closest builtin, so callers may catch
either the toolkit base class or e.g. ValueError.
"""


class GrlError(Exception):
    """Base class for toolkit errors."""


class NotPrime(GrlError, ValueError):
    pass


class ReducibleModulus(GrlError, ValueError):
    pass


class UnsupportedSize(GrlError, ValueError):
    pass


class DivisionByZero(GrlError, ZeroDivisionError):
    pass


class FieldMismatch(GrlError, TypeError):
    pass


class ParseError(GrlError, ValueError):
    pass


class ShapeMismatch(GrlError, ValueError):
    pass


class DuplicateEvaluationPoint(GrlError, ValueError):
    pass


class DuplicateElement(GrlError, ValueError):
    pass


class Singular(GrlError, ArithmeticError):
    pass


class ZeroCode(GrlError, ValueError):
    pass


class ZeroScale(GrlError, ValueError):
    pass


class SpecInvariantViolated(GrlError, ValueError):
    pass


class WrongMixingSize(SpecInvariantViolated):
    pass


class KTooSmall(GrlError, ValueError):
    pass


class LengthParity(GrlError, ValueError):
    pass


class LimitZero(GrlError, ValueError):
    pass


class InvalidJob(GrlError, ValueError):
    pass


class BudgetExceeded(GrlError, RuntimeError):
    """Raised when an exhaustive computation would exceed the caller's budget."""

    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        self.required = int(required)
        self.budget = int(budget)
        self.what = what
        super().__init__(f"{what} needs {self.required} steps, budget is {self.budget}")


class OracleMismatch(GrlError, AssertionError):
    """A theorem checker and a brute-force oracle disagreed on the same instance."""
