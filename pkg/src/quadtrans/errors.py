"""Exception types shared across the package."""


class QuadTransError(Exception):
    """Base class for all package errors."""


class NonTerminating(QuadTransError):
    pass


class LowerParameterPole(QuadTransError):
    pass


class MixedParity(QuadTransError):
    pass


class NotDivisible(QuadTransError):
    pass


class DegreeOutOfRange(QuadTransError):
    pass


class ParameterConstraintViolated(QuadTransError):
    pass


class ParameterOutOfRange(QuadTransError):
    pass


class AnchorVanishes(QuadTransError):
    pass


class RecurrenceMismatch(QuadTransError):
    def __init__(self, degree, message=""):
        super().__init__(f"recurrence mismatch at degree {degree}" + (f": {message}" if message else ""))
        self.degree = degree


class NotEven(QuadTransError):
    pass


class PositivityViolated(QuadTransError):
    pass


class OrthogonalityFailure(QuadTransError):
    def __init__(self, m, n, value):
        super().__init__(f"<p_{m}, p_{n}> = {value} != 0")
        self.witness = (m, n, value)


class IdentityFailure(QuadTransError):
    """Raised (or recorded) when two sides of an identity differ.

    ``witness`` holds degree, coefficient index and both values.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness or {}


class ValidityViolated(QuadTransError):
    pass


class BoundExceeded(QuadTransError):
    pass


class SingularMomentMatrix(QuadTransError):
    def __init__(self, index):
        super().__init__(f"singular moment matrix at index {index}")
        self.index = index


class HypothesisViolated(QuadTransError):
    pass


class DivergentPath(QuadTransError):
    pass


class OrderBelowExpected(QuadTransError):
    pass


class ConfigParseError(QuadTransError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class UnknownId(QuadTransError):
    pass
