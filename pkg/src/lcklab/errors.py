"""Exception types shared across the package."""


class LckLabError(Exception):
    """Base class for all domain errors raised by lcklab."""


class DimensionMismatch(LckLabError):
    pass


class ArityMismatch(LckLabError):
    pass


class DegreeOverflow(LckLabError):
    pass


class NonSymmetric(LckLabError):
    pass


class JacobiViolation(LckLabError):
    """Raised when structure constants fail the Jacobi identity.

    Carries the list of (i, j, k, residual) witnesses on ``violations``.
    """

    def __init__(self, violations):
        self.violations = tuple(violations)
        shown = ", ".join(
            "({}, {}, {})".format(i, j, k) for i, j, k, _ in self.violations[:3]
        )
        more = "" if len(self.violations) <= 3 else ", ..."
        super().__init__(
            "Jacobi identity fails on basis triples {}{}".format(shown, more)
        )


class UnvalidatedAlgebra(LckLabError):
    pass


class LeeFormNotClosed(LckLabError):
    pass


class NotTwistedClosed(LckLabError):
    pass


class NotComplexStructure(LckLabError):
    pass


class NotJInvariant(LckLabError):
    pass


class DegenerateOmega(LckLabError):
    pass


class MetricNotPD(LckLabError):
    pass


class DecompositionFails(LckLabError):
    pass


class WrongDimension(LckLabError):
    pass


class OddDimension(LckLabError):
    pass


class BadParameters(LckLabError):
    pass


class ParseError(LckLabError):
    """Input file error, carrying a 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line {}: {}".format(line, message)
        super().__init__(message)
