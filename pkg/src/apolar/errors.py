"""Exception hierarchy shared by all modules."""


class ApolarError(Exception):
    """Base class for all errors raised by this package."""


class CharacteristicTooSmall(ApolarError):
    def __init__(self, char, degree):
        self.char = char
        self.degree = degree
        super().__init__(
            "field characteristic %d is not zero and not greater than degree %d"
            % (char, degree)
        )


class DivisionByZero(ApolarError):
    pass


class ArityMismatch(ApolarError):
    pass


class FieldMismatch(ApolarError):
    pass


class IndexOutOfRange(ApolarError):
    pass


class AmbientMismatch(ApolarError):
    pass


class ZeroPolynomial(ApolarError):
    pass


class DecompositionInvariantViolated(ApolarError):
    """The computed symmetric decomposition broke a theorem-level invariant.

    This always signals an implementation bug, never bad input.
    """


class InvalidAutomorphism(ApolarError):
    pass


class NotAUnit(ApolarError):
    pass


class SingularMatrix(ApolarError):
    pass


class CrossCheckFailed(ApolarError):
    """Two independent computations of the same object disagree (bug signal)."""


class NotInTangent(ApolarError):
    """The leading form is outside the unipotent tangent space of the target."""

    def __init__(self, degree, message=None):
        self.degree = degree
        super().__init__(message or "leading form of degree %d not in tangent space" % degree)


class ReductionFailed(ApolarError):
    """A reduction step did not lower the degree (bug signal)."""


class TdfMismatch(ApolarError):
    pass


class NotTCompressed(ApolarError):
    pass


class HypothesisFailed(ApolarError):
    def __init__(self, message, degree=None):
        self.degree = degree
        super().__init__(message)


class WrongHilbertFunction(ApolarError):
    pass


class GoldenMismatch(ApolarError):
    def __init__(self, diffs):
        self.diffs = list(diffs)
        super().__init__("golden data mismatch:\n" + "\n".join(self.diffs))


class PolySyntaxError(ApolarError):
    """Raised on malformed polynomial/operator text; carries the position."""

    def __init__(self, message, position):
        self.position = position
        super().__init__("%s (at position %d)" % (message, position))
