"""Exception types shared across the package."""


class AlmostComplexError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(AlmostComplexError):
    """Operands live on different dimensions or different models."""


class ModelMismatch(DimensionMismatch):
    """Operands belong to different models."""


class OddDimension(AlmostComplexError):
    """A frame dimension that is not even."""


class MixedRing(AlmostComplexError):
    """Nonconstant coefficients together with nonzero structure constants."""


class JacobiViolation(AlmostComplexError):
    """Structure constants failing the Jacobi identity.

    Carries the offending triple (i, j, k) and the output index l where the
    cyclic sum is nonzero.
    """

    def __init__(self, triple, component, value):
        self.triple = triple
        self.component = component
        self.value = value
        i, j, k = triple
        super().__init__(
            "Jacobi identity fails on (e%d, e%d, e%d): component e%d sums to %s"
            % (i + 1, j + 1, k + 1, component + 1, value)
        )


class ModelValidationError(AlmostComplexError):
    """Raised by validate_model; collects every violated invariant."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class NotAlmostComplex(AlmostComplexError):
    """An endomorphism that does not square to minus the identity."""


class NotIntegrable(AlmostComplexError):
    """A bigraded operation was requested for J with nonzero Nijenhuis tensor."""


class NotASubspace(AlmostComplexError):
    """A quotient was requested where the denominator is not contained in the
    numerator.  This signals a broken complex or a wrong operator matrix."""


class InvalidWindow(AlmostComplexError):
    """A truncation window that does not fit the model kind."""


class BadParameter(AlmostComplexError):
    """A catalog model was given parameters outside its schema."""


class ExprError(AlmostComplexError):
    """Expression parsing failure, with a character position."""

    def __init__(self, message, pos):
        self.pos = pos
        super().__init__("%s (at position %d)" % (message, pos))


class NonIntegerFrequency(ExprError):
    """sin/cos argument that is not an integer combination of coordinates."""


class UnknownCoordinate(ExprError):
    """Coordinate symbol outside x1..xn."""
