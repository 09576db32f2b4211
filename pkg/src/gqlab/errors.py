"""Exception types shared across the package."""


class GqlabError(Exception):
    """Base class for all library errors."""


class ModeMismatchError(GqlabError):
    """Operands use different coefficient modes or variable tags."""


class InvalidInputError(GqlabError):
    """Malformed argument, spec string, or JSON payload."""


class TruncationError(GqlabError):
    """Operation would need coefficients beyond the truncation window."""


class EvaluationError(GqlabError):
    """A point evaluation failed or left the trusted domain."""


class ConvergenceError(GqlabError):
    """An iterative summation did not reach the requested tolerance."""


class DegenerateSystemError(GqlabError):
    """A linear system is singular or numerically unusable."""


class UnsupportedNormalizationError(GqlabError):
    """Leading coefficient of the operator polynomial is not a nonzero constant."""


class RegimeError(GqlabError):
    """Requested analysis does not apply in this polygon regime."""
