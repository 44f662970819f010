"""Exception types shared across the package."""


class DeltaSiftError(Exception):
    """Base class for all package-specific errors."""


class NotOrderedError(DeltaSiftError):
    """Order comparison attempted on a series with nonreal coefficients."""


class NotFiniteError(DeltaSiftError):
    """Standard part (or composition) requested for an infinite number."""


class SeedDomainError(DeltaSiftError):
    """Analytic seed is undefined at the requested expansion point."""


class NoSolutionError(DeltaSiftError):
    """Order-by-order solve failed to converge within the iteration cap."""


class NotConvergentError(DeltaSiftError):
    """Sequence has no finite limit."""


class UnsupportedWindowError(DeltaSiftError):
    """Symbolic sifting supports symmetric windows only."""


class NeedsLogError(DeltaSiftError):
    """An odd kernel power failed to cancel; the result would need log(eta)."""


class UnsupportedFunctionError(DeltaSiftError):
    """Test function outside the supported class (poles, decay, kind)."""


class DomainError(DeltaSiftError):
    """Argument outside the documented domain of the operation."""


class NoConvergenceError(DeltaSiftError):
    """Adaptive quadrature exceeded its subdivision cap."""


class PoleMisdeclaredError(DeltaSiftError):
    """Symmetric excision around the declared pole failed to converge."""


class NonMonotoneError(DeltaSiftError):
    """Extrapolation ladder did not stabilize."""


class StepTooLargeError(DeltaSiftError):
    """Halving the ODE step shifted the measured period beyond tolerance."""


class ExprSyntaxError(DeltaSiftError):
    """Expression parse failure, with byte offset and expected-token set."""

    def __init__(self, message: str, position: int, expected=()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"at offset {position}: {message}"
        if self.expected:
            detail += " (expected " + ", ".join(self.expected) + ")"
        super().__init__(detail)


class NonRationalExponentError(ExprSyntaxError):
    """Exponent of ``^`` must be a rational literal."""


class EvalError(DeltaSiftError):
    """Expression evaluated to an unusable combination of values."""
