class HypersymError(Exception):
    """Base class for errors raised by this package."""


class HypothesisViolation(HypersymError, ValueError):
    """Input falls outside the hypotheses of a closed-form shortcut."""


class FactorizationLimit(HypersymError):
    """Integer factorization gave up within the configured budget."""


class BudgetExceeded(HypersymError):
    """An enumeration would exceed its configured size budget."""


class ComplexityRefusal(BudgetExceeded):
    """A combinatorial scan was refused up front because it is too large."""


class NotInvariant(HypersymError, ValueError):
    """A diagonal automorphism does not preserve the support up to a scalar."""


class VerificationFailure(HypersymError, AssertionError):
    """An internally constructed object failed its own verification."""
