from suspensionlab.exceptions import AnomalyError, PreconditionError


class NotApplicableError(PreconditionError):
    """A criterion whose hypotheses the profile does not meet."""


class MonotonicityViolation(AnomalyError):
    """Verdicts along an intensity scan are not ordered conservative < dissipative."""
