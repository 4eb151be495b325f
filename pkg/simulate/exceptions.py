from suspensionlab.exceptions import CoverageError, PreconditionError


class WindowCoverageError(CoverageError):
    """A configuration window misses indices where the shift changes the intensity."""


class ExperimentRefused(PreconditionError):
    """The profile or parameters violate the hypotheses the experiment relies on."""
