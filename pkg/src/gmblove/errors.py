"""Exception types shared across the toolkit."""


class GmbLoveError(Exception):
    """Base class for all toolkit errors."""


class PoleError(GmbLoveError, ZeroDivisionError):
    """Evaluation was requested exactly at a pole of the target function."""


class DomainError(GmbLoveError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class SchemaError(GmbLoveError, ValueError):
    """A model or problem file does not match the expected JSON schema."""


class ConvergenceError(GmbLoveError, RuntimeError):
    """An iterative procedure failed to reach its target tolerance."""


class BracketingError(GmbLoveError, RuntimeError):
    """A sign change that is guaranteed by theory could not be bracketed.

    Reaching this indicates corrupted input (e.g. coincident relaxation
    times that were not merged) rather than an expected runtime failure.
    """
