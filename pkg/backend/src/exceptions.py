"""
Error hierarchy for the shuffle engine.

Every error raised on purpose by the engine derives from ShuffleEngineError so
the CLI can map it to an exit status with exit_code_for().
"""
from pydantic import ValidationError


class ShuffleEngineError(Exception):
    """Base class for engine errors."""

    exit_code = 1


class InvalidInputError(ShuffleEngineError, ValueError):
    """A precondition on the arguments does not hold."""

    exit_code = 2


class DomainViolationError(InvalidInputError):
    """A real function was evaluated outside its domain."""


class UnbalancedSplitError(InvalidInputError):
    """The operation is only defined for |A| = |B|."""


class ResourceGuardError(ShuffleEngineError):
    """An enumeration or state space exceeds its configured guard."""

    exit_code = 3


class VerificationError(ShuffleEngineError):
    """An oracle comparison failed."""

    exit_code = 1


class NonTerminationError(ShuffleEngineError):
    """A dynamical sequence did not cross its threshold within the step cap."""

    exit_code = 1


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the CLI exit status."""
    if isinstance(exc, ShuffleEngineError):
        return exc.exit_code
    if isinstance(exc, ValidationError):
        return 2
    if isinstance(exc, ValueError):
        return 2
    return 1
