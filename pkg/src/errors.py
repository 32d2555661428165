"""
Exception types shared by every module.

Findings of the audit (refutations, unmet hypotheses) are values, not
exceptions; everything here signals misuse, malformed input or a bug.
"""

from typing import Optional


class FranklError(ValueError):
    """Base class for all errors raised by this package."""


class UniverseTooLarge(FranklError):
    """Universe size outside the supported range."""


class ElementOutOfRange(FranklError):
    """An element index outside 1..n."""


class EmptySetRejected(FranklError):
    """The empty set was given as a family member."""


class EmptyFamily(FranklError):
    """An operation that needs a nonempty family got an empty one."""


class NotAMember(FranklError):
    """A set expected to be in the family is not."""


class NotInComplement(FranklError):
    """A set expected to be in D = A - F is not."""


class NotUnionClosed(FranklError):
    """A family expected to be union-closed is not."""


class ConstructionBlocked(FranklError):
    """The greedy basis construction ran out of deletable basis sets."""

    def __init__(self, message: str, step: int, remaining: list):
        super().__init__(message)
        self.step = step
        self.remaining = remaining


class EmptyDi(FranklError):
    """D^i is empty where an ideal sequence needs it nonempty."""


class PreconditionNotMet(FranklError):
    """Hypotheses of a constructive procedure do not hold."""


class MalformedSequence(FranklError):
    """A deletion sequence does not partition A - F."""


class ParseError(FranklError):
    """A family, sequence or report document could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ConfigurationError(FranklError):
    """An environment or command-line setting has an invalid value."""


class AuditInconsistency(FranklError):
    """The independent re-check disagrees with a reported failure."""
