"""Error taxonomy shared by all modules.

ValidationError covers semantic failures of otherwise well-formed input
(exit code 1 at the CLI); ParseError covers malformed text (exit code 2).
"""

from __future__ import annotations

__all__ = [
    "ForgeError",
    "ValidationError",
    "ParseError",
    "PreconditionError",
    "InternalInvariantError",
]


class ForgeError(ValueError):
    """Base class for all package errors."""


class ValidationError(ForgeError):
    """Well-formed input that violates a semantic requirement."""


class ParseError(ForgeError):
    """Malformed artifact text."""


class PreconditionError(ForgeError):
    """An identity check was invoked with arguments outside its hypothesis.

    Kept distinct from an identity evaluating to false so census sweeps do
    not misreport hypothesis violations as counterexamples.
    """


class InternalInvariantError(ForgeError):
    """A derived object broke an invariant that valid inputs guarantee."""
