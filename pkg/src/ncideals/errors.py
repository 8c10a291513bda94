"""
Exception hierarchy for ncideals.

Every concrete error also derives from the closest built-in exception so
callers can catch either the library type or the usual ``ValueError`` /
``LookupError`` / ``RuntimeError``.
"""

from __future__ import annotations

from typing import Optional


class NCIdealsError(Exception):
    """Base class for all library errors."""


class OutOfRangeError(NCIdealsError, ValueError):
    """A variable index lies outside ``1..n``."""


class ZeroPolynomialError(NCIdealsError, ValueError):
    """An operation needs a nonzero polynomial (leading term, monic form)."""


class DomainError(NCIdealsError, LookupError):
    """A substitution or evaluation has no image for some variable."""


class PreconditionError(NCIdealsError, ValueError):
    """The input lies outside the domain of the operation."""


class EmptyFamilyError(NCIdealsError, ValueError):
    """A generator family has no admissible indices."""


class ResourceLimitError(NCIdealsError, RuntimeError):
    """A dense computation would exceed the configured size guard."""


class InconsistencyError(NCIdealsError, RuntimeError):
    """Normal-word counts fell below a reference basis count.

    This cannot happen when the generators lie in the ideal and the
    reference really is a basis of the quotient.
    """


class PolynomialSyntaxError(NCIdealsError, ValueError):
    """Textual polynomial could not be parsed.

    Attributes:
        text: The full input text.
        position: Character offset of the offending token, if known.
    """

    def __init__(self, message: str, text: str = "", position: Optional[int] = None) -> None:
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)
