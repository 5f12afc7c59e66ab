"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so keep the split between
hypothesis failures (the input does not satisfy what an algorithm needs)
and budget errors (the input is fine but too large to handle exactly).
"""

from __future__ import annotations


class DrcEmbedError(Exception):
    """Base class for all library errors."""


class DegenerateInputError(DrcEmbedError, ValueError):
    """Input too small for the quantity to be defined (e.g. density of K_1)."""


class PreconditionError(DrcEmbedError, ValueError):
    """A documented precondition on the arguments does not hold."""

    def __init__(self, message: str, details: dict | None = None):
        self.details = dict(details or {})
        super().__init__(message)


class SizeError(PreconditionError):
    """The size arithmetic an algorithm requires fails before any work is done."""


class UnsupportedFieldError(PreconditionError):
    """Paley construction requested over a field we do not implement."""


class ConstructionError(DrcEmbedError):
    """A generator could not satisfy its constraints."""


class GraphFormatError(DrcEmbedError, ValueError):
    """Malformed graph or coloring file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidEmbeddingError(DrcEmbedError, ValueError):
    """An embedding map is not injective or not total."""


class BudgetError(DrcEmbedError):
    """An exact computation would exceed its enumeration or search budget."""


class HypothesisFailure(DrcEmbedError):
    """The hypotheses of an embedding lemma were checked and do not hold.

    ``level`` names the offending level of a nested family when there is one;
    ``details`` carries the counts and budgets that were compared.
    """

    def __init__(self, message: str, level: int | None = None, details: dict | None = None):
        self.level = level
        self.details = dict(details or {})
        super().__init__(message)


class WitnessNotFound(HypothesisFailure):
    """Dependent random choice found no admissible sample set."""


class EmbeddingFailure(DrcEmbedError):
    """The greedy ran out of admissible host vertices (best-effort runs only)."""

    def __init__(self, message: str, details: dict | None = None):
        self.details = dict(details or {})
        super().__init__(message)


class InternalError(DrcEmbedError, AssertionError):
    """An embedder produced an output that failed validation. Always a bug."""
