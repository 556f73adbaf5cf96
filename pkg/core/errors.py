# core/errors.py

"""
Exception hierarchy for the width toolkit and the classifier that maps
failures onto CLI exit codes.
"""

import logging
from enum import Enum
from threading import Lock
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)


class FailureType(Enum):
    """Kinds of failure an operation can report."""
    INPUT = "input"
    REFUTATION = "refutation"
    CAP_EXCEEDED = "cap_exceeded"
    INTERNAL = "internal"


class PMWidthError(Exception):
    """Base class for every error raised by the toolkit."""

    failure_type = FailureType.INTERNAL

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.message = message
        self.witness = witness


class CapExceeded(PMWidthError):
    """An exhaustive routine was asked to run above its configured cap."""

    failure_type = FailureType.CAP_EXCEEDED

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class NoPerfectMatching(PMWidthError):
    failure_type = FailureType.INPUT


class TooSmall(PMWidthError):
    failure_type = FailureType.INPUT


class InvalidShore(PMWidthError):
    failure_type = FailureType.INPUT


class GraphValidationError(PMWidthError):
    failure_type = FailureType.INPUT


class InvalidDecomposition(PMWidthError):
    failure_type = FailureType.INPUT


class MConformalityViolated(PMWidthError):
    """Inner tree edges whose shores are not conformal to the anchor matching."""

    failure_type = FailureType.INPUT

    def __init__(self, edges):
        super().__init__(f"anchor matching crosses {len(edges)} inner edge cut(s): {edges}", witness=edges)
        self.edges = edges


class OddLeafCount(PMWidthError):
    failure_type = FailureType.INPUT


class NotConformal(PMWidthError):
    failure_type = FailureType.INPUT


class NotTight(PMWidthError):
    failure_type = FailureType.INPUT


class NotMAnchored(PMWidthError):
    failure_type = FailureType.INPUT


class IncompatibleGluing(PMWidthError):
    failure_type = FailureType.INPUT


class NotABrace(PMWidthError):
    failure_type = FailureType.INPUT


class WidthNotTwo(PMWidthError):
    failure_type = FailureType.INPUT


class StructureViolation(PMWidthError):
    failure_type = FailureType.INTERNAL


class NotPerfect(PMWidthError):
    failure_type = FailureType.INPUT


class NotWidth2(PMWidthError):
    failure_type = FailureType.REFUTATION


class NotContractible(PMWidthError):
    failure_type = FailureType.INPUT


class ParseError(PMWidthError):
    """Malformed text input, located by line and column (both 1-based)."""

    failure_type = FailureType.INPUT

    def __init__(self, message: str, line: int = 0, column: int = 0):
        location = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{location}{message}")
        self.line = line
        self.column = column


class ValidationError(PMWidthError):
    failure_type = FailureType.INPUT


EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_CAP = 3

_EXIT_CODES = {
    FailureType.INPUT: EXIT_INPUT,
    FailureType.REFUTATION: EXIT_FALSE,
    FailureType.CAP_EXCEEDED: EXIT_CAP,
    FailureType.INTERNAL: EXIT_INPUT,
}


class ErrorClassifier:
    """Classifies failures and keeps per-type counts for reporting."""

    def __init__(self):
        self._lock = Lock()
        self._counts: Dict[str, int] = {}
        self.total_classified = 0

    def classify_error(self, error: Exception) -> FailureType:
        """Classify an error to determine how the command surface reports it."""
        if isinstance(error, PMWidthError):
            failure_type = error.failure_type
        elif isinstance(error, (ValueError, KeyError)):
            failure_type = FailureType.INPUT
        elif isinstance(error, (OSError, UnicodeDecodeError)):
            failure_type = FailureType.INPUT
        else:
            failure_type = FailureType.INTERNAL

        with self._lock:
            self.total_classified += 1
            self._counts[failure_type.value] = self._counts.get(failure_type.value, 0) + 1
        return failure_type

    def exit_code_for(self, error: Exception) -> int:
        failure_type = self.classify_error(error)
        code = _EXIT_CODES[failure_type]
        logger.debug(f"{type(error).__name__} classified as {failure_type.value} -> exit {code}")
        return code

    def get_stats(self) -> Dict[str, Any]:
        """Get counts of classified failures."""
        with self._lock:
            return {
                "total_classified": self.total_classified,
                "failure_types": dict(self._counts),
            }

    def reset(self):
        with self._lock:
            self._counts.clear()
            self.total_classified = 0


# Global error classifier
error_classifier = ErrorClassifier()


def get_error_stats() -> Dict[str, Any]:
    """Get global error classification statistics."""
    return error_classifier.get_stats()


def describe(error: Exception, witness: Optional[Any] = None) -> str:
    """One-line description of an error for CLI output."""
    text = f"{type(error).__name__}: {error}"
    witness = witness if witness is not None else getattr(error, "witness", None)
    if witness is not None:
        text += f" (witness: {witness})"
    return text
