"""
Error types for the degeneracy lab.

Every library operation raises a LabError subclass; the CLI maps them to
exit codes and the tool server maps them to error payloads.
"""

from typing import Any, Dict, Optional


def format_error(message: str, suggestion: str = "") -> str:
    """Format error message with optional suggestion."""
    result = f"Error: {message}"
    if suggestion:
        result += f"\nSuggestion: {suggestion}"
    return result


class LabError(Exception):
    """Base class for all lab errors."""

    kind = "lab-error"
    default_suggestion = ""

    def __init__(self, message: str, suggestion: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.suggestion = self.default_suggestion if suggestion is None else suggestion

    def formatted(self) -> str:
        return format_error(self.message, self.suggestion)

    def to_payload(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"success": False, "error": self.message, "kind": self.kind}
        if self.suggestion:
            payload["suggestion"] = self.suggestion
        return payload


class DomainError(LabError):
    kind = "domain-error"


class InvalidOperandError(LabError):
    kind = "invalid-operand"


class InvalidParamsError(LabError):
    kind = "invalid-params"
    default_suggestion = "Family specs look like 'path:4', 'matula:2' or 'ceiling-counterexample'"


class SizeLimitError(LabError):
    kind = "size-limit"

    def __init__(self, what: str, n: int, cap: int, suggestion: Optional[str] = None):
        super().__init__(
            f"{what} is capped at n <= {cap}, got n = {n}",
            suggestion
            if suggestion is not None
            else "Raise the cap with --cap or the matching DEGENLAB_* environment variable",
        )
        self.n = n
        self.cap = cap


class MalformedInputError(LabError):
    kind = "malformed-input"

    def __init__(
        self,
        message: str,
        offset: Optional[int] = None,
        line: Optional[int] = None,
        suggestion: Optional[str] = None,
    ):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        text = f"{message} ({', '.join(where)})" if where else message
        super().__init__(text, suggestion)
        self.detail = message
        self.offset = offset
        self.line = line


class NotAPermutationError(LabError):
    kind = "not-a-permutation"


class NotACoveringSumError(LabError):
    kind = "not-a-covering-sum"
    default_suggestion = "Use ng_range(n) to list the attainable sums"


class UnknownCheckError(LabError):
    kind = "unknown-check"


class UsageError(LabError):
    kind = "usage-error"
