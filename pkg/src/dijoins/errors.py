"""Exception types shared across the package."""

from __future__ import annotations

from typing import Any


class PreconditionError(ValueError):
    """Input violates a documented hypothesis; ``witness`` shows where."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class SizeLimitError(ValueError):
    """An exhaustive enumeration would exceed its configured limit."""


class ContractError(RuntimeError):
    """An internal stage produced output that fails its own contract.

    Raised only when a result that is guaranteed to exist could not be
    produced or verified, so it always indicates a bug or a search cap.
    """

    def __init__(self, message: str, detail: Any = None):
        super().__init__(message)
        self.detail = detail
