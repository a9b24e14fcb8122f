"""Exception types shared across the package."""

from __future__ import annotations


class TuranCyclesError(Exception):
    """Base class for package errors."""


class GraphInputError(TuranCyclesError, ValueError):
    """Malformed graph construction or query arguments."""


class ResourceLimitError(TuranCyclesError):
    """An input exceeds a documented desk-scale guard."""


class InternalConsistencyError(TuranCyclesError):
    """A self-check failed; indicates a bug, not bad input."""


class CounterexampleError(TuranCyclesError):
    """A verified-by-construction assertion failed on a concrete instance.

    Carries the instance data so the failure can be inspected rather than
    swallowed: if one of these ever fires on a valid input, the underlying
    claim itself is falsified.
    """

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = details or {}
