"""Exception types shared across the package."""
from __future__ import annotations


class PVGraphError(Exception):
    """Base class for all package errors."""


class UnreachableSite(PVGraphError):
    """A declared site appears on no route; the system is trivially uncoverable."""


class PeriodProductTooLarge(PVGraphError):
    """A carrier pair's meeting scan would exceed the configured lcm cap."""


class InconsistentWalk(PVGraphError):
    """A walk step is not an edge its carrier activates at that time."""


class IllegalAction(PVGraphError):
    """A strategy tried to ride a carrier that is not at the agent's site."""


class NotIdMode(PVGraphError):
    """A strategy requiring site identities ran on an anonymous system."""


class ParameterViolation(PVGraphError):
    """Generator parameters violate a stated constraint (names the constraint)."""


class NoSuitablePrime(ParameterViolation):
    """No prime exists in the range a construction needs."""


class NoCoprimePair(ParameterViolation):
    """No coprime period pair exists for the requested size."""


class StrategyDidNotHalt(PVGraphError):
    """A forge run hit the move limit before the strategy halted."""


class StateSpaceTooLarge(PVGraphError):
    """Exact search would exceed the state cap; carries the computed size."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"state space {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class ParseError(PVGraphError):
    """Route-set file syntax or semantic error, with 1-based position."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
