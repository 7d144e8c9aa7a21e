"""Exception types shared across the MissionScript toolchain."""

from __future__ import annotations

from dataclasses import dataclass

from .source import SourceSpan


class MissionScriptError(Exception):
    """Base class for all errors raised by this package."""


@dataclass
class LexError(MissionScriptError):
    span: SourceSpan
    message: str

    def __str__(self) -> str:
        return f"{self.message} at {self.span}"


@dataclass
class ParseError(MissionScriptError):
    span: SourceSpan
    expected: str
    found: str

    def __str__(self) -> str:
        return f"expected {self.expected}, found {self.found} at {self.span}"


@dataclass
class RewriteError(MissionScriptError):
    message: str

    def __str__(self) -> str:
        return self.message


class UnknownWaypoint(MissionScriptError):
    """A highlight or edit request referenced a waypoint index that does not exist."""


class BadParams(MissionScriptError):
    """Simulation parameters were out of range (speed and yaw rate must be positive)."""


class OutOfOrderTimestamp(MissionScriptError):
    """A session event was recorded with a timestamp earlier than its predecessor."""


class MalformedLog(MissionScriptError):
    """A session log has unbalanced task markers."""


class RubricMismatch(MissionScriptError):
    """A rubric cannot be applied to the mission result it was asked to grade."""
