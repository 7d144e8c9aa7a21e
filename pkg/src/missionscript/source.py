"""Byte-offset source spans and canonical number rendering.

Spans are the glue between program text, provenance traces, editor
highlights and literal rewrites, so they are deliberately minimal:
half-open [start, end) byte offsets into the program source.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class SourceSpan:
    """Half-open [start, end) range of byte offsets into a source text."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.end < self.start:
            raise ValueError(f"invalid span {self.start}..{self.end}")

    def __str__(self) -> str:
        return f"{self.start}..{self.end}"

    def __len__(self) -> int:
        return self.end - self.start

    def overlaps(self, other: "SourceSpan") -> bool:
        return self.start < other.end and other.start < self.end

    def slice(self, text: str) -> str:
        return text[self.start : self.end]

    def shifted(self, delta: int) -> "SourceSpan":
        return SourceSpan(self.start + delta, self.end + delta)


def format_number(value: float) -> str:
    """Render a float as the shortest decimal that parses back to it.

    Integral values drop the trailing ``.0`` so rewritten programs keep
    the look of hand-written mission code.
    """
    if not math.isfinite(value):
        raise ValueError(f"cannot render non-finite number {value!r}")
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)
