"""Span-addressed literal rewrites over program text.

Rewrites replace number-literal tokens with a canonical rendering of a
new value and leave every other byte of the source untouched, so the
reparsed program is structurally identical to the original.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RewriteError
from .parser import parse
from .source import SourceSpan, format_number


@dataclass(frozen=True)
class LiteralRewrite:
    span: SourceSpan
    new_value: float


def apply_rewrites(source: str, rewrites: list[LiteralRewrite]) -> str:
    """Splice new literal values into source text.

    Spans must be pairwise disjoint and each must address a number
    literal of ``parse(source)``. Rewrites are applied right to left so
    earlier spans stay valid while splicing.
    """
    if not rewrites:
        return source
    literal_spans = {lit.span for lit in parse(source).number_literals()}
    ordered = sorted(rewrites, key=lambda rw: rw.span, reverse=True)
    for i, rw in enumerate(ordered):
        if rw.span not in literal_spans:
            raise RewriteError(f"span {rw.span} does not address a number literal")
        if i + 1 < len(ordered) and ordered[i + 1].span.overlaps(rw.span):
            raise RewriteError(f"overlapping rewrite spans at {rw.span}")
    text = source
    for rw in ordered:
        rendered = format_number(rw.new_value)
        # A '-' spliced directly after a binary minus would open a
        # comment; pad it so the program still lexes as arithmetic.
        if rendered.startswith("-") and rw.span.start > 0 and text[rw.span.start - 1] == "-":
            rendered = " " + rendered
        text = text[: rw.span.start] + rendered + text[rw.span.end :]
    return text
