// Editor decoration model. The server owns the program text; the
// client only slices it into highlighted/plain segments for display.

import type { Span } from "./protocol.js";

export interface Segment {
  text: string;
  highlighted: boolean;
}

export function spansAreValid(text: string, spans: Span[]): boolean {
  for (const span of spans) {
    if (span.start < 0 || span.end < span.start || span.end > text.length) {
      return false;
    }
  }
  return true;
}

/**
 * Slice editor text into segments so that exactly the characters inside
 * the given spans carry the highlight decoration. Stale spans (anything
 * out of bounds for the current text) clear the decoration entirely.
 */
export function decorate(text: string, spans: Span[]): Segment[] {
  if (spans.length === 0 || !spansAreValid(text, spans)) {
    return text.length ? [{ text, highlighted: false }] : [];
  }
  const ordered = [...spans].sort((a, b) => a.start - b.start || a.end - b.end);
  const segments: Segment[] = [];
  let cursor = 0;
  for (const span of ordered) {
    const start = Math.max(span.start, cursor);
    if (start > cursor) {
      segments.push({ text: text.slice(cursor, start), highlighted: false });
    }
    if (span.end > start) {
      segments.push({ text: text.slice(start, span.end), highlighted: true });
    }
    cursor = Math.max(cursor, span.end);
  }
  if (cursor < text.length) {
    segments.push({ text: text.slice(cursor), highlighted: false });
  }
  return segments;
}

/** The characters currently carrying the decoration, as index set. */
export function highlightedIndices(segments: Segment[]): Set<number> {
  const indices = new Set<number>();
  let offset = 0;
  for (const segment of segments) {
    if (segment.highlighted) {
      for (let i = 0; i < segment.text.length; i++) {
        indices.add(offset + i);
      }
    }
    offset += segment.text.length;
  }
  return indices;
}
