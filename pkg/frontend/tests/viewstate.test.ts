import { describe, expect, it } from "vitest";

import type { ProgramStatePayload } from "../src/protocol.js";
import { ViewState } from "../src/viewstate.js";

function programState(source: string, points: number[][]): { type: "programState"; payload: ProgramStatePayload } {
  return {
    type: "programState",
    payload: {
      source,
      geometry: {
        points: points.map(([x, y, z, yaw], i) => ({
          x: x!, y: y!, z: z!, yaw: yaw!, waypointIndex: i,
        })),
        segments: [],
      },
      markers: {},
      console: [],
      diagnostics: [],
    },
  };
}

function session(highlights: boolean, dynamicLinking: boolean): ViewState {
  const view = new ViewState();
  view.apply({
    type: "sessionCreated",
    payload: { sessionId: "s1", condition: { highlights, dynamicLinking } },
  });
  return view;
}

describe("ViewState", () => {
  it("adopts program state verbatim", () => {
    const view = session(true, true);
    view.apply(programState("moveTo(1, 2, 3, 0)", [[1, 2, 3, 0]]));
    expect(view.editorText).toBe("moveTo(1, 2, 3, 0)");
    expect(view.geometry.points).toHaveLength(1);
  });

  it("dragWaypoint emits a single-axis target relative to the current pose", () => {
    const view = session(false, true);
    view.apply(programState("moveTo(1, 2, 3, 0)", [[1, 2, 3, 0]]));
    const message = view.dragWaypoint(0, "z", 2);
    expect(message).toEqual({
      type: "applyPreviewEdit",
      payload: { waypointIndex: 0, targets: { z: 5 } },
    });
  });

  it("dragWaypoint is gated by the dynamic-linking flag", () => {
    const view = session(true, false);
    view.apply(programState("moveTo(1, 2, 3, 0)", [[1, 2, 3, 0]]));
    expect(view.dragWaypoint(0, "z", 2)).toBeNull();
    expect(view.showHandles()).toBe(false);
  });

  it("adopts edit responses verbatim and drops stale highlights", () => {
    const view = session(true, true);
    view.apply(programState("moveTo(1, 2, 3, 0)", [[1, 2, 3, 0]]));
    view.apply({ type: "highlightResponse", payload: { spans: [{ start: 13, end: 14 }] } });
    expect(view.highlightSpans).toHaveLength(1);
    view.apply({
      type: "editResponse",
      payload: { status: { kind: "exact" }, source: "moveTo(1, 2, 5, 0)", iterations: 1 },
    });
    expect(view.editorText).toBe("moveTo(1, 2, 5, 0)");
    expect(view.highlightSpans).toHaveLength(0);
  });

  it("keeps the old source when an edit is unsolvable", () => {
    const view = session(true, true);
    view.apply(programState("moveTo(1, 2, 3, 0)", [[1, 2, 3, 0]]));
    view.apply({
      type: "editResponse",
      payload: {
        status: { kind: "unsolvable", reason: "external" },
        source: "moveTo(1, 2, 3, 0)",
        iterations: 1,
      },
    });
    expect(view.lastEditStatus).toBe("unsolvable (external)");
    expect(view.editorText).toBe("moveTo(1, 2, 3, 0)");
  });

  it("surfaces the achieved values of a best-effort edit", () => {
    const view = session(true, true);
    view.apply(programState("moveTo(1, 2, 3, 0)", [[1, 2, 3, 0]]));
    view.apply({
      type: "editResponse",
      payload: {
        status: { kind: "bestEffort", achieved: { z: 4.9991 } },
        source: "moveTo(1, 2, 4.99, 0)",
        iterations: 16,
      },
    });
    expect(view.lastEditStatus).toBe("bestEffort (reached z=4.999)");
    expect(view.editorText).toBe("moveTo(1, 2, 4.99, 0)");
  });

  it("never keeps highlight spans when the condition disables them", () => {
    const view = session(false, true);
    view.apply(programState("moveTo(1, 2, 3, 0)", [[1, 2, 3, 0]]));
    view.apply({ type: "highlightResponse", payload: { spans: [{ start: 13, end: 14 }] } });
    expect(view.highlightSpans).toHaveLength(0);
    expect(view.canHighlight()).toBe(false);
  });

  it("clears highlights when the program changes", () => {
    const view = session(true, true);
    view.apply(programState("moveTo(1, 2, 3, 0)", [[1, 2, 3, 0]]));
    view.apply({ type: "highlightResponse", payload: { spans: [{ start: 13, end: 14 }] } });
    view.apply(programState("moveTo(9, 2, 3, 0)", [[9, 2, 3, 0]]));
    expect(view.highlightSpans).toHaveLength(0);
  });

  it("tracks simulation playback frames", () => {
    const view = session(false, false);
    view.apply({
      type: "simFrame",
      payload: { pose: { x: 0, y: 0, z: 0.5, yaw: 0 }, phase: { kind: "flying", toWaypoint: 0 }, clock: 0.5 },
    });
    expect(view.simPlayback).toEqual({ pose: { x: 0, y: 0, z: 0.5, yaw: 0 }, phase: "flying", clock: 0.5 });
  });
});
