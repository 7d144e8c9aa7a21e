// Client-side view state. The server is the single source of truth for
// program text: the only way this state mutates the editor content is
// by adopting programState/editResponse payloads verbatim.

import { decorate, type Segment } from "./editor.js";
import type {
  AxisName,
  ClientMessage,
  Condition,
  ConsoleLine,
  Diagnostic,
  Geometry,
  Pose,
  ServerMessage,
  Span,
} from "./protocol.js";
import { applyPreviewEdit } from "./protocol.js";

export interface SimPlayback {
  pose: Pose;
  phase: string;
  clock: number;
}

export class ViewState {
  conditionFlags: Condition = { highlights: false, dynamicLinking: false };
  sessionId = "";
  editorText = "";
  geometry: Geometry = { points: [], segments: [] };
  markers: Record<string, Pose> = {};
  consoleLines: ConsoleLine[] = [];
  diagnostics: Diagnostic[] = [];
  selection: number | null = null;
  highlightSpans: Span[] = [];
  simPlayback: SimPlayback | null = null;
  lastEditStatus: string | null = null;

  /** Drag handles render only when the session condition allows editing. */
  showHandles(): boolean {
    return this.conditionFlags.dynamicLinking;
  }

  /** The highlight affordance (clickable waypoints) follows the condition. */
  canHighlight(): boolean {
    return this.conditionFlags.highlights;
  }

  decoratedEditor(): Segment[] {
    return decorate(this.editorText, this.highlightSpans);
  }

  selectWaypoint(index: number | null): void {
    this.selection = index;
    if (index === null) {
      this.highlightSpans = [];
    }
  }

  /**
   * Turn an engaged axis-handle drag into a preview-edit request:
   * target = current coordinate + delta on that axis only. Returns null
   * (no message) when dynamic linking is disabled or nothing is selected.
   */
  dragWaypoint(waypointIndex: number, axis: AxisName, delta: number): ClientMessage | null {
    if (!this.conditionFlags.dynamicLinking) {
      return null;
    }
    const point = this.geometry.points.find((p) => p.waypointIndex === waypointIndex);
    if (!point) {
      return null;
    }
    return applyPreviewEdit(waypointIndex, { [axis]: point[axis] + delta });
  }

  /** Fold one server message into the state. */
  apply(message: ServerMessage): void {
    switch (message.type) {
      case "sessionCreated":
        this.sessionId = message.payload.sessionId;
        this.conditionFlags = message.payload.condition;
        break;
      case "programState":
        this.editorText = message.payload.source;
        this.geometry = message.payload.geometry;
        this.markers = message.payload.markers;
        this.consoleLines = message.payload.console;
        this.diagnostics = message.payload.diagnostics;
        // spans computed against older text are stale now
        this.highlightSpans = [];
        break;
      case "highlightResponse":
        this.highlightSpans = this.conditionFlags.highlights ? message.payload.spans : [];
        break;
      case "editResponse": {
        const status = message.payload.status;
        this.lastEditStatus = status.kind;
        if (status.kind === "bestEffort" && status.achieved) {
          const reached = Object.entries(status.achieved)
            .map(([axis, value]) => `${axis}=${value.toFixed(3)}`)
            .join(", ");
          this.lastEditStatus = `bestEffort (reached ${reached})`;
        } else if (status.kind === "unsolvable" && status.reason) {
          this.lastEditStatus = `unsolvable (${status.reason})`;
        }
        if (status.kind !== "unsolvable") {
          this.editorText = message.payload.source;
          this.highlightSpans = [];
        }
        break;
      }
      case "simFrame":
        this.simPlayback = {
          pose: message.payload.pose,
          phase: message.payload.phase.kind,
          clock: message.payload.clock,
        };
        break;
      case "error":
        if (message.payload.code === "FeatureDisabled") {
          // a denied aid leaves no trace in the view
          this.highlightSpans = [];
        }
        break;
      default:
        break;
    }
    this.assertInvariants();
  }

  private assertInvariants(): void {
    if (!this.conditionFlags.highlights && this.highlightSpans.length > 0) {
      throw new Error("highlight spans present while highlights are disabled");
    }
  }
}
