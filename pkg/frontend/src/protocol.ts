// Wire types for the session protocol. Every message is
// {type, payload} JSON; spans are {start, end} byte offsets into the
// program source; all numbers are plain decimals.

export interface Span {
  start: number;
  end: number;
}

export interface Condition {
  highlights: boolean;
  dynamicLinking: boolean;
}

export type AxisName = "x" | "y" | "z" | "yaw";

export interface Pose {
  x: number;
  y: number;
  z: number;
  yaw: number;
}

export interface GeometryPoint extends Pose {
  waypointIndex: number;
}

export interface Geometry {
  points: GeometryPoint[];
  segments: [number, number][];
}

export interface ConsoleLine {
  text: string;
  span: Span;
}

export interface Diagnostic {
  span: Span;
  kind: string;
  message: string;
}

export interface ProgramStatePayload {
  source: string;
  geometry: Geometry;
  markers: Record<string, Pose>;
  console: ConsoleLine[];
  diagnostics: Diagnostic[];
}

export interface EditStatus {
  kind: "exact" | "bestEffort" | "unsolvable";
  achieved?: Record<string, number>;
  reason?: string;
}

export interface EditResponsePayload {
  status: EditStatus;
  source: string;
  iterations: number;
}

export interface SimFramePayload {
  pose: Pose;
  phase: { kind: "idle" | "flying" | "sleeping" | "done"; toWaypoint?: number; until?: number };
  clock: number;
}

export interface GradeResponsePayload {
  missionId: string;
  points: number;
  maxPoints: number;
  perCriterion: { id: string; passed: boolean; detail: string }[];
}

export interface SessionCreatedPayload {
  sessionId: string;
  condition: Condition;
}

export interface ErrorPayload {
  code: string;
  message: string;
}

export type ServerMessage =
  | { type: "sessionCreated"; payload: SessionCreatedPayload }
  | { type: "programState"; payload: ProgramStatePayload }
  | { type: "highlightResponse"; payload: { spans: Span[] } }
  | { type: "editResponse"; payload: EditResponsePayload }
  | { type: "simFrame"; payload: SimFramePayload }
  | { type: "gradeResponse"; payload: GradeResponsePayload }
  | { type: "ack"; payload: Record<string, unknown> }
  | { type: "error"; payload: ErrorPayload };

export interface ClientMessage {
  type: string;
  payload: Record<string, unknown>;
}

export function createSession(condition?: Condition): ClientMessage {
  return { type: "createSession", payload: condition ? { condition } : {} };
}

export function setProgram(source: string): ClientMessage {
  return { type: "setProgram", payload: { source } };
}

export function queryHighlight(waypointIndex: number, axes?: AxisName[]): ClientMessage {
  return { type: "queryHighlight", payload: axes ? { waypointIndex, axes } : { waypointIndex } };
}

export function applyPreviewEdit(
  waypointIndex: number,
  targets: Partial<Record<AxisName, number>>,
): ClientMessage {
  return { type: "applyPreviewEdit", payload: { waypointIndex, targets } };
}

export function dragMarker(id: string, pose: Pose): ClientMessage {
  return { type: "dragMarker", payload: { id, pose } };
}

export function runSimulation(): ClientMessage {
  return { type: "runSimulation", payload: {} };
}

export function simTick(dt: number): ClientMessage {
  return { type: "simTick", payload: { dt } };
}

export function gradeMission(taskId: string): ClientMessage {
  return { type: "gradeMission", payload: { taskId } };
}

export function taskBoundary(action: "start" | "complete", taskId: string): ClientMessage {
  return { type: "taskBoundary", payload: { action, taskId } };
}

export function saveSession(): ClientMessage {
  return { type: "saveSession", payload: {} };
}

export function reportInteraction(sub: "orbit" | "zoom" | "selectWaypoint"): ClientMessage {
  return { type: "reportInteraction", payload: { sub } };
}

export function parseServerMessage(raw: string): ServerMessage {
  const doc = JSON.parse(raw) as { type?: unknown; payload?: unknown };
  if (typeof doc.type !== "string" || typeof doc.payload !== "object" || doc.payload === null) {
    throw new Error("malformed server message");
  }
  return doc as ServerMessage;
}
