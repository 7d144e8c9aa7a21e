// Canvas-2D rendering of the mission preview: ground grid, origin and
// axis indicators, the three colored markers, waypoints with connecting
// path, axis drag handles on the selection, and the simulated
// quadcopter during playback.

import type { Camera, Vec3 } from "./camera.js";
import type { AxisName, Geometry, Pose } from "./protocol.js";
import type { ViewState } from "./viewstate.js";

export const AXIS_COLORS: Record<AxisName, string> = {
  x: "#e05555",
  y: "#4caf50",
  z: "#4d7fdd",
  yaw: "#c49a2a",
};

export const MARKER_COLORS: Record<string, string> = {
  red: "#d9453c",
  green: "#3c9e4a",
  blue: "#3b6fd4",
};

const GRID_EXTENT = 6;

export interface HandleHit {
  waypointIndex: number;
  axis: AxisName;
}

type Ctx = CanvasRenderingContext2D;

function line(ctx: Ctx, camera: Camera, a: Vec3, b: Vec3, stroke: string, width = 1): void {
  const pa = camera.project(a);
  const pb = camera.project(b);
  if (!pa.visible || !pb.visible) return;
  ctx.strokeStyle = stroke;
  ctx.lineWidth = width;
  ctx.beginPath();
  ctx.moveTo(pa.sx, pa.sy);
  ctx.lineTo(pb.sx, pb.sy);
  ctx.stroke();
}

function disc(ctx: Ctx, camera: Camera, at: Vec3, radius: number, fill: string): void {
  const p = camera.project(at);
  if (!p.visible) return;
  ctx.fillStyle = fill;
  ctx.beginPath();
  ctx.arc(p.sx, p.sy, radius, 0, Math.PI * 2);
  ctx.fill();
}

function drawGrid(ctx: Ctx, camera: Camera): void {
  for (let i = -GRID_EXTENT; i <= GRID_EXTENT; i++) {
    const major = i === 0;
    line(ctx, camera, { x: i, y: -GRID_EXTENT, z: 0 }, { x: i, y: GRID_EXTENT, z: 0 },
         major ? "#666" : "#333");
    line(ctx, camera, { x: -GRID_EXTENT, y: i, z: 0 }, { x: GRID_EXTENT, y: i, z: 0 },
         major ? "#666" : "#333");
  }
  // origin + axis indicators
  line(ctx, camera, { x: 0, y: 0, z: 0 }, { x: 1.2, y: 0, z: 0 }, AXIS_COLORS.x, 2.5);
  line(ctx, camera, { x: 0, y: 0, z: 0 }, { x: 0, y: 1.2, z: 0 }, AXIS_COLORS.y, 2.5);
  line(ctx, camera, { x: 0, y: 0, z: 0 }, { x: 0, y: 0, z: 1.2 }, AXIS_COLORS.z, 2.5);
  disc(ctx, camera, { x: 0, y: 0, z: 0 }, 3, "#eee");
}

function waypointPositions(geometry: Geometry): Vec3[] {
  return geometry.points.map((p) => ({ x: p.x, y: p.y, z: p.z }));
}

function drawTrajectory(ctx: Ctx, camera: Camera, view: ViewState): void {
  const points = waypointPositions(view.geometry);
  for (const [a, b] of view.geometry.segments) {
    const pa = points[a];
    const pb = points[b];
    if (pa && pb) line(ctx, camera, pa, pb, "#9ad1ff", 1.5);
  }
  points.forEach((p, i) => {
    // drop line to the ground plane helps reading altitude
    line(ctx, camera, p, { x: p.x, y: p.y, z: 0 }, "#444");
    disc(ctx, camera, p, i === view.selection ? 7 : 5, i === view.selection ? "#ffd24d" : "#dfefff");
    const q = camera.project(p);
    if (q.visible) {
      ctx.fillStyle = "#9db8cc";
      ctx.font = "11px sans-serif";
      ctx.fillText(String(i), q.sx + 8, q.sy - 8);
    }
  });
}

export function handleGeometry(view: ViewState, waypointIndex: number) {
  const point = view.geometry.points.find((p) => p.waypointIndex === waypointIndex);
  if (!point) return [];
  const base: Vec3 = { x: point.x, y: point.y, z: point.z };
  const arm = 0.9;
  return [
    { axis: "x" as const, from: base, to: { ...base, x: base.x + arm } },
    { axis: "y" as const, from: base, to: { ...base, y: base.y + arm } },
    { axis: "z" as const, from: base, to: { ...base, z: base.z + arm } },
  ];
}

function drawHandles(ctx: Ctx, camera: Camera, view: ViewState): void {
  if (!view.showHandles() || view.selection === null) return;
  for (const handle of handleGeometry(view, view.selection)) {
    line(ctx, camera, handle.from, handle.to, AXIS_COLORS[handle.axis], 3);
    disc(ctx, camera, handle.to, 5, AXIS_COLORS[handle.axis]);
  }
}

function drawMarkers(ctx: Ctx, camera: Camera, markers: Record<string, Pose>): void {
  for (const [name, pose] of Object.entries(markers)) {
    const color = MARKER_COLORS[name] ?? "#999";
    const at: Vec3 = { x: pose.x, y: pose.y, z: pose.z };
    const p = camera.project(at);
    if (!p.visible) continue;
    ctx.fillStyle = color;
    ctx.fillRect(p.sx - 6, p.sy - 6, 12, 12);
    ctx.fillStyle = "#ccc";
    ctx.font = "10px sans-serif";
    ctx.fillText(name, p.sx + 8, p.sy + 4);
  }
}

function drawQuadcopter(ctx: Ctx, camera: Camera, pose: Pose): void {
  const at: Vec3 = { x: pose.x, y: pose.y, z: pose.z };
  const heading = (pose.yaw * Math.PI) / 180;
  const nose: Vec3 = {
    x: pose.x + 0.45 * Math.cos(heading),
    y: pose.y + 0.45 * Math.sin(heading),
    z: pose.z,
  };
  disc(ctx, camera, at, 6, "#ff9d2e");
  line(ctx, camera, at, nose, "#ff9d2e", 3);
}

export function render(ctx: Ctx, camera: Camera, view: ViewState): void {
  ctx.fillStyle = "#181c20";
  ctx.fillRect(0, 0, camera.width, camera.height);
  drawGrid(ctx, camera);
  drawMarkers(ctx, camera, view.markers);
  drawTrajectory(ctx, camera, view);
  drawHandles(ctx, camera, view);
  if (view.simPlayback && view.simPlayback.phase !== "idle") {
    drawQuadcopter(ctx, camera, view.simPlayback.pose);
  }
}

/** Hit-test the axis handles of the current selection. */
export function pickHandle(
  camera: Camera,
  view: ViewState,
  sx: number,
  sy: number,
): HandleHit | null {
  if (!view.showHandles() || view.selection === null) return null;
  for (const handle of handleGeometry(view, view.selection)) {
    const tip = camera.project(handle.to);
    if (tip.visible && Math.hypot(tip.sx - sx, tip.sy - sy) <= 10) {
      return { waypointIndex: view.selection, axis: handle.axis };
    }
  }
  return null;
}

/** Hit-test waypoints for selection. */
export function pickWaypoint(
  camera: Camera,
  view: ViewState,
  sx: number,
  sy: number,
): number | null {
  return camera.pick(waypointPositions(view.geometry), sx, sy);
}

/** Hit-test the reference markers. */
export function pickMarker(
  camera: Camera,
  view: ViewState,
  sx: number,
  sy: number,
): string | null {
  const names = Object.keys(view.markers);
  const positions = names.map((name) => {
    const pose = view.markers[name]!;
    return { x: pose.x, y: pose.y, z: pose.z };
  });
  const index = camera.pick(positions, sx, sy);
  return index === null ? null : names[index]!;
}
