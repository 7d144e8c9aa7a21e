// Browser entry point: wires the editor pane, 3D preview canvas,
// instruction pane, console and run control to the session server.

import { Camera } from "./camera.js";
import { SessionClient, type Transport } from "./client.js";
import * as proto from "./protocol.js";
import { pickHandle, pickMarker, pickWaypoint, render } from "./renderer.js";
import { ViewState } from "./viewstate.js";

const SNIPPETS: Record<string, string> = {
  moveTo: "moveTo(0, 0, 1, 0)\n",
  wait: "wait()\n",
  sleep: "sleep(1)\n",
  print: 'print("x", 0)\n',
  loop: "for i = 1, 4 do\n  moveTo(i, 0, 1, 0)\n  wait()\nend\n",
  marker: 'moveTo(marker_x("red"), marker_y("red"), 1, 0)\n',
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

async function boot(): Promise<void> {
  const editor = el<HTMLTextAreaElement>("editor");
  const backdrop = el<HTMLDivElement>("editor-backdrop");
  const canvas = el<HTMLCanvasElement>("preview");
  const consoleBox = el<HTMLDivElement>("console");
  const instructions = el<HTMLDivElement>("instructions");
  const status = el<HTMLDivElement>("status");
  const ctx = canvas.getContext("2d")!;

  const view = new ViewState();
  const camera = new Camera(undefined, canvas.width, canvas.height);

  const url = `ws://${location.host}/session`;
  const socket = new WebSocket(url);
  const transport: Transport = {
    send: (data) => socket.send(data),
    close: () => socket.close(),
    onmessage: null,
  };
  socket.onmessage = (event) => transport.onmessage?.({ data: event.data });
  await new Promise((resolve) => (socket.onopen = resolve));
  const client = new SessionClient(transport);

  client.onPush = (message) => {
    view.apply(message);
    paint();
  };

  async function send(message: proto.ClientMessage): Promise<proto.ServerMessage> {
    const response = await client.request(message);
    view.apply(response);
    paint();
    return response;
  }

  function paint(): void {
    render(ctx, camera, view);
    renderEditorDecorations();
    renderConsole();
    status.textContent =
      `session ${view.sessionId}  ·  highlights ${view.conditionFlags.highlights ? "on" : "off"}` +
      `  ·  drag-editing ${view.conditionFlags.dynamicLinking ? "on" : "off"}` +
      (view.lastEditStatus ? `  ·  last edit: ${view.lastEditStatus}` : "");
  }

  function renderEditorDecorations(): void {
    backdrop.textContent = "";
    for (const segment of view.decoratedEditor()) {
      const span = document.createElement("span");
      span.textContent = segment.text;
      if (segment.highlighted) span.className = "hl";
      backdrop.appendChild(span);
    }
    if (editor.value !== view.editorText) {
      editor.value = view.editorText;
    }
  }

  function renderConsole(): void {
    consoleBox.textContent = view.consoleLines.map((line) => line.text).join("\n");
    if (view.diagnostics.length) {
      consoleBox.textContent +=
        "\n" + view.diagnostics.map((d) => `! ${d.kind}: ${d.message}`).join("\n");
    }
  }

  // --- session bootstrap ---------------------------------------------------

  await send(proto.createSession());
  const missions = (await fetch("/missions").then((r) => r.json())) as {
    taskId: string;
    title: string;
  }[];
  const first = missions[0];
  if (first) {
    instructions.textContent = await fetch(`/missions/${first.taskId}`).then((r) => r.text());
    await send(proto.taskBoundary("start", first.taskId));
  }
  await send(proto.setProgram(""));

  // --- editor events ---------------------------------------------------------

  let debounce: ReturnType<typeof setTimeout> | undefined;
  editor.addEventListener("input", () => {
    clearTimeout(debounce);
    debounce = setTimeout(() => void send(proto.setProgram(editor.value)), 250);
  });
  editor.addEventListener("scroll", () => {
    backdrop.scrollTop = editor.scrollTop;
    backdrop.scrollLeft = editor.scrollLeft;
  });

  for (const button of document.querySelectorAll<HTMLButtonElement>("[data-snippet]")) {
    button.addEventListener("click", () => {
      const snippet = SNIPPETS[button.dataset.snippet!] ?? "";
      editor.value = editor.value + (editor.value.endsWith("\n") || !editor.value ? "" : "\n") + snippet;
      void send(proto.setProgram(editor.value));
    });
  }

  el<HTMLButtonElement>("run").addEventListener("click", () => void send(proto.runSimulation()));
  el<HTMLButtonElement>("grade").addEventListener("click", async () => {
    const first = missions[0];
    if (!first) return;
    const response = await send(proto.gradeMission(first.taskId));
    if (response.type === "gradeResponse") {
      consoleBox.textContent =
        `score ${response.payload.points}/${response.payload.maxPoints}\n` +
        response.payload.perCriterion
          .map((c) => `${c.passed ? "ok " : "MISS"} ${c.id}: ${c.detail}`)
          .join("\n");
    }
  });
  el<HTMLButtonElement>("save").addEventListener("click", () => void send(proto.saveSession()));

  // --- preview events ----------------------------------------------------------

  type Drag =
    | { kind: "orbit"; sx: number; sy: number; reported: boolean }
    | { kind: "handle"; axis: proto.AxisName; waypointIndex: number; sx: number; sy: number; moved: number }
    | { kind: "marker"; name: string; sx: number; sy: number; ghost: proto.Pose };

  let drag: Drag | null = null;

  // Transient drag feedback only: state changes round-trip through the
  // server, so a gesture commits exactly once, on mouseup.
  function paintGhost(): void {
    paint();
    if (!drag) return;
    if (drag.kind === "marker") {
      const p = camera.project({ x: drag.ghost.x, y: drag.ghost.y, z: drag.ghost.z });
      if (p.visible) {
        ctx.strokeStyle = "#ffffff";
        ctx.lineWidth = 1.5;
        ctx.strokeRect(p.sx - 7, p.sy - 7, 14, 14);
      }
    } else if (drag.kind === "handle") {
      const point = view.geometry.points.find((g) => g.waypointIndex === (drag as { waypointIndex: number }).waypointIndex);
      if (point) {
        const ghost = { x: point.x, y: point.y, z: point.z };
        ghost[drag.axis === "yaw" ? "z" : drag.axis] += drag.axis === "yaw" ? 0 : drag.moved;
        const p = camera.project(ghost);
        if (p.visible) {
          ctx.strokeStyle = "#ffd24d";
          ctx.lineWidth = 1.5;
          ctx.beginPath();
          ctx.arc(p.sx, p.sy, 8, 0, Math.PI * 2);
          ctx.stroke();
        }
      }
    }
  }

  canvas.addEventListener("mousedown", (event) => {
    const { offsetX: sx, offsetY: sy } = event;
    const handle = pickHandle(camera, view, sx, sy);
    if (handle) {
      drag = { kind: "handle", ...handle, sx, sy, moved: 0 };
      return;
    }
    const marker = pickMarker(camera, view, sx, sy);
    if (marker) {
      const pose = view.markers[marker];
      if (pose) {
        drag = { kind: "marker", name: marker, sx, sy, ghost: { ...pose } };
      }
      return;
    }
    const waypoint = pickWaypoint(camera, view, sx, sy);
    if (waypoint !== null) {
      view.selectWaypoint(waypoint);
      if (view.canHighlight()) {
        void send(proto.queryHighlight(waypoint));
      } else {
        void send(proto.reportInteraction("selectWaypoint"));
      }
      paint();
      return;
    }
    drag = { kind: "orbit", sx, sy, reported: false };
  });

  canvas.addEventListener("mousemove", (event) => {
    if (!drag) return;
    const { offsetX: sx, offsetY: sy } = event;
    if (drag.kind === "orbit") {
      camera.rotate((sx - drag.sx) * 0.5, (sy - drag.sy) * 0.3);
      if (!drag.reported) {
        drag.reported = true;
        void send(proto.reportInteraction("orbit"));
      }
      drag.sx = sx;
      drag.sy = sy;
      paint();
    } else if (drag.kind === "handle") {
      drag.moved = computeAxisDelta(drag, sx, sy);
      paintGhost();
    } else {
      // the ghost follows the cursor on the ground plane
      const g = drag.ghost;
      const scaleX = camera.axisScreenScale({ x: g.x, y: g.y, z: g.z }, { x: 1, y: 0, z: 0 });
      const scaleY = camera.axisScreenScale({ x: g.x, y: g.y, z: g.z }, { x: 0, y: 1, z: 0 });
      const det = scaleX.dx * scaleY.dy - scaleY.dx * scaleX.dy;
      if (Math.abs(det) > 1e-6) {
        const dsx = sx - drag.sx;
        const dsy = sy - drag.sy;
        g.x += (dsx * scaleY.dy - dsy * scaleY.dx) / det;
        g.y += (dsy * scaleX.dx - dsx * scaleX.dy) / det;
        drag.sx = sx;
        drag.sy = sy;
        paintGhost();
      }
    }
  });

  function computeAxisDelta(drag: { axis: proto.AxisName; waypointIndex: number; sx: number; sy: number }, sx: number, sy: number): number {
    const point = view.geometry.points.find((p) => p.waypointIndex === drag.waypointIndex);
    if (!point) return 0;
    const direction = { x: 0, y: 0, z: 0, [drag.axis]: 1 } as { x: number; y: number; z: number };
    const scale = camera.axisScreenScale({ x: point.x, y: point.y, z: point.z }, direction);
    const norm = scale.dx * scale.dx + scale.dy * scale.dy;
    if (norm < 1e-9) return 0;
    return ((sx - drag.sx) * scale.dx + (sy - drag.sy) * scale.dy) / norm;
  }

  canvas.addEventListener("mouseup", (event) => {
    if (drag && drag.kind === "handle") {
      const delta = computeAxisDelta(drag, event.offsetX, event.offsetY);
      if (Math.abs(delta) > 1e-3) {
        const message = view.dragWaypoint(drag.waypointIndex, drag.axis, delta);
        if (message) void send(message);
      }
    } else if (drag && drag.kind === "marker") {
      void send(proto.dragMarker(drag.name, drag.ghost));
    }
    drag = null;
    paint();
  });

  canvas.addEventListener("wheel", (event) => {
    event.preventDefault();
    camera.zoom(event.deltaY > 0 ? 1.1 : 0.9);
    void send(proto.reportInteraction("zoom"));
    paint();
  });

  paint();
}

void boot();
